#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace scd {

using Vertex = int;

// Fixed-universe bitset over vertex ids 0..universe-1.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe) : n_(universe), words_((universe + 63) / 64, 0) {}
    VertexSet(int universe, std::initializer_list<int> items) : VertexSet(universe) {
        for (int v : items) insert(v);
    }
    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (int v = 0; v < universe; ++v) s.insert(v);
        return s;
    }
    static VertexSet of(int universe, const std::vector<int>& items) {
        VertexSet s(universe);
        for (int v : items) s.insert(v);
        return s;
    }

    int universe() const { return n_; }
    bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
    void insert(int v) { words_[v >> 6] |= (std::uint64_t{1} << (v & 63)); }
    void erase(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    VertexSet complement() const { return full(n_) - *this; }

    bool intersects(const VertexSet& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    int intersection_count(const VertexSet& o) const {
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }
    bool subset_of(const VertexSet& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool operator==(const VertexSet& o) const = default;
    bool operator<(const VertexSet& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return to_vector() < o.to_vector();
    }

    // Smallest member, or -1.
    int first() const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                int b = std::countr_zero(w);
                f(static_cast<int>(i * 64) + b);
                w &= w - 1;
            }
        }
    }
    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int v) { out.push_back(v); });
        return out;
    }
    size_t hash() const {
        size_t h = static_cast<size_t>(n_);
        for (auto w : words_) h = h * 0x9E3779B97F4A7C15ull ^ (w + (h >> 7));
        return h;
    }
    // Space-separated ids, shifted by `base`.
    std::string str(int base = 0) const {
        std::string s;
        for_each([&](int v) {
            if (!s.empty()) s += ' ';
            s += std::to_string(v + base);
        });
        return s;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
    size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace scd

#pragma once

// Instance generators shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "scd/digraph.hpp"
#include "scd/obstructions.hpp"

namespace scd::testing {

inline Digraph cycle3() {
    Digraph d(3);
    d.add_arc(0, 1);
    d.add_arc(1, 2);
    d.add_arc(2, 0);
    return d;
}

inline PatternDigraph pattern(int n, std::vector<Arc> arcs, std::vector<Vertex> roots = {}) {
    PatternDigraph h;
    h.n = n;
    h.arcs = std::move(arcs);
    h.roots = std::move(roots);
    return h;
}

inline PatternDigraph triangle() { return pattern(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline PatternDigraph two_cycle() { return pattern(2, {{0, 1}, {1, 0}}); }

// Every labelled tournament on n vertices, pairs oriented by the bits of a counter.
inline void for_each_tournament(int n, const std::function<void(const Digraph&)>& visit) {
    std::vector<Arc> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Digraph d(n);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto [u, v] = pairs[i];
            if ((mask >> i) & 1) d.add_arc(v, u);
            else d.add_arc(u, v);
        }
        visit(d);
    }
}

// Loop-free patterns on 1..max_n vertices with at most max_arcs arcs, arcs
// as multisets over ordered pairs, filtered by `keep`.
inline std::vector<PatternDigraph> loop_free_patterns(int max_n, int max_arcs,
                                                      const std::function<bool(const PatternDigraph&)>& keep) {
    std::vector<PatternDigraph> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<Arc> cand;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v) cand.push_back({u, v});
        std::vector<Arc> cur;
        std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
            PatternDigraph h = pattern(n, cur);
            if (keep(h)) out.push_back(h);
            if (left == 0) return;
            for (std::size_t i = start; i < cand.size(); ++i) {
                cur.push_back(cand[i]);
                rec(i, left - 1);
                cur.pop_back();
            }
        };
        rec(0, max_arcs);
    }
    return out;
}

// Semi-complete host containing a k-triple, with randomly oriented pairs
// elsewhere. Returns the triple in `tr`.
inline Digraph triple_host(int k, std::uint64_t seed, Triple& tr, int extra = 0) {
    const int n = 3 * k + extra;
    std::mt19937_64 rng(seed);
    std::vector<Vertex> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    tr.k = k;
    tr.a.assign(ids.begin(), ids.begin() + k);
    tr.b.assign(ids.begin() + k, ids.begin() + 2 * k);
    tr.c.assign(ids.begin() + 2 * k, ids.begin() + 3 * k);
    Digraph d(n);
    for (Vertex a : tr.a)
        for (Vertex b : tr.b) d.add_arc(a, b);
    for (Vertex b : tr.b)
        for (Vertex c : tr.c) d.add_arc(b, c);
    for (int i = 0; i < k; ++i) d.add_arc(tr.c[i], tr.a[i]);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (d.has_arc(u, v) || d.has_arc(v, u)) continue;
            if (rng() & 1) d.add_arc(u, v);
            else d.add_arc(v, u);
        }
    return d;
}

// Rooted host for the irrelevant-vertex step: roots 0 and 1, a k-triple,
// then `d_count` vertices each entering exactly 5 vertices of B (so that
// B_g is large and the auxiliary digraph S is used) and `e_count` vertices
// each entered from exactly 7 vertices of B (so that G'_x is nonempty).
struct CraftedHost {
    RootedHost host;
    Triple triple;
};

inline CraftedHost irrelevant_host(int k, std::uint64_t seed, int d_count, int e_count) {
    const int n = 2 + 3 * k + d_count + e_count;
    std::mt19937_64 rng(seed);
    CraftedHost out;
    Triple& tr = out.triple;
    tr.k = k;
    for (int i = 0; i < k; ++i) {
        tr.a.push_back(2 + i);
        tr.b.push_back(2 + k + i);
        tr.c.push_back(2 + 2 * k + i);
    }
    std::shuffle(tr.b.begin(), tr.b.end(), rng);
    const int d0 = 2 + 3 * k, e0 = d0 + d_count;
    Digraph d(n);
    for (Vertex a : tr.a)
        for (Vertex b : tr.b) d.add_arc(a, b);
    for (Vertex b : tr.b)
        for (Vertex c : tr.c) d.add_arc(b, c);
    for (int i = 0; i < k; ++i) d.add_arc(tr.c[i], tr.a[i]);
    for (int j = 0; j < d_count; ++j) {
        std::vector<char> hit(k, 0);
        for (int i = 0; i < 5; ++i) hit[(5 * j + i) % k] = 1;
        for (int i = 0; i < k; ++i) {
            if (hit[i]) d.add_arc(d0 + j, tr.b[i]);
            else d.add_arc(tr.b[i], d0 + j);
        }
    }
    for (int j = 0; j < e_count; ++j) {
        std::vector<char> hit(k, 0);
        for (int i = 0; i < 7; ++i) hit[(7 * j + i) % k] = 1;
        for (int i = 0; i < k; ++i) {
            if (hit[i]) d.add_arc(tr.b[i], e0 + j);
            else d.add_arc(e0 + j, tr.b[i]);
        }
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (d.has_arc(u, v) || d.has_arc(v, u)) continue;
            if (rng() & 1) d.add_arc(u, v);
            else d.add_arc(v, u);
        }
    out.host.graph = std::move(d);
    out.host.roots = {0, 1};
    return out;
}

}  // namespace scd::testing

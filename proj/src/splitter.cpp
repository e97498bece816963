#include "scd/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_set>

#include "scd/errors.hpp"

namespace scd {

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double subsets_up_to(int n, int k) {
    double s = 0;
    for (int i = 0; i <= k; ++i) s += binom(n, i);
    return s;
}

// Calls f(indices) for every subset of {0..n-1} of size at most k, by size
// then lexicographically.
void for_each_small_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    for (int size = 0; size <= std::min(k, n); ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            f(idx);
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

bool is_prime(long long x) {
    if (x < 2) return false;
    for (long long d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

}  // namespace

double covering_pair_count(int universe, int p, int q) {
    double total = 0;
    for (int i = 0; i <= std::min(p, universe); ++i) total += binom(universe, i) * subsets_up_to(universe - i, q);
    return total;
}

CoveringFamily build_covering_family(int universe, int p, int q, const CoveringOptions& opts) {
    if (universe < 0 || p < 0 || q < 0) throw InputError("build_covering_family: negative parameter");
    CoveringFamily fam;
    fam.universe = universe;
    fam.p = p;
    fam.q = q;
    p = std::min(p, universe);
    q = std::min(q, universe);
    if (p == 0) {
        fam.members.push_back(VertexSet(universe));
        fam.strategy = "trivial";
        return fam;
    }
    if (q == 0) {
        fam.members.push_back(VertexSet::full(universe));
        fam.strategy = "trivial";
        return fam;
    }
    // Build for the smaller side and complement when the roles are swapped.
    const bool swapped = p > q;
    const int small = std::min(p, q), large = std::max(p, q);

    const double direct_size = subsets_up_to(universe, small);
    const int z = std::min(small + large, universe);
    const long long m = static_cast<long long>(z) * z;
    long long prime = universe + 1;
    while (!is_prime(prime)) ++prime;
    const double hash_size = static_cast<double>(prime - 1) * subsets_up_to(static_cast<int>(std::min<long long>(m, 1 << 20)), small);

    std::vector<VertexSet> members;
    if (direct_size <= static_cast<double>(opts.direct_limit) || direct_size <= hash_size) {
        fam.strategy = "direct";
        for_each_small_subset(universe, small, [&](const std::vector<int>& idx) {
            members.push_back(VertexSet::of(universe, idx));
        });
    } else {
        // x -> (a·x mod P) mod z² is injective on every z-set for some a.
        fam.strategy = "hash";
        std::unordered_set<VertexSet, VertexSetHash> seen;
        std::vector<std::vector<int>> preimage(m);
        for (long long a = 1; a < prime; ++a) {
            for (auto& bucket : preimage) bucket.clear();
            for (int x = 0; x < universe; ++x) preimage[(a * x % prime) % m].push_back(x);
            for_each_small_subset(static_cast<int>(m), small, [&](const std::vector<int>& zs) {
                VertexSet r(universe);
                for (int cell : zs)
                    for (int x : preimage[cell]) r.insert(x);
                if (seen.insert(r).second) members.push_back(std::move(r));
            });
        }
    }
    if (swapped)
        for (auto& r : members) r = r.complement();
    fam.members = std::move(members);
    return fam;
}

bool verify_covering_family(const CoveringFamily& f, int p, int q, long long max_pairs) {
    const int n = f.universe;
    double pairs = covering_pair_count(n, p, q);
    if (pairs > static_cast<double>(max_pairs) || n > 64)
        throw BudgetExceeded("verify_covering_family: about " + std::to_string(static_cast<long long>(pairs)) +
                                 " pairs to enumerate",
                             pairs);
    std::vector<std::uint64_t> masks;
    for (const auto& r : f.members) {
        std::uint64_t m = 0;
        r.for_each([&](int v) { m |= std::uint64_t{1} << v; });
        masks.push_back(m);
    }
    bool ok = true;
    for_each_small_subset(n, p, [&](const std::vector<int>& a_idx) {
        if (!ok) return;
        std::uint64_t a = 0;
        for (int v : a_idx) a |= std::uint64_t{1} << v;
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (!(a >> v & 1)) rest.push_back(v);
        for_each_small_subset(static_cast<int>(rest.size()), q, [&](const std::vector<int>& b_idx) {
            if (!ok) return;
            std::uint64_t b = 0;
            for (int i : b_idx) b |= std::uint64_t{1} << rest[i];
            bool covered = std::any_of(masks.begin(), masks.end(),
                                       [&](std::uint64_t r) { return (a & ~r) == 0 && (b & r) == 0; });
            if (!covered) ok = false;
        });
    });
    return ok;
}

}  // namespace scd

#pragma once

#include <string>
#include <vector>

#include "scd/vertex_set.hpp"

namespace scd {

// Family F of subsets of U = {0..universe-1} such that for all disjoint
// A, B ⊆ U with |A| ≤ p and |B| ≤ q some R ∈ F has A ⊆ R and B ∩ R = ∅.
struct CoveringFamily {
    int universe = 0;
    int p = 0, q = 0;
    std::vector<VertexSet> members;
    std::string strategy;  // "trivial", "direct" or "hash"
};

struct CoveringOptions {
    // The direct strategy is used while it emits at most this many sets.
    long long direct_limit = 20000;
};

CoveringFamily build_covering_family(int universe, int p, int q, const CoveringOptions& opts = {});

// Exhaustive check. Throws BudgetExceeded when more than `max_pairs`
// (A, B) pairs would have to be enumerated.
bool verify_covering_family(const CoveringFamily& f, int p, int q, long long max_pairs = 10'000'000);

// Number of (A, B) pairs verify_covering_family enumerates.
double covering_pair_count(int universe, int p, int q);

}  // namespace scd

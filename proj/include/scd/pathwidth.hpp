#pragma once

#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "scd/decomposition.hpp"
#include "scd/digraph.hpp"
#include "scd/separation.hpp"
#include "scd/splitter.hpp"

namespace scd {

// Find (C, D) with X ⊆ C, Y ⊆ D, |C∖D| ≥ a, |D∖C| ≥ c and |C∩D| ≤ b in a
// semi-complete S. Complete: absence means no such separation exists.
std::optional<Separation> balanced_cut(const Digraph& s, const VertexSet& x, const VertexSet& y, int a, int b,
                                       int c);

struct BalancedCutQuery {
    VertexSet x, y;
    int a = 0, b = 0, c = 0;
    // When set, X is not counted towards |C∖D| and Y not towards |D∖C|.
    bool exclude_terminals = false;
};

// Tries the members of `family` (built for p = a + c, q = b) in order and
// returns the first cut that `accept` approves.
std::optional<Separation> balanced_cut_search(const Digraph& s, const BalancedCutQuery& query,
                                              const CoveringFamily& family,
                                              const std::function<bool(const Separation&)>& accept);

// Cross-free family of separations of order < k, ordered by containment,
// starting with (∅, V) and ending with (V, ∅), with no two members k-close.
struct Bundle {
    int k = 0;
    std::vector<Separation> members;
};

struct BundleOptions {
    // Use a = min(k(i−|X|), 1) instead of max(k(i−|X|), 1) for the gap thresholds.
    bool literal_thresholds = false;
};

Bundle build_bundle(const Digraph& t, int k, const BundleOptions& opts = {});
PathDecomposition decomposition_from_bundle(const Bundle& bundle);

struct Jungle {
    int k = 0;
    std::vector<Vertex> z;
};

// Lowest-index k vertices of W with in- and out-degree at least k + l inside T[W].
Jungle extract_jungle(const Digraph& t, const VertexSet& w, int k, int l);
bool verify_jungle(const Digraph& t, const std::vector<Vertex>& z, int k);

struct PathwidthOptions {
    bool literal_thresholds = false;
    // Return the single bag V(T) when 4k²+7k ≥ n−1.
    bool short_circuit = true;
};

struct PathwidthResult {
    bool is_jungle = false;
    PathDecomposition decomposition;  // valid when !is_jungle
    Jungle jungle;                    // valid when is_jungle
    VertexSet region;                 // the set W the jungle was extracted from
    bool short_circuited = false;
    int width_bound = 0;  // 4k²+7k
};

// Either a path decomposition of width ≤ 4k²+7k or a k-jungle; the returned
// certificate has been verified.
PathwidthResult approximate_pathwidth(const Digraph& t, int k, const PathwidthOptions& opts = {});

int pathwidth_bound(int k);

// Maximum over cuts of the number of arcs from the right part to the left part.
int cutwidth_of_order(const Digraph& d, const std::vector<Vertex>& order);
// Width at most twice the cutwidth of `order`. The bag sequence is emitted
// last position first so that arcs point towards earlier bags.
PathDecomposition decomposition_from_cutwidth_order(const Digraph& d, const std::vector<Vertex>& order);

}  // namespace scd

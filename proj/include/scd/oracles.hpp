#pragma once

// Brute-force references. Only the graph core is used here, so the oracles
// stay independent of the algorithms they check.

#include <cstdint>
#include <functional>
#include <vector>

#include "scd/digraph.hpp"

namespace scd::oracle {

inline constexpr int kMaxPathwidthVertices = 18;
inline constexpr int kMaxCutwidthVertices = 16;
inline constexpr int kMaxContainmentHost = 6;
inline constexpr int kMaxSeparationVertices = 16;
inline constexpr int kMaxVdpVertices = 20;

struct ExactPathwidth {
    int width = 0;
    std::vector<std::vector<Vertex>> bags;  // witness of that width
};

// Vertex-layout subset DP. Throws BudgetExceeded above the size limit.
ExactPathwidth exact_pathwidth(const Digraph& t);

struct ExactCutwidth {
    int width = 0;
    std::vector<Vertex> order;  // an optimal ordering
};

// Minimum over orderings of the largest number of arcs from a suffix into
// the prefix before it.
ExactCutwidth exact_cutwidth(const Digraph& d);

enum class Mode { Topological, Immersion, RootedImmersion };

// Exhaustive search over injective vertex images and path systems. Rooted
// patterns whose vertices are all roots and whose arcs all join the same two
// roots are answered by an edge-disjoint max-flow at any host size.
bool brute_force_containment(const PatternDigraph& h, const Digraph& t, Mode mode,
                             const std::vector<Vertex>& host_roots = {});

// True when the rooted instance is answered by the max-flow shortcut.
bool flow_checkable(const PatternDigraph& h);

// Number of arc-disjoint s -> t paths (stops counting at `cap`).
int edge_disjoint_paths(const Digraph& t, Vertex s, Vertex sink, int cap);

struct MaskSeparation {
    std::uint32_t a = 0, b = 0;
};

// Every separation (A, B) of D, optionally of order at most `max_order`,
// that the predicate accepts.
std::vector<MaskSeparation> brute_force_separations(const Digraph& d,
                                                    const std::function<bool(const MaskSeparation&)>& keep,
                                                    int max_order = -1);

// All systems of vertex-disjoint paths linking pairs[i].first to
// pairs[i].second, each path given as its vertex sequence.
std::vector<std::vector<std::vector<Vertex>>> brute_force_vdp(const Digraph& t,
                                                              const std::vector<std::pair<Vertex, Vertex>>& pairs);

}  // namespace scd::oracle

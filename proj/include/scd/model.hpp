#pragma once

#include <string>
#include <vector>

#include "scd/digraph.hpp"

namespace scd {

enum class ContainmentMode {
    Topological,      // internally vertex-disjoint paths avoiding branch vertices
    Immersion,        // arc-disjoint paths
    RootedImmersion,  // arc-disjoint paths, roots mapped to the host roots
};

const char* mode_name(ContainmentMode m);

// Injective vertex map plus one host path per pattern arc (same arc order,
// multiplicities included). Paths are vertex sequences from η(u) to η(v).
struct Model {
    std::vector<Vertex> vertex_map;
    std::vector<std::vector<Vertex>> paths;
};

struct ModelCheck {
    bool valid = false;
    std::string reason;
};

// `host_roots` is consulted only in RootedImmersion mode: pattern root i must
// map to host_roots[i].
ModelCheck verify_model(const PatternDigraph& h, const Digraph& t, const Model& model, ContainmentMode mode,
                        const std::vector<Vertex>& host_roots = {});

// Text block: `MODEL`, one line `v -> x` per pattern vertex, one line per arc
// with the path (all 1-based).
std::string format_model(const PatternDigraph& h, const Model& model);

}  // namespace scd

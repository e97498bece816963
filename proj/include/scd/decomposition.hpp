#pragma once

#include <string>
#include <vector>

#include "scd/digraph.hpp"

namespace scd {

// Sequence of bags W_1..W_r. Every arc either lies inside a bag or goes from
// a vertex of a later bag to a vertex of an earlier bag.
struct PathDecomposition {
    std::vector<std::vector<Vertex>> bags;

    int width() const;
};

struct DecompositionCheck {
    bool valid = false;
    int width = -1;
    std::string reason;  // empty when valid
};

DecompositionCheck verify_path_decomposition(const Digraph& t, const PathDecomposition& w);

enum class NiceKind { Introduce, Forget };

struct NiceEvent {
    NiceKind kind;
    Vertex v;
};

// Introduce/forget sequence: 2n events, each vertex introduced once and
// forgotten once. Between consecutive bags the vertices leaving are
// forgotten first (ascending id), then the new ones introduced (ascending id).
struct NiceDecomposition {
    int n = 0;
    std::vector<NiceEvent> events;
    int width = -1;
};

// Checks cover and interval conditions (the arc condition needs the host).
NiceDecomposition make_nice(const PathDecomposition& w, int n);

// Bag contents after each event (index i = bag after events[0..i]).
std::vector<std::vector<Vertex>> nice_bags(const NiceDecomposition& nice);

}  // namespace scd

#pragma once

#include <map>
#include <vector>

#include "scd/digraph.hpp"

namespace scd {

struct FlowResult {
    bool exceeded = false;  // more than `limit` paths exist (possibly unboundedly many)
    int value = 0;          // number of paths found (limit + 1 when exceeded)
    std::vector<std::vector<Vertex>> paths;
    // Only meaningful when !exceeded:
    VertexSet cut;          // unit-capacity vertices separating sources from sinks
    VertexSet source_side;  // vertices whose out-copy is reachable in the residual network
};

// Vertex-capacitated unit flow on the subgraph of D induced by `active`.
// Every vertex v is split into v_in -> v_out with capacity 1, or unbounded
// for vertices marked infinite; every arc (u,v) becomes u_out -> v_in with
// unbounded capacity. Sources attach at v_in and sinks at v_out, so a
// unit-capacity source or sink can itself be cut.
class VertexFlow {
public:
    VertexFlow(const Digraph& d, VertexSet active);
    void set_infinite(Vertex v) { infinite_.insert(v); }
    void add_source(Vertex v) { sources_.insert(v); }
    void add_sink(Vertex v) { sinks_.insert(v); }
    // Augments one unit at a time and stops as soon as limit + 1 paths exist.
    FlowResult run(int limit);

private:
    struct Parent {
        int node = -1;
        bool reverse = false;
    };
    bool augment();
    std::vector<Vertex> infinite_path() const;
    std::vector<std::vector<Vertex>> decompose();
    void residual_reach(std::vector<char>& reach_in, std::vector<char>& reach_out) const;

    const Digraph& d_;
    VertexSet active_, infinite_, sources_, sinks_;
    std::vector<int> through_;              // flow on v_in -> v_out
    std::vector<int> from_source_, to_sink_;
    std::map<std::pair<int, int>, int> arc_flow_;
    std::vector<std::vector<int>> flow_pred_;  // u with positive flow on (u, v)
};

struct MinCutResult {
    bool exceeded = false;
    VertexSet cut;
    std::vector<std::vector<Vertex>> paths;
};

// Minimum set of unit-capacity vertices, disjoint from sources, sinks and
// `infinite_cap`, meeting every source-to-sink path; Exceeded with limit+1
// internally disjoint paths when no such set of size <= limit exists.
MinCutResult min_vertex_cut(const Digraph& d, const VertexSet& sources, const VertexSet& sinks,
                            const VertexSet& infinite_cap, int limit);

}  // namespace scd

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scd/vertex_set.hpp"

namespace scd {

using Arc = std::pair<Vertex, Vertex>;

// Arc list as read from input; may contain loops and repeated arcs.
struct RawDigraph {
    int n = 0;
    std::vector<Arc> arcs;
};

struct ClassFlags {
    bool simple = false;        // no loops, no repeated arcs
    bool semicomplete = false;  // simple, and every pair is joined by at least one arc
    bool tournament = false;    // semicomplete with exactly one arc per pair
};

ClassFlags validate_class(const RawDigraph& raw);

// Simple loop-free digraph stored as in/out adjacency bit matrices.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n);
    // Throws InputError on loops, repeated arcs or out-of-range ids.
    static Digraph from_raw(const RawDigraph& raw);

    int size() const { return n_; }
    bool has_arc(Vertex u, Vertex v) const { return out_[u].contains(v); }
    void add_arc(Vertex u, Vertex v);
    void remove_arc(Vertex u, Vertex v);
    const VertexSet& out(Vertex v) const { return out_[v]; }
    const VertexSet& in(Vertex v) const { return in_[v]; }
    int out_degree(Vertex v) const { return out_[v].count(); }
    int in_degree(Vertex v) const { return in_[v].count(); }
    long long arc_count() const;
    // Arcs in lexicographic order.
    std::vector<Arc> arcs() const;
    VertexSet all() const { return VertexSet::full(n_); }

    bool is_semicomplete() const;
    bool is_tournament() const;

    bool operator==(const Digraph& o) const = default;

private:
    int n_ = 0;
    std::vector<VertexSet> out_;
    std::vector<VertexSet> in_;
};

// Throws InputError naming `where` if D is not semi-complete.
void require_semicomplete(const Digraph& d, const char* where);

// Strongly connected components ordered so that every arc between two
// different components goes from the later component to the earlier one.
std::vector<std::vector<Vertex>> scc_reverse_topological_order(const Digraph& d);
// Same, restricted to the vertices of `subset`.
std::vector<std::vector<Vertex>> scc_reverse_topological_order(const Digraph& d,
                                                               const VertexSet& subset);

// Pattern digraph: repeated arcs encode multiplicity, (u,u) is a loop.
struct PatternDigraph {
    int n = 0;
    std::vector<Arc> arcs;
    std::vector<Vertex> roots;  // ordered; may be empty

    // |H| = number of vertices plus number of arcs counted with multiplicity.
    int size() const { return n + static_cast<int>(arcs.size()); }
    bool has_loops() const;
    int isolated_count() const;
};

// Replaces every loop (u,u) by a 2-cycle through a fresh vertex; roots are kept.
PatternDigraph subdivide_loops(const PatternDigraph& h);

// Host digraph with an ordered list of distinct root vertices.
struct RootedHost {
    Digraph graph;
    std::vector<Vertex> roots;
};

void validate_rooted_host(const RootedHost& host);

Digraph gen_transitive(int n);
// One fair coin per unordered pair, drawn from std::mt19937_64(seed).
Digraph gen_random_tournament(int n, std::uint64_t seed);
// Random tournament where each pair additionally becomes a 2-cycle with
// probability `two_cycle_percent` / 100.
Digraph gen_random_semicomplete(int n, std::uint64_t seed, int two_cycle_percent);

// Two-pair counterexample on vertices a_1..a_n (ids 0..n-1) and b_1..b_n
// (ids n..2n-1), with terminal pairs (a_1, a_n) and (b_n, b_1).
struct Counterexample {
    Digraph graph;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    int half = 0;  // the parameter n
    Vertex a(int i) const { return i - 1; }     // 1-based
    Vertex b(int i) const { return half + i - 1; }  // 1-based
};
Counterexample gen_counterexample(int n);

struct InducedSubdigraph {
    Digraph graph;
    std::vector<Vertex> to_parent;   // new id -> original id
    std::vector<Vertex> from_parent; // original id -> new id, or -1
};
// Throws InputError if S is empty.
InducedSubdigraph induced_subdigraph(const Digraph& d, const VertexSet& s);

}  // namespace scd

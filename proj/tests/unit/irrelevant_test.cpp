#include <algorithm>

#include "doctest.h"
#include "../support.hpp"
#include "scd/errors.hpp"
#include "scd/irrelevant.hpp"
#include "scd/oracles.hpp"

using namespace scd;

namespace {

bool in(const std::vector<Vertex>& v, Vertex x) { return std::find(v.begin(), v.end(), x) != v.end(); }

PatternDigraph root_arc() { return scd::testing::pattern(2, {{0, 1}}, {0, 1}); }

}  // namespace

TEST_CASE("threshold p") {
    CHECK(p_threshold(0) == 5);
    CHECK(p_threshold(1) == 165);
    CHECK(p_threshold(2) == 485);
    CHECK(irrelevant_parameter(root_arc()) == 1);
    CHECK(irrelevant_parameter(scd::testing::pattern(3, {{0, 1}}, {})) == 2);
}

TEST_CASE("irrelevant vertex on a crafted k=1 host") {
    auto crafted = scd::testing::irrelevant_host(165, 3, 0, 0);
    auto h = root_arc();
    auto r = find_irrelevant_vertex(h, crafted.host, crafted.triple);
    CHECK(r.k == 1);
    CHECK(r.p == 165);
    CHECK(in(crafted.triple.b, r.x));
    CHECK(r.s_arcs >= static_cast<long long>(r.s_vertices) * (r.s_vertices - 1) / 2);
    if (!r.took_b_empty) CHECK(r.x_set.size() >= 33);
    CHECK(r.warnings.empty());

    const bool before = oracle::edge_disjoint_paths(crafted.host.graph, 0, 1, 1) >= 1;
    auto after_host = delete_vertex(crafted.host, r.x);
    const bool after = oracle::edge_disjoint_paths(after_host.graph, after_host.roots[0], after_host.roots[1], 1) >= 1;
    CHECK(before == after);
    CHECK(check_answer_preserved(h, crafted.host, r.x));
}

TEST_CASE("auxiliary digraphs stay semi-complete") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto crafted = scd::testing::irrelevant_host(165, seed, seed % 2 ? 40 : 0, seed % 3 ? 0 : 30);
        auto r = find_irrelevant_vertex(root_arc(), crafted.host, crafted.triple);
        CHECK(r.s_arcs >= static_cast<long long>(r.s_vertices) * (r.s_vertices - 1) / 2);
        CHECK(r.s2_arcs >= static_cast<long long>(r.s2_vertices) * (r.s2_vertices - 1) / 2);
        CHECK(in(crafted.triple.b, r.x));
        CHECK(check_answer_preserved(root_arc(), crafted.host, r.x));
    }
}

TEST_CASE("small triples are rejected in the theoretical profile") {
    auto crafted = scd::testing::irrelevant_host(40, 1, 0, 0);
    CHECK_THROWS_AS(find_irrelevant_vertex(root_arc(), crafted.host, crafted.triple), ThresholdError);
    IrrelevantOptions opts;
    opts.opportunistic = true;
    auto r = find_irrelevant_vertex(root_arc(), crafted.host, crafted.triple, opts);
    CHECK(in(crafted.triple.b, r.x));
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("deleting vertices") {
    auto crafted = scd::testing::irrelevant_host(5, 2, 0, 0);
    CHECK_THROWS_AS(delete_vertex(crafted.host, 0), InputError);
    auto smaller = delete_vertex(crafted.host, 7);
    CHECK(smaller.graph.size() == crafted.host.graph.size() - 1);
    CHECK(smaller.roots == crafted.host.roots);
}

TEST_CASE("answer preservation checks") {
    // Root 0 reaches root 1 only through its direct arc; deleting root 0 loses the answer.
    RootedHost host;
    host.graph = gen_transitive(4);
    host.roots = {0, 3};
    CHECK_FALSE(check_answer_preserved(root_arc(), host, 0));
    CHECK(check_answer_preserved(root_arc(), host, 1));

    // Root 0 is a sink: the arc pattern is unsatisfiable before and after any deletion.
    auto crafted = scd::testing::irrelevant_host(165, 4, 0, 0);
    Digraph& g = crafted.host.graph;
    for (int v = 1; v < g.size(); ++v)
        if (g.has_arc(0, v)) {
            g.remove_arc(0, v);
            g.add_arc(v, 0);
        }
    CHECK(oracle::edge_disjoint_paths(g, 0, 1, 1) == 0);
    for (int i = 0; i < 5; ++i) CHECK(check_answer_preserved(root_arc(), crafted.host, crafted.triple.b[i]));
}

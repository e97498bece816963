#include <set>

#include "doctest.h"
#include "../support.hpp"
#include "scd/model.hpp"
#include "scd/obstructions.hpp"
#include "scd/pathwidth.hpp"

using namespace scd;

namespace {

bool is_transitive_sequence(const Digraph& t, const std::vector<Vertex>& seq) {
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j)
            if (!t.has_arc(seq[i], seq[j]) || t.has_arc(seq[j], seq[i])) return false;
    return true;
}

bool matched(const Digraph& t, const Triple& tr) {
    for (int i = 0; i < tr.k; ++i)
        if (!t.has_arc(tr.c[i], tr.a[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("triple on the counterexample") {
    auto ce = gen_counterexample(8);
    std::vector<Vertex> a{ce.b(1), ce.b(2), ce.b(3)};
    std::vector<Vertex> b{ce.a(6), ce.a(7), ce.a(8)};
    std::vector<Vertex> c{ce.a(1), ce.a(2), ce.a(3)};
    auto tr = verify_triple(ce.graph, a, b, c);
    REQUIRE(tr.has_value());
    CHECK(tr->k == 3);
    CHECK(matched(ce.graph, *tr));
    for (int i = 0; i < 3; ++i) {
        CHECK(tr->a[i] == ce.b(i + 1));
        CHECK(tr->c[i] == ce.a(i + 1));
    }

    for (int n = 4; n <= 14; n += 2) {
        auto big = gen_counterexample(n);
        auto found = counterexample_triple(big);
        REQUIRE(found.has_value());
        CHECK(found->k == n / 2 - 1);
        CHECK(verify_triple(big.graph, found->a, found->b, found->c).has_value());
    }
}

TEST_CASE("triple verification") {
    auto one = verify_triple(scd::testing::cycle3(), {0}, {1}, {2});
    REQUIRE(one.has_value());
    CHECK(one->k == 1);
    CHECK_FALSE(verify_triple(scd::testing::cycle3(), {1}, {0}, {2}).has_value());

    // A complete to B, B complete to C, but only vertex 0 of A receives arcs from C.
    Digraph d(6);
    for (int a : {0, 1})
        for (int b : {2, 3}) d.add_arc(a, b);
    for (int b : {2, 3})
        for (int c : {4, 5}) d.add_arc(b, c);
    d.add_arc(4, 0);
    d.add_arc(5, 0);
    d.add_arc(1, 4);
    d.add_arc(1, 5);
    d.add_arc(0, 1);
    d.add_arc(2, 3);
    d.add_arc(4, 5);
    REQUIRE(d.is_tournament());
    CHECK_FALSE(verify_triple(d, {0, 1}, {2, 3}, {4, 5}).has_value());

    // Matching order is recovered from unordered parts.
    Triple planted;
    auto t = scd::testing::triple_host(5, 9, planted, 4);
    auto c_rev = planted.c;
    std::reverse(c_rev.begin(), c_rev.end());
    auto got = verify_triple(t, planted.a, planted.b, c_rev);
    REQUIRE(got.has_value());
    CHECK(matched(t, *got));
    CHECK(format_triple(*got).rfind("A:", 0) == 0);
}

TEST_CASE("transitive subtournaments") {
    auto full = find_transitive_subtournament(gen_transitive(8), 8);
    CHECK(full.sufficient);
    CHECK(full.sequence.size() == 8);
    CHECK(is_transitive_sequence(gen_transitive(8), full.sequence));

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto t = gen_random_tournament(16, seed);
        auto r = find_transitive_subtournament(t, 4);
        CHECK(r.sufficient);
        CHECK(r.sequence.size() >= 4);
        CHECK(is_transitive_sequence(t, r.sequence));
    }

    auto c = find_transitive_subtournament(scd::testing::cycle3(), 3);
    CHECK_FALSE(c.sufficient);
    CHECK(c.sequence.size() == 2);
}

TEST_CASE("triples from jungles") {
    auto ce = gen_counterexample(12);
    std::vector<Vertex> b_side;
    for (int i = 1; i <= 12; ++i) b_side.push_back(ce.b(i));
    auto r = triple_from_jungle(ce.graph, b_side, 2, ExtractionMode::Opportunistic);
    REQUIRE(r.triple.has_value());
    CHECK(r.triple->k == 2);
    CHECK(verify_triple(ce.graph, r.triple->a, r.triple->b, r.triple->c).has_value());

    auto small = triple_from_jungle(ce.graph, b_side, 2, ExtractionMode::Theoretical);
    CHECK_FALSE(small.triple.has_value());
    CHECK(small.reason == "threshold");

    int found = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 10 + static_cast<int>(seed % 7);
        auto t = gen_random_tournament(n, seed);
        for (int k = 1; k <= 3; ++k) {
            auto pw = approximate_pathwidth(t, k);
            if (!pw.is_jungle) continue;
            std::vector<Vertex> z = pw.region.to_vector();
            auto got = triple_from_jungle(t, z, k, ExtractionMode::Opportunistic);
            if (!got.triple) continue;
            ++found;
            CHECK(verify_triple(t, got.triple->a, got.triple->b, got.triple->c).has_value());
        }
    }
    CHECK(found > 0);
}

TEST_CASE("thresholds") {
    CHECK(ramsey_upper(2) == 2);
    CHECK(ramsey_upper(3) == 6);
    CHECK(f_threshold(1) == mpz_class(1) << 48);
    CHECK(f_threshold_exponent(1) == 48);
    for (int k = 1; k < 4; ++k) CHECK(f_threshold_exponent(k) <= f_threshold_exponent(k + 1));
    CHECK(meets_f_threshold(1LL << 48, 1));
    CHECK_FALSE(meets_f_threshold((1LL << 48) - 1, 1));
    CHECK_FALSE(meets_f_threshold(1LL << 62, 3));
}

TEST_CASE("embedding into triples") {
    Triple tr;
    auto t = scd::testing::triple_host(3, 5, tr, 2);
    auto arc = scd::testing::pattern(2, {{0, 1}});
    auto m = embed_in_triple(arc, tr);
    CHECK(verify_model(arc, t, m, ContainmentMode::Topological).valid);
    CHECK(m.vertex_map == std::vector<Vertex>{tr.b[0], tr.b[1]});
    REQUIRE(m.paths.size() == 1);
    CHECK(m.paths[0] == std::vector<Vertex>{tr.b[0], tr.c[1], tr.a[1], tr.b[1]});

    Triple tr4;
    auto t4 = scd::testing::triple_host(4, 8, tr4, 3);
    auto cyc = scd::testing::two_cycle();
    auto m4 = embed_in_triple(cyc, tr4);
    CHECK(verify_model(cyc, t4, m4, ContainmentMode::Topological).valid);
    REQUIRE(m4.paths.size() == 2);
    CHECK(m4.paths[0][1] != m4.paths[1][1]);

    Triple tr1;
    auto t1 = scd::testing::triple_host(1, 2, tr1);
    auto dot = scd::testing::pattern(1, {});
    auto m1 = embed_in_triple(dot, tr1);
    CHECK(m1.vertex_map == std::vector<Vertex>{tr1.b[0]});
    CHECK(m1.paths.empty());
    CHECK(verify_model(dot, t1, m1, ContainmentMode::Topological).valid);

    CHECK_THROWS(embed_in_triple(scd::testing::triangle(), tr4));  // size 6 > 4
}

TEST_CASE("every small pattern embeds into a triple of matching size") {
    auto patterns = scd::testing::loop_free_patterns(3, 3, [](const PatternDigraph& h) { return h.size() <= 6; });
    int checked = 0;
    for (auto& h : patterns) {
        Triple tr;
        auto t = scd::testing::triple_host(h.size(), 100 + checked, tr, 2);
        auto m = embed_in_triple(h, tr);
        CHECK(verify_model(h, t, m, ContainmentMode::Topological).valid);
        CHECK(verify_model(h, t, m, ContainmentMode::Immersion).valid);
        ++checked;
    }
    CHECK(checked > 50);
}

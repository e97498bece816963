#include <algorithm>
#include <random>

#include "doctest.h"
#include "../support.hpp"
#include "scd/errors.hpp"
#include "scd/flow.hpp"
#include "scd/oracles.hpp"
#include "scd/separation.hpp"
#include "scd/splitter.hpp"

using namespace scd;

namespace {

Separation from_masks(int n, const oracle::MaskSeparation& m) {
    Separation s{VertexSet(n), VertexSet(n)};
    for (int v = 0; v < n; ++v) {
        if ((m.a >> v) & 1) s.a.insert(v);
        if ((m.b >> v) & 1) s.b.insert(v);
    }
    return s;
}

std::vector<Separation> all_separations(const Digraph& d, int max_order) {
    std::vector<Separation> out;
    for (auto& m : oracle::brute_force_separations(d, [](const auto&) { return true; }, max_order))
        out.push_back(from_masks(d.size(), m));
    return out;
}

Digraph arc01() {
    Digraph d(2);
    d.add_arc(0, 1);
    return d;
}

}  // namespace

TEST_CASE("is_separation") {
    auto d = arc01();
    VertexSet none(2), all = d.all(), u(2, {0}), w(2, {1});
    auto trivial = is_separation(d, none, all);
    CHECK(trivial.valid);
    CHECK(trivial.order == 0);
    CHECK_FALSE(is_separation(d, u, w).valid);
    auto back = is_separation(d, w, u);
    CHECK(back.valid);
    CHECK(back.order == 0);
    CHECK_FALSE(is_separation(d, u, u).valid);  // does not cover V
}

TEST_CASE("is_separation agrees with the enumerator") {
    auto d = gen_random_tournament(6, 5);
    auto seps = all_separations(d, -1);
    CHECK_FALSE(seps.empty());
    for (auto& s : seps) {
        auto c = is_separation(d, s.a, s.b);
        CHECK(c.valid);
        CHECK(c.order == s.order());
    }
}

TEST_CASE("crossing") {
    const int n = 4;
    auto t = gen_transitive(n);
    Separation trivial{VertexSet(n), VertexSet::full(n)};
    auto order0 = all_separations(t, 0);
    for (auto& s : order0) {
        CHECK_FALSE(crosses(trivial, s));
        CHECK_FALSE(crosses(s, trivial));
        CHECK_FALSE(crosses(s, s));
    }
    // On a transitive host the order-0 separations are exactly the 5 prefix cuts and pairwise nested.
    CHECK(order0.size() == 5);
    for (auto& s1 : order0)
        for (auto& s2 : order0) {
            const bool nested = (s1.a.subset_of(s2.a) && s2.b.subset_of(s1.b)) ||
                                (s2.a.subset_of(s1.a) && s1.b.subset_of(s2.b));
            CHECK(crosses(s1, s2) == !nested);
        }
    // Two separations with incomparable sides cross.
    auto c3 = scd::testing::cycle3();
    Separation x{VertexSet(3, {0, 1}), VertexSet(3, {1, 2})};
    Separation y{VertexSet(3, {1, 2}), VertexSet(3, {0, 1})};
    CHECK(crosses(x, y));
    CHECK_THROWS_AS(k_close(x, y, 1), InputError);
}

TEST_CASE("k-closeness") {
    Separation s{VertexSet(4, {0}), VertexSet(4, {0, 1, 2, 3})};
    CHECK_FALSE(k_close(s, s, 3));

    // Seed-4 tournament: arcs 0->1 1->3 2->0 2->1 3->0 3->2.
    auto t = gen_random_tournament(4, 4);
    auto seps = all_separations(t, 1);
    Separation empty{VertexSet(4), VertexSet::full(4)};
    int checked = 0;
    for (auto& s1 : seps) {
        if (s1.order() != 1) continue;
        const int between = (empty.b - empty.a).intersection_count(s1.a - s1.b);
        CHECK(k_close(empty, s1, 3) == (between < 3));
        CHECK(k_close(s1, empty, 3) == (between < 3));
        ++checked;
    }
    CHECK(checked > 0);

    // Equal orders are never close.
    for (auto& s1 : seps)
        for (auto& s2 : seps)
            if (s1.order() == s2.order() && !crosses(s1, s2)) CHECK_FALSE(k_close(s1, s2, 5));
}

TEST_CASE("sorting cross-free families") {
    Separation lo{VertexSet(3), VertexSet::full(3)};
    Separation hi{VertexSet::full(3), VertexSet(3)};
    auto sorted = sort_cross_free({hi, lo});
    REQUIRE(sorted.size() == 2);
    CHECK(sorted[0] == lo);
    CHECK(sorted[1] == hi);
    CHECK(sort_cross_free({lo}).size() == 1);

    auto d = gen_random_tournament(9, 21);
    auto comps = scc_reverse_topological_order(d);
    std::vector<Separation> prefixes;
    VertexSet acc(9);
    prefixes.push_back({acc, VertexSet::full(9)});
    for (auto& c : comps) {
        for (Vertex v : c) acc.insert(v);
        prefixes.push_back({acc, acc.complement()});
    }
    for (auto& p : prefixes) CHECK(is_separation(d, p.a, p.b).valid);
    auto shuffled = prefixes;
    std::mt19937 rng(3);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(sort_cross_free(shuffled) == prefixes);

    Separation x{VertexSet(3, {0, 1}), VertexSet(3, {1, 2})};
    Separation y{VertexSet(3, {1, 2}), VertexSet(3, {0, 1})};
    CHECK_THROWS_AS(sort_cross_free({x, y}), InputError);
}

TEST_CASE("separation text round trip") {
    Separation s{VertexSet(5, {0, 2, 3}), VertexSet(5, {1, 3, 4})};
    CHECK(format_separation(s) == "A: 1 3 4 | B: 2 4 5");
    CHECK(parse_separation(format_separation(s), 5) == s);
    CHECK_THROWS_AS(parse_separation("A: 1 2", 5), InputError);
}

TEST_CASE("minimum vertex cuts") {
    Digraph d(3);
    d.add_arc(1, 0);
    auto none = min_vertex_cut(d, VertexSet(3, {0}), VertexSet(3, {2}), VertexSet(3), 5);
    CHECK_FALSE(none.exceeded);
    CHECK(none.cut.empty());

    auto direct = min_vertex_cut(scd::testing::cycle3(), VertexSet(3, {0}), VertexSet(3, {1}), VertexSet(3), 0);
    CHECK(direct.exceeded);
    CHECK(direct.paths.size() == 1);

    Digraph path(3);
    path.add_arc(0, 1);
    path.add_arc(1, 2);
    path.add_arc(2, 0);  // the only 0 -> 2 route goes through 1
    auto cut = min_vertex_cut(path, VertexSet(3, {0}), VertexSet(3, {2}), VertexSet(3), 1);
    CHECK_FALSE(cut.exceeded);
    CHECK(cut.cut == VertexSet(3, {1}));

    auto blocked = min_vertex_cut(path, VertexSet(3, {0}), VertexSet(3, {2}), VertexSet(3, {1}), 3);
    CHECK(blocked.exceeded);
}

TEST_CASE("minimum cut sizes match brute force") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const int n = 6 + static_cast<int>(seed % 3);
        auto d = gen_random_tournament(n, seed);
        VertexSet src(n, {0}), snk(n, {1});
        if (d.has_arc(0, 1)) d.remove_arc(0, 1);
        auto r = min_vertex_cut(d, src, snk, VertexSet(n), n);
        REQUIRE_FALSE(r.exceeded);
        // Smallest subset of the middle vertices whose removal disconnects 0 from 1.
        int best = n;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (mask & 3u) continue;
            VertexSet seen(n, {0});
            std::vector<int> stack{0};
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                d.out(u).for_each([&](int w) {
                    if (!((mask >> w) & 1) && !seen.contains(w)) {
                        seen.insert(w);
                        stack.push_back(w);
                    }
                });
            }
            if (!seen.contains(1)) best = std::min(best, std::popcount(mask));
        }
        CHECK(r.cut.count() == best);
        CHECK(static_cast<int>(r.paths.size()) == best);
        CHECK_FALSE(r.cut.contains(0));
        CHECK_FALSE(r.cut.contains(1));
    }
}

TEST_CASE("covering families") {
    auto p0 = build_covering_family(5, 0, 3);
    CHECK(p0.members.size() == 1);
    CHECK(p0.members[0].empty());
    auto q0 = build_covering_family(5, 2, 0);
    CHECK(q0.members.size() == 1);
    CHECK(q0.members[0] == VertexSet::full(5));
    CHECK(verify_covering_family(build_covering_family(6, 1, 2), 1, 2));

    CoveringFamily only_empty{1, 0, 0, {VertexSet(1)}, "manual"};
    CHECK(verify_covering_family(only_empty, 0, 0));
    CHECK_FALSE(verify_covering_family(only_empty, 1, 0));

    const int u = 6;
    CoveringFamily singles{u, 1, u - 1, {VertexSet(u)}, "manual"};
    for (int v = 0; v < u; ++v) singles.members.push_back(VertexSet(u, {v}));
    CHECK(verify_covering_family(singles, 1, u - 1));

    for (int n = 1; n <= 12; ++n)
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
                if (p + q > n) continue;
                auto f = build_covering_family(n, p, q);
                INFO("n=" << n << " p=" << p << " q=" << q);
                CHECK(verify_covering_family(f, p, q));
            }
}

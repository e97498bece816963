#include "scd/irrelevant.hpp"

#include <algorithm>
#include <sstream>

#include "scd/errors.hpp"
#include "scd/oracles.hpp"

namespace scd {

long long p_threshold(int k) {
    const long long kk = k;
    return 80 * kk * kk + 80 * kk + 5;
}

int irrelevant_parameter(const PatternDigraph& h) {
    return std::max(1, static_cast<int>(h.arcs.size()) + h.isolated_count());
}

namespace {

struct Checker {
    const IrrelevantOptions& opts;
    IrrelevantReport& report;

    // A failed count is fatal in theoretical mode and a warning otherwise.
    void require(bool ok, const std::string& what, const std::string& quantity, long long have, long long need) {
        if (ok) return;
        if (!opts.opportunistic) throw ThresholdError(what, quantity, have, need);
        report.warnings.push_back(what + " (" + quantity + " = " + std::to_string(have) + ", need " +
                                  std::to_string(need) + ")");
    }
};

bool semicomplete_on(const std::vector<std::vector<char>>& adj) {
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (std::size_t j = i + 1; j < adj.size(); ++j)
            if (!adj[i][j] && !adj[j][i]) return false;
    return true;
}

bool contains(const std::vector<Vertex>& v, Vertex x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

IrrelevantReport find_irrelevant_vertex(const PatternDigraph& h, const RootedHost& host, const Triple& triple,
                                        const IrrelevantOptions& opts) {
    const Digraph& t = host.graph;
    const int n = t.size();
    validate_rooted_host(host);
    if (!verify_triple(t, triple.a, triple.b, triple.c)) throw InputError("the supplied triple does not verify");

    IrrelevantReport rep;
    Checker check{opts, rep};
    const int k = irrelevant_parameter(h);
    rep.k = k;
    rep.p = p_threshold(k);
    rep.out_threshold = 6 * k;
    rep.x_min = 16 * k * k + 16 * k + 1;
    rep.s_out_degree = 6 * k * k + 6 * k;
    rep.in_threshold = 8 * k;
    rep.s2_in_degree = 8 * k * k + 8 * k;

    for (Vertex r : host.roots)
        if (contains(triple.a, r) || contains(triple.b, r) || contains(triple.c, r))
            throw InputError("root " + std::to_string(r + 1) + " lies in the triple");
    check.require(triple.k >= rep.p, "triple is smaller than p(k)", "triple size", triple.k, rep.p);

    const VertexSet a_set = VertexSet::of(n, triple.a);
    const VertexSet b_set = VertexSet::of(n, triple.b);
    const VertexSet c_set = VertexSet::of(n, triple.c);
    rep.b = triple.b;

    // Phase 1: in-neighbours of b outside A, split by how many out-neighbours
    // they have in B.
    std::vector<VertexSet> g_sets;
    for (Vertex b : triple.b) {
        std::vector<Vertex> r, g;
        (t.in(b) - a_set).for_each([&](Vertex v) {
            if (t.out(v).intersection_count(b_set) >= rep.out_threshold) r.push_back(v);
            else g.push_back(v);
        });
        if (g.empty()) rep.b_empty.push_back(b);
        g_sets.push_back(VertexSet::of(n, g));
        rep.r_sets.push_back(std::move(r));
        rep.g_sets.push_back(std::move(g));
    }
    std::sort(rep.b_empty.begin(), rep.b_empty.end());

    if (static_cast<int>(rep.b_empty.size()) >= rep.x_min) {
        rep.took_b_empty = true;
        rep.x_set = rep.b_empty;
    } else {
        std::vector<int> bg;  // indices into triple.b with nonempty G_b
        for (std::size_t i = 0; i < triple.b.size(); ++i)
            if (!rep.g_sets[i].empty()) bg.push_back(static_cast<int>(i));
        check.require(static_cast<long long>(bg.size()) >= 4LL * rep.x_min, "too few vertices with nonempty G_b",
                      "|B_g|", static_cast<long long>(bg.size()), 4LL * rep.x_min);
        const int m = static_cast<int>(bg.size());
        std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
        // (b1, b2) when every v in G_b1 lies in G_b2 or has an out-neighbour there.
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                const VertexSet& g1 = g_sets[bg[i]];
                const VertexSet& g2 = g_sets[bg[j]];
                bool ok = true;
                g1.for_each([&](Vertex v) {
                    if (ok && !g2.contains(v) && !t.out(v).intersects(g2)) ok = false;
                });
                adj[i][j] = ok;
            }
        rep.s_vertices = m;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) rep.s_arcs += adj[i][j];
        check.require(semicomplete_on(adj), "auxiliary digraph S is not semi-complete", "S semi-complete", 0, 1);
        for (int i = 0; i < m; ++i) {
            int deg = static_cast<int>(std::count(adj[i].begin(), adj[i].end(), 1));
            if (deg >= rep.s_out_degree) rep.x_set.push_back(triple.b[bg[i]]);
        }
        std::sort(rep.x_set.begin(), rep.x_set.end());
        check.require(static_cast<int>(rep.x_set.size()) >= rep.x_min, "phase-1 set X is too small", "|X|",
                      static_cast<long long>(rep.x_set.size()), rep.x_min);
    }
    if (rep.x_set.empty()) {
        check.require(false, "phase 1 produced no candidate", "|X|", 0, rep.x_min);
        // Opportunistic fallback: any vertex of B.
        rep.x_set = triple.b;
        std::sort(rep.x_set.begin(), rep.x_set.end());
    }

    // Phase 2: out-neighbours of x outside C, split by in-neighbours in B.
    std::vector<VertexSet> g2;
    for (Vertex y : rep.x_set) {
        std::vector<Vertex> g;
        (t.out(y) - c_set).for_each([&](Vertex v) {
            if (t.in(v).intersection_count(b_set) < rep.in_threshold) g.push_back(v);
        });
        g2.push_back(VertexSet::of(n, g));
        rep.g2_sets.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < rep.x_set.size(); ++i)
        if (rep.g2_sets[i].empty()) {
            rep.phase2_empty = true;
            rep.x = rep.x_set[i];
            return rep;
        }

    const int m = static_cast<int>(rep.x_set.size());
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    // (b1, b2) when every v2 in G'_b2 equals or is entered from some v1 in G'_b1.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            bool ok = true;
            g2[j].for_each([&](Vertex v) {
                if (ok && !g2[i].contains(v) && !t.in(v).intersects(g2[i])) ok = false;
            });
            adj[i][j] = ok;
        }
    rep.s2_vertices = m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rep.s2_arcs += adj[i][j];
    check.require(semicomplete_on(adj), "auxiliary digraph S' is not semi-complete", "S' semi-complete", 0, 1);
    int best = -1, best_deg = -1;
    for (int j = 0; j < m; ++j) {
        int deg = 0;
        for (int i = 0; i < m; ++i) deg += adj[i][j];
        if (deg >= rep.s2_in_degree) {
            rep.x = rep.x_set[j];
            return rep;
        }
        if (deg > best_deg) {
            best_deg = deg;
            best = j;
        }
    }
    check.require(false, "no vertex of S' reaches the in-degree threshold", "max in-degree in S'", best_deg,
                  rep.s2_in_degree);
    rep.x = rep.x_set[best];
    return rep;
}

RootedHost delete_vertex(const RootedHost& host, Vertex x) {
    const int n = host.graph.size();
    if (x < 0 || x >= n) throw InputError("vertex out of range");
    if (contains(host.roots, x)) throw InputError("cannot delete a root");
    RootedHost out;
    if (n == 1) return out;
    VertexSet keep = host.graph.all();
    keep.erase(x);
    auto sub = induced_subdigraph(host.graph, keep);
    out.graph = std::move(sub.graph);
    for (Vertex r : host.roots) out.roots.push_back(sub.from_parent[r]);
    return out;
}

namespace {

bool rooted_answer(const PatternDigraph& h, const RootedHost& host) {
    return oracle::brute_force_containment(h, host.graph, oracle::Mode::RootedImmersion, host.roots);
}

}  // namespace

bool check_answer_preserved(const PatternDigraph& h, const RootedHost& host, Vertex x) {
    if (!oracle::flow_checkable(h) && host.graph.size() > oracle::kMaxContainmentHost)
        throw BudgetExceeded("answer check needs a flow-checkable pattern or a host of at most " +
                                 std::to_string(oracle::kMaxContainmentHost) + " vertices",
                             host.graph.size());
    const bool before = rooted_answer(h, host);
    if (contains(host.roots, x)) return !before;
    const bool after = rooted_answer(h, delete_vertex(host, x));
    return before == after;
}

std::string format_irrelevant_report(const IrrelevantReport& r) {
    std::ostringstream out;
    auto ids = [&](const std::vector<Vertex>& v) {
        std::string s;
        for (Vertex x : v) s += (s.empty() ? "" : " ") + std::to_string(x + 1);
        return s;
    };
    out << "x: " << r.x + 1 << '\n';
    out << "k: " << r.k << "  p(k): " << r.p << '\n';
    out << "thresholds: 6k=" << r.out_threshold << " 16k^2+16k+1=" << r.x_min << " 6k^2+6k=" << r.s_out_degree
        << " 8k=" << r.in_threshold << " 8k^2+8k=" << r.s2_in_degree << '\n';
    out << "|B_empty|: " << r.b_empty.size() << (r.took_b_empty ? " (X = B_empty)" : "") << '\n';
    if (!r.took_b_empty) out << "S: " << r.s_vertices << " vertices, " << r.s_arcs << " arcs\n";
    out << "X (" << r.x_set.size() << "): " << ids(r.x_set) << '\n';
    if (r.phase2_empty) out << "phase 2: G'_x empty\n";
    else out << "S': " << r.s2_vertices << " vertices, " << r.s2_arcs << " arcs\n";
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
    return out.str();
}

}  // namespace scd

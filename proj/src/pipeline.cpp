#include "scd/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "scd/errors.hpp"
#include "scd/immersion_dp.hpp"
#include "scd/irrelevant.hpp"

namespace scd {

const char* profile_name(Profile p) { return p == Profile::Theoretical ? "theoretical" : "opportunistic"; }

const char* method_name(Method m) {
    switch (m) {
        case Method::Dp: return "dp";
        case Method::TripleEmbedding: return "triple-embedding";
        case Method::Threshold: return "threshold";
        case Method::Probe: return "probe";
        case Method::Jungle: return "jungle";
        case Method::DeletionSearch: return "deletion-search";
        case Method::Trivial: return "trivial";
    }
    return "?";
}

namespace {

PathDecomposition chain_decomposition(const Digraph& t) {
    PathDecomposition w;
    for (auto& comp : scc_reverse_topological_order(t)) w.bags.push_back(comp);
    return w;
}

std::vector<Vertex> outdegree_order(const Digraph& t) {
    std::vector<Vertex> order(t.size());
    for (int v = 0; v < t.size(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return t.out_degree(a) < t.out_degree(b); });
    return order;
}

// Vertex layout built greedily: the next vertex is the one leaving the
// fewest placed vertices with out-neighbours still unplaced. Bag i holds the
// i-th vertex and those placed vertices.
PathDecomposition greedy_layout_decomposition(const Digraph& t) {
    const int n = t.size();
    VertexSet placed(n);
    PathDecomposition w;
    auto boundary = [&](const VertexSet& p) {
        VertexSet b(n);
        p.for_each([&](Vertex u) {
            if (!t.out(u).subset_of(p)) b.insert(u);
        });
        return b;
    };
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        int best_size = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (placed.contains(v)) continue;
            VertexSet trial = placed;
            trial.insert(v);
            int size = boundary(trial).count();
            if (best < 0 || size < best_size) {
                best = v;
                best_size = size;
            }
        }
        VertexSet bag = boundary(placed);
        bag.insert(best);
        w.bags.push_back(bag.to_vector());
        placed.insert(best);
    }
    return w;
}

// Narrowest verified decomposition among the given one and the cheap
// alternatives. Earlier candidates win ties.
PathDecomposition narrowest(const Digraph& t, std::optional<PathDecomposition> primary) {
    std::vector<PathDecomposition> cands;
    if (primary) cands.push_back(std::move(*primary));
    cands.push_back(chain_decomposition(t));
    cands.push_back(decomposition_from_cutwidth_order(t, outdegree_order(t)));
    cands.push_back(greedy_layout_decomposition(t));
    int best = -1, best_width = 0;
    for (int i = 0; i < static_cast<int>(cands.size()); ++i) {
        auto check = verify_path_decomposition(t, cands[i]);
        if (!check.valid) throw std::logic_error("candidate decomposition failed verification: " + check.reason);
        if (best < 0 || check.width < best_width) {
            best = i;
            best_width = check.width;
        }
    }
    return cands[best];
}

Model map_model(Model m, const std::vector<Vertex>& to_orig) {
    for (auto& x : m.vertex_map) x = to_orig[x];
    for (auto& p : m.paths)
        for (auto& x : p) x = to_orig[x];
    return m;
}

// Sequential shortest arc-disjoint paths between fixed root images.
std::optional<Model> probe_rooted(const PatternDigraph& h, const RootedHost& host) {
    if (static_cast<int>(h.roots.size()) != h.n) return std::nullopt;
    const Digraph& t = host.graph;
    const int n = t.size();
    Model m;
    m.vertex_map.assign(h.n, -1);
    for (std::size_t i = 0; i < h.roots.size(); ++i) m.vertex_map[h.roots[i]] = host.roots[i];
    std::set<Arc> used;
    for (auto [u, v] : h.arcs) {
        const Vertex s = m.vertex_map[u], goal = m.vertex_map[v];
        std::vector<Vertex> parent(n, -1);
        parent[s] = s;
        std::deque<Vertex> queue{s};
        while (!queue.empty() && parent[goal] == -1) {
            Vertex x = queue.front();
            queue.pop_front();
            t.out(x).for_each([&](Vertex y) {
                if (parent[y] == -1 && !used.count({x, y})) {
                    parent[y] = x;
                    queue.push_back(y);
                }
            });
        }
        if (parent[goal] == -1) return std::nullopt;
        std::vector<Vertex> path{goal};
        for (Vertex x = goal; x != s; x = parent[x]) path.push_back(parent[x]);
        std::reverse(path.begin(), path.end());
        for (std::size_t i = 0; i + 1 < path.size(); ++i) used.insert({path[i], path[i + 1]});
        m.paths.push_back(std::move(path));
    }
    if (!verify_model(h, t, m, ContainmentMode::RootedImmersion, host.roots).valid) return std::nullopt;
    return m;
}

// Bounded backtracking for a model: images in id order, simple paths tried
// direct arc first. Gives up after `limit` extension steps; anything found is
// verified before it is returned.
class ModelProbe {
public:
    ModelProbe(const PatternDigraph& h, const Digraph& t, ContainmentMode mode, const std::vector<Vertex>& roots,
               long long limit)
        : h_(h), t_(t), mode_(mode), roots_(roots), limit_(limit), image_(h.n, -1), owner_(t.size(), -1),
          interior_(t.size(), 0), paths_(h.arcs.size()) {
        fixed_.assign(h.n, -1);
        if (mode == ContainmentMode::RootedImmersion)
            for (std::size_t i = 0; i < h.roots.size(); ++i) fixed_[h.roots[i]] = roots[i];
    }

    std::optional<Model> run() {
        if (h_.n > t_.size()) return std::nullopt;
        if (!place(0)) return std::nullopt;
        Model m{image_, paths_};
        if (!verify_model(h_, t_, m, mode_, roots_).valid) return std::nullopt;
        return m;
    }

private:
    bool tick() { return ++steps_ <= limit_; }

    bool place(int u) {
        if (u == h_.n) return route(0);
        if (fixed_[u] >= 0) return owner_[fixed_[u]] == -1 && assign(u, fixed_[u]);
        for (Vertex x = 0; x < t_.size(); ++x) {
            if (!tick()) return false;
            if (owner_[x] != -1 || is_root(x)) continue;
            if (assign(u, x)) return true;
        }
        return false;
    }

    bool is_root(Vertex x) const {
        return mode_ == ContainmentMode::RootedImmersion && std::find(roots_.begin(), roots_.end(), x) != roots_.end();
    }

    bool assign(int u, Vertex x) {
        image_[u] = x;
        owner_[x] = u;
        if (place(u + 1)) return true;
        owner_[x] = -1;
        image_[u] = -1;
        return false;
    }

    bool route(std::size_t e) {
        if (e == h_.arcs.size()) return true;
        auto [u, v] = h_.arcs[e];
        paths_[e] = {image_[u]};
        return extend(e, image_[v]);
    }

    bool extend(std::size_t e, Vertex goal) {
        if (!tick()) return false;
        auto& path = paths_[e];
        const Vertex cur = path.back();
        if (t_.has_arc(cur, goal) && !used_.count({cur, goal})) {
            used_.insert({cur, goal});
            path.push_back(goal);
            if (route(e + 1)) return true;
            path.pop_back();
            used_.erase({cur, goal});
        }
        bool found = false;
        t_.out(cur).for_each([&](Vertex y) {
            if (found || y == goal || used_.count({cur, y})) return;
            if (std::find(path.begin(), path.end(), y) != path.end()) return;
            if (mode_ == ContainmentMode::Topological && (owner_[y] != -1 || interior_[y])) return;
            used_.insert({cur, y});
            path.push_back(y);
            if (mode_ == ContainmentMode::Topological) interior_[y] = 1;
            found = extend(e, goal);
            if (!found) {
                if (mode_ == ContainmentMode::Topological) interior_[y] = 0;
                path.pop_back();
                used_.erase({cur, y});
            }
        });
        return found;
    }

    const PatternDigraph& h_;
    const Digraph& t_;
    ContainmentMode mode_;
    std::vector<Vertex> roots_;
    long long limit_;
    long long steps_ = 0;
    std::vector<Vertex> image_;
    std::vector<int> owner_;
    std::vector<char> interior_;
    std::vector<std::vector<Vertex>> paths_;
    std::vector<Vertex> fixed_;
    std::set<Arc> used_;
};

constexpr long long kProbeSteps = 200000;

// Removes x from B together with one matched (c, a) pair and renumbers.
std::optional<Triple> repair_triple(const Triple& tr, Vertex x, const std::vector<Vertex>& from_parent,
                                    const Digraph& reduced) {
    auto pos = std::find(tr.b.begin(), tr.b.end(), x);
    if (pos == tr.b.end() || tr.k <= 1) return std::nullopt;
    Triple out = tr;
    out.b.erase(out.b.begin() + (pos - tr.b.begin()));
    out.a.pop_back();
    out.c.pop_back();
    for (auto* part : {&out.a, &out.b, &out.c})
        for (auto& v : *part) v = from_parent[v];
    return verify_triple(reduced, out.a, out.b, out.c);
}

std::optional<Triple> lift_triple(std::optional<Triple> tr, const std::vector<Vertex>& to_parent) {
    if (!tr) return tr;
    for (auto* part : {&tr->a, &tr->b, &tr->c})
        for (auto& v : *part) v = to_parent[v];
    return tr;
}

// Opportunistic extraction of a `size`-triple from the jungle, then from the
// whole region it came from. Every hit is verified by the extractor.
std::optional<Triple> triple_near_jungle(const Digraph& t, const PathwidthResult& r, int size,
                                         std::vector<std::string>& log) {
    if (size < 1 || size > 5) return std::nullopt;
    for (const auto& source : {r.jungle.z, r.region.to_vector()}) {
        if (static_cast<int>(source.size()) < size) continue;
        try {
            auto ex = triple_from_jungle(t, source, size, ExtractionMode::Opportunistic);
            if (ex.triple) return ex.triple;
            log.push_back("triple extraction (" + std::to_string(source.size()) + " vertices): " + ex.reason);
        } catch (const BudgetExceeded& e) {
            log.push_back(std::string("triple extraction skipped: ") + e.what());
        }
    }
    return std::nullopt;
}

}  // namespace

PathDecomposition narrow_decomposition(const Digraph& t) {
    std::optional<PathDecomposition> primary;
    for (int k = 1;; ++k) {
        auto r = approximate_pathwidth(t, k);
        if (!r.is_jungle) {
            if (!r.short_circuited) primary = r.decomposition;
            else if (!primary) primary = r.decomposition;
            break;
        }
    }
    return narrowest(t, std::move(primary));
}

SolveReport solve_topological_containment(const PatternDigraph& h, const Digraph& t, const SolveOptions& opts) {
    require_semicomplete(t, "solve_topological_containment");
    SolveReport rep;
    rep.profile = opts.profile;
    rep.pattern = subdivide_loops(h);
    const PatternDigraph& pat = rep.pattern;

    if (auto m = ModelProbe(pat, t, ContainmentMode::Topological, {}, kProbeSteps).run()) {
        rep.answer = true;
        rep.method = Method::Probe;
        rep.model = std::move(m);
        return rep;
    }
    for (int k = 1;; k *= 2) {
        ++rep.iterations;
        rep.k_reached = k;
        auto r = approximate_pathwidth(t, k);
        if (!r.is_jungle) {
            PathDecomposition w = narrowest(t, r.decomposition);
            DpOptions dopt;
            dopt.budget = opts.budget;
            auto dp = dp_topological_containment(pat, t, w, dopt);
            rep.log.push_back("k=" + std::to_string(k) + ": DP on a width-" + std::to_string(w.width()) +
                              " decomposition");
            rep.answer = dp.answer;
            rep.method = Method::Dp;
            rep.model = dp.model;
            rep.decomposition = std::move(w);
            rep.dp_states = dp.max_layer_states;
            return rep;
        }
        rep.jungle = r.jungle;
        rep.log.push_back("k=" + std::to_string(k) + ": verified jungle");
        if (meets_f_threshold(k, pat.size())) {
            rep.answer = true;
            rep.method = Method::Threshold;
            return rep;
        }
        if (auto tr = triple_near_jungle(t, r, pat.size(), rep.log)) {
            Model m = embed_in_triple(pat, *tr);
            if (verify_model(pat, t, m, ContainmentMode::Topological).valid) {
                rep.answer = true;
                rep.method = Method::TripleEmbedding;
                rep.triple = tr;
                rep.model = std::move(m);
                return rep;
            }
        }
    }
}

SolveReport solve_rooted_immersion(const PatternDigraph& h, const RootedHost& host, const SolveOptions& opts) {
    validate_rooted_host(host);
    require_semicomplete(host.graph, "solve_rooted_immersion");
    SolveReport rep;
    rep.profile = opts.profile;
    rep.pattern = subdivide_loops(h);
    const PatternDigraph& pat = rep.pattern;
    if (pat.roots.size() != host.roots.size()) throw InputError("pattern and host root counts differ");

    RootedHost cur = host;
    std::vector<Vertex> to_orig(host.graph.size());
    for (int v = 0; v < host.graph.size(); ++v) to_orig[v] = v;
    std::optional<Triple> hint = opts.triple_hint;
    if (hint && !verify_triple(cur.graph, hint->a, hint->b, hint->c))
        throw InputError("the supplied triple does not verify");
    const long long p = p_threshold(irrelevant_parameter(pat));
    const bool opportunistic = opts.profile == Profile::Opportunistic;
    if (opportunistic) rep.log.push_back("opportunistic profile: deletions below p(k) carry no guarantee");

    auto decide_by_dp = [&](const PathDecomposition& w) {
        DpOptions dopt;
        dopt.budget = opts.budget;
        auto dp = dp_rooted_immersion(pat, cur, w, dopt);
        rep.answer = dp.answer;
        rep.method = Method::Dp;
        if (dp.model) rep.model = map_model(*dp.model, to_orig);
        rep.decomposition = w;
        rep.dp_states = dp.max_layer_states;
        rep.log.push_back("DP on a width-" + std::to_string(w.width()) + " decomposition");
        return rep;
    };

    const int limit = host.graph.size();
    for (int iter = 0; iter <= limit; ++iter) {
        ++rep.iterations;
        auto m = probe_rooted(pat, cur);
        if (!m) m = ModelProbe(pat, cur.graph, ContainmentMode::RootedImmersion, cur.roots, kProbeSteps).run();
        if (m) {
            rep.answer = true;
            rep.method = Method::Probe;
            rep.model = map_model(*m, to_orig);
            return rep;
        }

        if (hint && (opportunistic || hint->k >= p)) {
            try {
                auto irr = find_irrelevant_vertex(pat, cur, *hint, IrrelevantOptions{opportunistic});
                const Vertex x = irr.x;
                rep.deleted.push_back(to_orig[x]);
                rep.log.push_back("deleted irrelevant vertex " + std::to_string(to_orig[x] + 1) + " (triple size " +
                                  std::to_string(hint->k) + ")");
                for (const auto& w : irr.warnings) rep.log.push_back("warning: " + w);
                VertexSet keep = cur.graph.all();
                keep.erase(x);
                auto sub = induced_subdigraph(cur.graph, keep);
                hint = repair_triple(*hint, x, sub.from_parent, sub.graph);
                std::vector<Vertex> next_orig(sub.to_parent.size());
                for (std::size_t i = 0; i < sub.to_parent.size(); ++i) next_orig[i] = to_orig[sub.to_parent[i]];
                to_orig = std::move(next_orig);
                cur = delete_vertex(cur, x);
                continue;
            } catch (const ThresholdError& e) {
                rep.log.push_back(std::string("irrelevant vertex not found: ") + e.what());
                hint.reset();
            }
        }

        // Decomposition of the host without its roots; roots join every bag.
        VertexSet rest = cur.graph.all();
        for (Vertex r : cur.roots) rest.erase(r);
        if (rest.empty()) {
            PathDecomposition w;
            if (!cur.roots.empty()) w.bags.push_back(cur.roots);
            return decide_by_dp(w);
        }
        auto sub = induced_subdigraph(cur.graph, rest);
        auto with_roots = [&](const PathDecomposition& inner) {
            PathDecomposition w;
            for (const auto& bag : inner.bags) {
                std::vector<Vertex> lifted;
                for (Vertex v : bag) lifted.push_back(sub.to_parent[v]);
                lifted.insert(lifted.end(), cur.roots.begin(), cur.roots.end());
                std::sort(lifted.begin(), lifted.end());
                w.bags.push_back(std::move(lifted));
            }
            return w;
        };
        bool found_triple = false;
        for (int k = 1;; k *= 2) {
            rep.k_reached = std::max(rep.k_reached, k);
            auto r = approximate_pathwidth(sub.graph, k);
            if (!r.is_jungle) return decide_by_dp(with_roots(narrowest(sub.graph, r.decomposition)));
            rep.jungle = r.jungle;
            rep.log.push_back("k=" + std::to_string(k) + ": verified jungle");
            const int want = static_cast<int>(std::min<long long>(p, 5));
            if (auto tr = triple_near_jungle(sub.graph, r, want, rep.log)) {
                if (opportunistic || tr->k >= p) {
                    hint = lift_triple(tr, sub.to_parent);
                    found_triple = true;
                    break;
                }
            }
        }
        if (!found_triple) break;
    }
    // No progress possible: decide on the narrowest available decomposition.
    rep.log.push_back("fallback: DP regardless of width");
    return decide_by_dp(narrowest(cur.graph, std::nullopt));
}

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool immerses(const PatternDigraph& o, const Digraph& t, const SolveOptions& opts) {
    if (o.n > t.size()) return false;
    if (t.size() == 0) return o.n == 0;
    DpOptions dopt;
    dopt.budget = opts.budget;
    dopt.want_model = false;
    return dp_immersion(o, t, narrow_decomposition(t), dopt).answer;
}

}  // namespace

SolveReport solve_pi_kv(const Digraph& t, int k, const std::vector<PatternDigraph>& obstructions,
                        std::optional<int> c_pi, const SolveOptions& opts) {
    require_semicomplete(t, "solve_pi_kv");
    if (k < 0) throw InputError("k must be non-negative");
    SolveReport rep;
    rep.profile = opts.profile;
    const int n = t.size();
    std::vector<PatternDigraph> obs;
    for (const auto& o : obstructions) obs.push_back(subdivide_loops(o));

    if (c_pi) {
        const int kk = *c_pi + k + 2;
        rep.k_reached = kk;
        auto r = approximate_pathwidth(t, kk);
        if (r.is_jungle) {
            rep.answer = false;
            rep.method = Method::Jungle;
            rep.jungle = r.jungle;
            rep.log.push_back("verified " + std::to_string(kk) + "-jungle exceeds the width bound");
            return rep;
        }
    }
    if (k >= n) {
        rep.answer = true;
        rep.method = Method::Trivial;
        for (int v = 0; v < n; ++v) rep.deletion_set.push_back(v);
        return rep;
    }
    double tests = 0;
    for (int s = 0; s <= k; ++s) tests += binomial(n, s);
    tests *= std::max<std::size_t>(1, obs.size());
    if (tests > opts.budget) throw BudgetExceeded("deletion-set search exceeds the budget", tests);

    rep.method = Method::DeletionSearch;
    std::vector<int> idx;
    for (int s = 0; s <= k; ++s) {
        idx.resize(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ++rep.iterations;
            VertexSet keep = t.all();
            for (int i : idx) keep.erase(i);
            Digraph rest = keep.empty() ? Digraph(0) : induced_subdigraph(t, keep).graph;
            bool clean = true;
            for (const auto& o : obs)
                if (immerses(o, rest, opts)) {
                    clean = false;
                    break;
                }
            if (clean) {
                rep.answer = true;
                rep.deletion_set.assign(idx.begin(), idx.end());
                return rep;
            }
            int i = s - 1;
            while (i >= 0 && idx[i] == n - s + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    rep.answer = false;
    return rep;
}

bool verify_report(const SolveReport& r, const Digraph& t, ContainmentMode mode, const std::vector<Vertex>& host_roots) {
    switch (r.method) {
        case Method::Dp: {
            if (r.answer && (!r.model || !verify_model(r.pattern, t, *r.model, mode, host_roots).valid)) return false;
            if (!r.decomposition) return false;
            // The DP ran on the host left after the recorded deletions.
            VertexSet keep = t.all();
            for (Vertex x : r.deleted) keep.erase(x);
            Digraph reduced = keep.empty() ? Digraph(0) : induced_subdigraph(t, keep).graph;
            return verify_path_decomposition(reduced, *r.decomposition).valid;
        }
        case Method::TripleEmbedding:
            return r.triple && verify_triple(t, r.triple->a, r.triple->b, r.triple->c) && r.model &&
                   verify_model(r.pattern, t, *r.model, mode, host_roots).valid;
        case Method::Probe: return r.model && verify_model(r.pattern, t, *r.model, mode, host_roots).valid;
        case Method::Threshold:
        case Method::Jungle: return r.jungle && verify_jungle(t, r.jungle->z, r.jungle->k);
        case Method::DeletionSearch:
        case Method::Trivial: return true;
    }
    return false;
}

}  // namespace scd

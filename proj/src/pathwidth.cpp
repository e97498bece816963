#include "scd/pathwidth.hpp"

#include <algorithm>
#include <stdexcept>

#include "scd/errors.hpp"
#include "scd/flow.hpp"

namespace scd {

int pathwidth_bound(int k) { return 4 * k * k + 7 * k; }

std::optional<Separation> balanced_cut_search(const Digraph& s, const BalancedCutQuery& query,
                                              const CoveringFamily& family,
                                              const std::function<bool(const Separation&)>& accept) {
    const int n = s.size();
    const VertexSet& x = query.x;
    const VertexSet& y = query.y;
    auto left_count = [&](const VertexSet& part) {
        return query.exclude_terminals ? (part - x).count() : part.count();
    };
    auto right_count = [&](const VertexSet& part) {
        return query.exclude_terminals ? (part - y).count() : part.count();
    };

    for (const VertexSet& r : family.members) {
        auto comps = scc_reverse_topological_order(s, r);
        const int g = static_cast<int>(comps.size());
        const VertexSet xr = x & r, yr = y & r;

        // Shortest prefix holding X∩R with enough vertices.
        VertexSet prefix(n);
        int h1 = 0;
        while (!(xr.subset_of(prefix) && left_count(prefix) >= query.a)) {
            if (h1 == g) break;
            for (int v : comps[h1]) prefix.insert(v);
            ++h1;
        }
        if (!(xr.subset_of(prefix) && left_count(prefix) >= query.a)) continue;

        // Shortest suffix holding Y∩R with enough vertices.
        VertexSet suffix(n);
        int h2 = g;
        while (!(yr.subset_of(suffix) && right_count(suffix) >= query.c)) {
            if (h2 == 0) break;
            --h2;
            for (int v : comps[h2]) suffix.insert(v);
        }
        if (!(yr.subset_of(suffix) && right_count(suffix) >= query.c)) continue;
        if (h1 > h2) continue;

        VertexFlow flow(s, s.all());
        r.for_each([&](int v) { flow.set_infinite(v); });
        (prefix | x).for_each([&](int v) { flow.add_source(v); });
        (suffix | y).for_each([&](int v) { flow.add_sink(v); });
        FlowResult fr = flow.run(query.b);
        if (fr.exceeded) continue;

        Separation sep{fr.source_side | fr.cut, s.all() - fr.source_side};
        if (!x.subset_of(sep.a) || !y.subset_of(sep.b) || sep.order() > query.b ||
            left_count(sep.left()) < query.a || right_count(sep.right()) < query.c ||
            !is_separation(s, sep.a, sep.b).valid)
            throw std::logic_error("balanced_cut: flow produced an infeasible separation");
        if (accept(sep)) return sep;
    }
    return std::nullopt;
}

std::optional<Separation> balanced_cut(const Digraph& s, const VertexSet& x, const VertexSet& y, int a, int b,
                                       int c) {
    if (a < 0 || b < 0 || c < 0) throw InputError("balanced_cut: negative threshold");
    CoveringFamily fam = build_covering_family(s.size(), a + c, b);
    BalancedCutQuery q{x, y, a, b, c, false};
    return balanced_cut_search(s, q, fam, [](const Separation&) { return true; });
}

namespace {

VertexSet lift(const VertexSet& sub, const std::vector<Vertex>& to_parent, int n) {
    VertexSet out(n);
    sub.for_each([&](int v) { out.insert(to_parent[v]); });
    return out;
}

VertexSet restrict_to(const VertexSet& set, const std::vector<Vertex>& from_parent, int m) {
    VertexSet out(m);
    set.for_each([&](int v) {
        if (from_parent[v] >= 0) out.insert(from_parent[v]);
    });
    return out;
}

}  // namespace

Bundle build_bundle(const Digraph& t, int k, const BundleOptions& opts) {
    if (k < 1) throw InputError("build_bundle: k must be at least 1");
    require_semicomplete(t, "build_bundle");
    const int n = t.size();
    Bundle bundle;
    bundle.k = k;
    VertexSet prefix(n);
    bundle.members.push_back({prefix, t.all()});
    for (const auto& comp : scc_reverse_topological_order(t)) {
        for (int v : comp) prefix.insert(v);
        bundle.members.push_back({prefix, t.all() - prefix});
    }

    std::map<std::tuple<int, int, int>, CoveringFamily> families;
    auto family_for = [&](int size, int p, int q) -> const CoveringFamily& {
        auto key = std::make_tuple(size, p, q);
        auto it = families.find(key);
        if (it == families.end()) it = families.emplace(key, build_covering_family(size, p, q)).first;
        return it->second;
    };

    for (int i = 1; i < k; ++i) {
        size_t j = 0;
        while (j + 1 < bundle.members.size()) {
            const Separation left = bundle.members[j];
            const Separation right = bundle.members[j + 1];
            const VertexSet gap = left.b & right.a;
            const VertexSet x = left.cut(), y = right.cut();
            bool inserted = false;
            if (gap.count() >= 2) {
                auto sub = induced_subdigraph(t, gap);
                const int m = sub.graph.size();
                const int xs = x.count(), ys = y.count();
                auto threshold = [&](int t_size) {
                    int raw = k * (i - t_size);
                    return opts.literal_thresholds ? std::min(raw, 1) : std::max(raw, 1);
                };
                BalancedCutQuery q{restrict_to(x, sub.from_parent, m), restrict_to(y, sub.from_parent, m),
                                   std::max(threshold(xs), 0), i, std::max(threshold(ys), 0), true};
                Separation lifted;
                auto accept = [&](const Separation& cand) {
                    Separation full{lift(cand.a, sub.to_parent, n) | left.a,
                                    lift(cand.b, sub.to_parent, n) | right.b};
                    if (full == left || full == right) return false;
                    if (!is_separation(t, full.a, full.b).valid) return false;
                    if (full.order() >= k) return false;
                    if (k_close(left, full, k) || k_close(full, right, k)) return false;
                    lifted = full;
                    return true;
                };
                if (balanced_cut_search(sub.graph, q, family_for(m, q.a + q.c, q.b), accept)) {
                    bundle.members.insert(bundle.members.begin() + static_cast<long>(j) + 1, lifted);
                    inserted = true;
                }
            }
            if (!inserted) ++j;
        }
    }
    return bundle;
}

PathDecomposition decomposition_from_bundle(const Bundle& bundle) {
    PathDecomposition w;
    for (size_t i = 0; i + 1 < bundle.members.size(); ++i) {
        VertexSet bag = bundle.members[i + 1].a & bundle.members[i].b;
        if (!bag.empty()) w.bags.push_back(bag.to_vector());
    }
    return w;
}

Jungle extract_jungle(const Digraph& t, const VertexSet& w, int k, int l) {
    if (w.count() < 5 * k + 4 * l)
        throw InputError("extract_jungle: |W| = " + std::to_string(w.count()) + " is below 5k+4l = " +
                         std::to_string(5 * k + 4 * l));
    Jungle j;
    j.k = k;
    w.for_each([&](int v) {
        if (static_cast<int>(j.z.size()) == k) return;
        if ((t.out(v) & w).count() >= k + l && (t.in(v) & w).count() >= k + l) j.z.push_back(v);
    });
    if (static_cast<int>(j.z.size()) < k)
        throw std::logic_error("extract_jungle: fewer than k high-degree vertices; W is separable");
    return j;
}

bool verify_jungle(const Digraph& t, const std::vector<Vertex>& z, int k) {
    if (static_cast<int>(z.size()) != k) return false;
    const int n = t.size();
    VertexSet none(n);
    for (Vertex x : z)
        for (Vertex y : z) {
            if (x == y) continue;
            auto r = min_vertex_cut(t, VertexSet(n, {x}), VertexSet(n, {y}), none, k - 1);
            if (!r.exceeded) return false;
        }
    return true;
}

PathwidthResult approximate_pathwidth(const Digraph& t, int k, const PathwidthOptions& opts) {
    if (k < 1) throw InputError("approximate_pathwidth: k must be at least 1");
    require_semicomplete(t, "approximate_pathwidth");
    const int n = t.size();
    PathwidthResult res;
    res.width_bound = pathwidth_bound(k);
    res.region = VertexSet(n);

    auto finish_decomposition = [&](PathDecomposition w) {
        auto check = verify_path_decomposition(t, w);
        if (!check.valid || check.width > res.width_bound)
            throw std::logic_error("approximate_pathwidth: produced an invalid decomposition: " + check.reason);
        res.decomposition = std::move(w);
        return res;
    };

    if (opts.short_circuit && res.width_bound >= n - 1) {
        res.short_circuited = true;
        PathDecomposition w;
        if (n > 0) w.bags.push_back(t.all().to_vector());
        return finish_decomposition(std::move(w));
    }

    Bundle bundle = build_bundle(t, k, BundleOptions{opts.literal_thresholds});
    for (size_t j = 0; j + 1 < bundle.members.size(); ++j) {
        const Separation& lo = bundle.members[j];
        const Separation& hi = bundle.members[j + 1];
        if ((hi.a & lo.b).count() <= res.width_bound + 1) continue;
        VertexSet w = hi.left() & lo.right();
        const int l = k * k;
        res.is_jungle = true;
        res.region = w;
        res.jungle = extract_jungle(t, w, k, l);
        if (!verify_jungle(t, res.jungle.z, k))
            throw std::logic_error("approximate_pathwidth: extracted jungle failed certification");
        return res;
    }
    return finish_decomposition(decomposition_from_bundle(bundle));
}

namespace {
std::vector<int> positions_of(const Digraph& d, const std::vector<Vertex>& order) {
    std::vector<int> pos(d.size(), -1);
    if (static_cast<int>(order.size()) != d.size()) throw InputError("order is not a permutation of V(D)");
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
        Vertex v = order[i];
        if (v < 0 || v >= d.size() || pos[v] != -1) throw InputError("order is not a permutation of V(D)");
        pos[v] = i;
    }
    return pos;
}
}  // namespace

int cutwidth_of_order(const Digraph& d, const std::vector<Vertex>& order) {
    auto pos = positions_of(d, order);
    const int n = d.size();
    std::vector<int> diff(n + 1, 0);
    for (auto [u, v] : d.arcs()) {
        if (pos[u] > pos[v]) {
            diff[pos[v]]++;
            diff[pos[u]]--;
        }
    }
    int best = 0, cur = 0;
    for (int l = 0; l + 1 < n; ++l) {
        cur += diff[l];
        best = std::max(best, cur);
    }
    return best;
}

PathDecomposition decomposition_from_cutwidth_order(const Digraph& d, const std::vector<Vertex>& order) {
    auto pos = positions_of(d, order);
    const int n = d.size();
    std::vector<VertexSet> bags(n, VertexSet(n));
    for (int l = 0; l < n; ++l) bags[l].insert(order[l]);
    for (auto [u, v] : d.arcs()) {
        if (pos[u] <= pos[v]) continue;
        for (int l = pos[v]; l < pos[u]; ++l) {
            bags[l].insert(u);
            bags[l].insert(v);
        }
    }
    PathDecomposition w;
    for (int l = n - 1; l >= 0; --l) w.bags.push_back(bags[l].to_vector());
    return w;
}

}  // namespace scd

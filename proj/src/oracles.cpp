#include "scd/oracles.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "scd/errors.hpp"

namespace scd::oracle {
namespace {

using Mask = std::uint32_t;

std::vector<Mask> out_masks(const Digraph& d) {
    std::vector<Mask> out(d.size(), 0);
    for (int u = 0; u < d.size(); ++u)
        for (int v = 0; v < d.size(); ++v)
            if (u != v && d.has_arc(u, v)) out[u] |= Mask{1} << v;
    return out;
}

std::vector<Mask> in_masks(const std::vector<Mask>& out) {
    std::vector<Mask> in(out.size(), 0);
    for (std::size_t u = 0; u < out.size(); ++u)
        for (std::size_t v = 0; v < out.size(); ++v)
            if (out[u] >> v & 1) in[v] |= Mask{1} << u;
    return in;
}

void guard(int n, int limit, const char* what) {
    if (n > limit)
        throw BudgetExceeded(std::string(what) + ": host has " + std::to_string(n) + " vertices, limit " +
                                 std::to_string(limit),
                             static_cast<double>(n));
}

}  // namespace

ExactPathwidth exact_pathwidth(const Digraph& t) {
    const int n = t.size();
    guard(n, kMaxPathwidthVertices, "exact_pathwidth");
    ExactPathwidth res;
    if (n == 0) return res;
    const auto out = out_masks(t);
    const Mask full = (Mask{1} << n) - 1;
    const std::size_t states = std::size_t{1} << n;

    // boundary[P]: vertices of the placed prefix P that still have an
    // out-neighbour outside P and so must stay in the current bag.
    std::vector<std::uint8_t> boundary(states, 0);
    for (Mask p = 1; p <= full; ++p) {
        int cnt = 0;
        for (Mask rest = p; rest; rest &= rest - 1) {
            int u = std::countr_zero(rest);
            if (out[u] & ~p) ++cnt;
        }
        boundary[p] = static_cast<std::uint8_t>(cnt);
    }
    std::vector<std::uint8_t> dp(states, 0), pick(states, 0);
    for (Mask s = 1; s <= full; ++s) {
        int best = std::numeric_limits<int>::max();
        for (Mask rest = s; rest; rest &= rest - 1) {
            int v = std::countr_zero(rest);
            Mask prev = s & ~(Mask{1} << v);
            int val = std::max<int>(dp[prev], boundary[prev]);
            if (val < best) {
                best = val;
                pick[s] = static_cast<std::uint8_t>(v);
            }
        }
        dp[s] = static_cast<std::uint8_t>(best);
    }
    res.width = dp[full];

    std::vector<Vertex> order;
    for (Mask s = full; s; s &= ~(Mask{1} << pick[s])) order.push_back(pick[s]);
    std::reverse(order.begin(), order.end());
    Mask placed = 0;
    for (Vertex v : order) {
        std::vector<Vertex> bag{v};
        for (Mask rest = placed; rest; rest &= rest - 1) {
            int u = std::countr_zero(rest);
            if (out[u] & ~placed) bag.push_back(u);
        }
        std::sort(bag.begin(), bag.end());
        res.bags.push_back(std::move(bag));
        placed |= Mask{1} << v;
    }
    return res;
}

ExactCutwidth exact_cutwidth(const Digraph& d) {
    const int n = d.size();
    guard(n, kMaxCutwidthVertices, "exact_cutwidth");
    ExactCutwidth res;
    if (n == 0) return res;
    const auto out = out_masks(d);
    const auto in = in_masks(out);
    const Mask full = (Mask{1} << n) - 1;
    const std::size_t states = std::size_t{1} << n;

    // back[S]: arcs from V∖S into S.
    std::vector<int> back(states, 0), g(states, 0);
    std::vector<std::uint8_t> pick(states, 0);
    for (Mask s = 1; s <= full; ++s) {
        int v = std::countr_zero(s);
        Mask prev = s & ~(Mask{1} << v);
        back[s] = back[prev] - std::popcount(out[v] & prev) + std::popcount(in[v] & ~s & full);
        int best = std::numeric_limits<int>::max();
        for (Mask rest = s; rest; rest &= rest - 1) {
            int w = std::countr_zero(rest);
            int val = g[s & ~(Mask{1} << w)];
            if (val < best) {
                best = val;
                pick[s] = static_cast<std::uint8_t>(w);
            }
        }
        g[s] = std::max(back[s], best);
    }
    res.width = g[full];
    for (Mask s = full; s; s &= ~(Mask{1} << pick[s])) res.order.push_back(pick[s]);
    std::reverse(res.order.begin(), res.order.end());
    return res;
}

int edge_disjoint_paths(const Digraph& t, Vertex s, Vertex sink, int cap) {
    const int n = t.size();
    std::vector<std::vector<int>> residual(n, std::vector<int>(n, 0));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && t.has_arc(u, v)) residual[u][v] = 1;
    int flow = 0;
    while (flow < cap) {
        std::vector<int> parent(n, -1);
        parent[s] = s;
        std::vector<int> queue{s};
        for (std::size_t qi = 0; qi < queue.size() && parent[sink] == -1; ++qi) {
            int u = queue[qi];
            for (int v = 0; v < n; ++v)
                if (residual[u][v] > 0 && parent[v] == -1) {
                    parent[v] = u;
                    queue.push_back(v);
                }
        }
        if (parent[sink] == -1) break;
        for (int v = sink; v != s; v = parent[v]) {
            residual[parent[v]][v]--;
            residual[v][parent[v]]++;
        }
        ++flow;
    }
    return flow;
}

bool flow_checkable(const PatternDigraph& h) {
    if (h.arcs.empty() || static_cast<int>(h.roots.size()) != h.n) return false;
    for (const auto& a : h.arcs)
        if (a != h.arcs.front()) return false;
    return h.arcs.front().first != h.arcs.front().second;
}

namespace {

class ContainmentSearch {
public:
    ContainmentSearch(const PatternDigraph& h, const Digraph& t, Mode mode, const std::vector<Vertex>& host_roots)
        : h_(h), t_(t), mode_(mode), host_roots_(host_roots), image_(h.n, -1), image_of_(t.size(), -1),
          interior_(t.size(), 0), arc_used_(t.size(), std::vector<char>(t.size(), 0)) {
        if (mode == Mode::RootedImmersion)
            for (std::size_t i = 0; i < h.roots.size(); ++i) fixed_.emplace_back(h.roots[i], host_roots[i]);
    }

    bool run() { return place(0); }

private:
    bool place(int u) {
        if (u == h_.n) return route(0);
        for (auto [pu, x] : fixed_)
            if (pu == u) {
                if (image_of_[x] != -1) return false;
                return assign(u, x);
            }
        for (int x = 0; x < t_.size(); ++x) {
            if (image_of_[x] != -1 || is_host_root(x)) continue;
            if (assign(u, x)) return true;
        }
        return false;
    }

    bool is_host_root(Vertex x) const {
        if (mode_ != Mode::RootedImmersion) return false;
        return std::find(host_roots_.begin(), host_roots_.end(), x) != host_roots_.end();
    }

    bool assign(int u, Vertex x) {
        image_[u] = x;
        image_of_[x] = u;
        bool ok = place(u + 1);
        image_of_[x] = -1;
        image_[u] = -1;
        return ok;
    }

    bool route(std::size_t e) {
        if (e == h_.arcs.size()) return true;
        const Vertex from = image_[h_.arcs[e].first], to = image_[h_.arcs[e].second];
        std::vector<char> on_path(t_.size(), 0);
        on_path[from] = 1;
        return extend(e, from, to, on_path);
    }

    bool extend(std::size_t e, Vertex cur, Vertex to, std::vector<char>& on_path) {
        for (int y = 0; y < t_.size(); ++y) {
            if (!t_.has_arc(cur, y) || on_path[y] || arc_used_[cur][y]) continue;
            if (y == to) {
                arc_used_[cur][y] = 1;
                bool ok = route(e + 1);
                arc_used_[cur][y] = 0;
                if (ok) return true;
                continue;
            }
            if (mode_ == Mode::Topological && (image_of_[y] != -1 || interior_[y])) continue;
            arc_used_[cur][y] = 1;
            on_path[y] = 1;
            if (mode_ == Mode::Topological) interior_[y] = 1;
            bool ok = extend(e, y, to, on_path);
            if (mode_ == Mode::Topological) interior_[y] = 0;
            on_path[y] = 0;
            arc_used_[cur][y] = 0;
            if (ok) return true;
        }
        return false;
    }

    const PatternDigraph& h_;
    const Digraph& t_;
    Mode mode_;
    const std::vector<Vertex>& host_roots_;
    std::vector<std::pair<int, Vertex>> fixed_;
    std::vector<Vertex> image_;
    std::vector<int> image_of_;
    std::vector<char> interior_;
    std::vector<std::vector<char>> arc_used_;
};

}  // namespace

bool brute_force_containment(const PatternDigraph& h, const Digraph& t, Mode mode,
                             const std::vector<Vertex>& host_roots) {
    for (const auto& [u, v] : h.arcs)
        if (u == v) throw InputError("pattern has loops; subdivide them first");
    if (mode == Mode::RootedImmersion) {
        if (host_roots.size() != h.roots.size()) throw InputError("pattern and host root counts differ");
        std::set<Vertex> distinct(host_roots.begin(), host_roots.end());
        if (distinct.size() != host_roots.size()) throw InputError("host roots repeat");
        for (Vertex x : host_roots)
            if (x < 0 || x >= t.size()) throw InputError("host root out of range");
        if (flow_checkable(h)) {
            const int need = static_cast<int>(h.arcs.size());
            Vertex s = -1, sink = -1;
            for (std::size_t i = 0; i < h.roots.size(); ++i) {
                if (h.roots[i] == h.arcs[0].first) s = host_roots[i];
                if (h.roots[i] == h.arcs[0].second) sink = host_roots[i];
            }
            return edge_disjoint_paths(t, s, sink, need) >= need;
        }
    }
    guard(t.size(), kMaxContainmentHost, "brute_force_containment");
    if (h.n > t.size()) return false;
    return ContainmentSearch(h, t, mode, host_roots).run();
}

std::vector<MaskSeparation> brute_force_separations(const Digraph& d,
                                                    const std::function<bool(const MaskSeparation&)>& keep,
                                                    int max_order) {
    const int n = d.size();
    guard(n, kMaxSeparationVertices, "brute_force_separations");
    const auto out = out_masks(d);
    const auto in = in_masks(out);
    std::vector<MaskSeparation> found;
    // Each vertex goes to A only, B only, or both; no arc may lead from
    // A-only to B-only.
    auto rec = [&](auto&& self, int v, Mask left, Mask right, Mask cut) -> void {
        if (v == n) {
            MaskSeparation s{left | cut, right | cut};
            if (keep(s)) found.push_back(s);
            return;
        }
        const Mask bit = Mask{1} << v;
        if (!(out[v] & right)) self(self, v + 1, left | bit, right, cut);
        if (!(in[v] & left)) self(self, v + 1, left, right | bit, cut);
        if (max_order < 0 || std::popcount(cut) < max_order) self(self, v + 1, left, right, cut | bit);
    };
    rec(rec, 0, 0, 0, 0);
    return found;
}

std::vector<std::vector<std::vector<Vertex>>> brute_force_vdp(const Digraph& t,
                                                              const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    const int n = t.size();
    guard(n, kMaxVdpVertices, "brute_force_vdp");
    const auto out = out_masks(t);
    Mask terminals = 0;
    for (auto [s, x] : pairs) {
        if (s < 0 || s >= n || x < 0 || x >= n) throw InputError("terminal out of range");
        if (terminals & (Mask{1} << s)) throw InputError("terminals repeat");
        terminals |= Mask{1} << s;
        if (terminals & (Mask{1} << x)) throw InputError("terminals repeat");
        terminals |= Mask{1} << x;
    }

    auto reaches = [&](Vertex from, Vertex to, Mask blocked) {
        Mask seen = Mask{1} << from, frontier = seen;
        while (frontier) {
            Mask next = 0;
            for (Mask rest = frontier; rest; rest &= rest - 1) next |= out[std::countr_zero(rest)];
            if (next & (Mask{1} << to)) return true;
            next &= ~blocked & ~seen;
            seen |= next;
            frontier = next;
        }
        return false;
    };

    std::vector<std::vector<std::vector<Vertex>>> solutions;
    std::vector<std::vector<Vertex>> paths(pairs.size());
    // `used`: vertices on completed or current paths; other pairs' terminals
    // are never usable as interior vertices.
    auto feasible = [&](std::size_t from_pair, Mask used) {
        for (std::size_t j = from_pair; j < pairs.size(); ++j) {
            Mask blocked = used | terminals;
            if (!reaches(pairs[j].first, pairs[j].second, blocked)) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t i, Mask used) -> void {
        if (i == pairs.size()) {
            solutions.push_back(paths);
            return;
        }
        auto [s, x] = pairs[i];
        paths[i] = {s};
        auto walk = [&](auto&& walk_self, Vertex cur, Mask on_path) -> void {
            for (Mask rest = out[cur]; rest; rest &= rest - 1) {
                Vertex y = std::countr_zero(rest);
                if (y == x) {
                    paths[i].push_back(y);
                    Mask now = used | on_path | (Mask{1} << y);
                    if (feasible(i + 1, now)) self(self, i + 1, now);
                    paths[i].pop_back();
                    continue;
                }
                const Mask bit = Mask{1} << y;
                if ((on_path | used | terminals) & bit) continue;
                if (!reaches(y, x, used | on_path | bit | (terminals & ~(Mask{1} << x)))) continue;
                paths[i].push_back(y);
                walk_self(walk_self, y, on_path | bit);
                paths[i].pop_back();
            }
        };
        walk(walk, s, Mask{1} << s);
    };
    if (feasible(0, 0)) rec(rec, 0, 0);
    return solutions;
}

}  // namespace scd::oracle

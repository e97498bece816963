#include "scd/immersion_dp.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "scd/errors.hpp"
#include "scd/signature.hpp"

namespace scd {
namespace {

// Per-arc action taken when a vertex v is introduced.
enum Act : int {
    kNone,
    kMerge,     // p -> v -> s joins pairs idx and idx+1
    kExtEnd,    // pair idx continues p -> v
    kExtBegin,  // pair idx now starts v -> s
    kNew,       // fresh pair (v, v) inserted at position idx
    kTailLink,  // v is the tail image; first pair now starts at v
    kTailNew,   // v is the tail image; (v, v) prepended
    kHeadLink,  // v is the head image; last pair now ends at v
    kHeadNew,   // v is the head image; (v, v) appended
};

struct Option {
    Act act;
    int idx;
    int pred;  // bag vertex p of a used arc p -> v, or -1
    int succ;  // bag vertex s of a used arc v -> s, or -1
    int cls;   // forgotten class entered through v, or -1
    bool uses_v;
};

struct Back {
    int parent = -1;
    int image = -1;         // pattern vertex placed on v, -1 if none
    std::vector<int> acts;  // act * 65536 + idx per arc (introduce only)
    std::vector<int> perm;  // new arc index -> previous arc index; empty if identity
};

using Key = std::vector<int>;
using Walks = std::vector<std::vector<std::vector<Vertex>>>;

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::size_t h = k.size();
        for (int x : k) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

void encode(const Signature& s, Key& k) {
    k.assign(s.place.begin(), s.place.end());
    for (const auto& pairs : s.edges) {
        k.push_back(static_cast<int>(pairs.size()));
        for (const auto& p : pairs) {
            k.push_back(p.b);
            k.push_back(p.e);
            k.push_back(p.cls);
        }
    }
}

void decode(const Key& k, int nv, int ne, Signature& s) {
    s.place.assign(k.begin(), k.begin() + nv);
    s.edges.resize(ne);
    std::size_t pos = nv;
    for (int e = 0; e < ne; ++e) {
        int len = k[pos++];
        s.edges[e].resize(len);
        for (auto& p : s.edges[e]) {
            p.b = k[pos];
            p.e = k[pos + 1];
            p.cls = k[pos + 2];
            pos += 3;
        }
    }
}

class Engine {
public:
    Engine(const PatternDigraph& h, const Digraph& t, std::vector<int> root_pattern_of, bool topological,
           const NiceDecomposition& nice, const DpOptions& opts, double estimate)
        : h_(h), t_(t), root_of_(std::move(root_pattern_of)), topo_(topological), nice_(nice), opts_(opts),
          estimate_(estimate), is_root_(h.n, 0) {
        for (int u : root_of_)
            if (u >= 0) is_root_[u] = 1;
        // Copies of the same arc are interchangeable; states are stored with
        // each group of copies sorted.
        std::vector<char> seen(h.arcs.size(), 0);
        for (std::size_t e = 0; e < h.arcs.size(); ++e) {
            if (seen[e]) continue;
            std::vector<int> group;
            for (std::size_t f = e; f < h.arcs.size(); ++f)
                if (h.arcs[f] == h.arcs[e]) {
                    group.push_back(static_cast<int>(f));
                    seen[f] = 1;
                }
            if (group.size() > 1) groups_.push_back(std::move(group));
        }
    }

    DpResult run() {
        DpResult res;
        res.estimate = estimate_;
        const int ne = static_cast<int>(h_.arcs.size());
        Signature start;
        start.place.assign(h_.n, kUnplaced);
        start.edges.assign(ne, {});
        Key first;
        encode(start, first);
        std::vector<Key> cur{std::move(first)};
        res.max_layer_states = 1;

        future_ = t_.all();
        for (const auto& ev : nice_.events) {
            if (ev.kind == NiceKind::Introduce) {
                future_.erase(ev.v);
                closure_.assign(t_.size(), std::nullopt);
            }
            next_.clear();
            next_classes_.clear();
            dead_.clear();
            by_shape_.clear();
            live_ = 0;
            next_backs_.clear();
            Signature s;
            for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
                decode(cur[i], h_.n, ne, s);
                if (ev.kind == NiceKind::Forget) forget(s, ev.v, i);
                else introduce(s, ev.v, i);
            }
            compact();
            cur.swap(next_);
            res.max_layer_states = std::max(res.max_layer_states, cur.size());
            if (opts_.want_model) backs_.push_back(std::move(next_backs_));
            if (cur.empty()) return res;
        }

        Signature s;
        for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
            decode(cur[i], h_.n, ne, s);
            if (!accepting(s)) continue;
            res.answer = true;
            if (opts_.want_model) res.model = replay(i);
            return res;
        }
        return res;
    }

private:
    static bool accepting(const Signature& s) {
        for (int x : s.place)
            if (x != kForgotten) return false;
        for (const auto& pairs : s.edges)
            if (pairs.size() != 1 || pairs[0].b != kForgotten || pairs[0].e != kForgotten) return false;
        return true;
    }

    // Vertices of the future reachable from x through future vertices only.
    const VertexSet& future_reach(Vertex x) {
        auto& slot = closure_[x];
        if (slot) return *slot;
        VertexSet reach = t_.out(x) & future_;
        VertexSet frontier = reach;
        while (!frontier.empty()) {
            VertexSet next(t_.size());
            frontier.for_each([&](Vertex w) { next |= t_.out(w); });
            next &= future_;
            next -= reach;
            reach |= next;
            frontier = std::move(next);
        }
        slot = std::move(reach);
        return *slot;
    }

    // Necessary conditions for extending one path of s using only the
    // vertices still to be introduced: enough of them for the gaps and
    // missing endpoints, and every gap bridgeable through them.
    bool edge_completable(const std::vector<int>& place, std::size_t e, const std::vector<SigPair>& pairs) {
        const int spare = future_.count();
        const int L = static_cast<int>(pairs.size());
        const bool tail_out = place[h_.arcs[e].first] == kUnplaced;
        const bool head_out = place[h_.arcs[e].second] == kUnplaced;
        if (std::max(0, L - 1) + tail_out + head_out > spare) return false;
        if (L == 0) return true;
        if (tail_out) {
            const int b = pairs.front().b;
            if (b != kForgotten && !t_.in(b).intersects(future_)) return false;
        }
        if (head_out && !t_.out(pairs.back().e).intersects(future_)) return false;
        for (int i = 0; i + 1 < L; ++i) {
            const VertexSet& reach = future_reach(pairs[i].e);
            const int b = pairs[i + 1].b;
            if (b == kForgotten ? reach.empty() : !reach.intersects(t_.in(b))) return false;
        }
        return true;
    }

    // The same for the whole signature, plus the counts shared by all paths.
    bool completable(const Signature& s) {
        const int spare = future_.count();
        int unplaced = 0;
        for (int x : s.place) unplaced += x == kUnplaced;
        if (unplaced > spare) return false;
        int interior_needed = 0;
        for (std::size_t e = 0; e < s.edges.size(); ++e) {
            interior_needed += std::max(0, static_cast<int>(s.edges[e].size()) - 1);
            if (!edge_completable(s.place, e, s.edges[e])) return false;
        }
        return !(topo_ && interior_needed + unplaced > spare);
    }

    bool counts_completable(const Signature& s) const {
        const int spare = future_.count();
        int unplaced = 0;
        for (int x : s.place) unplaced += x == kUnplaced;
        if (unplaced > spare) return false;
        if (!topo_) return true;
        int interior_needed = 0;
        for (const auto& pairs : s.edges) interior_needed += std::max(0, static_cast<int>(pairs.size()) - 1);
        return interior_needed + unplaced <= spare;
    }

    // Sorts each group of parallel copies by pair list, class ids last.
    // Leaves the permutation in perm_ and reports whether it moved anything.
    bool sort_parallel(Signature& s) {
        if (groups_.empty()) return false;
        const int ne = static_cast<int>(s.edges.size());
        perm_.resize(ne);
        for (int e = 0; e < ne; ++e) perm_[e] = e;
        auto shape = [](const std::vector<SigPair>& p) {
            std::vector<std::tuple<int, int, bool>> out;
            for (const auto& x : p) out.emplace_back(x.b, x.e, x.cls >= 0);
            return out;
        };
        auto less = [&](int x, int y) {
            const auto sx = shape(s.edges[x]), sy = shape(s.edges[y]);
            if (sx != sy) return sx < sy;
            const auto& px = s.edges[x];
            const auto& py = s.edges[y];
            for (std::size_t i = 0; i < px.size(); ++i)
                if (px[i].cls != py[i].cls) return px[i].cls < py[i].cls;
            return false;
        };
        bool moved = false;
        for (const auto& group : groups_) {
            std::vector<int> order = group;
            std::stable_sort(order.begin(), order.end(), less);
            if (order == group) continue;
            moved = true;
            std::vector<std::vector<SigPair>> lists;
            for (int e : order) lists.push_back(s.edges[e]);
            for (std::size_t i = 0; i < group.size(); ++i) {
                s.edges[group[i]] = std::move(lists[i]);
                perm_[group[i]] = order[i];
            }
        }
        return moved;
    }

    // Whether partition p (class ids per pair) is at least as fine as q.
    static bool refines(const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> to(p.size() + 1, -1);
        for (std::size_t i = 0; i < p.size(); ++i) {
            int& slot = to[p[i]];
            if (slot == -1) slot = q[i];
            else if (slot != q[i]) return false;
        }
        return true;
    }

    // Drops dominated states from the finished layer.
    void compact() {
        if (live_ == next_.size()) return;
        std::size_t out = 0;
        for (std::size_t i = 0; i < next_.size(); ++i) {
            if (dead_[i]) continue;
            if (out != i) {
                next_[out] = std::move(next_[i]);
                if (opts_.want_model) next_backs_[out] = std::move(next_backs_[i]);
            }
            ++out;
        }
        next_.resize(out);
        if (opts_.want_model) next_backs_.resize(out);
    }

    // `make_back` is only called for new states when a witness is wanted.
    template <class MakeBack>
    void insert(Signature& s, bool edges_checked, MakeBack&& make_back) {
        if (!(edges_checked ? counts_completable(s) : completable(s))) return;
        const bool permuted = sort_parallel(s);
        canonicalize_classes(s);
        encode(s, key_);
        // States equal up to the ≡ partition: a finer partition only relaxes
        // the distinct-class constraint, so it dominates any coarsening.
        shape_ = key_;
        classes_.clear();
        for (std::size_t i = s.place.size(); i < shape_.size();) {
            const int len = shape_[i++];
            for (int j = 0; j < len; ++j, i += 3) {
                if (shape_[i + 2] >= 0) classes_.push_back(shape_[i + 2]);
                shape_[i + 2] = shape_[i + 2] >= 0 ? 0 : -1;
            }
        }
        auto& members = by_shape_[shape_];
        std::erase_if(members, [&](int idx) { return dead_[idx]; });
        for (int idx : members)
            if (refines(next_classes_[idx], classes_)) return;
        for (int idx : members)
            if (refines(classes_, next_classes_[idx])) {
                dead_[idx] = 1;
                --live_;
            }
        members.push_back(static_cast<int>(next_.size()));
        next_.push_back(key_);
        next_classes_.push_back(classes_);
        dead_.push_back(0);
        ++live_;
        if (opts_.want_model) {
            next_backs_.push_back(make_back());
            if (permuted) next_backs_.back().perm = perm_;
        }
        if (static_cast<double>(live_) > opts_.budget)
            throw BudgetExceeded("dynamic programming layer exceeded " + std::to_string(static_cast<long long>(opts_.budget)) +
                                     " states",
                                 estimate_);
    }

    void forget(Signature& s, Vertex w, int parent) {
        int fresh = 0;
        for (const auto& pairs : s.edges)
            for (const auto& p : pairs) fresh = std::max(fresh, p.cls + 1);
        for (std::size_t e = 0; e < s.edges.size(); ++e) {
            auto& pairs = s.edges[e];
            const int head = h_.arcs[e].second;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                auto& p = pairs[i];
                if (p.e == w) {
                    // Only the path's final pair may stop at a vertex leaving
                    // the bag: no arc leads from the past to the future.
                    if (i + 1 != pairs.size() || s.place[head] != w) return;
                    p.e = kForgotten;
                }
                if (p.b == w) {
                    p.b = kForgotten;
                    p.cls = fresh;
                }
            }
        }
        for (int& x : s.place)
            if (x == w) x = kForgotten;
        insert(s, false, [&] { return Back{parent, -1, {}, {}}; });
    }

    void edge_options(const Signature& s, int e, int u, Vertex v, std::vector<Option>& out) const {
        out.clear();
        const auto& pairs = s.edges[e];
        const int L = static_cast<int>(pairs.size());
        auto [tail, head] = h_.arcs[e];
        auto succ_option = [&](Act act, int idx, const SigPair& target, int pred) {
            if (target.b == kForgotten) out.push_back({act, idx, pred, -1, target.cls, true});
            else if (t_.has_arc(v, target.b)) out.push_back({act, idx, pred, target.b, -1, true});
        };
        if (u == tail) {
            if (L > 0) succ_option(kTailLink, 0, pairs[0], -1);
            out.push_back({kTailNew, 0, -1, -1, -1, true});
            return;
        }
        if (u == head) {
            if (L > 0 && pairs.back().e >= 0 && t_.has_arc(pairs.back().e, v)) out.push_back({kHeadLink, L - 1, pairs.back().e, -1, -1, true});
            out.push_back({kHeadNew, L, -1, -1, -1, true});
            return;
        }
        out.push_back({kNone, 0, -1, -1, -1, false});
        if (topo_ && u >= 0) return;
        const bool tail_in = s.place[tail] != kUnplaced;
        const bool head_in = s.place[head] != kUnplaced;
        for (int i = 0; i < L; ++i) {
            const bool exits = i + 1 < L || !head_in;
            const bool linkable = i > 0 || !tail_in;
            if (i + 1 < L && t_.has_arc(pairs[i].e, v)) succ_option(kMerge, i, pairs[i + 1], pairs[i].e);
            if (exits && t_.has_arc(pairs[i].e, v)) out.push_back({kExtEnd, i, pairs[i].e, -1, -1, true});
            if (linkable) succ_option(kExtBegin, i, pairs[i], -1);
        }
        for (int pos = tail_in ? 1 : 0; pos <= (head_in ? L - 1 : L); ++pos)
            out.push_back({kNew, pos, -1, -1, -1, true});
    }

    static void apply(std::vector<SigPair>& pairs, const Option& o, Vertex v) {
        switch (o.act) {
            case kNone: break;
            case kMerge:
                pairs[o.idx].e = pairs[o.idx + 1].e;
                pairs.erase(pairs.begin() + o.idx + 1);
                break;
            case kExtEnd:
            case kHeadLink: pairs[o.idx].e = v; break;
            case kExtBegin:
            case kTailLink:
                pairs[o.idx].b = v;
                pairs[o.idx].cls = -1;
                break;
            case kNew:
            case kTailNew:
            case kHeadNew: pairs.insert(pairs.begin() + o.idx, SigPair{v, v, -1}); break;
        }
    }

    void introduce(const Signature& s, Vertex v, int parent) {
        std::vector<int> images;
        if (root_of_[v] >= 0) {
            images.push_back(root_of_[v]);
        } else {
            images.push_back(-1);
            for (int u = 0; u < h_.n; ++u)
                if (s.place[u] == kUnplaced && !is_root_[u]) images.push_back(u);
        }
        const int ne = static_cast<int>(h_.arcs.size());
        std::vector<std::vector<Option>> opts(ne);
        std::vector<int> choice(ne, 0);
        for (int u : images) {
            if (u >= 0 && s.place[u] != kUnplaced) continue;
            Signature base = s;
            if (u >= 0) base.place[u] = v;
            bool dead = false;
            for (int e = 0; e < ne && !dead; ++e) {
                edge_options(base, e, u, v, opts[e]);
                std::erase_if(opts[e], [&](const Option& o) {
                    pair_buf_ = base.edges[e];
                    apply(pair_buf_, o, v);
                    return !edge_completable(base.place, e, pair_buf_);
                });
                dead = opts[e].empty();
            }
            if (dead) continue;

            std::vector<int> preds, succs, classes;
            int uses = 0;
            auto dfs = [&](auto&& self, int e) -> void {
                if (e == ne) {
                    scratch_ = base;
                    for (int j = 0; j < ne; ++j) apply(scratch_.edges[j], opts[j][choice[j]], v);
                    insert(scratch_, true, [&] {
                        Back back{parent, u, std::vector<int>(ne), {}};
                        for (int j = 0; j < ne; ++j) {
                            const Option& o = opts[j][choice[j]];
                            back.acts[j] = o.act * 65536 + o.idx;
                        }
                        return back;
                    });
                    return;
                }
                for (int c = 0; c < static_cast<int>(opts[e].size()); ++c) {
                    const Option& o = opts[e][c];
                    if (o.pred >= 0 && std::find(preds.begin(), preds.end(), o.pred) != preds.end()) continue;
                    if (o.succ >= 0 && std::find(succs.begin(), succs.end(), o.succ) != succs.end()) continue;
                    if (o.cls >= 0 && std::find(classes.begin(), classes.end(), o.cls) != classes.end()) continue;
                    // Topological mode: an unplaced vertex serves at most one path.
                    if (topo_ && u < 0 && o.uses_v && uses > 0) continue;
                    if (o.pred >= 0) preds.push_back(o.pred);
                    if (o.succ >= 0) succs.push_back(o.succ);
                    if (o.cls >= 0) classes.push_back(o.cls);
                    uses += o.uses_v;
                    choice[e] = c;
                    self(self, e + 1);
                    uses -= o.uses_v;
                    if (o.cls >= 0) classes.pop_back();
                    if (o.succ >= 0) succs.pop_back();
                    if (o.pred >= 0) preds.pop_back();
                }
            };
            dfs(dfs, 0);
        }
    }

    Model replay(int final_index) const {
        const int steps = static_cast<int>(nice_.events.size());
        std::vector<const Back*> chain(steps);
        int idx = final_index;
        for (int step = steps - 1; step >= 0; --step) {
            chain[step] = &backs_[step][idx];
            idx = chain[step]->parent;
        }
        Model model;
        model.vertex_map.assign(h_.n, -1);
        Walks walks(h_.arcs.size());
        for (int step = 0; step < steps; ++step) {
            const Back& b = *chain[step];
            const Vertex v = nice_.events[step].v;
            if (b.image >= 0) model.vertex_map[b.image] = v;
            apply_walks(b, v, walks);
        }
        for (auto& w : walks) {
            if (w.size() != 1) throw std::logic_error("witness replay left a broken path");
            model.paths.push_back(std::move(w[0]));
        }
        return model;
    }

    static void apply_walks(const Back& b, Vertex v, Walks& walks) {
        if (!b.acts.empty()) {
            for (std::size_t e = 0; e < walks.size(); ++e) {
                auto& w = walks[e];
                const int act = b.acts[e] / 65536, i = b.acts[e] % 65536;
                switch (act) {
                    case kNone: break;
                    case kMerge:
                        w[i].push_back(v);
                        w[i].insert(w[i].end(), w[i + 1].begin(), w[i + 1].end());
                        w.erase(w.begin() + i + 1);
                        break;
                    case kExtEnd:
                    case kHeadLink: w[i].push_back(v); break;
                    case kExtBegin:
                    case kTailLink: w[i].insert(w[i].begin(), v); break;
                    default: w.insert(w.begin() + i, std::vector<Vertex>{v}); break;
                }
            }
        }
        if (!b.perm.empty()) {
            Walks before = walks;
            for (std::size_t e = 0; e < walks.size(); ++e) walks[e] = std::move(before[b.perm[e]]);
        }
    }

    const PatternDigraph& h_;
    const Digraph& t_;
    std::vector<int> root_of_;
    bool topo_;
    const NiceDecomposition& nice_;
    DpOptions opts_;
    double estimate_;
    std::vector<char> is_root_;

    VertexSet future_;
    std::vector<std::optional<VertexSet>> closure_;
    std::vector<Key> next_;
    std::vector<std::vector<int>> next_classes_;
    std::vector<char> dead_;
    std::unordered_map<Key, std::vector<int>, KeyHash> by_shape_;
    std::size_t live_ = 0;
    Key shape_;
    std::vector<int> classes_;
    Key key_;
    Signature scratch_;
    std::vector<SigPair> pair_buf_;
    std::vector<std::vector<int>> groups_;
    std::vector<int> perm_;
    std::vector<Back> next_backs_;
    std::vector<std::vector<Back>> backs_;
};

DpResult run_dp(const PatternDigraph& h, const Digraph& t, const std::vector<Vertex>& host_roots,
                const PathDecomposition& w, ContainmentMode mode, const DpOptions& opts) {
    if (h.has_loops()) throw InputError("pattern has loops; subdivide them first");
    require_semicomplete(t, "containment dynamic programming");
    auto check = verify_path_decomposition(t, w);
    if (!check.valid) throw InputError("invalid path decomposition: " + check.reason);
    if (mode == ContainmentMode::RootedImmersion && host_roots.size() != h.roots.size())
        throw InputError("pattern and host root counts differ");

    std::vector<int> root_of(t.size(), -1);
    if (mode == ContainmentMode::RootedImmersion) {
        for (std::size_t i = 0; i < host_roots.size(); ++i) {
            Vertex x = host_roots[i];
            if (x < 0 || x >= t.size()) throw InputError("host root out of range");
            if (root_of[x] != -1) throw InputError("host roots repeat");
            root_of[x] = h.roots[i];
        }
    }
    NiceDecomposition nice = make_nice(w, t.size());
    const double estimate = signature_count_bound(h.n, static_cast<int>(h.arcs.size()), check.width + 1);
    Engine engine(h, t, std::move(root_of), mode == ContainmentMode::Topological, nice, opts, estimate);
    DpResult res = engine.run();
    if (res.model) {
        auto mc = verify_model(h, t, *res.model, mode, host_roots);
        if (!mc.valid) throw std::logic_error("dynamic programming produced an invalid model: " + mc.reason);
    }
    return res;
}

}  // namespace

DpResult dp_rooted_immersion(const PatternDigraph& h, const RootedHost& host, const PathDecomposition& w,
                             const DpOptions& opts) {
    if (h.roots.empty() && host.roots.empty()) return run_dp(h, host.graph, {}, w, ContainmentMode::Immersion, opts);
    return run_dp(h, host.graph, host.roots, w, ContainmentMode::RootedImmersion, opts);
}

DpResult dp_immersion(const PatternDigraph& h, const Digraph& t, const PathDecomposition& w, const DpOptions& opts) {
    return run_dp(h, t, {}, w, ContainmentMode::Immersion, opts);
}

DpResult dp_topological_containment(const PatternDigraph& h, const Digraph& t, const PathDecomposition& w,
                                    const DpOptions& opts) {
    return run_dp(h, t, {}, w, ContainmentMode::Topological, opts);
}

}  // namespace scd

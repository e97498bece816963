#include "scd/flow.hpp"

#include <algorithm>
#include <deque>

#include "scd/errors.hpp"

namespace scd {

namespace {
constexpr int kNoNode = -1;
}

VertexFlow::VertexFlow(const Digraph& d, VertexSet active)
    : d_(d),
      active_(std::move(active)),
      infinite_(d.size()),
      sources_(d.size()),
      sinks_(d.size()),
      through_(d.size(), 0),
      from_source_(d.size(), 0),
      to_sink_(d.size(), 0),
      flow_pred_(d.size()) {}

// Node numbering: v_in = 2v, v_out = 2v+1, source = 2n, sink = 2n+1.
bool VertexFlow::augment() {
    const int n = d_.size();
    const int S = 2 * n, T = 2 * n + 1;
    std::vector<Parent> parent(2 * n + 2);
    VertexSet seen_in(n), seen_out(n);
    std::deque<int> queue;
    (sources_ & active_).for_each([&](int v) {
        seen_in.insert(v);
        parent[2 * v] = {S, false};
        queue.push_back(2 * v);
    });
    int reached_t_from = kNoNode;
    while (!queue.empty() && reached_t_from == kNoNode) {
        int node = queue.front();
        queue.pop_front();
        int v = node / 2;
        if (node % 2 == 0) {
            if ((infinite_.contains(v) || through_[v] < 1) && !seen_out.contains(v)) {
                seen_out.insert(v);
                parent[2 * v + 1] = {node, false};
                queue.push_back(2 * v + 1);
            }
            for (int u : flow_pred_[v]) {
                if (!seen_out.contains(u)) {
                    seen_out.insert(u);
                    parent[2 * u + 1] = {node, true};
                    queue.push_back(2 * u + 1);
                }
            }
        } else {
            if (sinks_.contains(v)) {
                reached_t_from = node;
                break;
            }
            if (through_[v] > 0 && !seen_in.contains(v)) {
                seen_in.insert(v);
                parent[2 * v] = {node, true};
                queue.push_back(2 * v);
            }
            VertexSet next = d_.out(v) & active_;
            next -= seen_in;
            next.for_each([&](int w) {
                seen_in.insert(w);
                parent[2 * w] = {node, false};
                queue.push_back(2 * w);
            });
        }
    }
    if (reached_t_from == kNoNode) return false;
    to_sink_[reached_t_from / 2]++;
    int node = reached_t_from;
    while (node != S) {
        Parent p = parent[node];
        int v = node / 2;
        if (p.node == S) {
            from_source_[v]++;
        } else if (p.node / 2 == v) {
            // internal edge of v
            if (p.reverse)
                through_[v]--;
            else
                through_[v]++;
        } else if (!p.reverse) {
            int u = p.node / 2;  // u_out -> v_in
            if (arc_flow_[{u, v}]++ == 0) flow_pred_[v].push_back(u);
        } else {
            int w = p.node / 2;  // w_in -> v_out cancels flow on (v, w)
            auto it = arc_flow_.find({v, w});
            if (--it->second == 0) {
                arc_flow_.erase(it);
                auto& preds = flow_pred_[w];
                preds.erase(std::find(preds.begin(), preds.end(), v));
            }
        }
        node = p.node;
    }
    (void)T;
    return true;
}

std::vector<Vertex> VertexFlow::infinite_path() const {
    const int n = d_.size();
    std::vector<int> parent(n, -2);
    std::deque<int> queue;
    VertexSet inf_active = infinite_ & active_;
    (sources_ & inf_active).for_each([&](int v) {
        parent[v] = -1;
        queue.push_back(v);
    });
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (sinks_.contains(v)) {
            std::vector<Vertex> path;
            for (int x = v; x != -1; x = parent[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            return path;
        }
        (d_.out(v) & inf_active).for_each([&](int w) {
            if (parent[w] == -2) {
                parent[w] = v;
                queue.push_back(w);
            }
        });
    }
    return {};
}

std::vector<std::vector<Vertex>> VertexFlow::decompose() {
    std::vector<int> from_source = from_source_, to_sink = to_sink_;
    auto arcs = arc_flow_;
    std::vector<std::vector<Vertex>> paths;
    for (int v = 0; v < d_.size(); ++v) {
        while (from_source[v] > 0) {
            from_source[v]--;
            std::vector<Vertex> walk{v};
            int cur = v;
            while (true) {
                if (to_sink[cur] > 0) {
                    to_sink[cur]--;
                    break;
                }
                auto it = arcs.lower_bound({cur, -1});
                if (it == arcs.end() || it->first.first != cur)
                    throw std::logic_error("flow decomposition: conservation violated");
                int w = it->first.second;
                if (--it->second == 0) arcs.erase(it);
                walk.push_back(w);
                cur = w;
            }
            // Drop cycles through unbounded vertices.
            std::vector<Vertex> path;
            for (Vertex x : walk) {
                auto pos = std::find(path.begin(), path.end(), x);
                if (pos != path.end())
                    path.erase(pos + 1, path.end());
                else
                    path.push_back(x);
            }
            paths.push_back(std::move(path));
        }
    }
    return paths;
}

void VertexFlow::residual_reach(std::vector<char>& reach_in, std::vector<char>& reach_out) const {
    const int n = d_.size();
    reach_in.assign(n, 0);
    reach_out.assign(n, 0);
    VertexSet seen_in(n);
    std::deque<int> queue;
    (sources_ & active_).for_each([&](int v) {
        seen_in.insert(v);
        reach_in[v] = 1;
        queue.push_back(2 * v);
    });
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        int v = node / 2;
        if (node % 2 == 0) {
            if ((infinite_.contains(v) || through_[v] < 1) && !reach_out[v]) {
                reach_out[v] = 1;
                queue.push_back(2 * v + 1);
            }
            for (int u : flow_pred_[v]) {
                if (!reach_out[u]) {
                    reach_out[u] = 1;
                    queue.push_back(2 * u + 1);
                }
            }
        } else {
            if (through_[v] > 0 && !reach_in[v]) {
                reach_in[v] = 1;
                seen_in.insert(v);
                queue.push_back(2 * v);
            }
            VertexSet next = d_.out(v) & active_;
            next -= seen_in;
            next.for_each([&](int w) {
                seen_in.insert(w);
                reach_in[w] = 1;
                queue.push_back(2 * w);
            });
        }
    }
}

FlowResult VertexFlow::run(int limit) {
    if (limit < 0) throw InputError("flow limit must be non-negative");
    FlowResult r;
    auto inf = infinite_path();
    if (!inf.empty()) {
        r.exceeded = true;
        r.value = limit + 1;
        r.paths.assign(limit + 1, inf);
        return r;
    }
    int value = 0;
    while (value <= limit && augment()) ++value;
    r.value = value;
    r.paths = decompose();
    if (value > limit) {
        r.exceeded = true;
        return r;
    }
    std::vector<char> reach_in, reach_out;
    residual_reach(reach_in, reach_out);
    const int n = d_.size();
    r.cut = VertexSet(n);
    r.source_side = VertexSet(n);
    for (int v = 0; v < n; ++v) {
        if (!active_.contains(v)) continue;
        if (reach_out[v])
            r.source_side.insert(v);
        else if (reach_in[v])
            r.cut.insert(v);
    }
    return r;
}

MinCutResult min_vertex_cut(const Digraph& d, const VertexSet& sources, const VertexSet& sinks,
                            const VertexSet& infinite_cap, int limit) {
    VertexFlow flow(d, d.all());
    sources.for_each([&](int v) {
        flow.add_source(v);
        flow.set_infinite(v);
    });
    sinks.for_each([&](int v) {
        flow.add_sink(v);
        flow.set_infinite(v);
    });
    infinite_cap.for_each([&](int v) { flow.set_infinite(v); });
    FlowResult fr = flow.run(limit);
    MinCutResult r;
    r.exceeded = fr.exceeded;
    r.paths = std::move(fr.paths);
    r.cut = fr.exceeded ? VertexSet(d.size()) : fr.cut;
    return r;
}

}  // namespace scd

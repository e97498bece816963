#include "scd/digraph.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "scd/errors.hpp"

namespace scd {

ClassFlags validate_class(const RawDigraph& raw) {
    ClassFlags f;
    std::set<Arc> seen;
    bool simple = true;
    for (auto [u, v] : raw.arcs) {
        if (u == v || !seen.insert({u, v}).second) simple = false;
    }
    f.simple = simple;
    if (!simple) return f;
    bool semi = true, tour = true;
    for (int u = 0; u < raw.n && semi; ++u) {
        for (int v = u + 1; v < raw.n; ++v) {
            bool uv = seen.count({u, v}) > 0, vu = seen.count({v, u}) > 0;
            if (!uv && !vu) {
                semi = false;
                break;
            }
            if (uv && vu) tour = false;
        }
    }
    f.semicomplete = semi;
    f.tournament = semi && tour;
    return f;
}

Digraph::Digraph(int n) : n_(n), out_(n, VertexSet(n)), in_(n, VertexSet(n)) {}

Digraph Digraph::from_raw(const RawDigraph& raw) {
    if (raw.n < 0) throw InputError("negative vertex count");
    Digraph d(raw.n);
    for (auto [u, v] : raw.arcs) {
        if (u < 0 || v < 0 || u >= raw.n || v >= raw.n)
            throw InputError("arc endpoint out of range");
        if (u == v) throw InputError("loop at vertex " + std::to_string(u + 1));
        if (d.has_arc(u, v))
            throw InputError("repeated arc " + std::to_string(u + 1) + " " + std::to_string(v + 1));
        d.add_arc(u, v);
    }
    return d;
}

void Digraph::add_arc(Vertex u, Vertex v) {
    if (u == v) throw InputError("loops are not allowed in host digraphs");
    out_[u].insert(v);
    in_[v].insert(u);
}

void Digraph::remove_arc(Vertex u, Vertex v) {
    out_[u].erase(v);
    in_[v].erase(u);
}

long long Digraph::arc_count() const {
    long long m = 0;
    for (const auto& s : out_) m += s.count();
    return m;
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> a;
    for (int u = 0; u < n_; ++u) out_[u].for_each([&](int v) { a.emplace_back(u, v); });
    return a;
}

bool Digraph::is_semicomplete() const {
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (!has_arc(u, v) && !has_arc(v, u)) return false;
    return true;
}

bool Digraph::is_tournament() const {
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_arc(u, v) == has_arc(v, u)) return false;
    return true;
}

void require_semicomplete(const Digraph& d, const char* where) {
    if (!d.is_semicomplete())
        throw InputError(std::string(where) + ": host digraph is not semi-complete");
}

std::vector<std::vector<Vertex>> scc_reverse_topological_order(const Digraph& d) {
    return scc_reverse_topological_order(d, d.all());
}

// Iterative Tarjan. Components are emitted sinks-first, which is exactly the
// order in which inter-component arcs point backwards.
std::vector<std::vector<Vertex>> scc_reverse_topological_order(const Digraph& d,
                                                               const VertexSet& subset) {
    const int n = d.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<Vertex>> comps;
    int counter = 0;

    struct Frame {
        int v;
        std::vector<int> succ;
        size_t next;
    };
    for (int root : subset.to_vector()) {
        if (index[root] != -1) continue;
        std::vector<Frame> call;
        auto push = [&](int v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = 1;
            call.push_back({v, (d.out(v) & subset).to_vector(), 0});
        };
        push(root);
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < f.succ.size()) {
                int w = f.succ[f.next++];
                if (index[w] == -1) {
                    push(w);
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            int v = f.v;
            if (low[v] == index[v]) {
                std::vector<Vertex> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }
    return comps;
}

bool PatternDigraph::has_loops() const {
    return std::any_of(arcs.begin(), arcs.end(), [](const Arc& a) { return a.first == a.second; });
}

int PatternDigraph::isolated_count() const {
    std::vector<char> touched(n, 0);
    for (auto [u, v] : arcs) touched[u] = touched[v] = 1;
    return static_cast<int>(std::count(touched.begin(), touched.end(), 0));
}

PatternDigraph subdivide_loops(const PatternDigraph& h) {
    PatternDigraph out;
    out.n = h.n;
    out.roots = h.roots;
    for (auto [u, v] : h.arcs) {
        if (u != v) {
            out.arcs.emplace_back(u, v);
            continue;
        }
        int w = out.n++;
        out.arcs.emplace_back(u, w);
        out.arcs.emplace_back(w, u);
    }
    return out;
}

void validate_rooted_host(const RootedHost& host) {
    std::vector<char> seen(host.graph.size(), 0);
    for (int r : host.roots) {
        if (r < 0 || r >= host.graph.size()) throw InputError("root out of range");
        if (seen[r]) throw InputError("roots must be pairwise distinct");
        seen[r] = 1;
    }
}

Digraph gen_transitive(int n) {
    if (n < 1) throw InputError("gen_transitive: n must be at least 1");
    Digraph d(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d.add_arc(i, j);
    return d;
}

Digraph gen_random_tournament(int n, std::uint64_t seed) {
    if (n < 1) throw InputError("gen_random_tournament: n must be at least 1");
    std::mt19937_64 rng(seed);
    Digraph d(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng() & 1u)
                d.add_arc(i, j);
            else
                d.add_arc(j, i);
        }
    return d;
}

Digraph gen_random_semicomplete(int n, std::uint64_t seed, int two_cycle_percent) {
    if (n < 1) throw InputError("gen_random_semicomplete: n must be at least 1");
    std::mt19937_64 rng(seed);
    Digraph d(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::uint64_t r = rng();
            if (static_cast<int>((r >> 1) % 100) < two_cycle_percent) {
                d.add_arc(i, j);
                d.add_arc(j, i);
            } else if (r & 1u) {
                d.add_arc(i, j);
            } else {
                d.add_arc(j, i);
            }
        }
    return d;
}

Counterexample gen_counterexample(int n) {
    if (n < 4 || n % 2 != 0) throw InputError("gen_counterexample: n must be even and at least 4");
    Counterexample ce;
    ce.half = n;
    ce.graph = Digraph(2 * n);
    auto a = [&](int i) { return ce.a(i); };
    auto b = [&](int i) { return ce.b(i); };
    Digraph& d = ce.graph;
    for (int i = 1; i < n; ++i) d.add_arc(a(i), a(i + 1));
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i < j - 1; ++i) d.add_arc(a(j), a(i));
    for (int i = 1; i < n; ++i) d.add_arc(b(i + 1), b(i));
    for (int j = 1; j <= n; ++j)
        for (int i = j + 2; i <= n; ++i) d.add_arc(b(j), b(i));
    for (int i = 1; i <= n; ++i) d.add_arc(a(i), b(i));
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i)
            if (i != j) d.add_arc(b(j), a(i));
    ce.pairs = {{a(1), a(n)}, {b(n), b(1)}};
    return ce;
}

InducedSubdigraph induced_subdigraph(const Digraph& d, const VertexSet& s) {
    if (s.empty()) throw InputError("induced_subdigraph: empty vertex set");
    InducedSubdigraph r;
    r.to_parent = s.to_vector();
    r.from_parent.assign(d.size(), -1);
    for (size_t i = 0; i < r.to_parent.size(); ++i) r.from_parent[r.to_parent[i]] = static_cast<int>(i);
    const int m = static_cast<int>(r.to_parent.size());
    r.graph = Digraph(m);
    for (int i = 0; i < m; ++i) {
        (d.out(r.to_parent[i]) & s).for_each([&](int w) { r.graph.add_arc(i, r.from_parent[w]); });
    }
    return r;
}

}  // namespace scd

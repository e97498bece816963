#include "scd/obstructions.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "scd/errors.hpp"
#include "scd/flow.hpp"
#include "scd/io.hpp"

namespace scd {

namespace {

// Kuhn's augmenting-path matching of `left` into `right` along arcs left -> right.
// Returns match_left[i] = index into right, or empty if not perfect.
std::vector<int> perfect_matching(const Digraph& t, const std::vector<Vertex>& left,
                                  const std::vector<Vertex>& right) {
    const size_t k = left.size();
    std::vector<int> match_right(right.size(), -1), match_left(k, -1);
    std::function<bool(size_t, std::vector<char>&)> try_kuhn = [&](size_t i, std::vector<char>& used) {
        for (size_t j = 0; j < right.size(); ++j) {
            if (used[j] || !t.has_arc(left[i], right[j])) continue;
            used[j] = 1;
            if (match_right[j] < 0 || try_kuhn(static_cast<size_t>(match_right[j]), used)) {
                match_right[j] = static_cast<int>(i);
                match_left[i] = static_cast<int>(j);
                return true;
            }
        }
        return false;
    };
    for (size_t i = 0; i < k; ++i) {
        std::vector<char> used(right.size(), 0);
        if (!try_kuhn(i, used)) return {};
    }
    return match_left;
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Visits k-subsets of `items` in lexicographic order until f returns true.
bool for_each_combination(const std::vector<Vertex>& items, int k,
                          const std::function<bool(const std::vector<Vertex>&)>& f) {
    const int n = static_cast<int>(items.size());
    if (k > n) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<Vertex> pick(k);
    while (true) {
        for (int i = 0; i < k; ++i) pick[i] = items[idx[i]];
        if (f(pick)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::optional<Triple> verify_triple(const Digraph& t, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                                    const std::vector<Vertex>& c) {
    if (a.size() != b.size() || b.size() != c.size()) throw InputError("verify_triple: parts differ in size");
    const int n = t.size();
    VertexSet seen(n);
    for (const auto* part : {&a, &b, &c})
        for (Vertex v : *part) {
            if (v < 0 || v >= n) throw InputError("verify_triple: vertex out of range");
            if (seen.contains(v)) return std::nullopt;
            seen.insert(v);
        }
    VertexSet bs = VertexSet::of(n, b), cs = VertexSet::of(n, c);
    for (Vertex x : a)
        if (!bs.subset_of(t.out(x))) return std::nullopt;
    for (Vertex x : b)
        if (!cs.subset_of(t.out(x))) return std::nullopt;
    auto match = perfect_matching(t, c, a);  // c[i] -> a[match[i]]
    if (match.empty() && !c.empty()) return std::nullopt;
    Triple tr;
    tr.k = static_cast<int>(a.size());
    tr.a = a;
    tr.b = b;
    tr.c.assign(a.size(), -1);
    for (size_t i = 0; i < c.size(); ++i) tr.c[match[i]] = c[i];
    return tr;
}

std::optional<Triple> counterexample_triple(const Counterexample& ce) {
    const int h = ce.half / 2 - 1;
    std::vector<Vertex> a, b, c;
    for (int i = 1; i <= h; ++i) {
        a.push_back(ce.b(i));
        b.push_back(ce.a(ce.half / 2 + 1 + i));
        c.push_back(ce.a(i));
    }
    return verify_triple(ce.graph, a, b, c);
}

std::string format_triple(const Triple& tr) {
    std::ostringstream out;
    out << "A: " << format_ids(tr.a) << '\n';
    out << "B: " << format_ids(tr.b) << '\n';
    out << "C: " << format_ids(tr.c) << '\n';
    out << "MATCHING:";
    for (int i = 0; i < tr.k; ++i) out << ' ' << tr.c[i] + 1 << "->" << tr.a[i] + 1;
    out << '\n';
    return out.str();
}

std::vector<Vertex> transitive_sequence(const Digraph& t, const VertexSet& within) {
    // Reduced orientation: keep u->v unless v->u also exists and v < u.
    auto arc = [&](Vertex u, Vertex v) { return t.has_arc(u, v) && (!t.has_arc(v, u) || u < v); };
    std::vector<Vertex> head, tail;  // tail is built in reverse
    std::vector<Vertex> pool = within.to_vector();
    while (!pool.empty()) {
        Vertex best = -1;
        int best_size = -1;
        bool best_out = true;
        std::vector<Vertex> best_out_side, best_in_side;
        for (Vertex v : pool) {
            std::vector<Vertex> outs, ins;
            for (Vertex w : pool) {
                if (w == v) continue;
                (arc(v, w) ? outs : ins).push_back(w);
            }
            int sz = static_cast<int>(std::max(outs.size(), ins.size()));
            if (sz > best_size) {
                best = v;
                best_size = sz;
                best_out = outs.size() >= ins.size();
                best_out_side = std::move(outs);
                best_in_side = std::move(ins);
            }
        }
        if (best_out) {
            head.push_back(best);
            pool = std::move(best_out_side);
        } else {
            tail.push_back(best);
            pool = std::move(best_in_side);
        }
    }
    head.insert(head.end(), tail.rbegin(), tail.rend());
    return head;
}

TransitiveResult find_transitive_subtournament(const Digraph& t, int target) {
    TransitiveResult r;
    if (t.size() > 0) r.sequence = transitive_sequence(t, t.all());
    r.sufficient = static_cast<int>(r.sequence.size()) >= target;
    return r;
}

long long ramsey_upper(int k) {
    if (k < 1) throw InputError("ramsey_upper: k must be at least 1");
    static const long long exact[] = {0, 1, 2, 6, 18};
    if (k <= 4) return exact[k];
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * k - 2, k - 1);
    if (!c.fits_slong_p()) throw InputError("ramsey_upper: value does not fit in 64 bits");
    return c.get_si();
}

mpz_class f_threshold_exponent(int k) {
    if (k < 1) throw InputError("f_threshold: k must be at least 1");
    long long r = ramsey_upper(2 * k);
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), 2, static_cast<unsigned long>(r));
    return e * 12;
}

mpz_class f_threshold(int k) {
    mpz_class e = f_threshold_exponent(k);
    if (e > (1 << 24)) throw BudgetExceeded("f_threshold: value has too many bits to materialize", e.get_d());
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, e.get_ui());
    return v;
}

bool meets_f_threshold(long long size, int k) {
    if (size < 1) return false;
    mpz_class e = f_threshold_exponent(k);
    if (e >= 64) return false;
    return static_cast<unsigned long long>(size) >= (1ull << e.get_ui());
}

TripleExtraction triple_from_jungle(const Digraph& t, const std::vector<Vertex>& z, int k, ExtractionMode mode) {
    TripleExtraction out;
    if (k < 1) throw InputError("triple_from_jungle: k must be at least 1");
    if (mode == ExtractionMode::Theoretical && !meets_f_threshold(static_cast<long long>(z.size()), k)) {
        out.reason = "threshold";
        return out;
    }
    if (k > 5) throw BudgetExceeded("triple_from_jungle: subset search is limited to k <= 5", k);
    const int n = t.size();

    // Transitive subset of the jungle, split so that X1 is complete to X2.
    std::vector<Vertex> x = transitive_sequence(t, VertexSet::of(n, z));
    if (x.size() % 2) x.pop_back();
    const int half = static_cast<int>(x.size()) / 2;
    if (half < 1) {
        out.reason = "transitive";
        return out;
    }
    VertexSet x1 = VertexSet::of(n, std::vector<Vertex>(x.begin(), x.begin() + half));
    VertexSet x2 = VertexSet::of(n, std::vector<Vertex>(x.begin() + half, x.end()));
    VertexSet xs = x1 | x2;

    auto disjoint_paths = [&](const VertexSet& active, int limit) {
        VertexFlow flow(t, active);
        x2.for_each([&](int v) { flow.add_source(v); });
        x1.for_each([&](int v) { flow.add_sink(v); });
        return flow.run(limit);
    };
    // Theoretical mode asks for |X|/2 paths; opportunistic mode settles for what exists.
    FlowResult full = disjoint_paths(t.all(), half - 1);
    int want = full.exceeded ? half : full.value;
    if (mode == ExtractionMode::Theoretical && want < half) {
        out.reason = "paths";
        return out;
    }
    if (4 * want < 3 * k) {
        out.reason = "paths";
        return out;
    }

    // Minimal R ⊇ X keeping `want` disjoint X2 -> X1 paths.
    VertexSet r = t.all();
    for (Vertex v = 0; v < n; ++v) {
        if (xs.contains(v)) continue;
        VertexSet trial = r;
        trial.erase(v);
        if (disjoint_paths(trial, want - 1).exceeded) r = trial;
    }
    FlowResult in_r = disjoint_paths(r, want - 1);
    std::vector<Vertex> q_list;
    VertexSet q(n);
    for (size_t i = 0; i < in_r.paths.size() && static_cast<int>(i) < want; ++i) {
        const auto& p = in_r.paths[i];
        const size_t len = p.size();
        for (size_t j = 0; j < len; ++j)
            if (j < 2 || j + 2 >= len) q.insert(p[j]);
    }
    q_list = q.to_vector();

    double estimate = binom(static_cast<int>(q_list.size()), k);
    estimate = estimate * estimate * estimate;
    if (estimate > 1e9) throw BudgetExceeded("triple_from_jungle: subset search over Q is too large", estimate);

    // B first, then A among common in-neighbours, then a matching from C.
    std::optional<Triple> found;
    for_each_combination(q_list, k, [&](const std::vector<Vertex>& b) {
        VertexSet ins = q, outs = q;
        for (Vertex v : b) {
            ins &= t.in(v);
            outs &= t.out(v);
        }
        VertexSet bset = VertexSet::of(n, b);
        ins -= bset;
        outs -= bset;
        return for_each_combination(ins.to_vector(), k, [&](const std::vector<Vertex>& a) {
            std::vector<Vertex> c_pool = (outs - VertexSet::of(n, a)).to_vector();
            if (static_cast<int>(c_pool.size()) < k) return false;
            // Match each a_i to a distinct c with c -> a_i.
            std::vector<int> owner(c_pool.size(), -1), chosen(k, -1);
            std::function<bool(int, std::vector<char>&)> aug = [&](int i, std::vector<char>& used) {
                for (size_t j = 0; j < c_pool.size(); ++j) {
                    if (used[j] || !t.has_arc(c_pool[j], a[i])) continue;
                    used[j] = 1;
                    if (owner[j] < 0 || aug(owner[j], used)) {
                        owner[j] = i;
                        chosen[i] = static_cast<int>(j);
                        return true;
                    }
                }
                return false;
            };
            for (int i = 0; i < k; ++i) {
                std::vector<char> used(c_pool.size(), 0);
                if (!aug(i, used)) return false;
            }
            std::vector<Vertex> c(k);
            for (int i = 0; i < k; ++i) c[i] = c_pool[chosen[i]];
            found = verify_triple(t, a, b, c);
            return found.has_value();
        });
    });
    if (!found) {
        out.reason = "search";
        return out;
    }
    out.triple = found;
    return out;
}

Model embed_in_triple(const PatternDigraph& h, const Triple& triple) {
    if (h.has_loops()) throw InputError("embed_in_triple: pattern must be loop-free");
    if (h.size() > triple.k)
        throw InputError("embed_in_triple: |H| = " + std::to_string(h.size()) + " exceeds the triple size " +
                         std::to_string(triple.k));
    Model m;
    for (int u = 0; u < h.n; ++u) m.vertex_map.push_back(triple.b[u]);
    for (size_t j = 0; j < h.arcs.size(); ++j) {
        auto [u, v] = h.arcs[j];
        size_t s = static_cast<size_t>(h.n) - 1 + j;
        m.paths.push_back({triple.b[u], triple.c[s], triple.a[s], triple.b[v]});
    }
    return m;
}

}  // namespace scd

#include "scd/signature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "scd/errors.hpp"

namespace scd {

void canonicalize_classes(Signature& s) {
    std::map<int, int> rename;
    for (auto& pairs : s.edges)
        for (auto& p : pairs) {
            if (p.cls < 0) continue;
            auto [it, fresh] = rename.emplace(p.cls, static_cast<int>(rename.size()));
            p.cls = it->second;
        }
}

namespace {

bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

std::string edge_tag(size_t e) { return "edge " + std::to_string(e + 1) + ": "; }

}  // namespace

bool is_valid_signature(const PatternDigraph& h, int m, const Signature& s, std::string* why) {
    if (h.has_loops()) return fail(why, "pattern has loops");
    if (static_cast<int>(s.place.size()) != h.n) return fail(why, "placement has wrong length");
    if (s.edges.size() != h.arcs.size()) return fail(why, "one pair list per arc is required");

    std::vector<char> cut_used(m, 0);
    for (int x : s.place) {
        if (x == kUnplaced || x == kForgotten) continue;
        if (x < 0 || x >= m) return fail(why, "placement outside the cut");
        if (cut_used[x]) return fail(why, "placement is not injective");
        cut_used[x] = 1;
    }

    // Class of each F-placed vertex, fixed by the first out-arc seen.
    std::vector<int> vertex_class(h.n, -1);
    int next_expected = 0;
    for (size_t e = 0; e < h.arcs.size(); ++e) {
        const auto& pairs = s.edges[e];
        auto [tail, head] = h.arcs[e];
        const int pt = s.place[tail], ph = s.place[head];
        auto tag = edge_tag(e);

        if (pairs.empty()) {
            if (pt != kUnplaced || ph != kUnplaced) return fail(why, tag + "empty but an endpoint lies in A");
            continue;
        }
        std::vector<char> seen(m, 0);
        std::vector<int> classes;
        for (size_t i = 0; i < pairs.size(); ++i) {
            const auto& p = pairs[i];
            const bool last = i + 1 == pairs.size();
            for (int x : {p.b, p.e}) {
                if (x != kForgotten && (x < 0 || x >= m)) return fail(why, tag + "pair end outside the cut");
            }
            if (p.b >= 0) {
                if (seen[p.b]) return fail(why, tag + "cut vertex repeated");
                seen[p.b] = 1;
            }
            if (p.e >= 0 && p.e != p.b) {
                if (seen[p.e]) return fail(why, tag + "cut vertex repeated");
                seen[p.e] = 1;
            }
            if (p.e == kForgotten && !last) return fail(why, tag + "only the last pair may end in F");
            if ((p.b == kForgotten) != (p.cls >= 0)) return fail(why, tag + "class tag mismatch");
            if (p.cls >= 0) {
                if (p.cls > next_expected) return fail(why, "classes are not canonically numbered");
                if (p.cls == next_expected) ++next_expected;
                if (std::find(classes.begin(), classes.end(), p.cls) != classes.end())
                    return fail(why, tag + "re-enters the same forgotten vertex");
                classes.push_back(p.cls);
            }
        }
        const auto& first = pairs.front();
        const auto& lastp = pairs.back();
        if (pt == kForgotten) {
            if (first.b != kForgotten) return fail(why, tag + "tail is forgotten but the first pair starts in the cut");
            if (vertex_class[tail] == -1) vertex_class[tail] = first.cls;
            else if (vertex_class[tail] != first.cls)
                return fail(why, tag + "out-arcs of one vertex start in different classes");
        } else if (pt >= 0 && first.b != pt) {
            return fail(why, tag + "first pair does not start at the tail image");
        }
        if (ph == kForgotten) {
            if (lastp.e != kForgotten) return fail(why, tag + "head is forgotten but the path ends in the cut");
        } else if (ph >= 0) {
            if (lastp.e != ph) return fail(why, tag + "last pair does not end at the head image");
        } else if (lastp.e == kForgotten) {
            return fail(why, tag + "head lies in the future but the path ends in F");
        }
    }
    for (int u = 0; u < h.n; ++u)
        for (int w = u + 1; w < h.n; ++w)
            if (vertex_class[u] >= 0 && vertex_class[u] == vertex_class[w])
                return fail(why, "two forgotten vertices share a class");
    return true;
}

namespace {

// All pair sequences over the cut {0..m-1} compatible with the endpoint
// placements of one arc. F-begin pairs get a placeholder class.
void edge_sequences(int m, int pt, int ph, std::vector<std::vector<SigPair>>& out) {
    std::vector<SigPair> cur;
    std::vector<char> used(m, 0);
    auto endpoints_ok = [&](const std::vector<SigPair>& seq) {
        if (seq.empty()) return pt == kUnplaced && ph == kUnplaced;
        if (pt == kForgotten && seq.front().b != kForgotten) return false;
        if (pt >= 0 && seq.front().b != pt) return false;
        if (ph == kForgotten) return seq.back().e == kForgotten;
        if (ph >= 0) return seq.back().e == ph;
        return seq.back().e != kForgotten;
    };
    auto rec = [&](auto&& self) -> void {
        if (endpoints_ok(cur)) out.push_back(cur);
        if (!cur.empty() && cur.back().e == kForgotten) return;
        std::vector<int> begins{kForgotten};
        for (int x = 0; x < m; ++x)
            if (!used[x]) begins.push_back(x);
        for (int b : begins) {
            if (b >= 0) used[b] = 1;
            std::vector<int> ends;
            if (b >= 0) ends.push_back(b);
            for (int x = 0; x < m; ++x)
                if (!used[x]) ends.push_back(x);
            ends.push_back(kForgotten);
            for (int e : ends) {
                if (e >= 0 && e != b) used[e] = 1;
                cur.push_back({b, e, b == kForgotten ? 0 : -1});
                self(self);
                cur.pop_back();
                if (e >= 0 && e != b) used[e] = 0;
            }
            if (b >= 0) used[b] = 0;
        }
    };
    rec(rec);
}

}  // namespace

void enumerate_signatures(const PatternDigraph& h, int m, const std::function<void(const Signature&)>& visit,
                          double budget) {
    if (h.has_loops()) throw InputError("pattern has loops; subdivide them first");
    if (m < 0) throw InputError("cut size must be non-negative");
    const double estimate = signature_count_bound(h.n, static_cast<int>(h.arcs.size()), m);
    if (estimate > budget) throw BudgetExceeded("signature enumeration", estimate);

    Signature s;
    s.place.assign(h.n, kUnplaced);
    s.edges.assign(h.arcs.size(), {});
    std::vector<char> cut_used(m, 0);

    auto assign_classes = [&](Signature& sig) {
        std::vector<std::pair<int, int>> fpairs;  // (edge, index)
        for (size_t e = 0; e < sig.edges.size(); ++e)
            for (size_t i = 0; i < sig.edges[e].size(); ++i)
                if (sig.edges[e][i].b == kForgotten) fpairs.emplace_back(static_cast<int>(e), static_cast<int>(i));
        // Restricted growth strings give canonical numbering directly.
        std::vector<int> rgs(fpairs.size(), 0);
        auto rec = [&](auto&& self, size_t pos, int blocks) -> void {
            if (pos == fpairs.size()) {
                for (size_t j = 0; j < fpairs.size(); ++j) sig.edges[fpairs[j].first][fpairs[j].second].cls = rgs[j];
                if (is_valid_signature(h, m, sig)) visit(sig);
                return;
            }
            for (int c = 0; c <= blocks; ++c) {
                rgs[pos] = c;
                self(self, pos + 1, std::max(blocks, c + 1));
            }
        };
        rec(rec, 0, 0);
    };

    // A pair may start or end at another vertex's image: immersions may pass
    // through branch vertices.
    std::vector<std::vector<std::vector<SigPair>>> options(h.arcs.size());
    auto edges_rec = [&](auto&& self, size_t e) -> void {
        if (e == h.arcs.size()) {
            assign_classes(s);
            return;
        }
        for (const auto& seq : options[e]) {
            s.edges[e] = seq;
            self(self, e + 1);
        }
        s.edges[e].clear();
    };

    auto place_rec = [&](auto&& self, int u) -> void {
        if (u == h.n) {
            for (size_t e = 0; e < h.arcs.size(); ++e) {
                options[e].clear();
                edge_sequences(m, s.place[h.arcs[e].first], s.place[h.arcs[e].second], options[e]);
            }
            edges_rec(edges_rec, 0);
            return;
        }
        for (int x : {kUnplaced, kForgotten}) {
            s.place[u] = x;
            self(self, u + 1);
        }
        for (int x = 0; x < m; ++x) {
            if (cut_used[x]) continue;
            cut_used[x] = 1;
            s.place[u] = x;
            self(self, u + 1);
            cut_used[x] = 0;
        }
        s.place[u] = kUnplaced;
    };
    place_rec(place_rec, 0);
}

std::vector<Signature> enumerate_signatures(const PatternDigraph& h, int m, double budget) {
    std::vector<Signature> out;
    enumerate_signatures(h, m, [&](const Signature& s) { out.push_back(s); }, budget);
    return out;
}

double signature_count_bound(int k, int l, int m) {
    const double base = m + 2.0;
    double fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    // Bell numbers through the Bell triangle.
    const int bn = (m + 1) * l;
    std::vector<double> row{1.0};
    for (int i = 0; i < bn; ++i) {
        std::vector<double> next{row.back()};
        for (double x : row) next.push_back(next.back() + x);
        row = std::move(next);
    }
    const double bell = row.front();
    return std::pow(base, k) * std::pow(std::pow(base, m) * fact * base, l) * bell;
}

std::string format_signature(const Signature& s) {
    auto name = [](int x) {
        if (x == kUnplaced) return std::string("U");
        if (x == kForgotten) return std::string("F");
        return std::to_string(x + 1);
    };
    std::ostringstream out;
    out << "place[";
    for (size_t i = 0; i < s.place.size(); ++i) out << (i ? "," : "") << name(s.place[i]);
    out << "]";
    for (size_t e = 0; e < s.edges.size(); ++e) {
        out << " e" << e + 1 << ":";
        if (s.edges[e].empty()) out << "-";
        for (const auto& p : s.edges[e]) {
            out << "(" << name(p.b) << "," << name(p.e);
            if (p.cls >= 0) out << "#" << p.cls;
            out << ")";
        }
    }
    return out.str();
}

}  // namespace scd

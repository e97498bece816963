#include "scd/cliquewidth.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "scd/errors.hpp"

namespace scd {

namespace {
int add_node(CliquewidthExpression& e, CwNode node) {
    e.nodes.push_back(node);
    return static_cast<int>(e.nodes.size()) - 1;
}
}  // namespace

// Children always precede their parent in the arena, so index order is a
// valid bottom-up evaluation order and no recursion is needed.
std::string CliquewidthExpression::str() const {
    if (root < 0) return "";
    std::vector<std::string> text(nodes.size());
    for (size_t i = 0; i <= static_cast<size_t>(root); ++i) {
        const CwNode& nd = nodes[i];
        switch (nd.op) {
            case CwNode::Op::Introduce:
                text[i] = std::to_string(nd.label) + "(" + std::to_string(nd.vertex + 1) + ")";
                break;
            case CwNode::Op::Union:
                text[i] = "union(" + std::move(text[nd.left]) + ", " + std::move(text[nd.right]) + ")";
                break;
            case CwNode::Op::Relabel:
                text[i] = "relabel[" + std::to_string(nd.label) + "->" + std::to_string(nd.label2) + "](" +
                          std::move(text[nd.left]) + ")";
                break;
            case CwNode::Op::Join:
                text[i] = "join[" + std::to_string(nd.label) + "," + std::to_string(nd.label2) + "](" +
                          std::move(text[nd.left]) + ")";
                break;
        }
    }
    return text[root];
}

CliquewidthExpression cwexpr_from_decomposition(const Digraph& t, const PathDecomposition& w) {
    auto check = verify_path_decomposition(t, w);
    if (!check.valid) throw InputError("cwexpr_from_decomposition: " + check.reason);
    const int n = t.size();
    const int p = check.width;
    const int forgotten_label = p + 2;
    CliquewidthExpression e;
    e.n = n;
    e.labels = p + 2;
    NiceDecomposition nice = make_nice(w, n);

    std::vector<int> label_of(n, 0);
    std::set<int> free_labels;
    for (int l = 1; l <= p + 1; ++l) free_labels.insert(l);
    std::vector<Vertex> bag;
    VertexSet forgotten(n);
    int cur = -1;
    for (const auto& ev : nice.events) {
        const Vertex v = ev.v;
        if (ev.kind == NiceKind::Introduce) {
            const int q = *free_labels.begin();
            free_labels.erase(free_labels.begin());
            label_of[v] = q;
            int intro = add_node(e, {CwNode::Op::Introduce, q, 0, v, -1, -1});
            cur = cur < 0 ? intro : add_node(e, {CwNode::Op::Union, 0, 0, -1, cur, intro});
            for (Vertex u : bag) {
                if (t.has_arc(v, u)) cur = add_node(e, {CwNode::Op::Join, q, label_of[u], -1, cur, -1});
                if (t.has_arc(u, v)) cur = add_node(e, {CwNode::Op::Join, label_of[u], q, -1, cur, -1});
            }
            if (!forgotten.empty() && forgotten.subset_of(t.out(v)))
                cur = add_node(e, {CwNode::Op::Join, q, forgotten_label, -1, cur, -1});
            bag.push_back(v);
            // Relabels after the last introduction do not change the digraph.
            e.root = cur;
        } else {
            cur = add_node(e, {CwNode::Op::Relabel, label_of[v], forgotten_label, -1, cur, -1});
            free_labels.insert(label_of[v]);
            forgotten.insert(v);
            bag.erase(std::find(bag.begin(), bag.end(), v));
        }
    }
    return e;
}

Digraph evaluate_cwexpr(const CliquewidthExpression& expr) {
    struct Partial {
        std::vector<std::pair<Vertex, int>> vertices;  // vertex, label
        std::vector<Arc> arcs;
    };
    Digraph out(expr.n);
    if (expr.root < 0) return out;
    std::vector<Partial> val(expr.nodes.size());
    for (size_t i = 0; i <= static_cast<size_t>(expr.root); ++i) {
        const CwNode& nd = expr.nodes[i];
        Partial& r = val[i];
        switch (nd.op) {
            case CwNode::Op::Introduce:
                if (nd.vertex < 0 || nd.vertex >= expr.n) throw InputError("cwexpr: vertex outside declared set");
                r.vertices.push_back({nd.vertex, nd.label});
                break;
            case CwNode::Op::Union: {
                r = std::move(val[nd.left]);
                Partial& o = val[nd.right];
                r.vertices.insert(r.vertices.end(), o.vertices.begin(), o.vertices.end());
                r.arcs.insert(r.arcs.end(), o.arcs.begin(), o.arcs.end());
                o = Partial{};
                break;
            }
            case CwNode::Op::Relabel:
                r = std::move(val[nd.left]);
                for (auto& [v, l] : r.vertices)
                    if (l == nd.label) l = nd.label2;
                break;
            case CwNode::Op::Join:
                r = std::move(val[nd.left]);
                for (auto [u, lu] : r.vertices) {
                    if (lu != nd.label) continue;
                    for (auto [v, lv] : r.vertices)
                        if (lv == nd.label2 && u != v) r.arcs.emplace_back(u, v);
                }
                break;
        }
    }
    for (auto [u, v] : val[expr.root].arcs)
        if (!out.has_arc(u, v)) out.add_arc(u, v);
    return out;
}

}  // namespace scd

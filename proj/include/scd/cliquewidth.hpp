#pragma once

#include <string>
#include <vector>

#include "scd/decomposition.hpp"
#include "scd/digraph.hpp"

namespace scd {

// Operation tree stored as an arena; `root` indexes `nodes`.
struct CwNode {
    enum class Op { Introduce, Union, Relabel, Join } op;
    int label = 0;   // Introduce: label of the new vertex; Relabel/Join: first label
    int label2 = 0;  // Relabel: target label; Join: arcs go from `label` to `label2`
    Vertex vertex = -1;
    int left = -1, right = -1;  // children (Union uses both, Relabel/Join use left)
};

struct CliquewidthExpression {
    int n = 0;          // declared vertex set {0..n-1}
    int labels = 0;     // number of labels used
    std::vector<CwNode> nodes;
    int root = -1;

    std::string str() const;
};

// Expression with at most width+2 labels built along a nice version of W.
// Throws InputError if W is not a valid decomposition of T.
CliquewidthExpression cwexpr_from_decomposition(const Digraph& t, const PathDecomposition& w);

Digraph evaluate_cwexpr(const CliquewidthExpression& expr);

}  // namespace scd

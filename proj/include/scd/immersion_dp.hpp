#pragma once

#include <optional>
#include <vector>

#include "scd/decomposition.hpp"
#include "scd/digraph.hpp"
#include "scd/model.hpp"

namespace scd {

struct DpOptions {
    bool want_model = true;
    // Largest number of distinct states allowed in one layer.
    double budget = 1e7;
};

struct DpResult {
    bool answer = false;
    std::optional<Model> model;  // verified witness when answer && want_model
    std::size_t max_layer_states = 0;
    double estimate = 0;  // a-priori signature bound for the widest bag
};

// Dynamic programming over a path decomposition of a semi-complete host.
// Rooted immersion: pattern root i must land on host.roots[i]; an empty root
// list gives plain immersion. Throws InputError on loops in the pattern, an
// invalid decomposition or a non-semi-complete host, and BudgetExceeded when
// a layer outgrows the budget.
DpResult dp_rooted_immersion(const PatternDigraph& h, const RootedHost& host, const PathDecomposition& w,
                             const DpOptions& opts = {});

DpResult dp_immersion(const PatternDigraph& h, const Digraph& t, const PathDecomposition& w,
                      const DpOptions& opts = {});

DpResult dp_topological_containment(const PatternDigraph& h, const Digraph& t, const PathDecomposition& w,
                                    const DpOptions& opts = {});

}  // namespace scd

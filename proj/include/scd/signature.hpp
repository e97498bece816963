#pragma once

#include <functional>
#include <string>
#include <vector>

#include "scd/digraph.hpp"

namespace scd {

// Placement and pair-end markers. Non-negative values name cut vertices.
inline constexpr int kUnplaced = -1;   // U: vertex lies strictly in the future side
inline constexpr int kForgotten = -2;  // F: vertex lies strictly in the past side

// Maximal subpath inside A: begins at b, ends at e. `cls` is the ≡-class of
// pairs with b == F (-1 otherwise).
struct SigPair {
    int b = 0, e = 0, cls = -1;
    bool operator==(const SigPair&) const = default;
};

struct Signature {
    std::vector<int> place;                  // per pattern vertex
    std::vector<std::vector<SigPair>> edges;  // per pattern arc, in path order

    bool operator==(const Signature&) const = default;
};

// Renumbers ≡-classes by first appearance in (edge, pair) order.
void canonicalize_classes(Signature& s);

// Validity of a signature over the cut {0..m-1} for a loop-free pattern:
// placement injectivity, pair-sequence rules and ≡ constraints. The classes
// must be in canonical numbering.
bool is_valid_signature(const PatternDigraph& h, int m, const Signature& s, std::string* why = nullptr);

// Every valid signature over a cut of size m exactly once, in a fixed order.
// Throws BudgetExceeded if the cardinality estimate exceeds `budget`.
void enumerate_signatures(const PatternDigraph& h, int m, const std::function<void(const Signature&)>& visit,
                          double budget = 1e7);
std::vector<Signature> enumerate_signatures(const PatternDigraph& h, int m, double budget = 1e7);

// (m+2)^k · ((m+2)^m · m! · (m+2))^ℓ · Bell((m+1)ℓ) for k vertices, ℓ arcs.
double signature_count_bound(int k, int l, int m);

std::string format_signature(const Signature& s);

}  // namespace scd

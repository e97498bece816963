#pragma once

#include <string>
#include <vector>

#include "scd/digraph.hpp"

namespace scd {

// Pair (A, B) with A ∪ B = V and no arc from A∖B to B∖A.
struct Separation {
    VertexSet a, b;

    int order() const { return a.intersection_count(b); }
    VertexSet left() const { return a - b; }   // A∖B
    VertexSet right() const { return b - a; }  // B∖A
    VertexSet cut() const { return a & b; }
    bool operator==(const Separation& o) const = default;
};

struct SeparationCheck {
    bool valid = false;
    int order = 0;
};

SeparationCheck is_separation(const Digraph& d, const VertexSet& a, const VertexSet& b);

// False iff one separation is nested inside the other.
bool crosses(const Separation& s1, const Separation& s2);

// Orders two nested separations so that the first is contained in the second,
// then tests |(B∖A) ∩ (C∖D)| < k·|order difference|. Throws InputError on
// crossing input.
bool k_close(const Separation& s1, const Separation& s2, int k);

// Containment order A_1 ⊆ ... ⊆ A_t, B_t ⊆ ... ⊆ B_1. Throws InputError if
// some pair crosses.
std::vector<Separation> sort_cross_free(std::vector<Separation> family);

// `A: i j | B: k l` with 1-based ids.
std::string format_separation(const Separation& s);
Separation parse_separation(const std::string& text, int n);

}  // namespace scd

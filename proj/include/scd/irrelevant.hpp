#pragma once

#include <string>
#include <vector>

#include "scd/digraph.hpp"
#include "scd/obstructions.hpp"

namespace scd {

// 80k² + 80k + 5.
long long p_threshold(int k);

// Parameter used for the thresholds: arcs (with multiplicity) plus isolated
// vertices of the pattern, at least 1.
int irrelevant_parameter(const PatternDigraph& h);

struct IrrelevantOptions {
    // Run below p(k) and turn failed counting assertions into warnings. The
    // answer-preservation guarantee does not hold in this mode.
    bool opportunistic = false;
};

struct IrrelevantReport {
    Vertex x = -1;
    int k = 0;
    long long p = 0;  // p_threshold(k)

    // Thresholds as used: 6k, 16k²+16k+1, 6k²+6k, 8k, 8k²+8k.
    int out_threshold = 0;
    int x_min = 0;
    int s_out_degree = 0;
    int in_threshold = 0;
    int s2_in_degree = 0;

    std::vector<Vertex> b;                       // the B part, in triple order
    std::vector<std::vector<Vertex>> r_sets;     // R_b per entry of b
    std::vector<std::vector<Vertex>> g_sets;     // G_b per entry of b
    std::vector<Vertex> b_empty;                 // b with G_b = ∅
    bool took_b_empty = false;                   // X = B_∅
    int s_vertices = 0;
    long long s_arcs = 0;
    std::vector<Vertex> x_set;                   // phase-1 set X
    std::vector<std::vector<Vertex>> g2_sets;    // G'_b per entry of x_set
    bool phase2_empty = false;                   // x chosen with G'_x = ∅
    int s2_vertices = 0;
    long long s2_arcs = 0;

    std::vector<std::string> warnings;
};

// Two-phase identification of a vertex of B whose deletion keeps the rooted
// immersion answer. Throws ThresholdError when the triple is smaller than
// p(k) or a counting assertion fails (theoretical mode), and InputError when
// the triple fails verification or meets a root.
IrrelevantReport find_irrelevant_vertex(const PatternDigraph& h, const RootedHost& host, const Triple& triple,
                                        const IrrelevantOptions& opts = {});

// Host with x removed; roots renumbered. Throws InputError if x is a root.
RootedHost delete_vertex(const RootedHost& host, Vertex x);

// Rooted immersion answer with and without x. Flow-checkable patterns use
// max-flow at any size; other instances go to the exhaustive oracle and are
// refused above its limit. Deleting a root makes the second answer false.
bool check_answer_preserved(const PatternDigraph& h, const RootedHost& host, Vertex x);

std::string format_irrelevant_report(const IrrelevantReport& r);

}  // namespace scd

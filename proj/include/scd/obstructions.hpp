#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "scd/digraph.hpp"
#include "scd/model.hpp"

namespace scd {

// k-triple: every a_i -> b_j and b_i -> c_j arc present, plus c_i -> a_i.
struct Triple {
    int k = 0;
    std::vector<Vertex> a, b, c;
};

// Checks completeness A->B, B->C and finds a perfect C->A matching; the
// returned triple keeps the given order of A and B and pairs c[i] with a[i].
// Throws InputError when the parts have different sizes.
std::optional<Triple> verify_triple(const Digraph& t, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                                    const std::vector<Vertex>& c);

std::string format_triple(const Triple& tr);

// The (n/2 - 1)-triple of the two-pair counterexample: A = b_1..b_h,
// B = the last h of a_{n/2+1}..a_n, C = a_1..a_h with h = n/2 - 1.
std::optional<Triple> counterexample_triple(const Counterexample& ce);

// Transitive sequence x_1..x_m (x_i -> x_j for i < j after dropping, from each
// 2-cycle, the arc whose tail has the larger id) of length at least
// floor(log2 n) + 1 on a nonempty vertex set.
std::vector<Vertex> transitive_sequence(const Digraph& t, const VertexSet& within);

struct TransitiveResult {
    bool sufficient = false;
    std::vector<Vertex> sequence;  // the sequence found, even when insufficient
};
TransitiveResult find_transitive_subtournament(const Digraph& t, int target);

enum class ExtractionMode { Theoretical, Opportunistic };

struct TripleExtraction {
    std::optional<Triple> triple;
    std::string reason;  // why no triple was returned
};

// Jungle-to-triple extraction through a transitive subset, disjoint paths
// between its halves, a minimal supporting vertex set and a search over the
// path ends. Theoretical mode refuses below the f(k) size threshold.
TripleExtraction triple_from_jungle(const Digraph& t, const std::vector<Vertex>& z, int k,
                                    ExtractionMode mode = ExtractionMode::Theoretical);

// Upper bound on the diagonal Ramsey number R(k,k).
long long ramsey_upper(int k);

// f(k) = 2^(12 * 2^R(2k,2k)) is kept as its base-2 exponent.
mpz_class f_threshold_exponent(int k);
// Exact value; refuses exponents above 2^24 bits.
mpz_class f_threshold(int k);
bool meets_f_threshold(long long size, int k);

// Topological model of a loop-free H with |H| <= k in a k-triple: vertex i
// goes to b_i, and arc j to b_u -> c_s -> a_s -> b_v with s = |V(H)| - 1 + j.
Model embed_in_triple(const PatternDigraph& h, const Triple& triple);

}  // namespace scd

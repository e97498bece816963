#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scd/decomposition.hpp"
#include "scd/digraph.hpp"
#include "scd/model.hpp"
#include "scd/obstructions.hpp"
#include "scd/pathwidth.hpp"

namespace scd {

enum class Profile {
    Theoretical,    // irrelevant-vertex deletions only at p(k) and above
    Opportunistic,  // also below p(k), with assertions as warnings (unsound)
};

const char* profile_name(Profile p);

struct SolveOptions {
    Profile profile = Profile::Theoretical;
    double budget = 1e7;  // DP states per layer, or candidate tests for the deletion search
    // Known triple of the host (rooted immersion): used for irrelevant-vertex
    // deletions and repaired after each deletion.
    std::optional<Triple> triple_hint;
};

enum class Method {
    Dp,              // exact DP on a verified decomposition
    TripleEmbedding, // verified model inside a triple
    Threshold,       // jungle at least f(|H|): positive by the theory alone
    Probe,           // verified model from the greedy path probe
    Jungle,          // verified jungle above the width bound (Π+kv)
    DeletionSearch,  // exhaustive deletion-set search (Π+kv)
    Trivial,
};

const char* method_name(Method m);

struct SolveReport {
    bool answer = false;
    Method method = Method::Trivial;
    Profile profile = Profile::Theoretical;

    PatternDigraph pattern;  // the pattern actually solved (loops subdivided)
    std::optional<Model> model;                   // in original host ids
    std::optional<PathDecomposition> decomposition;  // the one the DP ran on (current host ids)
    std::optional<Triple> triple;
    std::optional<Jungle> jungle;
    std::vector<Vertex> deleted;       // irrelevant vertices removed, original ids, in order
    std::vector<Vertex> deletion_set;  // Π+kv witness
    int iterations = 0;
    int k_reached = 0;
    std::size_t dp_states = 0;
    std::vector<std::string> log;
};

// Candidate decompositions (bundle-derived with growing k, SCC chain,
// out-degree order) and the narrowest one found.
PathDecomposition narrow_decomposition(const Digraph& t);

SolveReport solve_topological_containment(const PatternDigraph& h, const Digraph& t, const SolveOptions& opts = {});

SolveReport solve_rooted_immersion(const PatternDigraph& h, const RootedHost& host, const SolveOptions& opts = {});

// Deletion of at most k vertices so that no obstruction immerses into the
// rest. With c_pi, a verified jungle of order c_pi + k + 2 answers NO first.
SolveReport solve_pi_kv(const Digraph& t, int k, const std::vector<PatternDigraph>& obstructions,
                        std::optional<int> c_pi = std::nullopt, const SolveOptions& opts = {});

// Re-runs the verifier matching the report's method against the inputs.
bool verify_report(const SolveReport& r, const Digraph& t, ContainmentMode mode,
                   const std::vector<Vertex>& host_roots = {});

}  // namespace scd

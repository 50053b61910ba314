#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cycleforge/digraph.hpp"

namespace cycleforge {

enum class Strategy { potential, random, greedy_any };

enum class CaseTag { min_degree, heavy };

struct DecompositionParams {
    double mu = -1.0;  // < 0: recompute 50*ln(Delta) from the residual graph each round
    double xi = 1.0 / (50.0 * 2.718281828459045);
    Strategy strategy = Strategy::potential;
    std::uint64_t seed = 0;
    bool check_invariants = true;  // re-assert balance after every peel
};

struct DecomposedCycle {
    Cycle cycle;
    CaseTag tag = CaseTag::min_degree;
    double inv_degree_weight = 0.0;  // sum of 1/d_out in the residual graph at removal time
    int delta_at_removal = 0;
    VertexId pivot = 0;  // min-degree vertex (case 1) or walk start (case 2)
};

struct CycleDecomposition {
    std::vector<DecomposedCycle> cycles;

    std::size_t count() const { return cycles.size(); }
    std::size_t count_case(CaseTag t) const;
};

// Peels the balanced graph empty: a cycle through a minimum-degree vertex
// while delta < mu, otherwise a heavy cycle with inverse-degree weight >= xi
// (potential walk, falling back to any cycle when Delta < 20).
CycleDecomposition decompose(const Digraph& g, const DecompositionParams& params = {});

struct DecompositionStats {
    std::size_t n = 0, m = 0;
    int Delta = 0;
    std::size_t case1 = 0, case2 = 0, total = 0;
    std::size_t longest = 0;
    double mu_used = 0.0;
    double harmonic_sum = 0.0;  // sum over v of H(d_out(v)) in the original graph
    double budget = 0.0;        // n*mu + (1/xi)*harmonic_sum
    bool budget_ok = false;
    bool harmonic_identity_ok = false;  // sum of inv_degree_weights == harmonic_sum
    double count_ratio = 0.0;           // total / (n ln Delta)
    double longest_ratio = 0.0;         // longest / (m / (n ln Delta))
};

DecompositionStats decomposition_stats(const CycleDecomposition& d, const Digraph& g_original,
                                       const DecompositionParams& params = {});

// True iff the cycles' edge ids exactly partition the live arcs of
// g_original and each cycle is simple and directed-consistent.
bool verify_decomposition(const CycleDecomposition& d, const Digraph& g_original,
                          std::string* diagnostic = nullptr);

}  // namespace cycleforge

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cycleforge/digraph.hpp"

namespace cycleforge {

struct BudgetError : GraphError {
    using GraphError::GraphError;
};

struct OracleBudget {
    int max_edges = 16;            // exact minimum decomposition
    std::size_t max_cycles = 1000000;  // cycle enumeration cap
};

// All elementary directed cycles, vertex-canonicalized to start at their
// smallest vertex id and returned in lexicographic order of vertex sequence.
// Parallel arcs are collapsed: each returned cycle materializes the
// max-weight arc between consecutive vertices. Throws BudgetError instead of
// truncating.
std::vector<Cycle> enumerate_cycles(const Digraph& g, const OracleBudget& budget = {});

// Maximum-weight elementary cycle; ties resolved by lexicographically
// smallest canonical vertex sequence. Throws GraphError when acyclic.
std::pair<Cycle, double> heaviest_cycle_exact(const Digraph& g, const OracleBudget& budget = {});

// Exact minimum number of cycles in any edge-disjoint cycle decomposition,
// by branch-and-bound with memoization on the live-edge bitmask. Requires a
// balanced graph with at most budget.max_edges arcs.
int min_decomposition_exact(const Digraph& g, const OracleBudget& budget = {});

// Adapted Bernoulli process: next_p receives the history of X_1..X_{t-1} and
// returns p_t in [0, 1].
struct ProcessSpec {
    int n = 0;
    std::function<double(const std::vector<int>&)> next_p;

    static ProcessSpec constant(int n, double p);
    // p_t = p_high if X_{t-1} = 1 else p_low (adversarial "sticky" rule)
    static ProcessSpec sticky(int n, double p_low, double p_high);
};

struct TailCheckResult {
    double empirical_rate = 0.0;  // fraction of runs violating the inequality
    double bound = 0.0;           // e^{-c}
    int violations = 0;
    int trials = 0;
};

// Simulates the process and counts how often
// lambda*sum(X_t) > (e^lambda - 1)*sum(p_t) + c.
TailCheckResult mc_tail_check(const ProcessSpec& process, double lambda, double c, int trials,
                              std::uint64_t seed);

}  // namespace cycleforge

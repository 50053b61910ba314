#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "cycleforge/digraph.hpp"
#include "cycleforge/random_walk.hpp"

namespace cycleforge {

// Walk parameters. theorem_mode turns the per-step bound, the closing-window
// bound and the final cycle-weight bound into hard assertions; it should only
// be set when Delta >= 20, lambda in [1, log log Delta], the maximum arc
// weight is at most lambda/(50 log Delta) and all out-weights equal 1.
struct PotentialParams {
    double lambda = 1.0;
    double w_max = 1.0;  // maximum single-arc weight
    int Delta = 1;
    bool theorem_mode = false;

    static PotentialParams from_graph(const Digraph& g, double lambda);

    double ab_bound() const { return 7.0 * lambda / (50.0 * std::exp(lambda)); }
    double window_bound() const { return 2.0 * lambda / (5.0 * std::exp(lambda)); }
    double cycle_bound() const { return lambda / (50.0 * std::exp(lambda)); }
};

// Incremental state of the potentials. a(v) is kept in log space relative to
// a global decay offset: the per-step factor exp(-(e^L/w_max)/rd) is common
// to every activated vertex, so it accumulates once in global_log_decay while
// log_a only receives the per-arc boosts.
struct PotentialLedger {
    double A = 0.0;
    double B = 0.0;
    double global_log_decay = 0.0;
    std::vector<double> log_a;  // valid where act >= 0
    std::vector<int> act;       // activation time, -1 when not activated
    std::vector<VertexId> activated;

    // tip snapshot, refreshed each step before candidates are scored
    VertexId tip = 0;
    int rd_tip = 0;
    double rw_tip = 0.0;

    double a(VertexId v) const { return std::exp(log_a[v] + global_log_decay); }
    double recompute_A(int Delta) const;
};

struct CandidateEval {
    double A_next = 0.0;
    double B_next = 0.0;
    double score() const { return A_next + B_next; }
};

// Hypothetical potentials after extending the current path by u. u must be an
// unvisited out-neighbour of the ledger's tip. Cost O(d_in(u)).
CandidateEval evaluate_candidate(const PotentialLedger& ledger, const Digraph& g, VertexId u,
                                 const std::vector<char>& visited, const PotentialParams& params);

double candidate_score(const PotentialLedger& ledger, const Digraph& g, VertexId u,
                       const std::vector<char>& visited, const PotentialParams& params);

// True iff A + B <= 7*lambda/(50 e^lambda) + tol, vacuously true outside
// theorem mode.
bool assert_ab_bound(const PotentialLedger& ledger, const PotentialParams& params);

// The deterministic walk: greedily minimise A + B, stop when the remaining
// out-weight of the tip drops below 1/2. Requires w_out = 1 (+-tol) at every
// non-isolated vertex and no self-loops. Ties go to the smallest vertex id.
std::pair<WalkState, PotentialLedger> potential_path(const Digraph& g,
                                                     std::optional<VertexId> start,
                                                     const PotentialParams& params);

// Closes the walk at the activation vertex of the tip. In theorem mode the
// cycle weight is asserted to be at least lambda/(50 e^lambda).
Cycle close_heavy_cycle(const Digraph& g, const WalkState& w, const PotentialLedger& ledger,
                        const PotentialParams& params);

// Sum of 1/rd over the closing window [act(x_T), T-1].
double closing_window_sum(const WalkState& w, const PotentialLedger& ledger);

// Top-level heavy-cycle search for graphs with w_out(v) >= 1 everywhere:
// normalize, restrict to a sink SCC, then either extend a heavy arc (small
// Delta or heavy-edge case) or run the potential walk. Returned edge ids
// refer to g.
Cycle heavy_cycle_any(const Digraph& g, std::optional<double> lambda_hint);

// Aggregated weight of all live parallel arcs u->v.
double pair_weight(const Digraph& g, VertexId u, VertexId v);

}  // namespace cycleforge

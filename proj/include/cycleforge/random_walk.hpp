#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cycleforge/digraph.hpp"

namespace cycleforge {

// State of one walk. path/path_edges grow together; path_edges[t] is the arc
// x_t -> x_{t+1} (so path_edges has one entry fewer than path). rd_history[t]
// and rw_history[t] are the remaining out-degree / out-weight of x_t at time
// t, measured against distinct out-neighbours with parallel arcs aggregated.
struct WalkState {
    std::vector<VertexId> path;
    std::vector<EdgeId> path_edges;
    std::vector<char> visited;
    std::vector<int> rd_history;
    std::vector<double> rw_history;
    std::uint64_t seed = 0;

    VertexId tip() const { return path.back(); }
    std::size_t stop_time() const { return path.size() - 1; }  // T
};

// The randomized path: step uniformly among distinct unvisited out-neighbours
// of the tip while at least half of them remain unvisited; stop otherwise.
// Default start is the vertex of maximum out-degree.
WalkState random_path(const Digraph& g, std::optional<VertexId> start, std::uint64_t seed);

// Closes the walk at the first path vertex that is an out-neighbour of the
// tip. Requires T >= 1.
Cycle close_cycle(const Digraph& g, const WalkState& w);

// Sum over cycle vertices of 1/d_out in the current graph.
double cycle_inverse_degree_weight(const Digraph& g, const Cycle& c);

struct WhpStats {
    int trials = 0;
    double threshold = 0.0;  // log log n / (8 log n)
    double fraction_meeting = 0.0;
    double min_weight = 0.0;
    double max_weight = 0.0;
    double mean_weight = 0.0;
};

// Monte-Carlo estimate of how often the random-walk cycle meets the
// log log n / (8 log n) inverse-degree-weight threshold. Start vertices are
// drawn per trial from the derived trial stream.
WhpStats estimate_whp_weight(const Digraph& g, int trials, std::uint64_t seed);

// Max-weight (then lowest-id) live arc u->v. Throws if none exists.
EdgeId pick_arc(const Digraph& g, VertexId u, VertexId v);

// Checks the visited-neighbourhood tail bound for a finished walk:
// |N+(v) ∩ {x_s..x_T}| <= 1 + (2e^L-2)/L * d+(v) * sum_{t=s}^{T-1} 1/d+(x_t)
//                          + (3/L) * log n   for all v and all s < T.
bool visited_neighbourhood_bound_holds(const Digraph& g, const WalkState& w, double lambda);

}  // namespace cycleforge

#pragma once

#include "cycleforge/digraph.hpp"

namespace cycleforge {

enum class WeightingKind { uniform_one, inverse_out_degree, explicit_weights };

// Sets w(e) = 1/d_out(tail(e)) for every live arc, so every non-isolated
// vertex ends with out-weight 1. Throws on a sink vertex with in-arcs.
void apply_inverse_out_degree(Digraph& g);

// Scales each vertex's out-arcs by 1/w_out(v) so w_out(v) = 1. Requires
// w_out(v) >= 1 - tol for every non-isolated v; weights never increase.
void normalize_out_weights(Digraph& g);

// Maximum live arc weight. Throws on an arc-free graph.
double max_weight(const Digraph& g);

}  // namespace cycleforge

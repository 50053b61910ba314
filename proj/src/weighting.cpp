#include "cycleforge/weighting.hpp"

#include <algorithm>
#include <string>

namespace cycleforge {

void apply_inverse_out_degree(Digraph& g) {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.d_out(v) == 0 && g.d_in(v) > 0)
            throw GraphError("apply_inverse_out_degree: sink vertex " + std::to_string(v));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.d_out(v) == 0) continue;
        double w = 1.0 / g.d_out(v);
        // copy: set_weight does not reorder the out-list but be safe
        std::vector<EdgeId> arcs(g.out(v));
        for (EdgeId e : arcs) g.set_weight(e, w);
    }
}

void normalize_out_weights(Digraph& g) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.d_out(v) == 0) continue;
        double total = g.w_out(v);
        if (total < 1.0 - kWeightTol)
            throw GraphError("normalize_out_weights: w_out(" + std::to_string(v) + ") = " +
                             std::to_string(total) + " < 1");
        if (total <= 1.0 + kWeightTol) continue;
        std::vector<EdgeId> arcs(g.out(v));
        for (EdgeId e : arcs) g.set_weight(e, g.weight(e) / total);
    }
}

double max_weight(const Digraph& g) {
    if (g.arc_count() == 0) throw GraphError("max_weight: no arcs");
    double best = 0.0;
    for (EdgeId e : g.live_arcs()) best = std::max(best, g.weight(e));
    return best;
}

}  // namespace cycleforge

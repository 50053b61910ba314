// Reference (definition-level) evaluation of the walk potentials, used to
// cross-check the incremental ledger. Deliberately quadratic and simple.
#pragma once

#include <cmath>
#include <vector>

#include "cycleforge/potential_walk.hpp"

namespace cycleforge::testing {

// activation times implied by a path: act(v) = min s with x_s in N+(v)
inline std::vector<int> activation_times(const Digraph& g, const std::vector<VertexId>& path) {
    std::vector<int> act(g.vertex_count(), -1);
    for (int s = 0; s < static_cast<int>(path.size()); ++s)
        for (EdgeId e : g.in(path[s])) {
            VertexId v = g.tail(e);
            if (act[v] < 0) act[v] = s;
        }
    return act;
}

inline double direct_a(const Digraph& g, const WalkState& w, int act_v, VertexId v,
                       const PotentialParams& p) {
    double exponent = 0.0;
    std::size_t t = w.stop_time();
    for (std::size_t r = static_cast<std::size_t>(act_v); r < t; ++r)
        exponent += p.lambda * pair_weight(g, v, w.path[r + 1]) -
                    std::exp(p.lambda) / w.rd_history[r];
    return std::exp(exponent / p.w_max);
}

inline double direct_A(const Digraph& g, const WalkState& w, const std::vector<int>& act,
                       const PotentialParams& p) {
    double sum = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (act[v] >= 0) sum += direct_a(g, w, act[v], v, p);
    return sum / (static_cast<double>(p.Delta) * p.Delta);
}

inline double direct_B(const Digraph& g, const WalkState& w, const PotentialParams& p) {
    double sum = 0.0;
    std::size_t t = w.stop_time();
    for (std::size_t s = 0; s < t; ++s) {
        double path_w = 0.0;
        for (std::size_t r = s; r < t; ++r) path_w += pair_weight(g, w.path[r], w.path[r + 1]);
        sum += std::exp(-(50.0 * std::exp(p.lambda) / p.lambda) * path_w) / w.rd_history[s];
    }
    return sum;
}

// Rebuilds walk state and ledger for an externally chosen path prefix, all
// from the definitions. The path must be simple with every consecutive pair
// an arc.
inline std::pair<WalkState, PotentialLedger> state_for_path(const Digraph& g,
                                                            const std::vector<VertexId>& path,
                                                            const PotentialParams& p) {
    WalkState w;
    w.visited.assign(g.vertex_count(), 0);
    for (VertexId v : path) {
        w.path.push_back(v);
        w.visited[v] = 1;
    }
    for (std::size_t t = 0; t + 1 < path.size(); ++t)
        w.path_edges.push_back(pick_arc(g, path[t], path[t + 1]));
    // rd/rw history: remaining values at each time against the growing prefix
    for (std::size_t t = 0; t < path.size(); ++t) {
        std::vector<VertexId> distinct;
        double rw = 0.0;
        for (EdgeId e : g.out(path[t])) {
            VertexId h = g.head(e);
            bool unv = true;
            for (std::size_t r = 0; r <= t; ++r)
                if (path[r] == h) unv = false;
            if (!unv) continue;
            rw += g.weight(e);
            bool dup = false;
            for (VertexId d : distinct)
                if (d == h) dup = true;
            if (!dup) distinct.push_back(h);
        }
        w.rd_history.push_back(static_cast<int>(distinct.size()));
        w.rw_history.push_back(rw);
    }

    PotentialLedger ledger;
    ledger.act = activation_times(g, path);
    ledger.log_a.assign(g.vertex_count(), 0.0);
    ledger.global_log_decay = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (ledger.act[v] >= 0) {
            ledger.activated.push_back(v);
            ledger.log_a[v] = std::log(direct_a(g, w, ledger.act[v], v, p));
        }
    ledger.A = direct_A(g, w, ledger.act, p);
    ledger.B = direct_B(g, w, p);
    ledger.tip = path.back();
    ledger.rd_tip = w.rd_history.back();
    ledger.rw_tip = w.rw_history.back();
    return {std::move(w), std::move(ledger)};
}

}  // namespace cycleforge::testing

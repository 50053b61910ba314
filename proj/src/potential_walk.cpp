#include "cycleforge/potential_walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cycleforge/weighting.hpp"

namespace cycleforge {

double pair_weight(const Digraph& g, VertexId u, VertexId v) {
    double w = 0.0;
    for (EdgeId e : g.out(u))
        if (g.head(e) == v) w += g.weight(e);
    return w;
}

PotentialParams PotentialParams::from_graph(const Digraph& g, double lambda) {
    PotentialParams p;
    p.lambda = lambda;
    Degrees d = g.degrees();
    p.Delta = std::max(d.Delta, 1);

    // maximum over individual arcs; parallel arcs are aggregated only inside
    // the pair-weight terms, not here
    double wmax = 0.0;
    for (EdgeId e : g.live_arcs()) wmax = std::max(wmax, g.weight(e));
    p.w_max = wmax > 0.0 ? wmax : 1.0;

    bool unit_out = true;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (!g.isolated(v) && std::abs(g.w_out(v) - 1.0) > kWeightTol) unit_out = false;
    double llD = p.Delta >= 3 ? std::log(std::log(static_cast<double>(p.Delta))) : 0.0;
    p.theorem_mode = p.Delta >= 20 && lambda >= 1.0 - kWeightTol && lambda <= llD + kWeightTol &&
                     p.w_max <= lambda / (50.0 * std::log(static_cast<double>(p.Delta))) + kWeightTol &&
                     unit_out;
    return p;
}

double PotentialLedger::recompute_A(int Delta) const {
    double sum = 0.0;
    for (VertexId v : activated) sum += std::exp(log_a[v] + global_log_decay);
    return sum / (static_cast<double>(Delta) * Delta);
}

CandidateEval evaluate_candidate(const PotentialLedger& ledger, const Digraph& g, VertexId u,
                                 const std::vector<char>& visited, const PotentialParams& params) {
    if (u >= g.vertex_count() || visited[u])
        throw GraphError("evaluate_candidate: candidate already visited");
    if (ledger.rd_tip <= 0) throw GraphError("evaluate_candidate: tip has no unvisited neighbour");

    const double lambda = params.lambda;
    const double wmax = params.w_max;
    const double D2 = static_cast<double>(params.Delta) * params.Delta;
    const double decay = std::exp(-(std::exp(lambda) / wmax) / ledger.rd_tip);

    // per-tail aggregation of in-arcs of u; reusable stamped scratch
    thread_local std::vector<double> acc;
    thread_local std::vector<std::uint32_t> stamp;
    thread_local std::uint32_t stamp_val = 0;
    if (acc.size() < g.vertex_count()) {
        acc.resize(g.vertex_count(), 0.0);
        stamp.assign(g.vertex_count(), 0);
        stamp_val = 0;
    }
    ++stamp_val;
    std::vector<VertexId> tails;
    for (EdgeId e : g.in(u)) {
        VertexId v = g.tail(e);
        if (stamp[v] != stamp_val) {
            stamp[v] = stamp_val;
            acc[v] = 0.0;
            tails.push_back(v);
        }
        acc[v] += g.weight(e);
    }
    double boost = 0.0;
    int newly_activated = 0;
    double w_tip_u = 0.0;
    for (VertexId v : tails) {
        if (v == ledger.tip) w_tip_u = acc[v];
        if (ledger.act[v] >= 0)
            boost += ledger.a(v) * std::expm1(lambda / wmax * acc[v]);
        else
            ++newly_activated;
    }

    CandidateEval ev;
    ev.A_next = decay * (ledger.A + boost / D2) + newly_activated / D2;
    ev.B_next = (ledger.B + 1.0 / ledger.rd_tip) *
                std::exp(-(50.0 * std::exp(lambda) / lambda) * w_tip_u);
    return ev;
}

double candidate_score(const PotentialLedger& ledger, const Digraph& g, VertexId u,
                       const std::vector<char>& visited, const PotentialParams& params) {
    return evaluate_candidate(ledger, g, u, visited, params).score();
}

bool assert_ab_bound(const PotentialLedger& ledger, const PotentialParams& params) {
    if (!params.theorem_mode) return true;
    return ledger.A + ledger.B <= params.ab_bound() + kWeightTol;
}

namespace {

void activate_in_neighbours(PotentialLedger& ledger, const Digraph& g, VertexId x, int time) {
    for (EdgeId e : g.in(x)) {
        VertexId v = g.tail(e);
        if (ledger.act[v] < 0) {
            ledger.act[v] = time;
            ledger.log_a[v] = -ledger.global_log_decay;  // effective a(v) = 1
            ledger.activated.push_back(v);
        }
    }
}

}  // namespace

std::pair<WalkState, PotentialLedger> potential_path(const Digraph& g,
                                                     std::optional<VertexId> start,
                                                     const PotentialParams& params) {
    const std::size_t n = g.vertex_count();
    for (VertexId v = 0; v < n; ++v) {
        if (!g.isolated(v) && std::abs(g.w_out(v) - 1.0) > 1e-6)
            throw GraphError("potential_path: w_out(" + std::to_string(v) + ") != 1");
        for (EdgeId e : g.out(v))
            if (g.head(e) == v) throw GraphError("potential_path: self-loop present");
    }
    VertexId x0;
    if (start) {
        x0 = *start;
        if (x0 >= n || g.d_out(x0) == 0) throw GraphError("potential_path: start is isolated");
    } else {
        x0 = 0;
        for (VertexId v = 1; v < n; ++v)
            if (g.d_out(v) > g.d_out(x0)) x0 = v;
        if (g.d_out(x0) == 0) throw GraphError("potential_path: graph has no arcs");
    }

    WalkState w;
    w.visited.assign(n, 0);
    w.path.push_back(x0);
    w.visited[x0] = 1;

    PotentialLedger ledger;
    ledger.log_a.assign(n, 0.0);
    ledger.act.assign(n, -1);
    activate_in_neighbours(ledger, g, x0, 0);
    ledger.A = ledger.recompute_A(params.Delta);
    ledger.B = 0.0;

    const double lambda = params.lambda;
    auto check_bound = [&](std::size_t t) {
        if (params.theorem_mode && !assert_ab_bound(ledger, params))
            throw GraphError("potential_path: A+B bound violated at step " + std::to_string(t) +
                             " (A+B = " + std::to_string(ledger.A + ledger.B) + ")");
    };
    check_bound(0);

    std::vector<VertexId> unvisited;  // distinct unvisited out-neighbours
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t stamp_val = 0;
    int steps = 0;
    while (true) {
        VertexId tip = w.path.back();
        unvisited.clear();
        ++stamp_val;
        double rw = 0.0;
        for (EdgeId e : g.out(tip)) {
            VertexId h = g.head(e);
            if (w.visited[h]) continue;
            if (stamp[h] != stamp_val) {
                stamp[h] = stamp_val;
                unvisited.push_back(h);
            }
            rw += g.weight(e);
        }
        std::sort(unvisited.begin(), unvisited.end());
        int rd = static_cast<int>(unvisited.size());
        w.rd_history.push_back(rd);
        w.rw_history.push_back(rw);
        ledger.tip = tip;
        ledger.rd_tip = rd;
        ledger.rw_tip = rw;
        if (rw < 0.5) break;
        if (rd == 0)
            throw GraphError("potential_path: rd = 0 with rw >= 1/2 (w_max too large)");

        // argmin of A' + B'; ascending order makes ties resolve to the
        // smallest vertex id
        VertexId best_u = 0;
        CandidateEval best_ev;
        double best_score = std::numeric_limits<double>::infinity();
        for (VertexId u : unvisited) {
            CandidateEval ev = evaluate_candidate(ledger, g, u, w.visited, params);
            if (ev.score() < best_score) {
                best_score = ev.score();
                best_ev = ev;
                best_u = u;
            }
        }

        // commit the step
        ledger.global_log_decay -= (std::exp(lambda) / params.w_max) / rd;
        for (EdgeId e : g.in(best_u)) {
            VertexId v = g.tail(e);
            if (ledger.act[v] >= 0)
                ledger.log_a[v] += lambda / params.w_max * g.weight(e);
        }
        int time = static_cast<int>(w.path.size());
        activate_in_neighbours(ledger, g, best_u, time);
        ledger.A = best_ev.A_next;
        ledger.B = best_ev.B_next;
        if (++steps % 1024 == 0) ledger.A = ledger.recompute_A(params.Delta);

        w.path_edges.push_back(pick_arc(g, tip, best_u));
        w.path.push_back(best_u);
        w.visited[best_u] = 1;
        check_bound(w.path.size() - 1);
    }
    return {std::move(w), std::move(ledger)};
}

double closing_window_sum(const WalkState& w, const PotentialLedger& ledger) {
    VertexId last = w.path.back();
    int s = ledger.act[last];
    if (s < 0) throw GraphError("closing_window_sum: tip never activated");
    double sum = 0.0;
    for (std::size_t t = static_cast<std::size_t>(s); t < w.stop_time(); ++t)
        sum += 1.0 / w.rd_history[t];
    return sum;
}

Cycle close_heavy_cycle(const Digraph& g, const WalkState& w, const PotentialLedger& ledger,
                        const PotentialParams& params) {
    if (w.path.size() < 2) throw GraphError("close_heavy_cycle: path too short");
    VertexId last = w.path.back();
    int s = ledger.act[last];
    if (s < 0) throw GraphError("close_heavy_cycle: tip not activated (internal invariant)");
    Cycle c;
    for (std::size_t t = static_cast<std::size_t>(s); t + 1 < w.path.size(); ++t) {
        c.vertices.push_back(w.path[t]);
        c.edges.push_back(w.path_edges[t]);
    }
    c.vertices.push_back(last);
    c.edges.push_back(pick_arc(g, last, w.path[static_cast<std::size_t>(s)]));
    if (params.theorem_mode && cycle_weight(g, c) < params.cycle_bound() - kWeightTol)
        throw GraphError("close_heavy_cycle: cycle weight below lambda/(50 e^lambda)");
    return c;
}

namespace {

// Shortest (by hops) cycle through arc e in a strongly connected graph: BFS
// from head(e) back to tail(e), then append e.
Cycle extend_edge_to_cycle(const Digraph& g, EdgeId e) {
    VertexId from = g.head(e), to = g.tail(e);
    std::vector<EdgeId> via(g.vertex_count(), std::numeric_limits<EdgeId>::max());
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> queue{from};
    seen[from] = 1;
    for (std::size_t qi = 0; qi < queue.size() && !seen[to]; ++qi) {
        VertexId v = queue[qi];
        for (EdgeId out_e : g.out(v)) {
            VertexId h = g.head(out_e);
            if (seen[h]) continue;
            seen[h] = 1;
            via[h] = out_e;
            queue.push_back(h);
        }
    }
    if (!seen[to]) throw GraphError("extend_edge_to_cycle: graph not strongly connected");
    std::vector<EdgeId> rev;
    for (VertexId v = to; v != from; v = g.tail(via[v])) rev.push_back(via[v]);
    Cycle c;
    c.vertices.push_back(g.tail(e));
    c.edges.push_back(e);
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
        c.vertices.push_back(g.tail(*it));
        c.edges.push_back(*it);
    }
    return c;
}

}  // namespace

Cycle heavy_cycle_any(const Digraph& g, std::optional<double> lambda_hint) {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.w_out(v) < 1.0 - kWeightTol)
            throw GraphError("heavy_cycle_any: w_out(" + std::to_string(v) + ") < 1");
    for (EdgeId e : g.live_arcs())
        if (g.tail(e) == g.head(e))
            throw GraphError("heavy_cycle_any: strip self-loops first");

    Digraph work = g;
    normalize_out_weights(work);
    std::vector<VertexId> sink = work.sink_scc();
    std::vector<VertexId> vmap;
    std::vector<EdgeId> emap;
    Digraph sub = induced_subgraph(work, sink, &vmap, &emap);

    int DeltaP = sub.degrees().Delta;
    auto map_back = [&](Cycle c) {
        for (auto& v : c.vertices) v = vmap[v];
        for (auto& e : c.edges) e = emap[e];
        return c;
    };

    if (sub.arc_count() == 0) throw GraphError("heavy_cycle_any: sink component has no arcs");
    EdgeId heaviest = sub.live_arcs().front();
    for (EdgeId e : sub.live_arcs())
        if (sub.weight(e) > sub.weight(heaviest)) heaviest = e;

    if (DeltaP < 20) return map_back(extend_edge_to_cycle(sub, heaviest));

    double llD = std::log(std::log(static_cast<double>(DeltaP)));
    double edge_threshold = llD / (50.0 * std::log(static_cast<double>(DeltaP)));
    if (sub.weight(heaviest) > edge_threshold)
        return map_back(extend_edge_to_cycle(sub, heaviest));

    double lambda = std::clamp(lambda_hint.value_or(llD), 1.0, std::max(llD, 1.0));
    PotentialParams params = PotentialParams::from_graph(sub, lambda);
    auto [walk, ledger] = potential_path(sub, std::nullopt, params);
    return map_back(close_heavy_cycle(sub, walk, ledger, params));
}

}  // namespace cycleforge

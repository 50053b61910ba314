#include "cycleforge/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cycleforge/rng.hpp"

namespace cycleforge {

namespace {

// Distinct out-neighbours of v, ascending. stamp/stamp_val implement a
// reusable "seen" set without clearing.
void distinct_out_neighbours(const Digraph& g, VertexId v, std::vector<std::uint32_t>& stamp,
                             std::uint32_t stamp_val, std::vector<VertexId>& out) {
    out.clear();
    for (EdgeId e : g.out(v)) {
        VertexId h = g.head(e);
        if (stamp[h] != stamp_val) {
            stamp[h] = stamp_val;
            out.push_back(h);
        }
    }
    std::sort(out.begin(), out.end());
}

}  // namespace

// Among parallel arcs u->v, the walk materializes the max-weight one,
// breaking ties by lowest edge id.
EdgeId pick_arc(const Digraph& g, VertexId u, VertexId v) {
    EdgeId best = std::numeric_limits<EdgeId>::max();
    double best_w = -1.0;
    for (EdgeId e : g.out(u)) {
        if (g.head(e) != v) continue;
        if (g.weight(e) > best_w + kWeightTol ||
            (g.weight(e) > best_w - kWeightTol && e < best)) {
            best = e;
            best_w = std::max(best_w, g.weight(e));
        }
    }
    if (best == std::numeric_limits<EdgeId>::max())
        throw GraphError("pick_arc: no arc between requested vertices");
    return best;
}

WalkState random_path(const Digraph& g, std::optional<VertexId> start, std::uint64_t seed) {
    const std::size_t n = g.vertex_count();
    VertexId x0;
    if (start) {
        x0 = *start;
        if (x0 >= n || g.d_out(x0) == 0) throw GraphError("random_path: start has no out-arc");
    } else {
        x0 = 0;
        for (VertexId v = 1; v < n; ++v)
            if (g.d_out(v) > g.d_out(x0)) x0 = v;
        if (g.d_out(x0) == 0) throw GraphError("random_path: graph has no arcs");
    }

    SplitMix64 rng(seed);
    WalkState w;
    w.seed = seed;
    w.visited.assign(n, 0);
    w.path.push_back(x0);
    w.visited[x0] = 1;

    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t stamp_val = 0;
    std::vector<VertexId> nbrs, unvisited;
    while (true) {
        VertexId tip = w.path.back();
        if (g.d_out(tip) == 0) throw GraphError("random_path: walked into a sink");
        distinct_out_neighbours(g, tip, stamp, ++stamp_val, nbrs);
        unvisited.clear();
        double rw = 0.0;
        for (VertexId u : nbrs)
            if (!w.visited[u]) unvisited.push_back(u);
        for (EdgeId e : g.out(tip))
            if (!w.visited[g.head(e)]) rw += g.weight(e);
        int rd = static_cast<int>(unvisited.size());
        w.rd_history.push_back(rd);
        w.rw_history.push_back(rw);
        // stop when fewer than half the distinct out-neighbours are unvisited
        if (2 * rd < static_cast<int>(nbrs.size())) break;
        VertexId next = unvisited[rng.below(unvisited.size())];
        w.path_edges.push_back(pick_arc(g, tip, next));
        w.path.push_back(next);
        w.visited[next] = 1;
    }
    return w;
}

Cycle close_cycle(const Digraph& g, const WalkState& w) {
    if (w.path.size() < 2) throw GraphError("close_cycle: path too short (T = 0)");
    VertexId last = w.path.back();
    // first path vertex that is an out-neighbour of the tip
    std::vector<char> is_nbr(g.vertex_count(), 0);
    for (EdgeId e : g.out(last)) is_nbr[g.head(e)] = 1;
    std::size_t s = w.path.size();
    for (std::size_t t = 0; t < w.path.size(); ++t)
        if (is_nbr[w.path[t]]) {
            s = t;
            break;
        }
    if (s == w.path.size())
        throw GraphError("close_cycle: tip has no visited out-neighbour (internal invariant)");
    Cycle c;
    for (std::size_t t = s; t + 1 < w.path.size(); ++t) {
        c.vertices.push_back(w.path[t]);
        c.edges.push_back(w.path_edges[t]);
    }
    c.vertices.push_back(last);
    c.edges.push_back(pick_arc(g, last, w.path[s]));
    return c;
}

double cycle_inverse_degree_weight(const Digraph& g, const Cycle& c) {
    double sum = 0.0;
    for (VertexId v : c.vertices) sum += 1.0 / g.d_out(v);
    return sum;
}

WhpStats estimate_whp_weight(const Digraph& g, int trials, std::uint64_t seed) {
    const std::size_t n = g.vertex_count();
    if (n < 3) throw GraphError("estimate_whp_weight: need n >= 3");
    WhpStats st;
    st.trials = trials;
    st.threshold = std::log(std::log(static_cast<double>(n))) / (8.0 * std::log(static_cast<double>(n)));
    int meeting = 0;
    double total = 0.0;
    for (int i = 0; i < trials; ++i) {
        std::uint64_t trial_seed = SplitMix64::derive(seed, static_cast<std::uint64_t>(i));
        SplitMix64 pick(trial_seed);
        VertexId start = static_cast<VertexId>(pick.below(n));
        if (g.d_out(start) == 0) throw GraphError("estimate_whp_weight: graph not sinkless");
        WalkState w = random_path(g, start, pick.next());
        Cycle c = close_cycle(g, w);
        double x = cycle_inverse_degree_weight(g, c);
        if (i == 0) st.min_weight = st.max_weight = x;
        st.min_weight = std::min(st.min_weight, x);
        st.max_weight = std::max(st.max_weight, x);
        total += x;
        if (x >= st.threshold) ++meeting;
    }
    st.mean_weight = trials > 0 ? total / trials : 0.0;
    st.fraction_meeting = trials > 0 ? static_cast<double>(meeting) / trials : 0.0;
    return st;
}

bool visited_neighbourhood_bound_holds(const Digraph& g, const WalkState& w, double lambda) {
    const std::size_t T = w.stop_time();
    const double n = static_cast<double>(g.vertex_count());
    // suffix sums of 1/d+(x_t) for t in [s, T-1]
    std::vector<double> suffix(T + 2, 0.0);
    for (std::size_t t = T; t-- > 0;)
        suffix[t] = suffix[t + 1] + 1.0 / g.d_out(w.path[t]);
    std::vector<std::size_t> pos(g.vertex_count(), std::size_t(-1));
    for (std::size_t t = 0; t <= T; ++t) pos[w.path[t]] = t;

    const double coeff = (2.0 * std::exp(lambda) - 2.0) / lambda;
    const double tail = 3.0 / lambda * std::log(n);
    std::vector<int> hit(T + 2, 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::fill(hit.begin(), hit.end(), 0);
        for (EdgeId e : g.out(v)) {
            std::size_t p = pos[g.head(e)];
            if (p != std::size_t(-1)) hit[p] = 1;  // distinct: idempotent marking
        }
        int cnt = 0;
        // walk s from T down; cnt = |N+(v) ∩ {x_s..x_T}|
        for (std::size_t s = T + 1; s-- > 0;) {
            cnt += hit[s];
            if (s >= T) continue;  // bound quantified over s < T
            double bound = 1.0 + coeff * g.d_out(v) * suffix[s] + tail;
            if (cnt > bound + kWeightTol) return false;
        }
    }
    return true;
}

}  // namespace cycleforge

#include "cycleforge/decomposer.hpp"

#include <algorithm>
#include <cmath>

#include "cycleforge/potential_walk.hpp"
#include "cycleforge/random_walk.hpp"
#include "cycleforge/rng.hpp"
#include "cycleforge/weighting.hpp"

namespace cycleforge {

std::size_t CycleDecomposition::count_case(CaseTag t) const {
    std::size_t c = 0;
    for (const auto& dc : cycles)
        if (dc.tag == t) ++c;
    return c;
}

namespace {

double inv_degree_weight_of(const Digraph& g, const Cycle& c) {
    double s = 0.0;
    for (VertexId v : c.vertices) s += 1.0 / g.d_out(v);
    return s;
}

VertexId min_degree_vertex(const Digraph& g) {
    VertexId best = 0;
    int best_d = -1;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.isolated(v)) continue;
        int d = std::min(g.d_in(v), g.d_out(v));
        if (best_d < 0 || d < best_d) {
            best = v;
            best_d = d;
        }
    }
    return best;
}

VertexId max_degree_vertex(const Digraph& g) {
    VertexId best = 0;
    int best_d = -1;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        int d = std::max(g.d_in(v), g.d_out(v));
        if (d > best_d) {
            best = v;
            best_d = d;
        }
    }
    return best;
}

}  // namespace

CycleDecomposition decompose(const Digraph& g_in, const DecompositionParams& params) {
    if (!g_in.is_balanced()) throw GraphError("decompose: graph is not balanced");

    Digraph g = g_in;  // working copy; weights are scratch for the heavy branch
    CycleDecomposition result;
    for (Cycle& loop : g.strip_self_loops()) {
        DecomposedCycle dc;
        dc.inv_degree_weight = 0.0;  // degree already decremented; contribution counted below
        dc.tag = CaseTag::min_degree;
        dc.pivot = loop.vertices[0];
        dc.cycle = std::move(loop);
        result.cycles.push_back(std::move(dc));
    }
    // restore the self-loops' harmonic contribution: a length-1 cycle at v
    // contributes 1/d_out measured before its removal
    {
        // recompute against the original graph degrees, peeling loop by loop
        Digraph orig = g_in;
        for (auto& dc : result.cycles) {
            dc.inv_degree_weight = 1.0 / orig.d_out(dc.cycle.vertices[0]);
            dc.delta_at_removal = orig.degrees().delta;
            orig.remove_cycle(dc.cycle);
        }
    }

    SplitMix64 seeder(params.seed);
    while (g.arc_count() > 0) {
        Degrees deg = g.degrees();
        double mu = params.mu >= 0.0 ? params.mu
                                     : 50.0 * std::log(static_cast<double>(std::max(deg.Delta, 1)));
        DecomposedCycle dc;
        dc.delta_at_removal = deg.delta;
        if (deg.delta < mu) {
            dc.tag = CaseTag::min_degree;
            dc.pivot = min_degree_vertex(g);
            dc.cycle = g.cycle_through(dc.pivot);
        } else {
            dc.tag = CaseTag::heavy;
            if (deg.Delta < 20 || params.strategy == Strategy::greedy_any) {
                // any cycle has inverse-degree weight >= length/Delta
                dc.pivot = max_degree_vertex(g);
                dc.cycle = g.cycle_through(dc.pivot);
            } else if (params.strategy == Strategy::random) {
                WalkState w = random_path(g, std::nullopt, seeder.next());
                dc.pivot = w.path.front();
                dc.cycle = close_cycle(g, w);
            } else {
                apply_inverse_out_degree(g);
                PotentialParams pp = PotentialParams::from_graph(g, 1.0);
                auto [walk, ledger] = potential_path(g, std::nullopt, pp);
                dc.pivot = walk.path.front();
                dc.cycle = close_heavy_cycle(g, walk, ledger, pp);
            }
        }
        dc.inv_degree_weight = inv_degree_weight_of(g, dc.cycle);
        if (dc.tag == CaseTag::heavy && params.strategy == Strategy::potential &&
            deg.Delta >= 20 && dc.inv_degree_weight < params.xi - kWeightTol)
            throw GraphError("decompose: heavy cycle below xi");
        g.remove_cycle(dc.cycle);
        if (params.check_invariants && !g.is_balanced())
            throw GraphError("decompose: residual graph lost balance");
        result.cycles.push_back(std::move(dc));
    }
    return result;
}

DecompositionStats decomposition_stats(const CycleDecomposition& d, const Digraph& g_original,
                                       const DecompositionParams& params) {
    DecompositionStats st;
    st.n = g_original.vertex_count();
    st.m = g_original.arc_count();
    Degrees deg = g_original.degrees();
    st.Delta = deg.Delta;
    st.case1 = d.count_case(CaseTag::min_degree);
    st.case2 = d.count_case(CaseTag::heavy);
    st.total = d.count();
    double inv_sum = 0.0;
    for (const auto& dc : d.cycles) {
        st.longest = std::max(st.longest, dc.cycle.length());
        inv_sum += dc.inv_degree_weight;
    }
    double lnD = std::log(static_cast<double>(std::max(st.Delta, 2)));
    st.mu_used = params.mu >= 0.0 ? params.mu : 50.0 * lnD;
    for (VertexId v = 0; v < g_original.vertex_count(); ++v)
        for (int i = 1; i <= g_original.d_out(v); ++i) st.harmonic_sum += 1.0 / i;
    st.budget = static_cast<double>(st.n) * st.mu_used + st.harmonic_sum / params.xi;
    // exact double-counting identity and the two proof-side inequalities
    st.harmonic_identity_ok = std::abs(inv_sum - st.harmonic_sum) <= 1e-6 * std::max(1.0, st.harmonic_sum);
    bool c1_ok = static_cast<double>(st.case1) <= static_cast<double>(st.n) * st.mu_used + kWeightTol;
    bool c2_ok = params.xi * static_cast<double>(st.case2) <= st.harmonic_sum + kWeightTol;
    st.budget_ok = c1_ok && c2_ok && static_cast<double>(st.total) <= st.budget + kWeightTol &&
                   st.harmonic_identity_ok;
    if (st.n > 0 && st.Delta >= 2) {
        st.count_ratio = static_cast<double>(st.total) / (static_cast<double>(st.n) * lnD);
        if (st.m > 0)
            st.longest_ratio = static_cast<double>(st.longest) /
                               (static_cast<double>(st.m) / (static_cast<double>(st.n) * lnD));
    }
    return st;
}

bool verify_decomposition(const CycleDecomposition& d, const Digraph& g_original,
                          std::string* diagnostic) {
    auto fail = [&](const std::string& msg) {
        if (diagnostic) *diagnostic = msg;
        return false;
    };
    std::vector<char> used;
    for (const auto& dc : d.cycles) {
        const Cycle& c = dc.cycle;
        if (c.edges.empty()) return fail("empty cycle");
        if (c.edges.size() != c.vertices.size()) return fail("edge/vertex count mismatch");
        std::vector<char> seen_v(g_original.vertex_count(), 0);
        for (std::size_t i = 0; i < c.edges.size(); ++i) {
            EdgeId e = c.edges[i];
            if (!g_original.is_live(e)) return fail("unknown edge " + std::to_string(e));
            if (used.size() <= e) used.resize(e + 1, 0);
            if (used[e]) return fail("repeated edge " + std::to_string(e));
            used[e] = 1;
            if (g_original.tail(e) != c.vertices[i])
                return fail("tail mismatch on edge " + std::to_string(e));
            if (g_original.head(e) != c.vertices[(i + 1) % c.vertices.size()])
                return fail("head mismatch on edge " + std::to_string(e));
            if (c.edges.size() > 1) {
                if (seen_v[c.vertices[i]])
                    return fail("repeated vertex " + std::to_string(c.vertices[i]));
                seen_v[c.vertices[i]] = 1;
            }
        }
    }
    for (EdgeId e : g_original.live_arcs())
        if (used.size() <= e || !used[e]) return fail("missing edge " + std::to_string(e));
    return true;
}

}  // namespace cycleforge

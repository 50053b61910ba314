#include "cycleforge/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "cycleforge/random_walk.hpp"
#include "cycleforge/rng.hpp"

namespace cycleforge {

namespace {

// Johnson's elementary-circuit search over the collapsed simple support
// digraph (parallel arcs merged). Cycles are emitted rooted at the least
// vertex they contain.
class CircuitFinder {
  public:
    CircuitFinder(const Digraph& g, std::size_t cap) : g_(g), cap_(cap) {
        const std::size_t n = g.vertex_count();
        adj_.resize(n);
        for (VertexId v = 0; v < n; ++v) {
            auto& a = adj_[v];
            for (EdgeId e : g.out(v)) a.push_back(g.head(e));
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        blocked_.assign(n, 0);
        b_sets_.resize(n);
    }

    std::vector<std::vector<VertexId>> run() {
        const std::size_t n = g_.vertex_count();
        // self-loops are their own elementary cycles
        for (VertexId v = 0; v < n; ++v)
            for (VertexId h : adj_[v])
                if (h == v) emit({v});

        for (VertexId s = 0; s < n; ++s) {
            // restrict to the SCC of s within vertices >= s
            scc_of_ = scc_within(s);
            if (scc_of_.empty()) continue;
            root_ = s;
            for (VertexId v = 0; v < n; ++v) {
                blocked_[v] = 0;
                b_sets_[v].clear();
            }
            stack_.clear();
            circuit(s);
        }
        std::sort(cycles_.begin(), cycles_.end());
        return std::move(cycles_);
    }

  private:
    // members of the SCC containing s in the subgraph induced on {s..n-1};
    // empty if that SCC is trivial
    std::vector<char> scc_within(VertexId s) {
        const std::size_t n = g_.vertex_count();
        // iterative Tarjan restricted to vertices >= s
        std::vector<int> index(n, -1), low(n, 0);
        std::vector<char> on_stack(n, 0), result;
        std::vector<VertexId> stack;
        int next = 0;
        struct Frame {
            VertexId v;
            std::size_t ei;
        };
        std::vector<Frame> frames{{s, 0}};
        while (!frames.empty()) {
            Frame& f = frames.back();
            VertexId v = f.v;
            if (f.ei == 0) {
                index[v] = low[v] = next++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool recursed = false;
            while (f.ei < adj_[v].size()) {
                VertexId w = adj_[v][f.ei];
                ++f.ei;
                if (w < s || w == v) continue;
                if (index[w] == -1) {
                    frames.push_back({w, 0});
                    recursed = true;
                    break;
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (recursed) continue;
            if (low[v] == index[v]) {
                std::vector<VertexId> comp;
                while (true) {
                    VertexId w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                    if (w == v) break;
                }
                if (v == s) {
                    if (comp.size() < 2) return {};
                    result.assign(n, 0);
                    for (VertexId w : comp) result[w] = 1;
                    return result;
                }
            }
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
        return {};
    }

    bool circuit(VertexId v) {
        bool found = false;
        stack_.push_back(v);
        blocked_[v] = 1;
        for (VertexId w : adj_[v]) {
            if (w == v || w < root_ || !scc_of_[w]) continue;
            if (w == root_) {
                emit(stack_);
                found = true;
            } else if (!blocked_[w]) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (VertexId w : adj_[v]) {
                if (w == v || w < root_ || !scc_of_[w]) continue;
                auto& bw = b_sets_[w];
                if (std::find(bw.begin(), bw.end(), v) == bw.end()) bw.push_back(v);
            }
        }
        stack_.pop_back();
        return found;
    }

    void unblock(VertexId v) {
        blocked_[v] = 0;
        auto pending = std::move(b_sets_[v]);
        b_sets_[v].clear();
        for (VertexId w : pending)
            if (blocked_[w]) unblock(w);
    }

    void emit(const std::vector<VertexId>& verts) {
        if (cycles_.size() >= cap_)
            throw BudgetError("enumerate_cycles: cycle budget exceeded");
        cycles_.push_back(verts);
    }

    const Digraph& g_;
    std::size_t cap_;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<char> blocked_;
    std::vector<std::vector<VertexId>> b_sets_;
    std::vector<VertexId> stack_;
    std::vector<char> scc_of_;
    VertexId root_ = 0;
    std::vector<std::vector<VertexId>> cycles_;
};

}  // namespace

std::vector<Cycle> enumerate_cycles(const Digraph& g, const OracleBudget& budget) {
    CircuitFinder finder(g, budget.max_cycles);
    std::vector<std::vector<VertexId>> raw = finder.run();
    std::vector<Cycle> cycles;
    cycles.reserve(raw.size());
    for (auto& verts : raw) {
        Cycle c;
        c.vertices = verts;
        for (std::size_t i = 0; i < verts.size(); ++i)
            c.edges.push_back(pick_arc(g, verts[i], verts[(i + 1) % verts.size()]));
        cycles.push_back(std::move(c));
    }
    return cycles;
}

std::pair<Cycle, double> heaviest_cycle_exact(const Digraph& g, const OracleBudget& budget) {
    std::vector<Cycle> cycles = enumerate_cycles(g, budget);
    if (cycles.empty()) throw GraphError("heaviest_cycle_exact: graph is acyclic");
    // list is in lexicographic order, so keeping strict improvements resolves
    // ties toward the smallest canonical sequence
    std::size_t best = 0;
    double best_w = cycle_weight(g, cycles[0]);
    for (std::size_t i = 1; i < cycles.size(); ++i) {
        double w = cycle_weight(g, cycles[i]);
        if (w > best_w + kWeightTol) {
            best = i;
            best_w = w;
        }
    }
    return {cycles[best], best_w};
}

namespace {

using EdgeMask = std::uint32_t;

struct MinDecompSearch {
    const Digraph& g;
    std::vector<EdgeId> edges;          // bit -> edge id
    std::unordered_map<EdgeMask, int> memo;

    // all simple edge-cycles that start with the arc at `bit`, as edge masks
    void cycles_through(int bit, EdgeMask mask, std::vector<EdgeMask>& out) {
        EdgeId e = edges[static_cast<std::size_t>(bit)];
        VertexId u = g.tail(e), v = g.head(e);
        if (u == v) {
            out.push_back(EdgeMask(1) << bit);
            return;
        }
        std::vector<char> on_path(g.vertex_count(), 0);
        on_path[u] = 1;
        dfs(v, u, EdgeMask(1) << bit, mask, on_path, out);
    }

    void dfs(VertexId at, VertexId target, EdgeMask used, EdgeMask mask, std::vector<char>& on_path,
             std::vector<EdgeMask>& out) {
        if (at == target) {
            out.push_back(used);
            return;
        }
        if (on_path[at]) return;
        on_path[at] = 1;
        for (std::size_t b = 0; b < edges.size(); ++b) {
            EdgeMask bm = EdgeMask(1) << b;
            if (!(mask & bm) || (used & bm)) continue;
            EdgeId e = edges[b];
            if (g.tail(e) != at) continue;
            dfs(g.head(e), target, used | bm, mask, on_path, out);
        }
        on_path[at] = 0;
    }

    int solve(EdgeMask mask) {
        if (mask == 0) return 0;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int bit = std::countr_zero(mask);
        std::vector<EdgeMask> options;
        cycles_through(bit, mask, options);
        if (options.empty())
            throw GraphError("min_decomposition_exact: arc not on any cycle (graph unbalanced?)");
        int best = std::numeric_limits<int>::max();
        for (EdgeMask cm : options) best = std::min(best, 1 + solve(mask & ~cm));
        memo.emplace(mask, best);
        return best;
    }
};

}  // namespace

int min_decomposition_exact(const Digraph& g, const OracleBudget& budget) {
    if (!g.is_balanced()) throw GraphError("min_decomposition_exact: graph not balanced");
    std::vector<EdgeId> edges = g.live_arcs();
    if (edges.size() > 32) throw BudgetError("min_decomposition_exact: bitmask limit is 32 edges");
    if (static_cast<int>(edges.size()) > budget.max_edges)
        throw BudgetError("min_decomposition_exact: more than " + std::to_string(budget.max_edges) +
                          " edges");
    if (edges.empty()) return 0;
    MinDecompSearch search{g, std::move(edges), {}};
    EdgeMask full = search.edges.size() == 32 ? ~EdgeMask(0)
                                              : (EdgeMask(1) << search.edges.size()) - 1;
    return search.solve(full);
}

ProcessSpec ProcessSpec::constant(int n, double p) {
    ProcessSpec s;
    s.n = n;
    s.next_p = [p](const std::vector<int>&) { return p; };
    return s;
}

ProcessSpec ProcessSpec::sticky(int n, double p_low, double p_high) {
    ProcessSpec s;
    s.n = n;
    s.next_p = [p_low, p_high](const std::vector<int>& hist) {
        return (!hist.empty() && hist.back() == 1) ? p_high : p_low;
    };
    return s;
}

TailCheckResult mc_tail_check(const ProcessSpec& process, double lambda, double c, int trials,
                              std::uint64_t seed) {
    if (!process.next_p || process.n <= 0) throw GraphError("mc_tail_check: bad process spec");
    TailCheckResult r;
    r.trials = trials;
    r.bound = std::exp(-c);
    const double factor = std::exp(lambda) - 1.0;
    std::vector<int> history;
    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(SplitMix64::derive(seed, static_cast<std::uint64_t>(trial)));
        history.clear();
        double sum_x = 0.0, sum_p = 0.0;
        for (int t = 0; t < process.n; ++t) {
            double p = process.next_p(history);
            if (p < 0.0 || p > 1.0) throw GraphError("mc_tail_check: p_t outside [0,1]");
            double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
            int x = u < p ? 1 : 0;
            history.push_back(x);
            sum_x += x;
            sum_p += p;
        }
        if (lambda * sum_x > factor * sum_p + c) ++r.violations;
    }
    r.empirical_rate = trials > 0 ? static_cast<double>(r.violations) / trials : 0.0;
    return r;
}

}  // namespace cycleforge

#include "cycleforge/digraph.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace cycleforge {

void Digraph::resize(std::size_t n) {
    if (n < out_.size()) throw GraphError("resize: cannot shrink a digraph");
    out_.resize(n);
    in_.resize(n);
    w_out_.resize(n, 0.0);
}

VertexId Digraph::add_vertex() {
    resize(out_.size() + 1);
    return static_cast<VertexId>(out_.size() - 1);
}

EdgeId Digraph::add_arc(VertexId u, VertexId v, double w) {
    if (u >= vertex_count() || v >= vertex_count())
        throw GraphError("add_arc: vertex id out of range");
    if (w < 0.0) throw GraphError("add_arc: negative weight");
    EdgeId e = static_cast<EdgeId>(arcs_.size());
    Arc a;
    a.tail = u;
    a.head = v;
    a.weight = w;
    a.live = true;
    a.pos_out = static_cast<std::uint32_t>(out_[u].size());
    a.pos_in = static_cast<std::uint32_t>(in_[v].size());
    arcs_.push_back(a);
    out_[u].push_back(e);
    in_[v].push_back(e);
    w_out_[u] += w;
    ++live_;
    return e;
}

void Digraph::remove_arc(EdgeId e) {
    if (!is_live(e)) throw GraphError("remove_arc: dead edge id " + std::to_string(e));
    Arc& a = arcs_[e];
    // swap-remove from the adjacency lists, fixing the moved arc's position
    auto& ov = out_[a.tail];
    EdgeId moved = ov.back();
    ov[a.pos_out] = moved;
    arcs_[moved].pos_out = a.pos_out;
    ov.pop_back();

    auto& iv = in_[a.head];
    moved = iv.back();
    iv[a.pos_in] = moved;
    arcs_[moved].pos_in = a.pos_in;
    iv.pop_back();

    w_out_[a.tail] -= a.weight;
    if (out_[a.tail].empty()) w_out_[a.tail] = 0.0;  // clear rounding residue
    a.live = false;
    --live_;
}

void Digraph::set_weight(EdgeId e, double w) {
    if (!is_live(e)) throw GraphError("set_weight: dead edge id");
    if (w < 0.0) throw GraphError("set_weight: negative weight");
    w_out_[arcs_[e].tail] += w - arcs_[e].weight;
    arcs_[e].weight = w;
}

std::vector<EdgeId> Digraph::live_arcs() const {
    std::vector<EdgeId> r;
    r.reserve(live_);
    for (EdgeId e = 0; e < arcs_.size(); ++e)
        if (arcs_[e].live) r.push_back(e);
    return r;
}

std::vector<Cycle> Digraph::strip_self_loops() {
    std::vector<Cycle> loops;
    for (EdgeId e = 0; e < arcs_.size(); ++e) {
        if (arcs_[e].live && arcs_[e].tail == arcs_[e].head) {
            Cycle c;
            c.edges.push_back(e);
            c.vertices.push_back(arcs_[e].tail);
            loops.push_back(std::move(c));
            remove_arc(e);
        }
    }
    return loops;
}

void Digraph::remove_cycle(const Cycle& c) {
    for (EdgeId e : c.edges)
        if (!is_live(e))
            throw GraphError("remove_cycle: dead edge id " + std::to_string(e));
    for (EdgeId e : c.edges) remove_arc(e);
}

Degrees Digraph::degrees() const {
    Degrees d;
    if (vertex_count() == 0) return d;
    bool any = false;
    for (VertexId v = 0; v < vertex_count(); ++v) {
        int di = d_in(v), dout = d_out(v);
        d.Delta = std::max(d.Delta, std::max(di, dout));
        if (di == 0 && dout == 0) continue;  // isolated vertices do not count for delta
        int lo = std::min(di, dout);
        d.delta = any ? std::min(d.delta, lo) : lo;
        any = true;
    }
    if (!any) d.delta = 0;
    d.avg_out = static_cast<double>(live_) / static_cast<double>(vertex_count());
    return d;
}

bool Digraph::is_balanced() const {
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (d_in(v) != d_out(v)) return false;
    return true;
}

bool Digraph::is_eulerian() const {
    if (!is_balanced()) return false;
    // BFS over the underlying undirected graph from any non-isolated vertex
    VertexId start = 0;
    bool found = false;
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (!isolated(v)) {
            start = v;
            found = true;
            break;
        }
    if (!found) return true;  // edgeless graph
    std::vector<char> seen(vertex_count(), 0);
    std::vector<VertexId> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (EdgeId e : out_[v])
            if (!seen[head(e)]) seen[head(e)] = 1, stack.push_back(head(e));
        for (EdgeId e : in_[v])
            if (!seen[tail(e)]) seen[tail(e)] = 1, stack.push_back(tail(e));
    }
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (!isolated(v) && !seen[v]) return false;
    return true;
}

namespace {

// Iterative Tarjan. Returns component index per vertex; components are
// numbered in reverse topological order (a component's successors have
// smaller indices).
std::vector<int> tarjan_components(const Digraph& g, int& count) {
    const std::size_t n = g.vertex_count();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<VertexId> stack;
    int next_index = 0;
    count = 0;

    struct Frame {
        VertexId v;
        std::size_t ei;
    };
    std::vector<Frame> frames;
    for (VertexId root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            VertexId v = f.v;
            if (f.ei == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool recursed = false;
            while (f.ei < g.out(v).size()) {
                VertexId w = g.head(g.out(v)[f.ei]);
                ++f.ei;
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
                while (true) {
                    VertexId w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = count;
                    if (w == v) break;
                }
                ++count;
            }
            frames.pop_back();
            if (!frames.empty()) {
                VertexId parent = frames.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return comp;
}

}  // namespace

std::vector<std::vector<VertexId>> Digraph::scc() const {
    int count = 0;
    std::vector<int> comp = tarjan_components(*this, count);
    std::vector<std::vector<VertexId>> result(count);
    for (VertexId v = 0; v < vertex_count(); ++v) result[comp[v]].push_back(v);
    for (auto& c : result) std::sort(c.begin(), c.end());
    return result;
}

std::vector<VertexId> Digraph::sink_scc() const {
    if (vertex_count() == 0) throw GraphError("sink_scc: empty graph");
    int count = 0;
    std::vector<int> comp = tarjan_components(*this, count);
    std::vector<char> has_out(count, 0);
    for (EdgeId e = 0; e < arcs_.size(); ++e) {
        if (!arcs_[e].live) continue;
        if (comp[arcs_[e].tail] != comp[arcs_[e].head]) has_out[comp[arcs_[e].tail]] = 1;
    }
    bool graph_has_arcs = live_ > 0;
    int best = -1;
    VertexId best_min = 0;
    std::vector<VertexId> min_of(count, std::numeric_limits<VertexId>::max());
    for (VertexId v = 0; v < vertex_count(); ++v)
        min_of[comp[v]] = std::min(min_of[comp[v]], v);
    for (VertexId v = 0; v < vertex_count(); ++v) {
        int c = comp[v];
        if (has_out[c]) continue;
        if (graph_has_arcs && isolated(v)) continue;  // skip trivial isolated components
        if (best == -1 || min_of[c] < best_min) {
            best = c;
            best_min = min_of[c];
        }
    }
    if (best == -1) throw GraphError("sink_scc: no non-isolated sink component");
    std::vector<VertexId> result;
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (comp[v] == best) result.push_back(v);
    return result;
}

Cycle Digraph::cycle_through(VertexId v) const {
    if (v >= vertex_count() || d_out(v) < 1)
        throw GraphError("cycle_through: vertex has no out-arc");
    // Closed walk from v along unused out-arcs until first return to v. In a
    // balanced graph the walk can only get stuck at v.
    std::vector<std::size_t> cursor(vertex_count(), 0);
    std::vector<VertexId> walk_v{v};
    std::vector<EdgeId> walk_e;
    // per-vertex cursor into out-lists; arcs used once per walk
    std::vector<char> used(arcs_.size(), 0);
    VertexId cur = v;
    do {
        EdgeId chosen = std::numeric_limits<EdgeId>::max();
        auto& ov = out_[cur];
        while (cursor[cur] < ov.size()) {
            EdgeId e = ov[cursor[cur]++];
            if (!used[e]) {
                chosen = e;
                break;
            }
        }
        if (chosen == std::numeric_limits<EdgeId>::max())
            throw GraphError("cycle_through: walk stuck away from start (graph not balanced?)");
        used[chosen] = 1;
        walk_e.push_back(chosen);
        cur = head(chosen);
        walk_v.push_back(cur);
    } while (cur != v);

    // Pop sub-loops with a stack; v only occurs at the ends so no popped loop
    // can contain it.
    std::vector<VertexId> sv;
    std::vector<EdgeId> se;
    std::vector<int> pos(vertex_count(), -1);
    for (std::size_t i = 0; i + 1 < walk_v.size(); ++i) {
        VertexId x = walk_v[i];
        if (pos[x] >= 0) {
            int keep = pos[x];  // pos[x] itself is cleared while popping
            while (static_cast<int>(sv.size()) > keep) {
                pos[sv.back()] = -1;
                sv.pop_back();
                se.pop_back();
            }
        }
        pos[x] = static_cast<int>(sv.size());
        sv.push_back(x);
        se.push_back(walk_e[i]);
    }
    Cycle c;
    c.vertices = std::move(sv);
    c.edges = std::move(se);
    return c;
}

bool Digraph::check_cycle(const Cycle& c, std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (c.edges.empty()) return fail("empty cycle");
    if (c.edges.size() != c.vertices.size()) return fail("edge/vertex count mismatch");
    std::vector<char> seen_v(vertex_count(), 0);
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        EdgeId e = c.edges[i];
        if (!is_live(e)) return fail("dead edge " + std::to_string(e));
        if (tail(e) != c.vertices[i]) return fail("tail mismatch at position " + std::to_string(i));
        VertexId next = c.vertices[(i + 1) % c.vertices.size()];
        if (head(e) != next) return fail("head mismatch at position " + std::to_string(i));
        if (c.edges.size() > 1 && seen_v[c.vertices[i]])
            return fail("repeated vertex " + std::to_string(c.vertices[i]));
        seen_v[c.vertices[i]] = 1;
    }
    for (std::size_t i = 0; i < c.edges.size(); ++i)
        for (std::size_t j = i + 1; j < c.edges.size(); ++j)
            if (c.edges[i] == c.edges[j]) return fail("repeated edge " + std::to_string(c.edges[i]));
    return true;
}

double cycle_weight(const Digraph& g, const Cycle& c) {
    double w = 0.0;
    for (EdgeId e : c.edges) w += g.weight(e);
    return w;
}

Digraph induced_subgraph(const Digraph& g, const std::vector<VertexId>& verts,
                         std::vector<VertexId>* vmap, std::vector<EdgeId>* emap) {
    std::vector<std::uint32_t> local(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
    Digraph sub(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<std::uint32_t>(i);
    if (vmap) *vmap = verts;
    if (emap) emap->clear();
    for (EdgeId e : g.live_arcs()) {
        std::uint32_t u = local[g.tail(e)], v = local[g.head(e)];
        if (u == std::numeric_limits<std::uint32_t>::max() ||
            v == std::numeric_limits<std::uint32_t>::max())
            continue;
        sub.add_arc(u, v, g.weight(e));
        if (emap) emap->push_back(e);
    }
    return sub;
}

}  // namespace cycleforge

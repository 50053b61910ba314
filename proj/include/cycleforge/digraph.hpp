#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cycleforge {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Absolute tolerance for all floating-point weight comparisons.
inline constexpr double kWeightTol = 1e-9;

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A simple directed cycle. vertices[i] is the tail of edges[i]; the head of
// edges.back() is vertices[0]. A single self-loop is represented with one
// vertex and one edge.
struct Cycle {
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;

    std::size_t length() const { return edges.size(); }
};

struct Degrees {
    int delta = 0;   // min over non-isolated v of min(d_in, d_out)
    int Delta = 0;   // max over v of max(d_in, d_out)
    double avg_out = 0.0;  // m / n
};

// Directed multigraph with stable edge ids, O(1) amortized arc deletion and
// per-vertex degree/out-weight bookkeeping. Parallel arcs and (until stripped)
// self-loops are allowed. Single-writer: mutate from one thread only.
class Digraph {
  public:
    Digraph() = default;
    explicit Digraph(std::size_t n) { resize(n); }

    void resize(std::size_t n);
    VertexId add_vertex();

    EdgeId add_arc(VertexId u, VertexId v, double w = 1.0);
    void remove_arc(EdgeId e);

    std::size_t vertex_count() const { return out_.size(); }
    std::size_t arc_count() const { return live_; }

    bool is_live(EdgeId e) const { return e < arcs_.size() && arcs_[e].live; }
    VertexId tail(EdgeId e) const { return arcs_[e].tail; }
    VertexId head(EdgeId e) const { return arcs_[e].head; }
    double weight(EdgeId e) const { return arcs_[e].weight; }
    void set_weight(EdgeId e, double w);

    const std::vector<EdgeId>& out(VertexId v) const { return out_[v]; }
    const std::vector<EdgeId>& in(VertexId v) const { return in_[v]; }
    int d_out(VertexId v) const { return static_cast<int>(out_[v].size()); }
    int d_in(VertexId v) const { return static_cast<int>(in_[v].size()); }
    double w_out(VertexId v) const { return w_out_[v]; }
    bool isolated(VertexId v) const { return out_[v].empty() && in_[v].empty(); }

    std::vector<EdgeId> live_arcs() const;

    // Removes every self-loop, returning each as a length-1 cycle.
    std::vector<Cycle> strip_self_loops();

    // Deletes the arcs of c. Throws GraphError if any edge id is dead.
    void remove_cycle(const Cycle& c);

    Degrees degrees() const;
    bool is_balanced() const;
    // Balanced and all non-isolated vertices in one weak component.
    bool is_eulerian() const;

    // Vertex set of one strongly connected component without outgoing arcs;
    // among sink components the one with the smallest minimum vertex id.
    // Isolated vertices are ignored unless the graph has no arcs at all.
    std::vector<VertexId> sink_scc() const;

    // All strongly connected components (each sorted by vertex id).
    std::vector<std::vector<VertexId>> scc() const;

    // Simple cycle through v in a balanced graph with d_out(v) >= 1: closed
    // walk from v until first return, then pop sub-loops not containing v.
    Cycle cycle_through(VertexId v) const;

    // Checks c against this graph: live distinct edges, consecutive heads and
    // tails match, vertices distinct. Returns an explanation on failure.
    bool check_cycle(const Cycle& c, std::string* why = nullptr) const;

  private:
    struct Arc {
        VertexId tail = 0;
        VertexId head = 0;
        double weight = 1.0;
        bool live = false;
        std::uint32_t pos_out = 0;  // index in out_[tail]
        std::uint32_t pos_in = 0;   // index in in_[head]
    };

    std::vector<Arc> arcs_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
    std::vector<double> w_out_;
    std::size_t live_ = 0;
};

double cycle_weight(const Digraph& g, const Cycle& c);

// Subgraph induced on verts (live arcs with both ends inside). vmap maps sub
// vertex ids back to g's ids, emap sub edge ids back to g's edge ids.
Digraph induced_subgraph(const Digraph& g, const std::vector<VertexId>& verts,
                         std::vector<VertexId>* vmap, std::vector<EdgeId>* emap);

}  // namespace cycleforge

#include "cycleforge/generators.hpp"

#include <numeric>
#include <vector>

#include "cycleforge/rng.hpp"

namespace cycleforge {

Digraph gen_k4_chain(int M) {
    if (M < 1) throw GraphError("gen_k4_chain: M must be >= 1");
    Digraph g(static_cast<std::size_t>(3 * M + 1));
    for (int copy = 0; copy < M; ++copy) {
        VertexId vs[4] = {0, static_cast<VertexId>(3 * copy + 1), static_cast<VertexId>(3 * copy + 2),
                          static_cast<VertexId>(3 * copy + 3)};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) g.add_arc(vs[i], vs[j]);
    }
    return g;
}

Digraph gen_bs_tree(int l, std::optional<int> k_opt) {
    if (l < 1) throw GraphError("gen_bs_tree: depth must be >= 1");
    int k = k_opt.value_or(l * l);
    if (k < 2) throw GraphError("gen_bs_tree: branching factor must be >= 2");

    // n = (k^{l+1} - 1) / (k - 1)
    std::size_t n = 0, layer = 1;
    for (int d = 0; d <= l; ++d) {
        n += layer;
        layer *= static_cast<std::size_t>(k);
    }
    Digraph g(n);

    // BFS numbering: children of v are k*v + 1 .. k*v + k
    std::size_t internal_count = (n - 1) / static_cast<std::size_t>(k);  // vertices with children
    for (std::size_t v = 0; v < internal_count; ++v)
        for (int c = 1; c <= k; ++c)
            g.add_arc(static_cast<VertexId>(v), static_cast<VertexId>(k * v + c), 1.0 / k);
    // every leaf points back to its l proper ancestors (root included)
    for (std::size_t v = internal_count; v < n; ++v) {
        std::size_t anc = v;
        for (int d = 0; d < l; ++d) {
            anc = (anc - 1) / static_cast<std::size_t>(k);
            g.add_arc(static_cast<VertexId>(v), static_cast<VertexId>(anc), 1.0 / l);
        }
    }
    return g;
}

Digraph gen_backward_path(int n) {
    if (n < 3) throw GraphError("gen_backward_path: need n >= 3");
    Digraph g(static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i)
        g.add_arc(static_cast<VertexId>(i), static_cast<VertexId>(i + 1), 0.0);
    for (int j = 2; j < n; ++j)
        for (int i = 0; i + 2 <= j; ++i)
            g.add_arc(static_cast<VertexId>(j), static_cast<VertexId>(i), 1.0);
    return g;
}

Digraph gen_perm_superposition(int n, int d, std::uint64_t seed) {
    if (n < 3) throw GraphError("gen_perm_superposition: need n >= 3");
    if (d < 1 || d >= n) throw GraphError("gen_perm_superposition: need 1 <= d < n");
    Digraph g(static_cast<std::size_t>(n));
    SplitMix64 rng(seed);
    std::vector<VertexId> perm(static_cast<std::size_t>(n));
    for (int p = 0; p < d; ++p) {
        // rejection-sample a fixed-point-free permutation
        while (true) {
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = perm.size(); i > 1; --i)
                std::swap(perm[i - 1], perm[rng.below(i)]);
            bool fixed_point = false;
            for (std::size_t i = 0; i < perm.size(); ++i)
                if (perm[i] == i) {
                    fixed_point = true;
                    break;
                }
            if (!fixed_point) break;
        }
        for (std::size_t i = 0; i < perm.size(); ++i)
            g.add_arc(static_cast<VertexId>(i), perm[i]);
    }
    return g;
}

Digraph gen_k_symmetric(int r) {
    if (r < 1) throw GraphError("gen_k_symmetric: need r >= 1");
    Digraph g(static_cast<std::size_t>(r + 1));
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= r; ++j)
            if (i != j) g.add_arc(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return g;
}

}  // namespace cycleforge

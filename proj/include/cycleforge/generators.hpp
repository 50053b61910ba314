#pragma once

#include <cstdint>
#include <optional>

#include "cycleforge/digraph.hpp"

namespace cycleforge {

// M copies of the complete symmetric digraph on 4 vertices glued at vertex 0.
// n = 3M+1, m = 12M, Eulerian.
Digraph gen_k4_chain(int M);

// Rooted out-tree of depth l where every internal vertex has k children
// (default l^2) and every leaf has a back-arc to each of its l proper
// ancestors; arcs weighted 1/d_out(tail). BFS vertex numbering from root 0.
Digraph gen_bs_tree(int l, std::optional<int> k = std::nullopt);

// Directed path 0 -> 1 -> ... -> n-1 with weight-0 arcs plus a weight-1
// backward arc j -> i for every j >= i+2.
Digraph gen_backward_path(int n);

// Union of d uniformly random fixed-point-free permutations of [0, n):
// balanced d-regular, parallel arcs allowed, seeded-reproducible.
Digraph gen_perm_superposition(int n, int d, std::uint64_t seed);

// Complete symmetric digraph on r+1 vertices.
Digraph gen_k_symmetric(int r);

}  // namespace cycleforge

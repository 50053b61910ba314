#include <doctest.h>

#include <algorithm>
#include <tuple>
#include <vector>

#include "cycleforge/generators.hpp"
#include "cycleforge/oracle.hpp"

using namespace cycleforge;

namespace {

std::vector<std::tuple<VertexId, VertexId, double>> arc_multiset(const Digraph& g) {
    std::vector<std::tuple<VertexId, VertexId, double>> arcs;
    for (EdgeId e : g.live_arcs()) arcs.emplace_back(g.tail(e), g.head(e), g.weight(e));
    std::sort(arcs.begin(), arcs.end());
    return arcs;
}

}  // namespace

TEST_CASE("k4_chain sizes and structure") {
    for (int M : {1, 2, 3}) {
        Digraph g = gen_k4_chain(M);
        CHECK(g.vertex_count() == static_cast<std::size_t>(3 * M + 1));
        CHECK(g.arc_count() == static_cast<std::size_t>(12 * M));
        CHECK(g.is_balanced());
        CHECK(g.is_eulerian());
    }
    Digraph one = gen_k4_chain(1);
    CHECK(one.degrees().delta == 3);
    CHECK(one.degrees().Delta == 3);
    CHECK_THROWS_AS(gen_k4_chain(0), GraphError);
}

TEST_CASE("bs_tree shape, weights and cycle structure") {
    Digraph g = gen_bs_tree(2, 4);
    CHECK(g.vertex_count() == 21);  // (4^3 - 1) / 3
    // internal vertices: out-degree k with arc weight 1/k
    CHECK(g.d_out(0) == 4);
    for (EdgeId e : g.out(0)) CHECK(g.weight(e) == doctest::Approx(0.25));
    // leaves: out-degree l, back-arcs weight 1/l
    CHECK(g.d_out(20) == 2);
    for (EdgeId e : g.out(20)) CHECK(g.weight(e) == doctest::Approx(0.5));
    // out-weight 1 wherever there is an out-arc
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.d_out(v) > 0) CHECK(g.w_out(v) == doctest::Approx(1.0).epsilon(1e-9));
    // every non-tree arc climbs: it ends at a proper ancestor of its tail
    for (EdgeId e : g.live_arcs()) {
        VertexId u = g.tail(e), v = g.head(e);
        if (v > u) continue;  // tree arc goes down in BFS numbering
        VertexId anc = u;
        bool is_ancestor = false;
        while (anc > 0) {
            anc = (anc - 1) / 4;
            if (anc == v) is_ancestor = true;
        }
        CHECK((is_ancestor || v == 0));
    }
    // heaviest cycle in this family: l/k + 1/l
    auto [c, w] = heaviest_cycle_exact(g);
    CHECK(w == doctest::Approx(2.0 / 4 + 1.0 / 2));

    Digraph tiny = gen_bs_tree(1, 2);
    CHECK(tiny.vertex_count() == 3);
    CHECK_THROWS_AS(gen_bs_tree(1, 1), GraphError);
}

TEST_CASE("bs_tree default branching factor is depth squared") {
    Digraph g = gen_bs_tree(2);
    CHECK(g.d_out(0) == 4);
}

TEST_CASE("backward_path structure") {
    Digraph g3 = gen_backward_path(3);
    auto arcs = arc_multiset(g3);
    CHECK(arcs == std::vector<std::tuple<VertexId, VertexId, double>>{
                      {0, 1, 0.0}, {1, 2, 0.0}, {2, 0, 1.0}});
    auto [c3, w3] = heaviest_cycle_exact(g3);
    CHECK(w3 == doctest::Approx(1.0));

    Digraph g5 = gen_backward_path(5);
    double total = 0.0;
    for (EdgeId e : g5.live_arcs()) total += g5.weight(e);
    CHECK(total == doctest::Approx(6.0));  // (n-1)(n-2)/2
    auto [c5, w5] = heaviest_cycle_exact(g5);
    CHECK(w5 == doctest::Approx(1.0));

    Digraph g10 = gen_backward_path(10);
    double total10 = 0.0;
    for (EdgeId e : g10.live_arcs()) total10 += g10.weight(e);
    CHECK(total10 == doctest::Approx(36.0));
    auto [c10, w10] = heaviest_cycle_exact(g10);
    CHECK(w10 <= 2.0 + kWeightTol);
    CHECK(w10 >= 1.0 - kWeightTol);

    CHECK_THROWS_AS(gen_backward_path(2), GraphError);
}

TEST_CASE("perm_superposition is balanced, regular and reproducible") {
    Digraph g = gen_perm_superposition(200, 25, 77);
    CHECK(g.is_balanced());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(g.d_out(v) == 25);
        CHECK(g.d_in(v) == 25);
    }
    CHECK(g.degrees().Delta == 25);
    for (EdgeId e : g.live_arcs()) CHECK(g.tail(e) != g.head(e));

    Digraph h = gen_perm_superposition(200, 25, 77);
    CHECK(arc_multiset(g) == arc_multiset(h));
    Digraph other = gen_perm_superposition(200, 25, 78);
    CHECK(arc_multiset(g) != arc_multiset(other));

    // d = 1: a derangement is a disjoint union of cycles covering [0, n)
    Digraph cover = gen_perm_superposition(5, 1, 3);
    for (VertexId v = 0; v < 5; ++v) {
        CHECK(cover.d_out(v) == 1);
        CHECK(cover.d_in(v) == 1);
    }

    CHECK_THROWS_AS(gen_perm_superposition(5, 5, 0), GraphError);
    CHECK_THROWS_AS(gen_perm_superposition(2, 1, 0), GraphError);
}

TEST_CASE("k_symmetric") {
    Digraph g = gen_k_symmetric(4);
    CHECK(g.vertex_count() == 5);
    CHECK(g.arc_count() == 20);
    CHECK(g.is_balanced());
    for (VertexId v = 0; v < 5; ++v) CHECK(g.d_out(v) == 4);

    Digraph digon = gen_k_symmetric(1);
    CHECK(digon.arc_count() == 2);
    CHECK(gen_k_symmetric(3).arc_count() == 12);
}

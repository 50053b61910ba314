#include <doctest.h>

#include "cycleforge/digraph.hpp"
#include "cycleforge/generators.hpp"
#include "cycleforge/weighting.hpp"

using namespace cycleforge;

TEST_CASE("apply_inverse_out_degree") {
    Digraph t(3);
    t.add_arc(0, 1);
    t.add_arc(1, 2);
    t.add_arc(2, 0);
    apply_inverse_out_degree(t);
    for (EdgeId e : t.live_arcs()) CHECK(t.weight(e) == doctest::Approx(1.0));

    Digraph k4 = gen_k_symmetric(3);
    apply_inverse_out_degree(k4);
    for (EdgeId e : k4.live_arcs()) CHECK(k4.weight(e) == doctest::Approx(1.0 / 3));
    for (VertexId v = 0; v < 4; ++v) CHECK(k4.w_out(v) == doctest::Approx(1.0).epsilon(1e-9));

    Digraph sink(2);
    sink.add_arc(0, 1);
    CHECK_THROWS_AS(apply_inverse_out_degree(sink), GraphError);
}

TEST_CASE("apply_inverse_out_degree is idempotent") {
    Digraph g = gen_k4_chain(2);
    apply_inverse_out_degree(g);
    std::vector<double> before;
    for (EdgeId e : g.live_arcs()) before.push_back(g.weight(e));
    apply_inverse_out_degree(g);
    std::size_t i = 0;
    for (EdgeId e : g.live_arcs()) CHECK(g.weight(e) == doctest::Approx(before[i++]));
}

TEST_CASE("normalize_out_weights") {
    Digraph g(3);
    EdgeId a = g.add_arc(0, 1, 2.0);
    EdgeId b = g.add_arc(0, 2, 2.0);
    g.add_arc(1, 0, 1.0);
    EdgeId c = g.add_arc(2, 0, 1.0);
    EdgeId d = g.add_arc(2, 1, 3.0);
    g.add_arc(1, 2, 0.0);
    normalize_out_weights(g);
    CHECK(g.weight(a) == doctest::Approx(0.5));
    CHECK(g.weight(b) == doctest::Approx(0.5));
    CHECK(g.weight(c) == doctest::Approx(0.25));
    CHECK(g.weight(d) == doctest::Approx(0.75));
    for (VertexId v = 0; v < 3; ++v) CHECK(g.w_out(v) == doctest::Approx(1.0).epsilon(1e-9));

    // weights only ever decrease, and re-running is the identity
    std::vector<double> before;
    for (EdgeId e : g.live_arcs()) before.push_back(g.weight(e));
    normalize_out_weights(g);
    std::size_t i = 0;
    for (EdgeId e : g.live_arcs()) CHECK(g.weight(e) == doctest::Approx(before[i++]));
}

TEST_CASE("normalize_out_weights rejects underweight vertices") {
    Digraph g(2);
    g.add_arc(0, 1, 0.5);
    g.add_arc(1, 0, 1.0);
    CHECK_THROWS_AS(normalize_out_weights(g), GraphError);
}

TEST_CASE("max_weight") {
    Digraph k4 = gen_k_symmetric(3);
    apply_inverse_out_degree(k4);
    CHECK(max_weight(k4) == doctest::Approx(1.0 / 3));

    Digraph tree = gen_bs_tree(2, 4);
    CHECK(max_weight(tree) == doctest::Approx(0.5));  // leaf back-arcs, d_out(leaf) = 2

    CHECK_THROWS_AS(max_weight(Digraph(3)), GraphError);
}

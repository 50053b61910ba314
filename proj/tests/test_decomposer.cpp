#include <doctest.h>

#include <cmath>

#include "cycleforge/decomposer.hpp"
#include "cycleforge/generators.hpp"
#include "cycleforge/oracle.hpp"

using namespace cycleforge;

namespace {

Digraph triangle() {
    Digraph g(3);
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    g.add_arc(2, 0);
    return g;
}

}  // namespace

TEST_CASE("triangle decomposes into one cycle") {
    Digraph g = triangle();
    CycleDecomposition d = decompose(g);
    CHECK(d.count() == 1);
    CHECK(verify_decomposition(d, g));
}

TEST_CASE("complete symmetric four-vertex graph: between 4 and 6 cycles") {
    Digraph g = gen_k_symmetric(3);
    CycleDecomposition d = decompose(g);
    CHECK(d.count() >= 4);  // exact optimum, see oracle tests
    CHECK(d.count() <= 6);  // 12 arcs, min cycle length 2
    CHECK(verify_decomposition(d, g));
}

TEST_CASE("glued-copies chain M=3 decomposes validly") {
    Digraph g = gen_k4_chain(3);
    CHECK(g.vertex_count() == 10);
    CHECK(g.arc_count() == 36);
    CycleDecomposition d = decompose(g);
    CHECK(verify_decomposition(d, g));
    CHECK(d.count() <= g.arc_count() / 2);
}

TEST_CASE("unbalanced input is rejected before any mutation") {
    Digraph g(3);
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    CHECK_THROWS_AS(decompose(g), GraphError);
    CHECK(g.arc_count() == 2);  // untouched
}

TEST_CASE("self-loops become length-1 cycles") {
    Digraph g = triangle();
    g.add_arc(1, 1);
    CycleDecomposition d = decompose(g);
    CHECK(d.count() == 2);
    CHECK(verify_decomposition(d, g));
    bool found_loop = false;
    for (const auto& dc : d.cycles)
        if (dc.cycle.length() == 1) found_loop = true;
    CHECK(found_loop);
}

TEST_CASE("min_degree cycles contain a minimum-degree vertex") {
    Digraph g = gen_perm_superposition(40, 4, 13);
    CycleDecomposition d = decompose(g);
    REQUIRE(verify_decomposition(d, g));
    // replay: peel in order and check the recorded pivot and delta
    Digraph work = g;
    work.strip_self_loops();
    for (const auto& dc : d.cycles) {
        if (dc.cycle.length() == 1) {
            // self-loop entries were peeled before the main loop
            continue;
        }
        Degrees deg = work.degrees();
        if (dc.tag == CaseTag::min_degree) {
            CHECK(deg.delta == dc.delta_at_removal);
            int pd = std::min(work.d_in(dc.pivot), work.d_out(dc.pivot));
            CHECK(pd == deg.delta);
            bool on_cycle = false;
            for (VertexId v : dc.cycle.vertices)
                if (v == dc.pivot) on_cycle = true;
            CHECK(on_cycle);
        }
        work.remove_cycle(dc.cycle);
        CHECK(work.is_balanced());
    }
    CHECK(work.arc_count() == 0);
}

TEST_CASE("potential strategy is deterministic, random strategy seed-reproducible") {
    Digraph g = gen_perm_superposition(60, 5, 99);
    CycleDecomposition a = decompose(g);
    CycleDecomposition b = decompose(g);
    REQUIRE(a.count() == b.count());
    for (std::size_t i = 0; i < a.count(); ++i)
        CHECK(a.cycles[i].cycle.edges == b.cycles[i].cycle.edges);

    DecompositionParams rp;
    rp.strategy = Strategy::random;
    rp.seed = 7;
    CycleDecomposition r1 = decompose(g, rp);
    CycleDecomposition r2 = decompose(g, rp);
    REQUIRE(r1.count() == r2.count());
    for (std::size_t i = 0; i < r1.count(); ++i)
        CHECK(r1.cycles[i].cycle.edges == r2.cycles[i].cycle.edges);
    CHECK(verify_decomposition(r1, g));
}

TEST_CASE("forced heavy branch honours the per-cycle weight floor") {
    // mu = 0 sends every round to the heavy branch
    Digraph g = gen_perm_superposition(80, 22, 5);
    DecompositionParams p;
    p.mu = 0.0;
    CycleDecomposition d = decompose(g, p);
    CHECK(verify_decomposition(d, g));
    for (const auto& dc : d.cycles) {
        CHECK(dc.tag == CaseTag::heavy);
        if (dc.delta_at_removal >= 20)
            CHECK(dc.inv_degree_weight >= p.xi - kWeightTol);
    }
}

TEST_CASE("decomposition_stats: exact harmonic identity and budget") {
    Digraph g = gen_k_symmetric(3);
    DecompositionParams params;
    CycleDecomposition d = decompose(g, params);
    DecompositionStats st = decomposition_stats(d, g, params);
    CHECK(st.n == 4);
    CHECK(st.m == 12);
    CHECK(st.Delta == 3);
    CHECK(st.harmonic_sum == doctest::Approx(4.0 * (1.0 + 0.5 + 1.0 / 3)));  // 22/3
    CHECK(st.harmonic_identity_ok);
    CHECK(st.budget_ok);
    CHECK(st.total == d.count());
    CHECK(static_cast<double>(st.total) <= std::min(6.0, st.budget));

    Digraph t = triangle();
    CycleDecomposition td = decompose(t, params);
    DecompositionStats ts = decomposition_stats(td, t, params);
    CHECK(ts.total == 1);
    CHECK(ts.budget_ok);
}

TEST_CASE("stats on a random regular instance") {
    DecompositionParams params;
    Digraph g = gen_perm_superposition(200, 20, 12345);
    CycleDecomposition d = decompose(g, params);
    REQUIRE(verify_decomposition(d, g));
    DecompositionStats st = decomposition_stats(d, g, params);
    CHECK(st.harmonic_identity_ok);
    CHECK(st.budget_ok);
    CHECK(st.count_ratio > 0.0);
    CHECK(st.longest_ratio > 0.0);
}

TEST_CASE("verify_decomposition diagnoses tampering") {
    Digraph g = gen_k_symmetric(3);
    CycleDecomposition d = decompose(g);
    REQUIRE(verify_decomposition(d, g));

    std::string why;
    CycleDecomposition dropped = d;
    dropped.cycles.pop_back();
    CHECK_FALSE(verify_decomposition(dropped, g, &why));
    CHECK(why.find("missing edge") != std::string::npos);

    CycleDecomposition doubled = d;
    doubled.cycles.push_back(doubled.cycles.front());
    CHECK_FALSE(verify_decomposition(doubled, g, &why));
    CHECK(why.find("repeated edge") != std::string::npos);

    CycleDecomposition mangled = d;
    mangled.cycles[0].cycle.vertices[0] = mangled.cycles[0].cycle.vertices.back();
    CHECK_FALSE(verify_decomposition(mangled, g, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("decompose count is never below the exact optimum") {
    Digraph g = gen_k_symmetric(3);
    CycleDecomposition d = decompose(g);
    CHECK(static_cast<int>(d.count()) >= min_decomposition_exact(g));

    // disjoint cycles decompose optimally
    Digraph two(6);
    for (int b = 0; b < 6; b += 3) {
        two.add_arc(b, b + 1);
        two.add_arc(b + 1, b + 2);
        two.add_arc(b + 2, b);
    }
    CycleDecomposition td = decompose(two);
    CHECK(static_cast<int>(td.count()) == min_decomposition_exact(two));
}

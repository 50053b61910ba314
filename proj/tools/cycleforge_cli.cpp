// cycleforge command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage, 3 precondition,
// 4 I/O.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cycleforge/decomposer.hpp"
#include "cycleforge/digraph.hpp"
#include "cycleforge/generators.hpp"
#include "cycleforge/io.hpp"
#include "cycleforge/oracle.hpp"
#include "cycleforge/potential_walk.hpp"
#include "cycleforge/random_walk.hpp"
#include "cycleforge/weighting.hpp"

namespace cf = cycleforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitIo = 4;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CYCLEFORGE_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        std::cerr << "warning: ignoring malformed CYCLEFORGE_SEED\n";
    }
    return 0;
}

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw cf::IoError("cannot open " + path + " for writing");
    return file;
}

int cmd_gen(const std::string& family, int M, int l, int k, int n, int d, int r,
            std::uint64_t seed, const std::string& out_path, bool dot) {
    cf::Digraph g;
    bool weighted = false;
    std::ostringstream flags;
    if (family == "k4-chain") {
        g = cf::gen_k4_chain(M);
        flags << "--family k4-chain --M " << M;
    } else if (family == "bs-tree") {
        g = cf::gen_bs_tree(l, k > 0 ? std::optional<int>(k) : std::nullopt);
        weighted = true;
        flags << "--family bs-tree --l " << l;
        if (k > 0) flags << " --k " << k;
    } else if (family == "backward-path") {
        g = cf::gen_backward_path(n);
        weighted = true;
        flags << "--family backward-path --n " << n;
    } else if (family == "perm") {
        g = cf::gen_perm_superposition(n, d, seed);
        flags << "--family perm --n " << n << " --d " << d;
    } else if (family == "k-symmetric") {
        g = cf::gen_k_symmetric(r);
        flags << "--family k-symmetric --r " << r;
    } else {
        std::cerr << "unknown family: " << family << "\n";
        return kExitUsage;
    }
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    cf::RunManifest manifest;
    manifest.command = "gen";
    manifest.flags = flags.str();
    manifest.seed = seed;
    manifest.digest = cf::input_digest(g);
    manifest.emit(out);
    if (dot)
        cf::write_dot(out, g);
    else
        cf::write_edge_list(out, g, weighted);
    return kExitOk;
}

int cmd_decompose(const std::string& in_path, const std::string& strategy_name,
                  std::uint64_t seed, const std::string& out_path) {
    cf::Digraph g = cf::read_edge_list_file(in_path);
    if (!g.is_balanced()) {
        std::cerr << "precondition: input graph is not balanced\n";
        return kExitPrecondition;
    }
    cf::DecompositionParams params;
    params.seed = seed;
    if (strategy_name == "potential")
        params.strategy = cf::Strategy::potential;
    else if (strategy_name == "random")
        params.strategy = cf::Strategy::random;
    else if (strategy_name == "greedy-any")
        params.strategy = cf::Strategy::greedy_any;
    else {
        std::cerr << "unknown strategy: " << strategy_name << "\n";
        return kExitUsage;
    }
    auto t0 = std::chrono::steady_clock::now();
    cf::CycleDecomposition d = cf::decompose(g, params);
    double secs = elapsed_seconds(t0);

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    cf::RunManifest manifest;
    manifest.command = "decompose";
    manifest.flags = in_path + " --strategy " + strategy_name;
    manifest.seed = seed;
    manifest.digest = cf::input_digest(g);
    manifest.seconds = secs;
    manifest.emit(out);
    cf::write_decomposition(out, d);

    cf::DecompositionStats st = cf::decomposition_stats(d, g, params);
    std::cout << cf::kStatsCsvHeader << "\n" << cf::stats_csv_row(st, g, secs) << "\n";

    std::string why;
    if (!cf::verify_decomposition(d, g, &why)) {
        std::cerr << "verification failed: " << why << "\n";
        return kExitVerify;
    }
    for (const auto& dc : d.cycles)
        if (dc.tag == cf::CaseTag::heavy && dc.delta_at_removal >= 20 &&
            params.strategy == cf::Strategy::potential &&
            dc.inv_degree_weight < params.xi - cf::kWeightTol) {
            std::cerr << "verification failed: heavy cycle below xi\n";
            return kExitVerify;
        }
    if (!st.budget_ok) {
        std::cerr << "verification failed: budget identity violated\n";
        return kExitVerify;
    }
    return kExitOk;
}

int cmd_heavy(const std::string& in_path, std::optional<double> lambda, bool with_oracle) {
    cf::Digraph g = cf::read_edge_list_file(in_path);
    for (cf::VertexId v = 0; v < g.vertex_count(); ++v)
        if (!g.isolated(v) && g.w_out(v) < 1.0 - cf::kWeightTol) {
            std::cerr << "precondition: vertex " << v << " has out-weight " << g.w_out(v)
                      << " < 1\n";
            return kExitPrecondition;
        }
    for (cf::EdgeId e : g.live_arcs())
        if (g.tail(e) == g.head(e)) {
            std::cerr << "precondition: self-loop on vertex " << g.tail(e) << "\n";
            return kExitPrecondition;
        }

    auto t0 = std::chrono::steady_clock::now();
    cf::Cycle c = cf::heavy_cycle_any(g, lambda);
    double secs = elapsed_seconds(t0);
    double w = cf::cycle_weight(g, c);

    // the bound the returned cycle must meet: over the normalized sink
    // component, 1/Delta' when Delta' < 20, otherwise lambda/(50 e^lambda)
    cf::Digraph norm = g;
    cf::normalize_out_weights(norm);
    std::vector<cf::VertexId> comp = norm.sink_scc();
    cf::Digraph sub = cf::induced_subgraph(norm, comp, nullptr, nullptr);
    int Dp = sub.degrees().Delta;
    double bound;
    if (Dp < 20 || sub.arc_count() == 0) {
        bound = Dp > 0 ? 1.0 / Dp : 0.0;
    } else {
        double ll = std::log(std::log(static_cast<double>(Dp)));
        double lam = lambda ? *lambda : ll;
        lam = std::min(std::max(lam, 1.0), std::max(ll, 1.0));
        bound = lam / (50.0 * std::exp(lam));
    }

    std::cout << "cycle:";
    for (cf::VertexId v : c.vertices) std::cout << ' ' << v;
    std::cout << "\nweight: " << w << "\nbound: " << bound << "\nseconds: " << secs << "\n";
    if (with_oracle) {
        auto [best, best_w] = cf::heaviest_cycle_exact(g);
        std::cout << "oracle-optimum: " << best_w << "\n";
    }
    if (w < bound - cf::kWeightTol) {
        std::cerr << "verification failed: weight below case bound\n";
        return kExitVerify;
    }
    return kExitOk;
}

int cmd_verify(const std::string& graph_path, const std::string& decomp_path) {
    cf::Digraph g = cf::read_edge_list_file(graph_path);
    cf::CycleDecomposition d = cf::read_decomposition_file(decomp_path);
    std::string why;
    if (!cf::verify_decomposition(d, g, &why)) {
        std::cerr << "invalid decomposition: " << why << "\n";
        return kExitVerify;
    }
    std::cout << "ok: " << d.count() << " cycles partition " << g.arc_count() << " arcs\n";
    return kExitOk;
}

int cmd_oracle(const std::string& op, const std::string& in_path, int max_edges,
               std::size_t max_cycles) {
    cf::Digraph g = cf::read_edge_list_file(in_path);
    cf::OracleBudget budget;
    budget.max_edges = max_edges;
    budget.max_cycles = max_cycles;
    if (op == "enumerate") {
        std::vector<cf::Cycle> cycles = cf::enumerate_cycles(g, budget);
        for (const cf::Cycle& c : cycles) {
            std::cout << "cycle:";
            for (cf::VertexId v : c.vertices) std::cout << ' ' << v;
            std::cout << " weight: " << cf::cycle_weight(g, c) << "\n";
        }
        std::cout << "count: " << cycles.size() << "\n";
    } else if (op == "heaviest") {
        auto [c, w] = cf::heaviest_cycle_exact(g, budget);
        std::cout << "cycle:";
        for (cf::VertexId v : c.vertices) std::cout << ' ' << v;
        std::cout << "\nweight: " << w << "\n";
    } else if (op == "mindecomp") {
        std::cout << "minimum: " << cf::min_decomposition_exact(g, budget) << "\n";
    } else {
        std::cerr << "unknown oracle op: " << op << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_mc_tail(const std::string& process, double p, double p_high, int n, double lambda,
                double c, int trials, std::uint64_t seed) {
    cf::ProcessSpec spec;
    if (process == "constant")
        spec = cf::ProcessSpec::constant(n, p);
    else if (process == "sticky")
        spec = cf::ProcessSpec::sticky(n, p, p_high);
    else {
        std::cerr << "unknown process: " << process << "\n";
        return kExitUsage;
    }
    cf::TailCheckResult r = cf::mc_tail_check(spec, lambda, c, trials, seed);
    double slack = 3.0 * std::sqrt(r.bound / std::max(r.trials, 1));
    std::cout << "violations: " << r.violations << "/" << r.trials
              << "\nempirical-rate: " << r.empirical_rate << "\nbound: " << r.bound
              << "\nassert-threshold: " << r.bound + slack << "\n";
    if (r.empirical_rate > r.bound + slack) {
        std::cerr << "verification failed: empirical rate above tail bound\n";
        return kExitVerify;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycle decompositions and heavy cycles in Eulerian digraphs"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a named graph family");
    std::string family, gen_out;
    int gM = 1, gl = 2, gk = 0, gn = 10, gd = 2, gr = 3;
    bool gen_dot = false;
    gen->add_option("--family", family,
                    "k4-chain | bs-tree | backward-path | perm | k-symmetric")
        ->required();
    gen->add_option("--M", gM, "number of glued copies (k4-chain)");
    gen->add_option("--l", gl, "tree depth (bs-tree)");
    gen->add_option("--k", gk, "branching factor, default l^2 (bs-tree)");
    gen->add_option("--n", gn, "vertex count (backward-path, perm)");
    gen->add_option("--d", gd, "permutations superposed (perm)");
    gen->add_option("--r", gr, "arcs both ways between r+1 vertices (k-symmetric)");
    gen->add_option("--seed", seed, "RNG seed (also CYCLEFORGE_SEED)");
    gen->add_option("--out,-o", gen_out, "output path, default stdout");
    gen->add_flag("--dot", gen_dot, "emit DOT instead of an edge list");

    // decompose
    auto* dec = app.add_subcommand("decompose", "peel a balanced graph into cycles");
    std::string dec_in, dec_out, strategy = "potential";
    dec->add_option("input", dec_in, "edge-list file")->required();
    dec->add_option("--strategy", strategy, "potential | random | greedy-any");
    dec->add_option("--seed", seed, "RNG seed (also CYCLEFORGE_SEED)");
    dec->add_option("--out,-o", dec_out, "decomposition output path, default stdout");

    // heavy
    auto* hvy = app.add_subcommand("heavy", "find a heavy cycle (out-weights >= 1)");
    std::string hvy_in;
    double hvy_lambda = -1.0;
    bool hvy_oracle = false;
    hvy->add_option("input", hvy_in, "edge-list file")->required();
    hvy->add_option("--lambda", hvy_lambda, "walk parameter, default log log Delta");
    hvy->add_flag("--oracle", hvy_oracle, "also print the exact optimum");

    // verify
    auto* ver = app.add_subcommand("verify", "check a decomposition against its graph");
    std::string ver_graph, ver_decomp;
    ver->add_option("graph", ver_graph, "edge-list file")->required();
    ver->add_option("decomposition", ver_decomp, "decomposition file")->required();

    // oracle
    auto* ora = app.add_subcommand("oracle", "exhaustive ground truth on small graphs");
    std::string ora_op, ora_in;
    int ora_max_edges = 16;
    std::size_t ora_max_cycles = 1000000;
    ora->add_option("op", ora_op, "enumerate | heaviest | mindecomp")->required();
    ora->add_option("input", ora_in, "edge-list file")->required();
    ora->add_option("--max-edges", ora_max_edges, "exact-decomposition edge cap");
    ora->add_option("--max-cycles", ora_max_cycles, "enumeration cap");

    // mc-tail
    auto* mct = app.add_subcommand("mc-tail", "Monte-Carlo adapted-process tail check");
    std::string process = "constant";
    double mc_p = 0.1, mc_p_high = 1.0, mc_lambda = 1.0, mc_c = 3.0;
    int mc_n = 100, mc_trials = 100000;
    mct->add_option("--process", process, "constant | sticky");
    mct->add_option("--p", mc_p, "success probability (low state for sticky)");
    mct->add_option("--p-high", mc_p_high, "sticky high-state probability");
    mct->add_option("--n", mc_n, "process length");
    mct->add_option("--lambda", mc_lambda, "tilt parameter");
    mct->add_option("--c", mc_c, "tail offset, bound is e^-c");
    mct->add_option("--trials", mc_trials, "simulation runs");
    mct->add_option("--seed", seed, "RNG seed (also CYCLEFORGE_SEED)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(family, gM, gl, gk, gn, gd, gr, seed, gen_out, gen_dot);
        if (dec->parsed()) return cmd_decompose(dec_in, strategy, seed, dec_out);
        if (hvy->parsed())
            return cmd_heavy(hvy_in,
                             hvy_lambda >= 0.0 ? std::optional<double>(hvy_lambda) : std::nullopt,
                             hvy_oracle);
        if (ver->parsed()) return cmd_verify(ver_graph, ver_decomp);
        if (ora->parsed()) return cmd_oracle(ora_op, ora_in, ora_max_edges, ora_max_cycles);
        if (mct->parsed())
            return cmd_mc_tail(process, mc_p, mc_p_high, mc_n, mc_lambda, mc_c, mc_trials, seed);
    } catch (const cf::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const cf::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const cf::GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitUsage;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cycleforge/decomposer.hpp"
#include "cycleforge/digraph.hpp"

namespace cycleforge {

struct IoError : GraphError {
    using GraphError::GraphError;
};

// Edge-list text format. Lines starting with '#' are comments. An optional
// header `H <n> <m> <weighted:0|1>` fixes the vertex count and declares
// whether arcs carry weights; it must agree with the body. Arcs are one per
// line, `u v` or `u v w`.
Digraph read_edge_list(std::istream& in);
Digraph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Digraph& g, bool weighted);
void write_edge_list_file(const std::string& path, const Digraph& g, bool weighted,
                          const std::string& header_comment = "");

void write_dot(std::ostream& out, const Digraph& g);

// Decomposition file: one cycle per line,
//   <case_tag> <w_inv> : v0 v1 ... vk # edges: e0 e1 ...
// with case_tag one of min_degree | heavy.
void write_decomposition(std::ostream& out, const CycleDecomposition& d);
CycleDecomposition read_decomposition(std::istream& in);
CycleDecomposition read_decomposition_file(const std::string& path);

// 64-bit FNV-1a over the canonical edge list (sorted (tail, head, weight)
// triples); stable across arc insertion order.
std::uint64_t input_digest(const Digraph& g);

// Header comment lines recording how an output was produced.
struct RunManifest {
    std::string command;
    std::string flags;
    std::uint64_t seed = 0;
    std::uint64_t digest = 0;
    double seconds = 0.0;

    void emit(std::ostream& out) const;
};

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kStatsCsvHeader =
    "n,m,delta,Delta,cycles,case1,case2,longest,budget_ok,seconds";

std::string stats_csv_row(const DecompositionStats& st, const Digraph& g_original, double seconds);

}  // namespace cycleforge

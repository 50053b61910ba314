#include "cycleforge/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>
#include <vector>

namespace cycleforge {

namespace {

std::string fmt_weight(double w) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    return buf;
}

}  // namespace

Digraph read_edge_list(std::istream& in) {
    Digraph g;
    bool have_header = false;
    long declared_m = -1;
    int declared_weighted = -1;
    std::size_t arcs_read = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line.substr(first));
        auto bad = [&](const std::string& why) {
            throw IoError("edge list line " + std::to_string(lineno) + ": " + why);
        };
        if (line[first] == 'H') {
            if (have_header || arcs_read > 0) bad("header must come first");
            char h;
            long n, m;
            int weighted;
            if (!(ls >> h >> n >> m >> weighted) || n < 0 || m < 0 ||
                (weighted != 0 && weighted != 1))
                bad("malformed header");
            std::string rest;
            if (ls >> rest) bad("trailing tokens after header");
            g.resize(static_cast<std::size_t>(n));
            declared_m = m;
            declared_weighted = weighted;
            have_header = true;
            continue;
        }
        long u, v;
        if (!(ls >> u >> v) || u < 0 || v < 0) bad("expected `u v [w]`");
        double w = 1.0;
        bool has_w = static_cast<bool>(ls >> w);
        if (has_w && w < 0.0) bad("negative weight");
        std::string rest;
        if (ls >> rest) bad("trailing tokens");
        if (declared_weighted == 0 && has_w) bad("weight on an unweighted file");
        if (declared_weighted == 1 && !has_w) bad("missing weight on a weighted file");
        if (have_header) {
            if (static_cast<std::size_t>(u) >= g.vertex_count() ||
                static_cast<std::size_t>(v) >= g.vertex_count())
                bad("vertex id beyond declared n");
        } else {
            std::size_t need = static_cast<std::size_t>(std::max(u, v)) + 1;
            if (need > g.vertex_count()) g.resize(need);
        }
        g.add_arc(static_cast<VertexId>(u), static_cast<VertexId>(v), w);
        ++arcs_read;
    }
    if (in.bad()) throw IoError("read failure");
    if (declared_m >= 0 && static_cast<long>(arcs_read) != declared_m)
        throw IoError("edge list: header declares " + std::to_string(declared_m) + " arcs, found " +
                      std::to_string(arcs_read));
    return g;
}

Digraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Digraph& g, bool weighted) {
    out << "H " << g.vertex_count() << ' ' << g.arc_count() << ' ' << (weighted ? 1 : 0) << '\n';
    for (EdgeId e : g.live_arcs()) {
        out << g.tail(e) << ' ' << g.head(e);
        if (weighted) out << ' ' << fmt_weight(g.weight(e));
        out << '\n';
    }
}

void write_edge_list_file(const std::string& path, const Digraph& g, bool weighted,
                          const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    if (!header_comment.empty()) out << header_comment;
    write_edge_list(out, g, weighted);
    if (!out) throw IoError("write failure on " + path);
}

void write_dot(std::ostream& out, const Digraph& g) {
    out << "digraph {\n";
    for (EdgeId e : g.live_arcs())
        out << "  " << g.tail(e) << " -> " << g.head(e) << " [label=\"" << fmt_weight(g.weight(e))
            << "\"];\n";
    out << "}\n";
}

void write_decomposition(std::ostream& out, const CycleDecomposition& d) {
    for (const auto& dc : d.cycles) {
        out << (dc.tag == CaseTag::min_degree ? "min_degree" : "heavy") << ' '
            << fmt_weight(dc.inv_degree_weight) << " :";
        for (VertexId v : dc.cycle.vertices) out << ' ' << v;
        out << " # edges:";
        for (EdgeId e : dc.cycle.edges) out << ' ' << e;
        out << '\n';
    }
}

CycleDecomposition read_decomposition(std::istream& in) {
    CycleDecomposition d;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto bad = [&](const std::string& why) {
            throw IoError("decomposition line " + std::to_string(lineno) + ": " + why);
        };
        std::size_t hash = line.find('#');
        std::string head = line.substr(0, hash);
        std::istringstream hs(head);
        DecomposedCycle dc;
        std::string tag, colon;
        if (!(hs >> tag >> dc.inv_degree_weight >> colon) || colon != ":")
            bad("expected `<tag> <w_inv> :`");
        if (tag == "min_degree")
            dc.tag = CaseTag::min_degree;
        else if (tag == "heavy")
            dc.tag = CaseTag::heavy;
        else
            bad("unknown case tag " + tag);
        long v;
        while (hs >> v) {
            if (v < 0) bad("negative vertex id");
            dc.cycle.vertices.push_back(static_cast<VertexId>(v));
        }
        if (dc.cycle.vertices.empty()) bad("empty vertex list");
        if (hash == std::string::npos) bad("missing `# edges:` section");
        std::istringstream es(line.substr(hash + 1));
        std::string kw;
        if (!(es >> kw) || kw != "edges:") bad("missing `# edges:` section");
        long e;
        while (es >> e) {
            if (e < 0) bad("negative edge id");
            dc.cycle.edges.push_back(static_cast<EdgeId>(e));
        }
        if (dc.cycle.edges.size() != dc.cycle.vertices.size())
            bad("edge/vertex count mismatch");
        dc.pivot = dc.cycle.vertices[0];
        d.cycles.push_back(std::move(dc));
    }
    if (in.bad()) throw IoError("read failure");
    return d;
}

CycleDecomposition read_decomposition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_decomposition(in);
}

std::uint64_t input_digest(const Digraph& g) {
    std::vector<std::tuple<VertexId, VertexId, double>> arcs;
    arcs.reserve(g.arc_count());
    for (EdgeId e : g.live_arcs()) arcs.emplace_back(g.tail(e), g.head(e), g.weight(e));
    std::sort(arcs.begin(), arcs.end());

    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](const void* p, std::size_t len) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    std::uint64_t n = g.vertex_count();
    mix(&n, sizeof n);
    for (const auto& [u, v, w] : arcs) {
        mix(&u, sizeof u);
        mix(&v, sizeof v);
        mix(&w, sizeof w);
    }
    return h;
}

void RunManifest::emit(std::ostream& out) const {
    out << "# cycleforge " << kVersion << '\n';
    out << "# command: " << command;
    if (!flags.empty()) out << ' ' << flags;
    out << '\n';
    out << "# seed: " << seed << '\n';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    out << "# input-digest: " << buf << '\n';
    std::snprintf(buf, sizeof(buf), "%.3f", seconds);
    out << "# seconds: " << buf << '\n';
}

std::string stats_csv_row(const DecompositionStats& st, const Digraph& g_original, double seconds) {
    Degrees deg = g_original.degrees();
    std::ostringstream row;
    row << st.n << ',' << st.m << ',' << deg.delta << ',' << st.Delta << ',' << st.total << ','
        << st.case1 << ',' << st.case2 << ',' << st.longest << ',' << (st.budget_ok ? 1 : 0) << ',';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", seconds);
    row << buf;
    return row.str();
}

}  // namespace cycleforge

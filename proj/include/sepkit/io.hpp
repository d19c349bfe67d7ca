#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "leftmost.hpp"
#include "oracle.hpp"
#include "treewidth.hpp"

namespace sepkit {

using json = nlohmann::json;

struct ParseReport {
    int duplicate_edges = 0;
    int self_loops = 0;
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

inline std::vector<std::string> tokens(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::vector<std::string> t;
    for (std::string s; in >> s;) t.push_back(s);
    return t;
}

inline long long to_int(const std::string& s, int line) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw ParseError(line, "expected an integer, got '" + s + "'");
    return v;
}

}  // namespace detail

// "p tw n m" header, m edge lines, "c" comments. Self-loops and repeated
// edges are dropped and counted in `report`.
inline Graph parse_graph(std::string_view text, bool directed = false, ParseReport* report = nullptr) {
    ParseReport rep;
    std::optional<Graph> g;
    long long expected = 0, seen = 0;
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        int no = static_cast<int>(i) + 1;
        auto t = detail::tokens(lines[i]);
        if (t.empty() || t[0] == "c") continue;
        if (t[0] == "p") {
            if (g) throw ParseError(no, "second header line");
            if (t.size() != 4 || t[1] != "tw") throw ParseError(no, "header must be 'p tw <n> <m>'");
            long long n = detail::to_int(t[2], no);
            expected = detail::to_int(t[3], no);
            if (n < 0 || expected < 0) throw ParseError(no, "negative count in header");
            g.emplace(static_cast<int>(n), directed);
            continue;
        }
        if (!g) throw ParseError(no, "edge before header");
        if (t.size() != 2) throw ParseError(no, "edge line needs two vertices");
        long long u = detail::to_int(t[0], no), v = detail::to_int(t[1], no);
        if (u < 1 || v < 1 || u > g->n() || v > g->n())
            throw ParseError(no, "vertex out of range 1.." + std::to_string(g->n()));
        if (++seen > expected)
            throw ParseError(no, "more edge lines than the header's m = " + std::to_string(expected));
        if (u == v)
            ++rep.self_loops;
        else if (!g->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
            ++rep.duplicate_edges;
    }
    if (!g) throw ParseError(static_cast<int>(lines.size()), "missing 'p tw' header");
    if (seen != expected)
        throw ParseError(static_cast<int>(lines.size()),
                         "header announces " + std::to_string(expected) + " edges, found " +
                             std::to_string(seen));
    if (report) *report = rep;
    return std::move(*g);
}

inline std::string emit_graph(const Graph& g) {
    std::string s = "p tw " + std::to_string(g.n()) + " " + std::to_string(g.edge_count()) + "\n";
    for (auto [u, v] : g.edges()) s += std::to_string(u) + " " + std::to_string(v) + "\n";
    return s;
}

// Canonical PACE .td text: bags in node order with sorted members, edges as
// (smaller, larger) pairs sorted lexicographically, all ids 1-based.
inline std::string emit_td(const TreeDecomposition& td, const Graph& g) {
    int width = td.bags.empty() ? 0 : td_width(td);
    std::string s = "s td " + std::to_string(td.size()) + " " + std::to_string(width) + " " +
                    std::to_string(g.n()) + "\n";
    for (std::size_t i = 0; i < td.size(); ++i) {
        s += "b " + std::to_string(i + 1);
        for (Vertex v : td.bags[i]) s += " " + std::to_string(v);
        s += "\n";
    }
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : td.edges) e.emplace_back(std::min(a, b) + 1, std::max(a, b) + 1);
    std::sort(e.begin(), e.end());
    for (auto [a, b] : e) s += std::to_string(a) + " " + std::to_string(b) + "\n";
    return s;
}

// Parses a .td; when g is given, also checks it with validate_td.
inline TreeDecomposition parse_td(std::string_view text, const Graph* g = nullptr) {
    TreeDecomposition td;
    long long nbags = -1, n = -1;
    std::vector<char> have;
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        int no = static_cast<int>(i) + 1;
        auto t = detail::tokens(lines[i]);
        if (t.empty() || t[0] == "c") continue;
        if (t[0] == "s") {
            if (nbags >= 0) throw ParseError(no, "second solution line");
            if (t.size() != 5 || t[1] != "td") throw ParseError(no, "expected 's td <bags> <width> <n>'");
            nbags = detail::to_int(t[2], no);
            detail::to_int(t[3], no);
            n = detail::to_int(t[4], no);
            if (nbags < 0 || n < 0) throw ParseError(no, "negative count");
            if (g && n != g->n())
                throw ParseError(no, "decomposition is for " + std::to_string(n) +
                                         " vertices, graph has " + std::to_string(g->n()));
            td.bags.resize(static_cast<std::size_t>(nbags));
            have.assign(static_cast<std::size_t>(nbags), 0);
            continue;
        }
        if (nbags < 0) throw ParseError(no, "content before 's td' line");
        if (t[0] == "b") {
            if (t.size() < 2) throw ParseError(no, "bag line needs an id");
            long long id = detail::to_int(t[1], no);
            if (id < 1 || id > nbags) throw ParseError(no, "bag id out of range");
            if (have[id - 1]) throw ParseError(no, "bag " + std::to_string(id) + " listed twice");
            have[id - 1] = 1;
            std::vector<Vertex> vs;
            for (std::size_t j = 2; j < t.size(); ++j) {
                long long v = detail::to_int(t[j], no);
                if (v < 1 || v > n) throw ParseError(no, "vertex " + t[j] + " out of range 1.." + std::to_string(n));
                vs.push_back(static_cast<Vertex>(v));
            }
            td.bags[id - 1] = VertexSet(std::move(vs));
            continue;
        }
        if (t.size() != 2) throw ParseError(no, "tree edge line needs two bag ids");
        long long a = detail::to_int(t[0], no), b = detail::to_int(t[1], no);
        if (a < 1 || b < 1 || a > nbags || b > nbags) throw ParseError(no, "tree edge bag id out of range");
        td.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
    if (nbags < 0) throw ParseError(static_cast<int>(lines.size()), "missing 's td' line");
    for (std::size_t i = 0; i < have.size(); ++i)
        if (!have[i]) throw ParseError(static_cast<int>(lines.size()), "bag " + std::to_string(i + 1) + " missing");
    if (g) {
        auto v = validate_td(*g, td);
        if (!v.empty()) throw ValidationError(std::string(to_string(v[0].kind)) + ": " + v[0].detail);
    }
    return td;
}

// JSON helpers. nlohmann::json objects keep keys sorted, so dumps are canonical.

inline json to_json(const VertexSet& s) { return json(s.vec()); }

inline VertexSet vertex_set_from_json(const json& j) { return VertexSet(j.get<std::vector<Vertex>>()); }

inline json big_to_json(const BigInt& b) {
    if (b >= 0 && b <= BigInt(std::numeric_limits<std::int64_t>::max()))
        return json(static_cast<std::int64_t>(b));
    return json(b.str());
}

inline json to_json(const Enumeration& e, const std::string& mode, int k) {
    json seps = json::array();
    for (const auto& s : e.separators) seps.push_back(to_json(s.members));
    auto [lb, ib] = count_bounds(std::max(k, 1));
    return json{{"mode", mode},
                {"k", k},
                {"count", e.count()},
                {"separators", seps},
                {"too_large", e.too_large},
                {"leftmost_bound", big_to_json(lb)},
                {"important_bound", big_to_json(ib)},
                {"nodes", e.stats.compact_nodes()},
                {"node_bound", big_to_json(node_bound(k))}};
}

inline json to_json(const Rejection& r) {
    return json{{"status", "reject"}, {"k", r.k}, {"witness_w", to_json(r.witness_w)}};
}

inline json to_json(const DisjointPathSet& p) { return json(p.paths); }

inline json to_json(const oracle::CorpusRecord& r) {
    return json{{"fixture", r.fixture}, {"params", r.params}, {"x", to_json(r.x)},
                {"y", to_json(r.y)}, {"k", r.k}};
}

inline oracle::CorpusRecord corpus_record_from_json(const json& j) {
    oracle::CorpusRecord r;
    r.fixture = j.at("fixture").get<std::string>();
    r.params = j.at("params").get<fixtures::Params>();
    r.x = vertex_set_from_json(j.at("x"));
    r.y = vertex_set_from_json(j.at("y"));
    r.k = j.at("k").get<int>();
    return r;
}

inline std::string emit_manifest(const std::vector<oracle::CorpusRecord>& recs) {
    json a = json::array();
    for (const auto& r : recs) a.push_back(to_json(r));
    return a.dump(1) + "\n";
}

inline std::vector<oracle::CorpusRecord> parse_manifest(std::string_view text) {
    json a;
    try {
        a = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("manifest: ") + e.what());
    }
    std::vector<oracle::CorpusRecord> out;
    for (const auto& j : a) out.push_back(corpus_record_from_json(j));
    return out;
}

}  // namespace sepkit

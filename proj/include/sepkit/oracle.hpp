#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graph.hpp"
#include "leftmost.hpp"

namespace sepkit {

// 64-bit LCG (Knuth's MMIX constants): s' = s * 6364136223846793005 + 1442695040888963407.
// Outputs are the high 32 bits of the new state.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : s_(seed) {}
    std::uint32_t next() {
        s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<std::uint32_t>(s_ >> 32);
    }
    // Uniform-ish in [0, n); modulo bias is irrelevant here.
    std::uint32_t below(std::uint32_t n) { return next() % n; }

private:
    std::uint64_t s_;
};

namespace fixtures {

// Heap order: root 1, children of i are 2i and 2i + 1; leaves are the last level.
inline Graph binary_tree(int levels) {
    if (levels < 1 || levels > 20) throw InvalidInput("binary tree levels must be in 1..20");
    int n = (1 << levels) - 1;
    Graph g(n);
    for (int i = 2; i <= n; ++i) g.add_edge(i / 2, i);
    return g;
}
inline VertexSet binary_tree_leaves(int levels) {
    std::vector<Vertex> v;
    for (int i = 1 << (levels - 1); i < (1 << levels); ++i) v.push_back(i);
    return VertexSet(std::move(v));
}
inline VertexSet binary_tree_root() { return {1}; }

inline Graph path(int n) {
    if (n < 1) throw InvalidInput("path needs n >= 1");
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle(int n) {
    if (n < 3) throw InvalidInput("cycle needs n >= 3");
    Graph g = path(n);
    g.add_edge(n, 1);
    return g;
}

inline Graph clique(int n) {
    if (n < 1) throw InvalidInput("clique needs n >= 1");
    Graph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
    return g;
}

// Vertex (i, j), 0-based, has id i * cols + j + 1.
inline Graph grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InvalidInput("grid needs positive dimensions");
    Graph g(rows * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            int v = i * cols + j + 1;
            if (j + 1 < cols) g.add_edge(v, v + 1);
            if (i + 1 < rows) g.add_edge(v, v + cols);
        }
    return g;
}

// x1 = 1, x2 = 2, a = 3, y = 4.
inline Graph star4() {
    Graph g(4);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    return g;
}

inline Graph diamond() {
    Graph g(4);
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 4);
    g.add_edge(3, 4);
    return g;
}

// m distinct random edges; endpoints drawn as 1 + below(n) until accepted.
inline Graph gnm(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < 0) throw InvalidInput("gnm needs n >= 1, m >= 0");
    long long cap = static_cast<long long>(n) * (n - 1) / 2;
    if (m > cap) throw InvalidInput("gnm: m exceeds n(n-1)/2");
    Graph g(n);
    Lcg64 rng(seed);
    while (g.edge_count() < m) {
        Vertex u = 1 + static_cast<Vertex>(rng.below(static_cast<std::uint32_t>(n)));
        Vertex v = 1 + static_cast<Vertex>(rng.below(static_cast<std::uint32_t>(n)));
        g.add_edge(u, v);
    }
    return g;
}

// Vertex i > 1 hangs below 1 + below(i - 1).
inline Graph random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("tree needs n >= 1");
    Graph g(n);
    Lcg64 rng(seed);
    for (int i = 2; i <= n; ++i)
        g.add_edge(i, 1 + static_cast<Vertex>(rng.below(static_cast<std::uint32_t>(i - 1))));
    return g;
}

using Params = std::map<std::string, long long>;

inline long long param(const Params& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw InvalidInput("missing fixture parameter '" + key + "'");
    return it->second;
}

inline Graph make(const std::string& name, const Params& p) {
    auto I = [&](const char* key) { return static_cast<int>(param(p, key)); };
    if (name == "bt") return binary_tree(I("levels"));
    if (name == "path") return path(I("n"));
    if (name == "cycle") return cycle(I("n"));
    if (name == "clique") return clique(I("n"));
    if (name == "grid") return grid(I("rows"), I("cols"));
    if (name == "star4") return star4();
    if (name == "diamond") return diamond();
    if (name == "gnm")
        return gnm(I("n"), I("m"), static_cast<std::uint64_t>(param(p, "seed")));
    if (name == "tree") return random_tree(I("n"), static_cast<std::uint64_t>(param(p, "seed")));
    throw InvalidInput("unknown fixture '" + name + "'");
}

}  // namespace fixtures

namespace oracle {

using Mask = std::uint32_t;

namespace detail {

inline Mask to_mask(const VertexSet& s) {
    Mask m = 0;
    for (Vertex v : s) m |= Mask{1} << (v - 1);
    return m;
}

inline VertexSet from_mask(Mask m) {
    std::vector<Vertex> v;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) v.push_back(i + 1);
    return VertexSet(std::move(v));
}

struct Bits {
    int n;
    std::vector<Mask> fwd, back;

    explicit Bits(const Graph& g) : n(g.n()), fwd(static_cast<std::size_t>(g.n()), 0), back(fwd) {
        for (Vertex u = 1; u <= n; ++u) {
            for (Vertex v : g.out(u)) fwd[u - 1] |= Mask{1} << (v - 1);
            for (Vertex v : g.in(u)) back[u - 1] |= Mask{1} << (v - 1);
        }
    }

    Mask closure(Mask from, Mask blocked, bool reverse) const {
        const auto& adj = reverse ? back : fwd;
        Mask seen = from & ~blocked, frontier = seen;
        while (frontier) {
            Mask nxt = 0;
            for (Mask f = frontier; f; f &= f - 1) nxt |= adj[std::countr_zero(f)];
            nxt &= ~blocked & ~seen;
            seen |= nxt;
            frontier = nxt;
        }
        return seen;
    }
};

}  // namespace detail

inline constexpr int kSeparatorGuard = 16;
inline constexpr int kTreewidthGuard = 18;

inline std::vector<Separator> brute_minimal_separators(const Graph& g, const VertexSet& x,
                                                       const VertexSet& y, int k) {
    if (g.n() > kSeparatorGuard)
        throw TooBig("brute force separators need n <= " + std::to_string(kSeparatorGuard));
    detail::Bits b(g);
    Mask xm = detail::to_mask(x), ym = detail::to_mask(y);
    auto separates = [&](Mask s) { return (b.closure(xm, s, false) & ym & ~s) == 0; };
    std::vector<Separator> out;
    int n = g.n();
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        if (std::popcount(s) > k || !separates(s)) continue;
        bool minimal = true;
        for (Mask t = s; t && minimal; t &= t - 1)
            if (separates(s & ~(t & (~t + 1)))) minimal = false;
        if (minimal) out.push_back({detail::from_mask(s), Provenance::Oracle});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Separator> filter_leftmost(const Graph& g, const VertexSet& x,
                                              const std::vector<Separator>& cands) {
    detail::Bits b(g);
    Mask xm = detail::to_mask(x);
    std::vector<Mask> left;
    for (const auto& c : cands) {
        Mask s = detail::to_mask(c.members);
        left.push_back(b.closure(xm, s, false));
    }
    std::vector<Separator> out;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < cands.size() && keep; ++j)
            if (left[j] != left[i] && (left[j] & ~left[i]) == 0) keep = false;
        if (keep) out.push_back(cands[i]);
    }
    return out;
}

inline std::vector<Separator> filter_important(const Graph& g, const VertexSet& y,
                                               const std::vector<Separator>& cands) {
    detail::Bits b(g);
    Mask ym = detail::to_mask(y);
    std::vector<Mask> right;
    for (const auto& c : cands) right.push_back(b.closure(ym, detail::to_mask(c.members), true));
    std::vector<Separator> out;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < cands.size() && keep; ++j)
            if (cands[j].size() <= cands[i].size() && right[j] != right[i] &&
                (right[i] & ~right[j]) == 0)
                keep = false;
        if (keep) out.push_back(cands[i]);
    }
    return out;
}

// Signature-compatible alias: x is unused by the dominance test.
inline std::vector<Separator> filter_important(const Graph& g, const VertexSet& /*x*/,
                                               const VertexSet& y,
                                               const std::vector<Separator>& cands) {
    return filter_important(g, y, cands);
}

// Minimum over elimination orderings, DP over subsets; bag-size convention.
inline int exact_treewidth(const Graph& g0) {
    if (g0.n() > kTreewidthGuard)
        throw TooBig("exact treewidth needs n <= " + std::to_string(kTreewidthGuard));
    Graph g = g0.underlying();
    int n = g.n();
    if (n == 0) return 0;
    detail::Bits b(g);
    std::size_t states = std::size_t{1} << n;
    std::vector<signed char> tw(states, 0);
    tw[0] = -1;
    auto q = [&](Mask s, int v) {
        // vertices outside s + v reachable from v through s
        Mask inside = b.closure(Mask{1} << v, ~(s | (Mask{1} << v)) & ((Mask{1} << n) - 1), false);
        Mask nb = 0;
        for (Mask f = inside; f; f &= f - 1) nb |= b.fwd[std::countr_zero(f)];
        return std::popcount(nb & ~inside & ~s);
    };
    for (Mask s = 1; s < states; ++s) {
        int best = 127;
        for (Mask f = s; f; f &= f - 1) {
            int v = std::countr_zero(f);
            Mask rest = s & ~(Mask{1} << v);
            int val = std::max<int>(tw[rest], q(rest, v));
            best = std::min(best, val);
        }
        tw[s] = static_cast<signed char>(best);
    }
    return tw[states - 1] + 1;
}

// Test-harness record; params are fixture parameters, x/y/k the query.
struct CorpusRecord {
    std::string fixture;
    fixtures::Params params;
    VertexSet x, y;
    int k = 1;
    Graph graph() const { return fixtures::make(fixture, params); }
};

// Named fixtures followed by `gnm_count` GNM instances (n in 4..10, m <= 20),
// each with random X, Y of size 1..3 and k in 1..4.
inline std::vector<CorpusRecord> separator_corpus(int gnm_count, std::uint64_t seed) {
    Lcg64 rng(seed);
    auto pick = [&](int n) {
        int size = 1 + static_cast<int>(rng.below(3));
        std::vector<Vertex> v;
        for (int i = 0; i < size; ++i) v.push_back(1 + static_cast<Vertex>(rng.below(n)));
        return VertexSet(std::move(v));
    };
    std::vector<std::pair<std::string, fixtures::Params>> named = {
        {"path", {{"n", 3}}},   {"path", {{"n", 8}}},      {"cycle", {{"n", 6}}},
        {"clique", {{"n", 4}}}, {"clique", {{"n", 6}}},    {"grid", {{"rows", 3}, {"cols", 3}}},
        {"star4", {}},          {"diamond", {}},           {"bt", {{"levels", 3}}},
        {"bt", {{"levels", 4}}}, {"tree", {{"n", 12}, {"seed", 5}}}};
    std::vector<CorpusRecord> out;
    for (const auto& [name, params] : named)
        for (int rep = 0; rep < 4; ++rep) {
            CorpusRecord r{name, params, {}, {}, 1};
            int n = r.graph().n();
            r.x = pick(n);
            r.y = pick(n);
            r.k = 1 + static_cast<int>(rng.below(4));
            out.push_back(std::move(r));
        }
    for (int i = 0; i < gnm_count; ++i) {
        int n = 4 + static_cast<int>(rng.below(7));
        int cap = std::min(20, n * (n - 1) / 2);
        int m = static_cast<int>(rng.below(static_cast<std::uint32_t>(cap + 1)));
        CorpusRecord r{"gnm", {{"n", n}, {"m", m}, {"seed", static_cast<long long>(rng.next())}}, {}, {}, 1};
        r.x = pick(n);
        r.y = pick(n);
        r.k = 1 + static_cast<int>(rng.below(4));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace oracle
}  // namespace sepkit

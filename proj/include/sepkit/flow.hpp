#pragma once

#include <climits>
#include <optional>
#include <variant>
#include <vector>

#include "graph.hpp"

namespace sepkit {

// Paths from X to Y. Vertices are used by at most one path unless forced out.
struct DisjointPathSet {
    std::vector<std::vector<Vertex>> paths;
    int flow_value() const { return static_cast<int>(paths.size()); }
    bool empty() const { return paths.empty(); }
    friend bool operator==(const DisjointPathSet&, const DisjointPathSet&) = default;
};

struct CutConstraints {
    VertexSet forced_out;
    // Restricts the instance to the induced subgraph on these vertices.
    std::optional<VertexSet> within;
};

struct FlowCut {
    VertexSet separator;
    DisjointPathSet paths;
};

struct TooLarge {
    DisjointPathSet witness;
};

using CutResult = std::variant<FlowCut, TooLarge>;

namespace detail {

// Vertex-split residual network. Node 0 is the source, 1 the sink,
// in(v) = 2v, out(v) = 2v + 1.
class Residual {
public:
    static constexpr int kInf = INT_MAX / 4;

    Residual(const Graph& g, const VertexSet& x, const VertexSet& y, const CutConstraints& c)
        : g_(g), n_(g.n()), active_(static_cast<std::size_t>(g.n()) + 1, 1),
          forced_(c.forced_out.mask(g.n())), adj_(2 * static_cast<std::size_t>(g.n()) + 2) {
        auto check = [&](const VertexSet& s) {
            for (Vertex v : s)
                if (!g.valid(v)) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
        };
        check(x);
        check(y);
        check(c.forced_out);
        if (c.within) {
            check(*c.within);
            active_ = c.within->mask(n_);
        }
        active_[0] = 0;
        for (Vertex v : set_intersection(x, y))
            if (active_[v] && forced_[v])
                throw Infeasible("vertex " + std::to_string(v) + " is in X and Y but forced out");

        for (Vertex v : x)
            if (active_[v]) add_arc(0, in(v), kInf);
        for (Vertex v = 1; v <= n_; ++v) {
            if (!active_[v]) continue;
            add_arc(in(v), out(v), forced_[v] ? kInf : 1);
        }
        for (Vertex v = 1; v <= n_; ++v) {
            if (!active_[v]) continue;
            for (Vertex w : g.out(v))
                if (active_[w]) add_arc(out(v), in(w), kInf);
        }
        for (Vertex v : y)
            if (active_[v]) add_arc(out(v), 1, kInf);
    }

    static int in(Vertex v) { return 2 * v; }
    static int out(Vertex v) { return 2 * v + 1; }

    bool is_active(Vertex v) const { return active_[v] != 0; }
    bool is_forced(Vertex v) const { return forced_[v] != 0; }

    // Pushes one unit along each path; throws InvalidPathSet on malformed input.
    void load(const DisjointPathSet& p, const VertexSet& x, const VertexSet& y) {
        std::vector<char> used(static_cast<std::size_t>(n_) + 1, 0);
        for (const auto& path : p.paths) {
            if (path.empty()) throw InvalidPathSet("empty path");
            if (!x.contains(path.front())) throw InvalidPathSet("path does not start in X");
            if (!y.contains(path.back())) throw InvalidPathSet("path does not end in Y");
            std::vector<char> on_path(static_cast<std::size_t>(n_) + 1, 0);
            for (Vertex v : path) {
                if (!g_.valid(v) || !active_[v]) throw InvalidPathSet("path leaves the instance");
                if (on_path[v]) throw InvalidPathSet("path repeats vertex " + std::to_string(v));
                on_path[v] = 1;
                if (used[v] && !forced_[v])
                    throw InvalidPathSet("paths share vertex " + std::to_string(v));
                used[v] = 1;
            }
            push(0, in(path.front()));
            for (std::size_t i = 0; i < path.size(); ++i) {
                push(in(path[i]), out(path[i]));
                if (i + 1 < path.size()) {
                    if (!g_.has_edge(path[i], path[i + 1]))
                        throw InvalidPathSet("path uses a non-edge");
                    push(out(path[i]), in(path[i + 1]));
                }
            }
            push(out(path.back()), 1);
            ++flow_;
        }
    }

    // One augmenting path, lowest-id arcs first.
    bool augment() {
        std::vector<int> parent_arc(adj_.size(), -1);
        std::vector<char> seen(adj_.size(), 0);
        std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
        seen[0] = 1;
        while (!stack.empty()) {
            auto& [u, i] = stack.back();
            if (u == 1) break;
            if (i == adj_[u].size()) {
                stack.pop_back();
                continue;
            }
            int a = adj_[u][i++];
            int w = to_[a];
            if (cap_[a] > 0 && !seen[w]) {
                seen[w] = 1;
                parent_arc[w] = a;
                stack.emplace_back(w, 0);
            }
        }
        if (!seen[1]) return false;
        for (int v = 1; v != 0; v = to_[parent_arc[v] ^ 1]) {
            cap_[parent_arc[v]] -= 1;
            cap_[parent_arc[v] ^ 1] += 1;
        }
        ++flow_;
        return true;
    }

    int flow() const { return flow_; }

    std::vector<char> source_side() const {
        std::vector<char> seen(adj_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int a : adj_[u])
                if (cap_[a] > 0 && !seen[to_[a]]) {
                    seen[to_[a]] = 1;
                    stack.push_back(to_[a]);
                }
        }
        return seen;
    }

    VertexSet cut() const {
        std::vector<char> s = source_side();
        std::vector<Vertex> c;
        for (Vertex v = 1; v <= n_; ++v)
            if (active_[v] && s[in(v)] && !s[out(v)]) c.push_back(v);
        return VertexSet(std::move(c));
    }

    // Flow decomposition into source-sink paths; cycles are cancelled.
    DisjointPathSet paths() const {
        std::vector<int> f(cap_.size(), 0);
        for (std::size_t a = 0; a < cap_.size(); a += 2) f[a] = orig_[a] - cap_[a];
        std::vector<std::size_t> next(adj_.size(), 0);
        DisjointPathSet out_paths;
        for (int unit = 0; unit < flow_; ++unit) {
            std::vector<int> walk_nodes{0};
            std::vector<int> walk_arcs;
            std::vector<int> pos(adj_.size(), -1);
            pos[0] = 0;
            while (walk_nodes.back() != 1) {
                int u = walk_nodes.back();
                int a = -1;
                for (; next[u] < adj_[u].size(); ++next[u]) {
                    int b = adj_[u][next[u]];
                    if ((b & 1) == 0 && f[b] > 0) {
                        a = b;
                        break;
                    }
                }
                if (a < 0) break;  // cannot happen for a consistent flow
                int w = to_[a];
                if (pos[w] >= 0) {
                    // Cancel the cycle w ... u -> w.
                    f[a] -= 1;
                    for (std::size_t j = static_cast<std::size_t>(pos[w]); j < walk_arcs.size(); ++j)
                        f[walk_arcs[j]] -= 1;
                    while (walk_nodes.back() != w) {
                        pos[walk_nodes.back()] = -1;
                        walk_nodes.pop_back();
                        walk_arcs.pop_back();
                    }
                    continue;
                }
                pos[w] = static_cast<int>(walk_nodes.size());
                walk_nodes.push_back(w);
                walk_arcs.push_back(a);
            }
            if (walk_nodes.back() != 1) break;
            std::vector<Vertex> path;
            for (std::size_t j = 0; j < walk_arcs.size(); ++j) {
                f[walk_arcs[j]] -= 1;
                int u = walk_nodes[j], w = walk_nodes[j + 1];
                if (u >= 2 && w == u + 1 && (u & 1) == 0) path.push_back(u / 2);
            }
            out_paths.paths.push_back(std::move(path));
        }
        return out_paths;
    }

private:
    void add_arc(int u, int v, int cap) {
        adj_[u].push_back(static_cast<int>(to_.size()));
        to_.push_back(v);
        cap_.push_back(cap);
        orig_.push_back(cap);
        adj_[v].push_back(static_cast<int>(to_.size()));
        to_.push_back(u);
        cap_.push_back(0);
        orig_.push_back(0);
    }

    void push(int u, int v) {
        for (int a : adj_[u])
            if ((a & 1) == 0 && to_[a] == v) {
                if (cap_[a] <= 0) throw InvalidPathSet("paths exceed a vertex capacity");
                cap_[a] -= 1;
                cap_[a ^ 1] += 1;
                return;
            }
        throw InvalidPathSet("path step not in the instance");
    }

    const Graph& g_;
    int n_;
    int flow_ = 0;
    std::vector<char> active_;
    std::vector<char> forced_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> to_, cap_, orig_;
};

}  // namespace detail

inline void validate_paths(const Graph& g, const VertexSet& x, const VertexSet& y,
                           const DisjointPathSet& p, const CutConstraints& c = {}) {
    detail::Residual r(g, x, y, c);
    r.load(p, x, y);
}

inline std::optional<DisjointPathSet> augment_paths(const Graph& g, const VertexSet& x,
                                                    const VertexSet& y, const DisjointPathSet& p,
                                                    const CutConstraints& c = {}) {
    detail::Residual r(g, x, y, c);
    r.load(p, x, y);
    if (!r.augment()) return std::nullopt;
    return r.paths();
}

inline DisjointPathSet max_disjoint_paths(const Graph& g, const VertexSet& x, const VertexSet& y,
                                          int cap, const CutConstraints& c = {}) {
    if (cap < 1) throw PreconditionViolated("cap must be positive");
    detail::Residual r(g, x, y, c);
    while (r.flow() < cap && r.augment()) {
    }
    return r.paths();
}

// Leftmost minimum cut respecting c.forced_out, or TooLarge once k + 1 paths exist.
inline CutResult leftmost_min_separator(const Graph& g, const VertexSet& x, const VertexSet& y,
                                        int k, const CutConstraints& c = {},
                                        const DisjointPathSet& warm = {}) {
    detail::Residual r(g, x, y, c);
    r.load(warm, x, y);
    if (r.flow() > k) return TooLarge{r.paths()};
    while (r.augment())
        if (r.flow() > k) return TooLarge{r.paths()};
    return FlowCut{r.cut(), r.paths()};
}

}  // namespace sepkit

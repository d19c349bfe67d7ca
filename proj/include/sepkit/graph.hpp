#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace sepkit {

using Vertex = int;

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> vs) : v_(vs) { normalize(); }
    explicit VertexSet(std::vector<Vertex> vs) : v_(std::move(vs)) { normalize(); }

    static VertexSet from_mask(const std::vector<char>& mask) {
        VertexSet s;
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (mask[i]) s.v_.push_back(static_cast<Vertex>(i));
        return s;
    }

    bool contains(Vertex v) const { return std::binary_search(v_.begin(), v_.end(), v); }
    void insert(Vertex v) {
        auto it = std::lower_bound(v_.begin(), v_.end(), v);
        if (it == v_.end() || *it != v) v_.insert(it, v);
    }
    void erase(Vertex v) {
        auto it = std::lower_bound(v_.begin(), v_.end(), v);
        if (it != v_.end() && *it == v) v_.erase(it);
    }

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    Vertex operator[](std::size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    const std::vector<Vertex>& vec() const { return v_; }

    std::vector<char> mask(int n) const {
        std::vector<char> m(static_cast<std::size_t>(n) + 1, 0);
        for (Vertex v : v_) m[v] = 1;
        return m;
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.v_ <=> b.v_; }

private:
    void normalize() {
        std::sort(v_.begin(), v_.end());
        v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
    }
    std::vector<Vertex> v_;
};

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    std::vector<Vertex> r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return VertexSet(std::move(r));
}
inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    std::vector<Vertex> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return VertexSet(std::move(r));
}
inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    std::vector<Vertex> r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return VertexSet(std::move(r));
}
inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Simple graph on vertices 1..n. Undirected graphs keep symmetric lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n, bool directed = false)
        : n_(n), directed_(directed), out_(static_cast<std::size_t>(n) + 1),
          in_(directed ? static_cast<std::size_t>(n) + 1 : 0) {
        if (n < 0) throw InvalidInput("negative vertex count");
    }

    int n() const { return n_; }
    bool directed() const { return directed_; }
    int edge_count() const { return m_; }
    bool valid(Vertex v) const { return v >= 1 && v <= n_; }

    // Returns false when the edge is a self-loop or already present.
    bool add_edge(Vertex u, Vertex v) {
        if (!valid(u) || !valid(v))
            throw InvalidInput("edge " + std::to_string(u) + "-" + std::to_string(v) +
                               " outside 1.." + std::to_string(n_));
        if (u == v || has_edge(u, v)) return false;
        insert_sorted(out_[u], v);
        if (directed_)
            insert_sorted(in_[v], u);
        else
            insert_sorted(out_[v], u);
        ++m_;
        return true;
    }

    bool has_edge(Vertex u, Vertex v) const {
        return std::binary_search(out_[u].begin(), out_[u].end(), v);
    }

    const std::vector<Vertex>& out(Vertex v) const { return out_[v]; }
    const std::vector<Vertex>& in(Vertex v) const { return directed_ ? in_[v] : out_[v]; }

    // Undirected edges as (u, v) with u < v; directed ones as ordered pairs.
    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> e;
        e.reserve(static_cast<std::size_t>(m_));
        for (Vertex u = 1; u <= n_; ++u)
            for (Vertex v : out_[u])
                if (directed_ || u < v) e.emplace_back(u, v);
        return e;
    }

    VertexSet vertices() const {
        std::vector<Vertex> v(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) v[static_cast<std::size_t>(i)] = i + 1;
        return VertexSet(std::move(v));
    }

    Graph underlying() const {
        if (!directed_) return *this;
        Graph h(n_, false);
        for (auto [u, v] : edges()) h.add_edge(u, v);
        return h;
    }

    Graph reversed() const {
        if (!directed_) return *this;
        Graph h(n_, true);
        for (auto [u, v] : edges()) h.add_edge(v, u);
        return h;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.directed_ == b.directed_ && a.out_ == b.out_;
    }

private:
    static void insert_sorted(std::vector<Vertex>& l, Vertex v) {
        l.insert(std::lower_bound(l.begin(), l.end(), v), v);
    }

    int n_ = 0;
    int m_ = 0;
    bool directed_ = false;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
};

// Induced subgraph relabeled to 1..|keep|; to_parent[i] is the original id of i.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> to_parent;
};

inline Subgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
    std::vector<int> local(static_cast<std::size_t>(g.n()) + 1, 0);
    Subgraph s{Graph(static_cast<int>(keep.size()), g.directed()), {0}};
    for (Vertex v : keep) {
        local[v] = static_cast<int>(s.to_parent.size());
        s.to_parent.push_back(v);
    }
    for (Vertex u : keep)
        for (Vertex v : g.out(u))
            if (local[v] && (g.directed() || u < v)) s.graph.add_edge(local[u], local[v]);
    return s;
}

// Vertices reachable from `from` without entering `blocked`; reverse follows in-arcs.
inline std::vector<char> reach(const Graph& g, const VertexSet& from,
                               const std::vector<char>& blocked, bool reverse = false) {
    std::vector<char> seen(static_cast<std::size_t>(g.n()) + 1, 0);
    std::vector<Vertex> stack;
    for (Vertex v : from)
        if (!blocked[v] && !seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : reverse ? g.in(u) : g.out(u))
            if (!blocked[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

// Weak components of g minus `removed`, ordered by smallest member.
inline std::vector<VertexSet> components_without(const Graph& g, const VertexSet& removed) {
    std::vector<char> gone = removed.mask(g.n());
    std::vector<char> seen(gone);
    std::vector<VertexSet> comps;
    for (Vertex s = 1; s <= g.n(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{s}, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            auto visit = [&](Vertex w) {
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                    stack.push_back(w);
                }
            };
            for (Vertex w : g.out(u)) visit(w);
            if (g.directed())
                for (Vertex w : g.in(u)) visit(w);
        }
        comps.emplace_back(std::move(comp));
    }
    return comps;
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
    return components_without(g, {});
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

struct SeparationParts {
    VertexSet v_xs;
    VertexSet v_sy;
    VertexSet v_z;
};

inline VertexSet left_part(const Graph& g, const VertexSet& x, const VertexSet& s) {
    return VertexSet::from_mask(reach(g, set_difference(x, s), s.mask(g.n())));
}

inline VertexSet right_part(const Graph& g, const VertexSet& y, const VertexSet& s) {
    return VertexSet::from_mask(reach(g, set_difference(y, s), s.mask(g.n()), true));
}

inline SeparationParts separation_parts(const Graph& g, const VertexSet& x, const VertexSet& y,
                                        const VertexSet& s) {
    for (Vertex v : s)
        if (!g.valid(v)) throw PreconditionViolated("separator vertex out of range");
    SeparationParts p{left_part(g, x, s), right_part(g, y, s), {}};
    VertexSet both = set_intersection(p.v_xs, p.v_sy);
    if (!both.empty())
        throw NotASeparator(s.str() + " leaves vertex " + std::to_string(both[0]) +
                            " reachable from both sides");
    p.v_z = set_difference(set_difference(set_difference(g.vertices(), s), p.v_xs), p.v_sy);
    return p;
}

inline bool is_separator(const Graph& g, const VertexSet& x, const VertexSet& y,
                         const VertexSet& s) {
    std::vector<char> r = reach(g, set_difference(x, s), s.mask(g.n()));
    for (Vertex v : y)
        if (r[v]) return false;
    return true;
}

inline bool is_minimal_separator(const Graph& g, const VertexSet& x, const VertexSet& y,
                                 const VertexSet& s) {
    if (!is_separator(g, x, y, s)) throw PreconditionViolated(s.str() + " is not a separator");
    for (Vertex v : s) {
        VertexSet t = s;
        t.erase(v);
        if (is_separator(g, x, y, t)) return false;
    }
    return true;
}

enum class Leftness { LeftOf, RightOf, Equal, Incomparable };

inline const char* to_string(Leftness l) {
    switch (l) {
        case Leftness::LeftOf: return "LeftOf";
        case Leftness::RightOf: return "RightOf";
        case Leftness::Equal: return "Equal";
        default: return "Incomparable";
    }
}

inline Leftness compare_left_parts(const VertexSet& a, const VertexSet& b) {
    if (a == b) return Leftness::Equal;
    if (is_subset(a, b)) return Leftness::LeftOf;
    if (is_subset(b, a)) return Leftness::RightOf;
    return Leftness::Incomparable;
}

inline Leftness compare_leftness(const Graph& g, const VertexSet& x, const VertexSet& s1,
                                 const VertexSet& s2) {
    return compare_left_parts(left_part(g, x, s1), left_part(g, x, s2));
}

// Checked form: both sets must separate x from y.
inline Leftness compare_leftness(const Graph& g, const VertexSet& x, const VertexSet& y,
                                 const VertexSet& s1, const VertexSet& s2) {
    if (!is_separator(g, x, y, s1) || !is_separator(g, x, y, s2))
        throw PreconditionViolated("compare_leftness needs two separators");
    return compare_leftness(g, x, s1, s2);
}

}  // namespace sepkit

#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flow.hpp"
#include "graph.hpp"

namespace sepkit {

using BigInt = boost::multiprecision::cpp_int;

enum class Provenance { FlowCut, Enumerated, Oracle };

struct Separator {
    VertexSet members;
    Provenance provenance = Provenance::Enumerated;

    std::size_t size() const { return members.size(); }
    friend bool operator==(const Separator& a, const Separator& b) { return a.members == b.members; }
    friend auto operator<=>(const Separator& a, const Separator& b) { return a.members <=> b.members; }
};

struct EnumStats {
    long long nodes = 0;   // raw calls of the branching procedure
    long long leaves = 0;  // calls with no child
    long long flow_calls = 0;

    // Size of the branch tree once unary chains are contracted.
    long long compact_nodes() const { return nodes ? 2 * leaves - 1 : 0; }
};

struct Enumeration {
    std::vector<Separator> separators;
    bool too_large = false;
    EnumStats stats;

    std::size_t count() const { return separators.size(); }
    std::vector<VertexSet> sets() const {
        std::vector<VertexSet> r;
        for (const auto& s : separators) r.push_back(s.members);
        return r;
    }
};

inline BigInt catalan(unsigned n) {
    BigInt c = 1;
    for (unsigned i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

// (C_{k-1}, sum_{i<k} C_i)
inline std::pair<BigInt, BigInt> count_bounds(int k) {
    if (k < 1) throw PreconditionViolated("count_bounds needs k >= 1");
    BigInt sum = 0;
    for (int i = 0; i < k; ++i) sum += catalan(static_cast<unsigned>(i));
    return {catalan(static_cast<unsigned>(k - 1)), sum};
}

// 2 * sum_{i=1}^{k-1} C_i - 1; negative for k = 1.
inline BigInt node_bound(int k) {
    BigInt sum = 0;
    for (int i = 1; i < k; ++i) sum += catalan(static_cast<unsigned>(i));
    return 2 * sum - 1;
}

// True iff s is a minimal (x,y)-separator of size <= k with no other minimal
// <= k separator strictly to its left. Such a competitor exists iff, for some
// v in s, x can be cut from s inside G[V_{x,s} + s] by <= k vertices avoiding v.
inline bool is_leftmost_separator(const Graph& g, const VertexSet& x, const VertexSet& y,
                                  const VertexSet& s, int k) {
    if (static_cast<int>(s.size()) > k || !is_separator(g, x, y, s) ||
        !is_minimal_separator(g, x, y, s))
        return false;
    VertexSet h = set_union(left_part(g, x, s), s);
    for (Vertex v : s) {
        if (x.contains(v)) continue;
        CutConstraints c{{v}, h};
        if (std::holds_alternative<FlowCut>(leftmost_min_separator(g, x, s, k, c))) return false;
    }
    return true;
}

namespace detail {

// Truncates each path at its first target and drops paths that leave `active`
// or collide on a non-forced vertex.
inline DisjointPathSet restrict_paths(const DisjointPathSet& p, const VertexSet& sources,
                                      const VertexSet& targets, const std::vector<char>& active,
                                      const std::vector<char>& forced) {
    DisjointPathSet r;
    std::vector<char> used(active.size(), 0);
    for (const auto& path : p.paths) {
        if (path.empty() || !sources.contains(path.front())) continue;
        std::vector<Vertex> cut;
        bool ok = false;
        for (Vertex v : path) {
            if (!active[v]) break;
            cut.push_back(v);
            if (targets.contains(v)) {
                ok = true;
                break;
            }
        }
        if (!ok) continue;
        bool clash = false;
        for (Vertex v : cut) clash = clash || (used[v] && !forced[v]);
        if (clash) continue;
        for (Vertex v : cut) used[v] = 1;
        r.paths.push_back(std::move(cut));
    }
    return r;
}

class LeftmostEnumerator {
public:
    LeftmostEnumerator(const Graph& g, const VertexSet& x, const VertexSet& y, int k)
        : g_(g), x_(x), y_(y), k_(k) {}

    Enumeration run() {
        Enumeration e;
        CutResult r0 = leftmost_min_separator(g_, x_, y_, k_);
        ++stats_.flow_calls;
        if (!std::holds_alternative<FlowCut>(r0)) {
            e.too_large = true;
            e.stats = stats_;
            return e;
        }
        FlowCut& c0 = std::get<FlowCut>(r0);
        std::vector<Vertex> pending(c0.separator.begin(), c0.separator.end());
        std::reverse(pending.begin(), pending.end());
        branch({}, {}, c0.separator, std::move(pending), true, c0.paths);
        for (const auto& s : found_) e.separators.push_back({s, Provenance::Enumerated});
        e.stats = stats_;
        return e;
    }

private:
    // included: chosen members, deleted from the graph; excluded: pivots forced
    // out; pending: stack R (back is the next pivot).
    void branch(const VertexSet& included, const VertexSet& excluded, const VertexSet& s,
                std::vector<Vertex> pending, bool leftmost, const DisjointPathSet& paths) {
        ++stats_.nodes;
        if (pending.empty()) {
            ++stats_.leaves;
            if (leftmost && is_leftmost_separator(g_, x_, y_, s, k_)) found_.insert(s);
            return;
        }
        Vertex v = pending.back();
        pending.pop_back();

        VertexSet h = set_union(left_part(g_, x_, s), s);
        VertexSet sources = set_difference(x_, included);
        VertexSet targets = set_difference(s, included);
        VertexSet forced = excluded;
        forced.insert(v);

        int children = 0;
        std::optional<FlowCut> moved;
        if (!sources.contains(v)) {
            CutConstraints c{forced, set_difference(h, included)};
            std::vector<char> active = c.within->mask(g_.n());
            DisjointPathSet warm =
                restrict_paths(paths, sources, targets, active, forced.mask(g_.n()));
            CutResult r = leftmost_min_separator(g_, sources, targets,
                                                 k_ - static_cast<int>(included.size()), c, warm);
            ++stats_.flow_calls;
            if (auto* fc = std::get_if<FlowCut>(&r)) moved = std::move(*fc);
        }
        if (moved) {
            leftmost = false;
            VertexSet s2 = set_union(moved->separator, included);
            std::vector<Vertex> next;
            for (Vertex u : pending)
                if (s2.contains(u)) next.push_back(u);
            std::vector<Vertex> fresh;
            for (Vertex u : set_difference(s2, included))
                if (std::find(next.begin(), next.end(), u) == next.end()) fresh.push_back(u);
            next.insert(next.end(), fresh.rbegin(), fresh.rend());
            ++children;
            branch(included, forced, s2, std::move(next), true, moved->paths);
        }
        if (targets.size() >= 2 || leftmost) {
            ++children;
            VertexSet inc = included;
            inc.insert(v);
            std::vector<char> active = set_difference(h, inc).mask(g_.n());
            DisjointPathSet warm = restrict_paths(paths, set_difference(x_, inc),
                                                  set_difference(s, inc), active,
                                                  excluded.mask(g_.n()));
            branch(inc, excluded, s, std::move(pending), leftmost, warm);
        }
        if (children == 0) ++stats_.leaves;
    }

    const Graph& g_;
    VertexSet x_, y_;
    int k_;
    EnumStats stats_;
    std::set<VertexSet> found_;
};

}  // namespace detail

// All minimal leftmost (x, y, <= k)-separators in lexicographic order.
inline Enumeration enumerate_leftmost(const Graph& g, const VertexSet& x, const VertexSet& y,
                                      int k) {
    if (k < 1) {
        Enumeration e;
        e.too_large = true;
        return e;
    }
    return detail::LeftmostEnumerator(g, x, y, k).run();
}

// Same, restricted to separators containing forced_in: enumerates in
// G - forced_in with budget k - |forced_in| and adds forced_in back.
inline Enumeration enumerate_leftmost(const Graph& g, const VertexSet& x, const VertexSet& y,
                                      int k, const VertexSet& forced_in) {
    if (forced_in.empty()) return enumerate_leftmost(g, x, y, k);
    int budget = k - static_cast<int>(forced_in.size());
    Enumeration e;
    if (budget < 0) {
        e.too_large = true;
        return e;
    }
    Subgraph sub = induced_subgraph(g, set_difference(g.vertices(), forced_in));
    std::vector<Vertex> local(static_cast<std::size_t>(g.n()) + 1, 0);
    for (std::size_t i = 1; i < sub.to_parent.size(); ++i)
        local[sub.to_parent[i]] = static_cast<Vertex>(i);
    auto to_local = [&](const VertexSet& s) {
        std::vector<Vertex> r;
        for (Vertex v : s)
            if (local[v]) r.push_back(local[v]);
        return VertexSet(std::move(r));
    };
    Enumeration inner = detail::LeftmostEnumerator(sub.graph, to_local(x), to_local(y), budget).run();
    e.too_large = inner.too_large;
    e.stats = inner.stats;
    std::set<VertexSet> out;
    for (const auto& s : inner.separators) {
        std::vector<Vertex> m(forced_in.begin(), forced_in.end());
        for (Vertex v : s.members) m.push_back(sub.to_parent[v]);
        out.insert(VertexSet(std::move(m)));
    }
    for (const auto& s : out) e.separators.push_back({s, Provenance::Enumerated});
    return e;
}

// Union of the leftmost sets for budgets 1..k.
inline Enumeration enumerate_important(const Graph& g, const VertexSet& x, const VertexSet& y,
                                       int k) {
    Enumeration e;
    e.too_large = true;
    std::set<VertexSet> out;
    for (int i = 1; i <= k; ++i) {
        Enumeration r = enumerate_leftmost(g, x, y, i);
        e.stats.nodes += r.stats.nodes;
        e.stats.leaves += r.stats.leaves;
        e.stats.flow_calls += r.stats.flow_calls;
        if (r.too_large) continue;
        e.too_large = false;
        for (const auto& s : r.separators) out.insert(s.members);
    }
    for (const auto& s : out) e.separators.push_back({s, Provenance::Enumerated});
    return e;
}

}  // namespace sepkit

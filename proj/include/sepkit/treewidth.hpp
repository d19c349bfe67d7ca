#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "flow.hpp"
#include "graph.hpp"
#include "leftmost.hpp"
#include "parallel.hpp"

namespace sepkit {

// Nodes are 0-based indices into bags; edges join node indices.
struct TreeDecomposition {
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;
    std::optional<int> root;

    std::size_t size() const { return bags.size(); }
};

enum class ViolationKind { BadVertex, NotATree, VertexUncovered, EdgeUncovered, Disconnected };

struct Violation {
    ViolationKind kind;
    std::string detail;
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::BadVertex: return "bad_vertex";
        case ViolationKind::NotATree: return "not_a_tree";
        case ViolationKind::VertexUncovered: return "vertex_uncovered";
        case ViolationKind::EdgeUncovered: return "edge_uncovered";
        default: return "disconnected_occurrences";
    }
}

namespace detail {

inline bool tree_shape(std::size_t nodes, const std::vector<std::pair<int, int>>& edges,
                       std::string* why = nullptr) {
    auto fail = [&](std::string m) {
        if (why) *why = std::move(m);
        return false;
    };
    if (nodes == 0) return edges.empty() ? true : fail("edges without nodes");
    if (edges.size() != nodes - 1)
        return fail(std::to_string(edges.size()) + " edges for " + std::to_string(nodes) + " nodes");
    std::vector<int> parent(nodes);
    for (std::size_t i = 0; i < nodes; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= static_cast<int>(nodes) || b >= static_cast<int>(nodes))
            return fail("edge endpoint out of range");
        int ra = find(a), rb = find(b);
        if (ra == rb) return fail("cycle through nodes " + std::to_string(a + 1) + ", " + std::to_string(b + 1));
        parent[ra] = rb;
    }
    return true;
}

inline std::vector<std::vector<int>> tree_adjacency(const TreeDecomposition& td) {
    std::vector<std::vector<int>> adj(td.size());
    for (auto [a, b] : td.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

}  // namespace detail

inline std::vector<Violation> validate_td(const Graph& g, const TreeDecomposition& td) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < td.size(); ++i)
        for (Vertex v : td.bags[i])
            if (!g.valid(v))
                out.push_back({ViolationKind::BadVertex,
                               "bag " + std::to_string(i + 1) + " has vertex " + std::to_string(v)});
    std::string why;
    bool tree = detail::tree_shape(td.size(), td.edges, &why);
    if (!tree) out.push_back({ViolationKind::NotATree, why});
    if (!out.empty() && !tree) return out;

    std::vector<std::vector<int>> occ(static_cast<std::size_t>(g.n()) + 1);
    for (std::size_t i = 0; i < td.size(); ++i)
        for (Vertex v : td.bags[i])
            if (g.valid(v)) occ[v].push_back(static_cast<int>(i));
    for (Vertex v = 1; v <= g.n(); ++v)
        if (occ[v].empty())
            out.push_back({ViolationKind::VertexUncovered, "vertex " + std::to_string(v)});
    for (auto [u, v] : g.underlying().edges()) {
        bool covered = false;
        for (int i : occ[u])
            if (td.bags[i].contains(v)) {
                covered = true;
                break;
            }
        if (!covered)
            out.push_back({ViolationKind::EdgeUncovered,
                           "edge {" + std::to_string(u) + "," + std::to_string(v) + "}"});
    }
    auto adj = detail::tree_adjacency(td);
    std::vector<char> seen(td.size(), 0);
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (occ[v].size() < 2) continue;
        std::vector<int> stack{occ[v][0]};
        std::size_t reached = 1;
        seen[occ[v][0]] = 1;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b : adj[a])
                if (!seen[b] && td.bags[b].contains(v)) {
                    seen[b] = 1;
                    ++reached;
                    stack.push_back(b);
                }
        }
        for (int i : occ[v]) seen[i] = 0;
        if (reached != occ[v].size())
            out.push_back({ViolationKind::Disconnected,
                           "bags holding vertex " + std::to_string(v) + " are not connected"});
    }
    return out;
}

inline int td_width(const TreeDecomposition& td) {
    if (td.bags.empty()) throw EmptyDecomposition("decomposition has no nodes");
    std::size_t w = 0;
    for (const auto& b : td.bags) w = std::max(w, b.size());
    return static_cast<int>(w);
}

inline int count_in(const VertexSet& comp, const VertexSet& w) {
    return static_cast<int>(set_intersection(comp, w).size());
}

inline bool is_balanced_w_separator(const Graph& g, const VertexSet& w, const VertexSet& s) {
    for (const auto& c : components_without(g, s))
        if (2 * count_in(c, w) > static_cast<int>(w.size())) return false;
    return true;
}

inline bool is_strong_centroid(const Graph& g, const TreeDecomposition& td, const VertexSet& w,
                               int node) {
    const VertexSet& b = td.bags.at(static_cast<std::size_t>(node));
    int rest = static_cast<int>(set_difference(w, b).size());
    for (const auto& c : components_without(g, b))
        if (2 * count_in(c, w) > rest) return false;
    return true;
}

struct RepSet {
    std::vector<std::pair<Vertex, int>> reps;  // (vertex, weight)
    int threshold = 1;

    VertexSet vertices() const {
        std::vector<Vertex> v;
        for (auto [r, w] : reps) v.push_back(r);
        return VertexSet(std::move(v));
    }
};

// DFS from vertex 1, children in id order. A vertex whose unpruned subtree
// reaches t becomes a representative and is cut off; the root comes last.
inline RepSet compute_representatives(const Graph& g, int t) {
    if (t < 1) throw PreconditionViolated("threshold must be positive");
    if (g.n() == 0 || !is_connected(g)) throw PreconditionViolated("graph must be connected");
    RepSet r;
    r.threshold = t;
    std::vector<char> seen(static_cast<std::size_t>(g.n()) + 1, 0);
    std::vector<int> size(static_cast<std::size_t>(g.n()) + 1, 1);
    std::vector<std::pair<Vertex, std::size_t>> stack{{1, 0}};
    seen[1] = 1;
    while (!stack.empty()) {
        auto [v, i] = stack.back();
        const auto& nb = g.out(v);
        if (i < nb.size()) {
            stack.back().second = i + 1;
            Vertex w = nb[i];
            if (!seen[w]) {
                seen[w] = 1;
                stack.emplace_back(w, 0);
            }
            continue;
        }
        stack.pop_back();
        if (stack.empty() || size[v] >= t) {
            r.reps.emplace_back(v, size[v]);
        } else {
            size[stack.back().first] += size[v];
        }
    }
    return r;
}

// (X, S, Y) with X, Y inside W.
struct WeakSeparation {
    VertexSet x, s, y;
};

inline bool is_weakly_balanced_separation(const Graph& g, const VertexSet& w,
                                          const WeakSeparation& sep) {
    const auto& [x, s, y] = sep;
    if (!is_subset(x, w) || !is_subset(y, w)) return false;
    if (!set_intersection(x, s).empty() || !set_intersection(y, s).empty() ||
        !set_intersection(x, y).empty())
        return false;
    if (set_union(set_union(x, y), set_intersection(s, w)) != w) return false;
    int wn = static_cast<int>(w.size());
    if (x.empty() || y.empty() || 3 * static_cast<int>(x.size()) > 2 * wn ||
        3 * static_cast<int>(y.size()) > 2 * wn)
        return false;
    return is_separator(g, x, y, s);
}

struct WbsOptions {
    // Vertices that will share the bag; S is rejected if |interface + S| > bag_cap.
    VertexSet interface;
    int bag_cap = INT_MAX;
};

namespace detail {

// Calls fn(subset) for each size-r subset of items in lexicographic order; stops on true.
template <class Fn>
bool for_each_subset(const std::vector<Vertex>& items, int r, Fn&& fn) {
    int n = static_cast<int>(items.size());
    if (r > n) return false;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        std::vector<Vertex> pick;
        for (int i : idx) pick.push_back(items[i]);
        if (fn(VertexSet(std::move(pick)))) return true;
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline bool touches(const Graph& g, const VertexSet& a, const VertexSet& b) {
    for (Vertex u : a)
        for (Vertex v : g.out(u))
            if (b.contains(v)) return true;
    return false;
}

}  // namespace detail

// First weakly balanced separation of w with |S| <= k: separator parts of W by
// size then lexicographically, two-colourings of the rest in Gray-code order.
inline std::optional<WeakSeparation> weakly_balanced_separation(const Graph& g,
                                                                const VertexSet& w, int k,
                                                                const WbsOptions& opt = {}) {
    if (w.size() < 2) throw PreconditionViolated("W needs at least two vertices");
    const int wn = static_cast<int>(w.size());
    std::optional<WeakSeparation> found;
    for (int r = 0; r <= std::min(k, wn - 2) && !found; ++r) {
        detail::for_each_subset(w.vec(), r, [&](const VertexSet& sw) {
            int base = static_cast<int>(set_union(opt.interface, sw).size());
            int budget = std::min(k - r, opt.bag_cap == INT_MAX ? INT_MAX : opt.bag_cap - base);
            if (budget < 0) return false;
            std::vector<Vertex> rest = set_difference(w, sw).vec();
            const int m = static_cast<int>(rest.size());
            VertexSet within = set_difference(g.vertices(), sw);
            for (unsigned long long i = 0; i < (1ULL << (m - 1)); ++i) {
                unsigned long long code = i ^ (i >> 1);
                std::vector<Vertex> xs{rest[0]}, ys;
                for (int j = 1; j < m; ++j) ((code >> (j - 1)) & 1 ? xs : ys).push_back(rest[j]);
                if (ys.empty() || 3 * static_cast<int>(xs.size()) > 2 * wn ||
                    3 * static_cast<int>(ys.size()) > 2 * wn)
                    continue;
                VertexSet x(std::move(xs)), y(std::move(ys));
                if (detail::touches(g, x, y)) continue;
                CutConstraints c{set_union(x, y), within};
                CutResult res = leftmost_min_separator(g, x, y, budget, c);
                if (auto* fc = std::get_if<FlowCut>(&res)) {
                    found = WeakSeparation{x, set_union(sw, fc->separator), y};
                    return true;
                }
            }
            return false;
        });
    }
    return found;
}

struct VolumeSplit {
    VertexSet s;
    std::vector<VertexSet> components;
    // Generating assignment of representatives.
    VertexSet left, right, sep_reps;
};

inline bool volume_bounds_hold(const Graph& g, const VertexSet& left, const VertexSet& s,
                               double eps) {
    double n = g.n();
    double l = static_cast<double>(left_part(g, left, s).size());
    double r = n - static_cast<double>(s.size()) - l;
    return std::min(l, r) >= eps * n / 2 && std::max(l, r) <= (1 - eps / 2) * n;
}

inline std::optional<VolumeSplit> split_by_volume(const Graph& g, int k, double eps) {
    if (!(eps > 0 && eps <= 0.25)) throw PreconditionViolated("epsilon must be in (0, 1/4]");
    if (g.n() <= 4 * k) throw PreconditionViolated("split_by_volume needs n > 4k");
    int t = static_cast<int>(std::ceil((0.5 - eps) * g.n() / k));
    RepSet reps = compute_representatives(g, std::max(1, t));
    std::vector<Vertex> rv = reps.vertices().vec();
    const int rn = static_cast<int>(rv.size());
    std::optional<VolumeSplit> found;
    for (int r = 0; r <= std::min(k, rn - 2) && !found; ++r) {
        detail::for_each_subset(rv, r, [&](const VertexSet& sep) {
            std::vector<Vertex> rest = set_difference(VertexSet(rv), sep).vec();
            const int m = static_cast<int>(rest.size());
            for (unsigned long long i = 1; i < (1ULL << m); ++i) {
                unsigned long long code = i ^ (i >> 1);
                std::vector<Vertex> ls, rs;
                for (int j = 0; j < m; ++j) ((code >> j) & 1 ? ls : rs).push_back(rest[j]);
                if (rs.empty()) continue;
                VertexSet left(std::move(ls)), right(std::move(rs));
                Enumeration e = enumerate_leftmost(g, left, right, k, sep);
                for (const auto& cand : e.separators)
                    if (volume_bounds_hold(g, left, cand.members, eps)) {
                        found = VolumeSplit{cand.members, components_without(g, cand.members),
                                            left, right, sep};
                        return true;
                    }
            }
            return false;
        });
    }
    return found;
}

struct Rejection {
    VertexSet witness_w;
    int k = 0;
};

struct DecomposeOptions {
    bool volume_splits = true;
    std::optional<double> epsilon;  // default min(1/6, 1/k)
    int threads = 1;                // workers for the top-level split
};

struct DecomposeStats {
    int leaves = 0;
    int w_splits = 0;
    int volume_splits = 0;
};

using DecomposeResult = std::variant<TreeDecomposition, Rejection>;

namespace detail {

inline int ceil_log2(int k) {
    int r = 0;
    while ((1 << r) < k) ++r;
    return r;
}

class Decomposer {
public:
    Decomposer(int k, const DecomposeOptions& opt)
        : k_(k), opt_(opt),
          eps_(opt.epsilon ? *opt.epsilon : std::min(1.0 / 6.0, 1.0 / k)),
          bag_cap_(5 * (k - 1)), leaf_cap_(std::min(4 * k - 2, 5 * (k - 1))) {}

    struct Piece {
        std::vector<VertexSet> bags;  // bag 0 is the root
        std::vector<std::pair<int, int>> edges;
        std::optional<Rejection> reject;
        DecomposeStats stats;
    };

    // h uses local ids; to_orig maps them back. iface: vertices shared with the parent.
    Piece solve(const Graph& h, const std::vector<Vertex>& to_orig, const VertexSet& iface,
                int depth) const {
        Piece p;
        auto orig = [&](const VertexSet& s) {
            std::vector<Vertex> v;
            for (Vertex u : s) v.push_back(to_orig[u]);
            return VertexSet(std::move(v));
        };
        if (h.n() <= leaf_cap_) {
            p.bags.push_back(orig(h.vertices()));
            p.stats.leaves = 1;
            return p;
        }

        std::optional<VertexSet> sep;
        const int ni = static_cast<int>(iface.size());
        if (opt_.volume_splits && depth % (ceil_log2(k_) + 1) == 0 && h.n() > 8 * k_ &&
            ni <= 3 * k_ - 5 && is_connected(h)) {
            if (auto vs = split_by_volume(h, k_, eps_)) {
                sep = vs->s;
                p.stats.volume_splits = 1;
            }
        }
        if (!sep) {
            VertexSet w = iface;
            int target = std::max(ni, std::min(h.n(), 3 * k_ - 2));
            for (Vertex v = 1; v <= h.n() && static_cast<int>(w.size()) < target; ++v) w.insert(v);
            auto r = weakly_balanced_separation(h, w, k_, {iface, bag_cap_});
            if (!r) {
                p.reject = Rejection{orig(w), k_};
                return p;
            }
            sep = r->s;
            p.stats.w_splits = 1;
        }

        p.bags.push_back(orig(set_union(iface, *sep)));
        std::vector<VertexSet> comps = components_without(h, *sep);
        std::vector<Piece> kids(comps.size());
        auto run = [&](std::size_t i) {
            VertexSet part = set_union(comps[i], *sep);
            Subgraph sub = induced_subgraph(h, part);
            std::vector<Vertex> local(static_cast<std::size_t>(h.n()) + 1, 0);
            std::vector<Vertex> up(sub.to_parent.size());
            for (std::size_t j = 1; j < sub.to_parent.size(); ++j) {
                local[sub.to_parent[j]] = static_cast<Vertex>(j);
                up[j] = to_orig[sub.to_parent[j]];
            }
            std::vector<Vertex> ci;
            for (Vertex v : set_union(set_intersection(iface, comps[i]), *sep)) ci.push_back(local[v]);
            kids[i] = solve(sub.graph, up, VertexSet(std::move(ci)), depth + 1);
        };
        parallel_for(comps.size(), depth == 0 ? opt_.threads : 1, run);

        for (auto& kid : kids) {
            p.stats.leaves += kid.stats.leaves;
            p.stats.w_splits += kid.stats.w_splits;
            p.stats.volume_splits += kid.stats.volume_splits;
            if (kid.reject) {
                p.reject = std::move(kid.reject);
                return p;
            }
            int offset = static_cast<int>(p.bags.size());
            p.edges.emplace_back(0, offset);
            for (auto& b : kid.bags) p.bags.push_back(std::move(b));
            for (auto [a, b] : kid.edges) p.edges.emplace_back(a + offset, b + offset);
        }
        return p;
    }

private:
    int k_;
    DecomposeOptions opt_;
    double eps_;
    int bag_cap_;
    int leaf_cap_;
};

}  // namespace detail

// Tree decomposition with bags of size <= 5(k-1), or a Rejection proving tw > k-1.
inline DecomposeResult decompose(const Graph& g0, int k, const DecomposeOptions& opt = {},
                                 DecomposeStats* stats = nullptr) {
    if (k < 2) throw InvalidBudget("decompose needs k >= 2");
    Graph g = g0.underlying();
    std::vector<Vertex> ids(static_cast<std::size_t>(g.n()) + 1);
    for (int i = 0; i <= g.n(); ++i) ids[static_cast<std::size_t>(i)] = i;
    if (g.n() == 0) return TreeDecomposition{{VertexSet{}}, {}, 0};
    auto piece = detail::Decomposer(k, opt).solve(g, ids, {}, 0);
    if (stats) *stats = piece.stats;
    if (piece.reject) return *piece.reject;
    return TreeDecomposition{std::move(piece.bags), std::move(piece.edges), 0};
}

enum class NiceKind { Leaf, Introduce, Forget, Join };

// Node kinds of a rooted nice decomposition, or nullopt if some node fits none.
inline std::optional<std::vector<NiceKind>> classify_nice(const TreeDecomposition& td) {
    if (!td.root || !detail::tree_shape(td.size(), td.edges) || td.size() == 0) return std::nullopt;
    auto adj = detail::tree_adjacency(td);
    std::vector<int> parent(td.size(), -2);
    std::vector<int> order{*td.root};
    parent[*td.root] = -1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int b : adj[order[i]])
            if (parent[b] == -2) {
                parent[b] = order[i];
                order.push_back(b);
            }
    std::vector<NiceKind> kinds(td.size());
    for (std::size_t x = 0; x < td.size(); ++x) {
        std::vector<int> kids;
        for (int b : adj[x])
            if (parent[b] == static_cast<int>(x)) kids.push_back(b);
        const VertexSet& bx = td.bags[x];
        if (kids.empty()) {
            kinds[x] = NiceKind::Leaf;
        } else if (kids.size() == 2) {
            if (td.bags[kids[0]] != bx || td.bags[kids[1]] != bx) return std::nullopt;
            kinds[x] = NiceKind::Join;
        } else if (kids.size() == 1) {
            const VertexSet& bc = td.bags[kids[0]];
            if (bx.size() == bc.size() + 1 && is_subset(bc, bx))
                kinds[x] = NiceKind::Introduce;
            else if (bc.size() == bx.size() + 1 && is_subset(bx, bc))
                kinds[x] = NiceKind::Forget;
            else
                return std::nullopt;
        } else {
            return std::nullopt;
        }
    }
    return kinds;
}

inline TreeDecomposition to_nice(const TreeDecomposition& td, int root) {
    if (td.size() == 0 || root < 0 || root >= static_cast<int>(td.size()))
        throw InvalidInput("to_nice needs a nonempty decomposition and a valid root");
    std::string why;
    if (!detail::tree_shape(td.size(), td.edges, &why)) throw InvalidInput("not a tree: " + why);
    auto adj = detail::tree_adjacency(td);

    TreeDecomposition out;
    auto add = [&](VertexSet bag, std::vector<int> kids) {
        int id = static_cast<int>(out.bags.size());
        out.bags.push_back(std::move(bag));
        for (int c : kids) out.edges.emplace_back(id, c);
        return id;
    };
    // Walk from (top, bag `from`) to bag `to`: forget, then introduce.
    auto chain = [&](int top, VertexSet from, const VertexSet& to) {
        for (Vertex v : set_difference(from, to)) {
            from.erase(v);
            top = add(from, {top});
        }
        for (Vertex v : set_difference(to, from)) {
            from.insert(v);
            top = add(from, {top});
        }
        return top;
    };

    // Iterative post-order over the original tree.
    std::vector<int> parent(td.size(), -2), order{root};
    parent[root] = -1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int b : adj[order[i]])
            if (parent[b] == -2) {
                parent[b] = order[i];
                order.push_back(b);
            }
    std::vector<int> top(td.size(), -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int x = *it;
        const VertexSet& bx = td.bags[x];
        std::vector<int> tops;
        for (int c : adj[x])
            if (parent[c] == x) tops.push_back(chain(top[c], td.bags[c], bx));
        if (tops.empty()) {
            top[x] = chain(add({}, {}), {}, bx);
        } else {
            int cur = tops[0];
            for (std::size_t i = 1; i < tops.size(); ++i) cur = add(bx, {cur, tops[i]});
            top[x] = cur;
        }
    }
    out.root = top[root];
    return out;
}

}  // namespace sepkit

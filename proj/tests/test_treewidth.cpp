#include <gtest/gtest.h>

#include <sepkit/oracle.hpp>
#include <sepkit/treewidth.hpp>

using namespace sepkit;

namespace {

TreeDecomposition p3_td() { return {{VertexSet({1, 2}), VertexSet({2, 3})}, {{0, 1}}, 0}; }

TreeDecomposition accepted(const DecomposeResult& r) {
    EXPECT_TRUE(std::holds_alternative<TreeDecomposition>(r));
    return std::get<TreeDecomposition>(r);
}

bool has_kind(const std::vector<Violation>& v, ViolationKind k) {
    for (const auto& x : v)
        if (x.kind == k) return true;
    return false;
}

}  // namespace

TEST(ValidateTd, Examples) {
    Graph p3 = fixtures::path(3);
    EXPECT_TRUE(validate_td(p3, {{p3.vertices()}, {}, 0}).empty());
    EXPECT_TRUE(validate_td(p3, p3_td()).empty());
    auto v = validate_td(p3, {{VertexSet({1, 2}), VertexSet{3}}, {{0, 1}}, 0});
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, ViolationKind::EdgeUncovered);
    EXPECT_EQ(v[0].detail, "edge {2,3}");
}

TEST(ValidateTd, EachConditionSeparately) {
    Graph p3 = fixtures::path(3);
    EXPECT_TRUE(has_kind(validate_td(p3, {{VertexSet({1, 2})}, {}, 0}), ViolationKind::VertexUncovered));
    auto broken = validate_td(p3, {{VertexSet({1, 2}), VertexSet({3}), VertexSet({1, 2, 3})},
                                   {{0, 1}, {1, 2}}, 0});
    EXPECT_TRUE(has_kind(broken, ViolationKind::Disconnected));
    EXPECT_TRUE(has_kind(validate_td(p3, {{VertexSet({1, 2}), VertexSet({2, 3})}, {}, 0}),
                         ViolationKind::NotATree));
    EXPECT_TRUE(has_kind(validate_td(p3, {{VertexSet({1, 2, 3, 9})}, {}, 0}), ViolationKind::BadVertex));
}

TEST(TdWidth, Examples) {
    EXPECT_EQ(td_width(p3_td()), 2);
    EXPECT_EQ(td_width({{fixtures::clique(5).vertices()}, {}, 0}), 5);
    EXPECT_EQ(td_width({{VertexSet{1}, VertexSet{2}, VertexSet{3}}, {{0, 1}, {1, 2}}, 0}), 1);
    EXPECT_THROW(td_width({}), EmptyDecomposition);
}

TEST(BalancedSeparator, Examples) {
    EXPECT_TRUE(is_balanced_w_separator(fixtures::binary_tree(3), fixtures::binary_tree_leaves(3), {1}));
    EXPECT_FALSE(is_balanced_w_separator(fixtures::path(3), {1, 3}, {}));
    EXPECT_TRUE(is_balanced_w_separator(fixtures::grid(3, 3), {}, {5}));
}

TEST(StrongCentroid, Examples) {
    EXPECT_FALSE(is_strong_centroid(fixtures::path(3), p3_td(), {1, 3}, 0));
    Graph k4 = fixtures::clique(4);
    EXPECT_TRUE(is_strong_centroid(k4, {{k4.vertices()}, {}, 0}, {1, 2}, 0));
}

TEST(StrongCentroid, ExistsInNiceDecompositions) {
    Lcg64 rng(4);
    for (int it = 0; it < 40; ++it) {
        int n = 4 + static_cast<int>(rng.below(11));
        Graph g = fixtures::gnm(n, std::min(n * (n - 1) / 2, static_cast<int>(n + rng.below(n))), rng.next());
        auto r = decompose(g, 4);
        if (!std::holds_alternative<TreeDecomposition>(r)) continue;
        TreeDecomposition nice = to_nice(std::get<TreeDecomposition>(r), 0);
        std::vector<Vertex> w;
        for (Vertex v = 1; v <= n; ++v)
            if (rng.below(2)) w.push_back(v);
        bool any = false;
        for (int x = 0; x < static_cast<int>(nice.size()) && !any; ++x)
            any = is_strong_centroid(g, nice, VertexSet(w), x);
        EXPECT_TRUE(any) << "iteration " << it;
    }
    Graph bt3 = fixtures::binary_tree(3);
    TreeDecomposition td{{}, {}, 0};
    for (Vertex v = 2; v <= 7; ++v) {
        td.bags.push_back(VertexSet({v / 2, v}));
        if (v > 2) td.edges.emplace_back(v / 2 == 1 ? 0 : v / 2 - 2, v - 2);
    }
    ASSERT_TRUE(validate_td(bt3, td).empty());
    bool any = false;
    for (int x = 0; x < static_cast<int>(td.size()); ++x)
        any = any || is_strong_centroid(bt3, td, fixtures::binary_tree_leaves(3), x);
    EXPECT_TRUE(any);
}

TEST(Representatives, Examples) {
    EXPECT_EQ(compute_representatives(fixtures::path(9), 3).reps,
              (std::vector<std::pair<Vertex, int>>{{7, 3}, {4, 3}, {1, 3}}));
    EXPECT_EQ(compute_representatives(fixtures::grid(2, 3), 7).reps,
              (std::vector<std::pair<Vertex, int>>{{1, 6}}));
    EXPECT_EQ(compute_representatives(fixtures::binary_tree(3), 3).reps,
              (std::vector<std::pair<Vertex, int>>{{2, 3}, {3, 3}, {1, 1}}));
    EXPECT_THROW(compute_representatives(Graph(2), 1), PreconditionViolated);
}

TEST(Representatives, Invariants) {
    Lcg64 rng(8);
    for (int it = 0; it < 100; ++it) {
        int n = 2 + static_cast<int>(rng.below(40));
        Graph g = fixtures::random_tree(n, rng.next());
        for (auto [u, v] : fixtures::gnm(n, std::min(n, n * (n - 1) / 2), rng.next()).edges()) g.add_edge(u, v);
        int t = 1 + static_cast<int>(rng.below(n));
        RepSet r = compute_representatives(g, t);
        int total = 0;
        for (std::size_t i = 0; i < r.reps.size(); ++i) {
            total += r.reps[i].second;
            if (i + 1 < r.reps.size()) {
                EXPECT_GE(r.reps[i].second, t);
            }
        }
        EXPECT_EQ(r.reps.back().first, 1);
        EXPECT_EQ(total, n);
        EXPECT_LE(static_cast<int>(r.reps.size()), n / t + 1);
    }
}

TEST(WeakSeparation, Examples) {
    Graph bt3 = fixtures::binary_tree(3);
    VertexSet leaves = fixtures::binary_tree_leaves(3);
    auto s = weakly_balanced_separation(bt3, leaves, 2);
    ASSERT_TRUE(s);
    EXPECT_TRUE(is_weakly_balanced_separation(bt3, leaves, *s));
    EXPECT_LE(s->s.size(), 2u);

    Graph k7 = fixtures::clique(7);
    EXPECT_FALSE(weakly_balanced_separation(k7, k7.vertices(), 2));

    auto p = weakly_balanced_separation(fixtures::path(3), {1, 3}, 1);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->x, VertexSet{1});
    EXPECT_EQ(p->s, VertexSet{2});
    EXPECT_EQ(p->y, VertexSet{3});
    EXPECT_THROW(weakly_balanced_separation(fixtures::path(3), {1}, 1), PreconditionViolated);
}

TEST(WeakSeparation, OutputsPassCheckerAndMatchExhaustiveSearch) {
    Lcg64 rng(12);
    for (int it = 0; it < 150; ++it) {
        int n = 4 + static_cast<int>(rng.below(6));
        Graph g = fixtures::gnm(n, static_cast<int>(rng.below(n * (n - 1) / 2 + 1)), rng.next());
        std::vector<Vertex> wv;
        for (Vertex v = 1; v <= n; ++v)
            if (rng.below(2)) wv.push_back(v);
        if (wv.size() < 2) continue;
        VertexSet w(wv);
        int k = 1 + static_cast<int>(rng.below(3));
        auto r = weakly_balanced_separation(g, w, k);
        // exhaustive: any S of size <= k with a valid split of W \ S
        bool exists = false;
        for (oracle::Mask sm = 0; sm < (1u << n) && !exists; ++sm) {
            if (std::popcount(sm) > k) continue;
            std::vector<Vertex> sv;
            for (int i = 0; i < n; ++i)
                if (sm >> i & 1) sv.push_back(i + 1);
            VertexSet s(sv);
            auto rest = set_difference(w, s).vec();
            for (oracle::Mask c = 0; c < (1u << rest.size()) && !exists; ++c) {
                std::vector<Vertex> xs, ys;
                for (std::size_t i = 0; i < rest.size(); ++i) (c >> i & 1 ? xs : ys).push_back(rest[i]);
                exists = is_weakly_balanced_separation(g, w, {VertexSet(xs), s, VertexSet(ys)});
            }
        }
        EXPECT_EQ(r.has_value(), exists) << "iteration " << it;
        if (r) {
            EXPECT_TRUE(is_weakly_balanced_separation(g, w, *r));
            EXPECT_LE(static_cast<int>(r->s.size()), k);
        }
    }
}

TEST(VolumeSplit, Examples) {
    Graph p20 = fixtures::path(20);
    auto a = split_by_volume(p20, 2, 0.1);
    ASSERT_TRUE(a);
    EXPECT_TRUE(volume_bounds_hold(p20, a->left, a->s, 0.1));
    EXPECT_LE(a->s.size(), 2u);
    EXPECT_GE(a->components.size(), 2u);

    EXPECT_FALSE(split_by_volume(fixtures::clique(9), 2, 0.1));

    Graph bt5 = fixtures::binary_tree(5);
    auto b = split_by_volume(bt5, 3, 0.1);
    ASSERT_TRUE(b);
    for (const auto& c : b->components) EXPECT_LE(c.size(), 30u);  // ceil(0.95 * 31)
    EXPECT_THROW(split_by_volume(fixtures::path(8), 2, 0.1), PreconditionViolated);
    EXPECT_THROW(split_by_volume(p20, 2, 0.3), PreconditionViolated);
}

TEST(VolumeSplit, SeparatorIsEnumeratedForItsPair) {
    Lcg64 rng(21);
    for (int it = 0; it < 30; ++it) {
        int n = 14 + static_cast<int>(rng.below(20));
        Graph g = fixtures::random_tree(n, rng.next());
        for (int e = 0; e < 2; ++e) g.add_edge(1 + rng.below(n), 1 + rng.below(n));
        int k = 2 + static_cast<int>(rng.below(2));
        if (n <= 4 * k) continue;
        auto r = split_by_volume(g, k, 1.0 / 6);
        if (!r) continue;
        auto e = enumerate_leftmost(g, r->left, r->right, k, r->sep_reps);
        auto s = e.sets();
        EXPECT_TRUE(std::binary_search(s.begin(), s.end(), r->s));
        EXPECT_TRUE(volume_bounds_hold(g, r->left, r->s, 1.0 / 6));
        EXPECT_TRUE(is_subset(r->sep_reps, r->s));
    }
}

TEST(Decompose, Examples) {
    Graph p10 = fixtures::path(10);
    const auto& a = accepted(decompose(p10, 3));
    EXPECT_TRUE(validate_td(p10, a).empty());
    EXPECT_LE(td_width(a), 10);

    auto rej = decompose(fixtures::clique(12), 3);
    ASSERT_TRUE(std::holds_alternative<Rejection>(rej));
    EXPECT_EQ(std::get<Rejection>(rej).witness_w.size(), 7u);
    EXPECT_EQ(std::get<Rejection>(rej).k, 3);

    Graph g33 = fixtures::grid(3, 3);
    const auto& c = accepted(decompose(g33, 5));
    EXPECT_TRUE(validate_td(g33, c).empty());
    EXPECT_LE(td_width(c), 20);
    EXPECT_GE(td_width(c), 4);

    EXPECT_THROW(decompose(p10, 1), InvalidBudget);
}

TEST(Decompose, LongPathsUseVolumeSplits) {
    for (int k = 2; k <= 4; ++k) {
        Graph p = fixtures::path(120);
        DecomposeStats st;
        const auto& td = accepted(decompose(p, k, {}, &st));
        EXPECT_TRUE(validate_td(p, td).empty());
        EXPECT_LE(td_width(td), 5 * (k - 1));
        EXPECT_GT(st.volume_splits, 0) << "k=" << k;
        DecomposeStats st2;
        const auto& td2 = accepted(decompose(p, k, {false, std::nullopt, 1}, &st2));
        EXPECT_EQ(st2.volume_splits, 0);
        EXPECT_LE(td_width(td2), std::min(4 * k - 2, 5 * (k - 1)));
    }
}

TEST(Decompose, ThreadCountDoesNotChangeOutput) {
    Graph g = fixtures::grid(4, 6);
    auto a = decompose(g, 5, {true, std::nullopt, 1});
    auto b = decompose(g, 5, {true, std::nullopt, 4});
    const auto& ta = accepted(a);
    const auto& tb = accepted(b);
    EXPECT_EQ(ta.bags, tb.bags);
    EXPECT_EQ(ta.edges, tb.edges);
}

TEST(Decompose, DisconnectedAndDirectedInputs) {
    Graph g(30);
    for (int i = 1; i < 15; ++i) g.add_edge(i, i + 1);
    const auto& td = accepted(decompose(g, 2));
    EXPECT_TRUE(validate_td(g, td).empty());
    Graph d(12, true);
    for (int i = 1; i < 12; ++i) d.add_edge(i + 1, i);
    EXPECT_TRUE(validate_td(d, accepted(decompose(d, 2))).empty());
}

TEST(ToNice, Examples) {
    TreeDecomposition single{{VertexSet({1, 2})}, {}, 0};
    auto a = to_nice(single, 0);
    auto kinds = classify_nice(a);
    ASSERT_TRUE(kinds);
    EXPECT_EQ(a.size(), 3u);
    EXPECT_EQ(td_width(a), 2);
    EXPECT_EQ((*kinds)[*a.root], NiceKind::Introduce);

    Graph p3 = fixtures::path(3);
    auto b = to_nice(p3_td(), 0);
    EXPECT_TRUE(classify_nice(b));
    EXPECT_TRUE(validate_td(p3, b).empty());
    EXPECT_EQ(td_width(b), 2);

    Graph g33 = fixtures::grid(3, 3);
    const auto& td = accepted(decompose(g33, 5));
    auto c = to_nice(td, 0);
    EXPECT_TRUE(classify_nice(c));
    EXPECT_TRUE(validate_td(g33, c).empty());
    EXPECT_EQ(td_width(c), td_width(td));
    EXPECT_THROW(to_nice({}, 0), InvalidInput);
}

TEST(ToNice, RandomDecompositionsStayValid) {
    Lcg64 rng(99);
    for (int it = 0; it < 60; ++it) {
        int n = 6 + static_cast<int>(rng.below(30));
        Graph g = fixtures::random_tree(n, rng.next());
        for (int e = 0, extra = rng.below(4); e < extra; ++e) g.add_edge(1 + rng.below(n), 1 + rng.below(n));
        auto r = decompose(g, 3);
        if (!std::holds_alternative<TreeDecomposition>(r)) continue;
        const auto& td = std::get<TreeDecomposition>(r);
        int root = static_cast<int>(rng.below(static_cast<std::uint32_t>(td.size())));
        auto nice = to_nice(td, root);
        EXPECT_TRUE(classify_nice(nice));
        EXPECT_TRUE(validate_td(g, nice).empty());
        EXPECT_EQ(td_width(nice), td_width(td));
        EXPECT_LE(nice.size(), static_cast<std::size_t>(4 * td_width(td) * n + 1));
    }
}

TEST(ClassifyNice, RejectsPlainDecompositions) {
    TreeDecomposition td{{VertexSet({1, 2}), VertexSet({2, 3}), VertexSet({2, 4})}, {{0, 1}, {0, 2}}, 0};
    EXPECT_FALSE(classify_nice(td));
}

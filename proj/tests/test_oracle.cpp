#include <gtest/gtest.h>

#include <sepkit/oracle.hpp>

using namespace sepkit;
using oracle::brute_minimal_separators;
using oracle::filter_important;
using oracle::filter_leftmost;

namespace {

std::vector<VertexSet> sets(const std::vector<Separator>& s) {
    std::vector<VertexSet> r;
    for (const auto& x : s) r.push_back(x.members);
    return r;
}

}  // namespace

TEST(Brute, Examples) {
    EXPECT_EQ(sets(brute_minimal_separators(fixtures::path(3), {1}, {3}, 1)),
              (std::vector<VertexSet>{{1}, {2}, {3}}));
    EXPECT_EQ(sets(brute_minimal_separators(fixtures::diamond(), {1}, {4}, 2)),
              (std::vector<VertexSet>{{1}, VertexSet({2, 3}), {4}}));
    EXPECT_EQ(sets(brute_minimal_separators(fixtures::clique(4), {1}, {2}, 1)),
              (std::vector<VertexSet>{{1}, {2}}));
    EXPECT_THROW(brute_minimal_separators(fixtures::path(17), {1}, {17}, 1), TooBig);
}

TEST(Filters, Examples) {
    Graph p3 = fixtures::path(3);
    auto c = brute_minimal_separators(p3, {1}, {3}, 1);
    EXPECT_EQ(sets(filter_leftmost(p3, {1}, c)), std::vector<VertexSet>{{1}});
    EXPECT_EQ(sets(filter_important(p3, {3}, c)), std::vector<VertexSet>{{1}});
    Graph bt3 = fixtures::binary_tree(3);
    auto b = brute_minimal_separators(bt3, fixtures::binary_tree_leaves(3), {1}, 2);
    EXPECT_EQ(sets(filter_leftmost(bt3, fixtures::binary_tree_leaves(3), b)),
              std::vector<VertexSet>{VertexSet({2, 3})});
    EXPECT_EQ(sets(filter_important(bt3, {1}, b)), (std::vector<VertexSet>{{1}, VertexSet({2, 3})}));
    std::vector<Separator> one{{VertexSet{2}, Provenance::Oracle}};
    EXPECT_EQ(sets(filter_leftmost(p3, {1}, one)), std::vector<VertexSet>{{2}});
    EXPECT_TRUE(filter_important(p3, {3}, {}).empty());
}

TEST(ExactTreewidth, Examples) {
    EXPECT_EQ(oracle::exact_treewidth(fixtures::path(5)), 2);
    EXPECT_EQ(oracle::exact_treewidth(fixtures::clique(5)), 5);
    EXPECT_EQ(oracle::exact_treewidth(fixtures::grid(3, 3)), 4);
    EXPECT_EQ(oracle::exact_treewidth(fixtures::grid(4, 4)), 5);
    EXPECT_EQ(oracle::exact_treewidth(Graph(3)), 1);
    EXPECT_EQ(oracle::exact_treewidth(Graph(0)), 0);
    EXPECT_THROW(oracle::exact_treewidth(fixtures::path(19)), TooBig);
}

TEST(ExactTreewidth, KnownFamilies) {
    for (int n = 2; n <= 14; ++n) {
        EXPECT_EQ(oracle::exact_treewidth(fixtures::random_tree(n, n)), 2);
        EXPECT_EQ(oracle::exact_treewidth(fixtures::clique(n)), n);
        if (n >= 3) {
            EXPECT_EQ(oracle::exact_treewidth(fixtures::cycle(n)), 3);
        }
    }
    EXPECT_EQ(oracle::exact_treewidth(fixtures::binary_tree(4)), 2);
}

TEST(Fixtures, Shapes) {
    Graph bt3 = fixtures::binary_tree(3);
    EXPECT_EQ(bt3.n(), 7);
    EXPECT_EQ(bt3.edge_count(), 6);
    EXPECT_EQ(fixtures::binary_tree(8).n(), 255);
    EXPECT_EQ(fixtures::binary_tree_leaves(3), VertexSet({4, 5, 6, 7}));
    EXPECT_EQ(fixtures::grid(3, 4).edge_count(), 17);
    EXPECT_EQ(fixtures::gnm(8, 12, 1).edges(), fixtures::gnm(8, 12, 1).edges());
    EXPECT_EQ(fixtures::gnm(8, 12, 1).edge_count(), 12);
    EXPECT_NE(fixtures::gnm(8, 12, 1).edges(), fixtures::gnm(8, 12, 2).edges());
    EXPECT_THROW(fixtures::gnm(4, 7, 1), InvalidInput);
    EXPECT_THROW(fixtures::make("nope", {}), InvalidInput);
    EXPECT_THROW(fixtures::make("path", {}), InvalidInput);
}

TEST(Lcg, FirstOutputsArePinned) {
    // s1 = 1442695040888963407 for seed 0 -> high word 0x1405_7B7E
    Lcg64 r(0);
    EXPECT_EQ(r.next(), 0x14057B7Eu);
}

// Leftmost within important, and important as the union of leftmost over budgets, on brute force alone.
TEST(Properties, LeftmostImportantIdentities) {
    Lcg64 rng(31);
    for (int it = 0; it < 300; ++it) {
        int n = 3 + static_cast<int>(rng.below(8));
        Graph g = fixtures::gnm(n, static_cast<int>(rng.below(std::min(20, n * (n - 1) / 2) + 1)), rng.next());
        VertexSet x{1 + static_cast<Vertex>(rng.below(n))}, y{1 + static_cast<Vertex>(rng.below(n)),
                                                             1 + static_cast<Vertex>(rng.below(n))};
        int k = 1 + static_cast<int>(rng.below(4));
        auto all = brute_minimal_separators(g, x, y, k);
        auto lm = sets(filter_leftmost(g, x, all));
        auto im = sets(filter_important(g, y, all));
        for (const auto& s : lm) EXPECT_TRUE(std::binary_search(im.begin(), im.end(), s));
        std::vector<VertexSet> uni;
        for (int i = 1; i <= k; ++i)
            for (const auto& s : filter_leftmost(g, x, brute_minimal_separators(g, x, y, i)))
                uni.push_back(s.members);
        std::sort(uni.begin(), uni.end());
        uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
        EXPECT_EQ(uni, im);
    }
}

TEST(Corpus, DeterministicAndInRange) {
    auto a = oracle::separator_corpus(50, 7);
    auto b = oracle::separator_corpus(50, 7);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].fixture, b[i].fixture);
        EXPECT_EQ(a[i].params, b[i].params);
        EXPECT_EQ(a[i].x, b[i].x);
        Graph g = a[i].graph();
        EXPECT_LE(g.n(), 16);
        EXPECT_GE(a[i].k, 1);
        EXPECT_LE(a[i].k, 4);
        if (a[i].fixture == "gnm") {
            EXPECT_LE(g.n(), 10);
            EXPECT_LE(g.edge_count(), 20);
        }
    }
}

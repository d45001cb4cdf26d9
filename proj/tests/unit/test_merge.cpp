#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "cliquemerge/chordal.hpp"
#include "cliquemerge/errors.hpp"
#include "cliquemerge/merge.hpp"
#include "oracles.hpp"

namespace cliquemerge {
namespace {

CliqueTree tree_of(const SparsityGraph& g) {
  return build_clique_tree(maximal_cliques(g, maximum_cardinality_search(g)));
}

std::vector<VertexSet> sorted(std::vector<VertexSet> cs) {
  std::sort(cs.begin(), cs.end());
  return cs;
}

VertexSet vertex_union(const std::vector<VertexSet>& cs) {
  VertexSet u;
  for (const auto& c : cs) u = set_union(u, c);
  return u;
}

// ---- merge_cliques ----------------------------------------------------------

TEST(MergeCliques, TraceOfPrimitive) {
  const std::vector<VertexSet> b{{1, 2}, {2, 3}, {3, 4}};
  const std::vector<CliqueEdge> e{{0, 1}, {1, 2}};
  const std::vector<int> bm{0, 1};
  const auto r = merge_cliques(b, e, bm);
  EXPECT_EQ(r.cliques, (std::vector<VertexSet>{{3, 4}, {1, 2, 3}}));
  EXPECT_EQ(r.merged, (VertexSet{1, 2, 3}));
  EXPECT_EQ(r.edges, (std::vector<CliqueEdge>{{0, 1}}));
}

TEST(MergeCliques, AllCliquesGiveSingleUnion) {
  const std::vector<VertexSet> b{{1, 2}, {2, 3}, {3, 4}};
  const std::vector<CliqueEdge> e{{0, 1}, {1, 2}};
  const std::vector<int> bm{0, 1, 2};
  const auto r = merge_cliques(b, e, bm);
  EXPECT_EQ(r.cliques, (std::vector<VertexSet>{{1, 2, 3, 4}}));
  EXPECT_TRUE(r.edges.empty());
}

TEST(MergeCliques, RejectsBadSelection) {
  const std::vector<VertexSet> b{{1, 2}, {2, 3}};
  const std::vector<CliqueEdge> e{{0, 1}};
  EXPECT_THROW(merge_cliques(b, e, std::vector<int>{}), InputError);
  EXPECT_THROW(merge_cliques(b, e, std::vector<int>{0, 2}), InputError);
  EXPECT_THROW(merge_cliques(b, e, std::vector<int>{-1}), InputError);
}

TEST(MergeCliques, RandomPairsMatchRecomputedIntersectionGraph) {
  testing::Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_chordal_graph(rng, 14);
    const auto cs = maximal_cliques(g, maximum_cardinality_search(g));
    if (cs.size() < 2) continue;
    const auto edges = detail::overlapping_pairs(cs.n, cs.cliques);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(cs.size()) - 1);
    int i = pick(rng);
    int j = pick(rng);
    while (j == i) j = pick(rng);
    const std::vector<int> bm{i, j};
    const auto r = merge_cliques(cs.cliques, edges, bm);
    ASSERT_EQ(r.cliques.size(), cs.size() - 1);
    EXPECT_EQ(r.cliques.back(), set_union(cs.cliques[static_cast<std::size_t>(i)],
                                          cs.cliques[static_cast<std::size_t>(j)]));
    std::vector<CliqueEdge> expected = detail::overlapping_pairs(cs.n, r.cliques);
    std::vector<CliqueEdge> got = r.edges;
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected);
  }
}

// ---- merge log ---------------------------------------------------------------

TEST(MergeLog, TextFormat) {
  MergeLog log;
  log.header.push_back("strategy=test");
  log.records.push_back({{{1, 2}, {2, 3}}, {1, 2, 3}, 3.0});
  log.records.push_back({{{4}, {5, 6}}, {4, 5, 6}, -0.5});
  EXPECT_EQ(to_string(log),
            "# strategy=test\n"
            "step 1: merge [1,2] + [2,3] -> [1,2,3] weight=3\n"
            "step 2: merge [4] + [5,6] -> [4,5,6] weight=-0.5\n");
  EXPECT_EQ(format_vertex_set({}), "[]");
}

TEST(MergeLog, ReplayAndRejection) {
  MergeLog log;
  log.records.push_back({{{1, 2}, {2, 3}}, {1, 2, 3}, 1.0});
  const auto out = replay_merge_log({{1, 2}, {2, 3}, {3, 4}}, log);
  EXPECT_EQ(sorted(out), sorted({{3, 4}, {1, 2, 3}}));

  MergeLog missing;
  missing.records.push_back({{{7, 8}, {2, 3}}, {2, 3, 7, 8}, 1.0});
  EXPECT_THROW(replay_merge_log({{1, 2}, {2, 3}}, missing), InputError);

  MergeLog wrong;
  wrong.records.push_back({{{1, 2}, {2, 3}}, {1, 2}, 1.0});
  EXPECT_THROW(replay_merge_log({{1, 2}, {2, 3}}, wrong), InputError);
}

// ---- parent-child ----------------------------------------------------------

TEST(ParentChild, FillTermArithmetic) {
  EXPECT_EQ(parent_child_fill(5, 4, 5), 1);
  const ParentChildParams defaults;
  EXPECT_EQ(defaults.t_fill, 9);
  EXPECT_EQ(defaults.t_size, 9);
  EXPECT_TRUE(parent_child_condition(5, 4, 5, 1, 1, defaults));
}

TEST(ParentChild, BothConditionsFail) {
  // supernodes 10 and 12, separator 2: fill (14 - 2)(12 - 2) = 120
  EXPECT_FALSE(parent_child_condition(14, 2, 12, 10, 12, ParentChildParams{9, 9}));
  // size condition alone suffices
  EXPECT_TRUE(parent_child_condition(14, 2, 12, 10, 9, ParentChildParams{9, 12}));
}

TEST(ParentChild, MergesSmallChildIntoParent) {
  const auto t = build_clique_tree(CliqueSet{5, {{1, 2, 3, 4}, {3, 4, 5}}});
  const auto r = parent_child_merge(t, ParentChildParams{9, 9});
  ASSERT_EQ(r.tree.size(), 1);
  EXPECT_EQ(r.tree.node(0).clique, (VertexSet{1, 2, 3, 4, 5}));
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log.records[0].value, 2.0);  // (4 - 2)(3 - 2)
}

TEST(ParentChild, ZeroThresholdsAreNoOpOnRandomTrees) {
  testing::Rng rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = tree_of(testing::random_chordal_graph(rng, 16, 0.0));
    const auto r = parent_child_merge(t, ParentChildParams{0, 0});
    EXPECT_TRUE(r.log.empty());
    EXPECT_EQ(r.tree.cliques(), t.cliques());
    EXPECT_EQ(r.tree.parents(), t.parents());
  }
}

TEST(ParentChild, NegativeThresholdsThrow) {
  const auto t = build_clique_tree(CliqueSet{2, {{1, 2}}});
  EXPECT_THROW(parent_child_merge(t, ParentChildParams{-1, 9}), InputError);
}

TEST(ParentChild, AdoptedGrandchildrenAreVisited) {
  // chain {1..4} - {4,5} - {5,6}: the middle merges up, then its child is
  // checked against the enlarged parent
  const auto t = CliqueTree::from_parents(6, {{1, 2, 3, 4}, {4, 5}, {5, 6}},
                                          {std::nullopt, 0, 1});
  const auto r = parent_child_merge(t, ParentChildParams{9, 9});
  EXPECT_EQ(r.tree.size(), 1);
  EXPECT_EQ(r.log.size(), 2u);
  EXPECT_EQ(r.log.records[1].inputs[1], (VertexSet{1, 2, 3, 4, 5}));
}

TEST(ParentChild, RandomTreesKeepRipAndCoverage) {
  testing::Rng rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = tree_of(testing::random_chordal_graph(rng, 25));
    const ParentChildParams p{trial % 12, (trial / 3) % 6};
    const auto r = parent_child_merge(t, p);
    ASSERT_TRUE(verify_rip(r.tree));
    EXPECT_EQ(vertex_union(r.tree.cliques()), vertex_union(t.cliques()));
    EXPECT_EQ(r.tree.size() + static_cast<int>(r.log.size()), t.size());
    EXPECT_EQ(sorted(replay_merge_log(t.cliques(), r.log)), sorted(r.tree.cliques()));
  }
}

// ---- traversal -------------------------------------------------------------

TEST(Traversal, OverlapRatioArithmetic) {
  EXPECT_DOUBLE_EQ(overlap_ratio({1, 2, 3, 4}, {3, 4, 5}), 0.5);
  EXPECT_DOUBLE_EQ(overlap_ratio({1, 2}, {3, 4}), 0.0);
}

TEST(Traversal, SigmaDecidesTwoSiblingMerge) {
  // parent {3,4,9}; children {1,2,3,4} and {3,4,5} overlap in {3,4}
  const auto t = CliqueTree::from_parents(9, {{3, 4, 9}, {1, 2, 3, 4}, {3, 4, 5}},
                                          {std::nullopt, 0, 0});
  const auto low = traversal_merge(t, TraversalParams{0.4});
  ASSERT_GE(low.log.size(), 1u);
  EXPECT_DOUBLE_EQ(low.log.records[0].value, 0.5);
  EXPECT_EQ(low.log.records[0].result, (VertexSet{1, 2, 3, 4, 5}));

  const auto high = traversal_merge(t, TraversalParams{0.7});
  EXPECT_TRUE(high.log.empty());
}

TEST(Traversal, ThreeWayMergeWhenIntersectionContainsParent) {
  const auto t = CliqueTree::from_parents(9, {{1, 2}, {1, 2, 9}, {1, 2, 8}},
                                          {std::nullopt, 0, 0});
  const auto r = traversal_merge(t, TraversalParams{2.0 / 3.0});
  ASSERT_EQ(r.tree.size(), 1);
  EXPECT_EQ(r.tree.node(0).clique, (VertexSet{1, 2, 8, 9}));
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log.records[0].inputs.size(), 3u);
}

TEST(Traversal, SigmaOneIsNoOpForDistinctMaximalCliques) {
  testing::Rng rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = tree_of(testing::random_chordal_graph(rng, 18));
    const auto r = traversal_merge(t, TraversalParams{1.0});
    EXPECT_TRUE(r.log.empty());
    EXPECT_EQ(r.tree.cliques(), t.cliques());
  }
}

TEST(Traversal, InvalidSigmaThrows) {
  const auto t = build_clique_tree(CliqueSet{2, {{1, 2}}});
  EXPECT_THROW(traversal_merge(t, TraversalParams{0.0}), InputError);
  EXPECT_THROW(traversal_merge(t, TraversalParams{1.5}), InputError);
}

TEST(Traversal, HeaderRecordsFixedPointChoice) {
  const auto t = build_clique_tree(CliqueSet{2, {{1, 2}}});
  const auto r = traversal_merge(t, TraversalParams{0.4});
  ASSERT_FALSE(r.log.header.empty());
  EXPECT_NE(r.log.header[0].find("fixed-point"), std::string::npos);
}

TEST(Traversal, RandomTreesKeepRipAndCoverage) {
  testing::Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = tree_of(testing::random_chordal_graph(rng, 25));
    const double sigma = 0.1 + 0.1 * (trial % 9);
    const auto r = traversal_merge(t, TraversalParams{sigma});
    ASSERT_TRUE(verify_rip(r.tree));
    EXPECT_EQ(vertex_union(r.tree.cliques()), vertex_union(t.cliques()));
    EXPECT_EQ(sorted(replay_merge_log(t.cliques(), r.log)), sorted(r.tree.cliques()));
  }
}

TEST(TreeStrategies, Deterministic) {
  testing::Rng rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = tree_of(testing::random_chordal_graph(rng, 20));
    EXPECT_EQ(to_string(parent_child_merge(t, {}).log), to_string(parent_child_merge(t, {}).log));
    EXPECT_EQ(to_string(traversal_merge(t, {}).log), to_string(traversal_merge(t, {}).log));
  }
}

TEST(TreeStrategies, NoCliqueContainsAnother) {
  testing::Rng rng(73);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = tree_of(testing::random_chordal_graph(rng, 25));
    const auto tr = traversal_merge(t, TraversalParams{0.1 + 0.1 * (trial % 9)});
    const auto pc = parent_child_merge(t, ParentChildParams{trial % 20, trial % 7});
    for (const auto* r : {&tr, &pc}) {
      const auto cs = r->tree.cliques();
      for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = 0; j < cs.size(); ++j) {
          if (i != j) ASSERT_FALSE(is_subset(cs[i], cs[j]));
        }
      }
    }
  }
}

}  // namespace
}  // namespace cliquemerge

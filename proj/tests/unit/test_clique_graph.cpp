#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "cliquemerge/chordal.hpp"
#include "cliquemerge/clique_graph.hpp"
#include "cliquemerge/errors.hpp"
#include "cliquemerge/weights.hpp"
#include "oracles.hpp"

namespace cliquemerge {
namespace {

const CliqueSet kFigure{9, {{1, 2, 3}, {2, 3, 6}, {3, 6, 7, 8}, {6, 7, 8, 9}, {4, 5, 8}}};

CliqueSet cliques_of(const SparsityGraph& g) {
  return maximal_cliques(g, maximum_cardinality_search(g));
}

VertexSet vertex_union(std::span<const VertexSet> cs) {
  VertexSet u;
  for (const auto& c : cs) u = set_union(u, c);
  return u;
}

TEST(BuildCliqueGraph, DisjointCliquesHaveNoEdges) {
  const auto cg = build_clique_graph(CliqueSet{6, {{1, 2}, {3, 4}, {5, 6}}});
  EXPECT_TRUE(cg.edges().empty());
}

TEST(BuildCliqueGraph, PathOfCliques) {
  const auto cg = build_clique_graph(CliqueSet{4, {{1, 2}, {2, 3}, {3, 4}}});
  ASSERT_EQ(cg.edges().size(), 2u);
  for (const auto& [i, j] : cg.edges()) {
    EXPECT_EQ(intersection_size(cg.cliques()[static_cast<std::size_t>(i)],
                                cg.cliques()[static_cast<std::size_t>(j)]),
              1u);
  }
  EXPECT_FALSE(cg.weighted());
}

TEST(BuildCliqueGraph, EdgesAreExactlyOverlappingPairs) {
  testing::Rng rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const auto cs = cliques_of(testing::random_chordal_graph(rng, 15));
    const auto cg = build_clique_graph(cs);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        const bool overlap = intersection_size(cs.cliques[i], cs.cliques[j]) > 0;
        expected += overlap ? 1 : 0;
        EXPECT_EQ(cg.weight(static_cast<int>(i), static_cast<int>(j)).has_value(), false);
      }
    }
    EXPECT_EQ(cg.edges().size(), expected);
  }
}

TEST(CliqueGraph, ValidatesEdges) {
  EXPECT_THROW(CliqueGraph(3, {{1, 2}, {2, 3}}, {{0, 0}}), InputError);
  EXPECT_THROW(CliqueGraph(3, {{1, 2}, {2, 3}}, {{0, 2}}), InputError);
  const CliqueGraph cg(3, {{1, 2}, {2, 3}}, {{1, 0}});
  EXPECT_EQ(cg.edges()[0], (CliqueEdge{0, 1}));
}

TEST(CliqueGraph, WeightsParallelToEdges) {
  auto cg = build_clique_graph(kFigure);
  cg.apply_weights(nominal_weight_function());
  ASSERT_TRUE(cg.weighted());
  ASSERT_EQ(cg.weights().size(), cg.edges().size());
  for (std::size_t k = 0; k < cg.edges().size(); ++k) {
    const auto [i, j] = cg.edges()[k];
    EXPECT_EQ(cg.weights()[k], nominal_weight(cg.cliques()[static_cast<std::size_t>(i)],
                                              cg.cliques()[static_cast<std::size_t>(j)]));
    EXPECT_EQ(cg.weight(j, i), cg.weights()[k]);
  }
  EXPECT_THROW(cg.set_weights({1.0}), InputError);
}

TEST(CliqueGraphMerge, FigureSingleMergeAtWeightThree) {
  const auto r = clique_graph_merge(build_clique_graph(kFigure), nominal_weight_function());
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log.records[0].value, 3.0);
  EXPECT_EQ(r.log.records[0].result, (VertexSet{3, 6, 7, 8, 9}));
  EXPECT_EQ(r.graph.cliques().size(), 4u);
  for (double w : r.graph.weights()) EXPECT_LE(w, 0.0);
  EXPECT_EQ(to_string(r.log).find("step 1: merge [3,6,7,8] + [6,7,8,9] -> [3,6,7,8,9] weight=3"),
            to_string(r.log).find("step 1"));
}

TEST(CliqueGraphMerge, SingleVertexOverlapsNeverMerge) {
  testing::Rng rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    // a tree of cliques of size >= 2 glued at single vertices
    std::vector<VertexSet> cs;
    int next = 1;
    cs.push_back({next, next + 1, next + 2});
    next += 3;
    for (int k = 0; k < 6; ++k) {
      const auto& base = cs[std::uniform_int_distribution<std::size_t>(0, cs.size() - 1)(rng)];
      const Vertex glue = base[std::uniform_int_distribution<std::size_t>(0, base.size() - 1)(rng)];
      const int extra = std::uniform_int_distribution<int>(1, 3)(rng);
      VertexSet c{glue};
      for (int e = 0; e < extra; ++e) c.push_back(next++);
      cs.push_back(make_vertex_set(c));
    }
    CliqueSet set{next - 1, cs};
    canonicalize(set);
    const auto r = clique_graph_merge(build_clique_graph(set), nominal_weight_function());
    EXPECT_TRUE(r.log.empty());
  }
}

TEST(CliqueGraphMerge, NegativeConstantWeightIsNoOp) {
  testing::Rng rng(89);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cs = cliques_of(testing::random_chordal_graph(rng, 15));
    const auto cg = build_clique_graph(cs);
    const auto r = clique_graph_merge(cg, [](const VertexSet&, const VertexSet&) { return -1.0; });
    EXPECT_TRUE(r.log.empty());
    EXPECT_EQ(std::vector<VertexSet>(r.graph.cliques().begin(), r.graph.cliques().end()),
              cs.cliques);
  }
}

TEST(CliqueGraphMerge, PositiveConstantWeightMergesEachComponent) {
  const CliqueSet cs{7, {{1, 2, 3}, {3, 4}, {4, 5}, {6, 7}}};
  const auto r = clique_graph_merge(build_clique_graph(cs),
                                    [](const VertexSet&, const VertexSet&) { return 1.0; });
  EXPECT_EQ(r.log.size(), 2u);
  ASSERT_EQ(r.graph.cliques().size(), 2u);
  EXPECT_EQ(r.graph.cliques()[0], (VertexSet{6, 7}));
  EXPECT_EQ(r.graph.cliques()[1], (VertexSet{1, 2, 3, 4, 5}));
}

TEST(CliqueGraphMerge, TieBreakBySmallestMemberVertices) {
  // every pair weighs 1; smallest-member pairs are (1,2), (1,4), (2,4)
  const CliqueSet cs{6, {{4, 5, 6}, {1, 4}, {2, 4}}};
  const auto r = clique_graph_merge(build_clique_graph(cs),
                                    [](const VertexSet&, const VertexSet&) { return 1.0; });
  ASSERT_GE(r.log.size(), 1u);
  EXPECT_EQ(r.log.records[0].result, (VertexSet{1, 2, 4}));
}

TEST(CliqueGraphMerge, InvariantsOnRandomInstances) {
  testing::Rng rng(97);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cs = cliques_of(testing::random_chordal_graph(rng, 30));
    const auto r = clique_graph_merge(build_clique_graph(cs), nominal_weight_function());
    ASSERT_LE(r.log.size() + 1, std::max<std::size_t>(cs.size(), 1));
    EXPECT_EQ(r.graph.cliques().size() + r.log.size(), cs.size());
    for (double w : r.graph.weights()) EXPECT_LE(w, 0.0);
    for (std::size_t k = 0; k < r.graph.edges().size(); ++k) {
      const auto [i, j] = r.graph.edges()[k];
      EXPECT_EQ(r.graph.weights()[k],
                nominal_weight(r.graph.cliques()[static_cast<std::size_t>(i)],
                               r.graph.cliques()[static_cast<std::size_t>(j)]));
    }
    EXPECT_EQ(vertex_union(r.graph.cliques()), vertex_union(cs.cliques));
    auto replayed = replay_merge_log(cs.cliques, r.log);
    std::vector<VertexSet> got(r.graph.cliques().begin(), r.graph.cliques().end());
    std::sort(replayed.begin(), replayed.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(replayed, got);
  }
}

TEST(RecomputeCliqueTree, TwoCliquesSharingOneVertex) {
  const auto cg = build_clique_graph(CliqueSet{3, {{1, 2}, {2, 3}}});
  const auto t = recompute_clique_tree(cg);
  ASSERT_EQ(t.size(), 2);
  EXPECT_TRUE(verify_rip(t));
}

TEST(RecomputeCliqueTree, FigureAfterMerge) {
  const auto r = clique_graph_merge(build_clique_graph(kFigure), nominal_weight_function());
  const auto t = recompute_clique_tree(r.graph);
  EXPECT_TRUE(verify_rip(t));
  EXPECT_EQ(t.size(), 4);
  EXPECT_EQ(t.node(t.root()).clique, (VertexSet{3, 6, 7, 8, 9}));
}

TEST(RecomputeCliqueTree, RandomMergedInstancesSatisfyRip) {
  testing::Rng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const auto cs = cliques_of(testing::random_chordal_graph(rng, 5 + trial % 30));
    const double offset = (trial % 5) * 5.0;
    const WeightFunction fn = [offset](const VertexSet& a, const VertexSet& b) {
      return nominal_weight(a, b) + offset;
    };
    const auto r = clique_graph_merge(build_clique_graph(cs), fn);
    const auto t = recompute_clique_tree(r.graph);
    ASSERT_TRUE(verify_rip(t));
    EXPECT_EQ(vertex_union(t.cliques()), vertex_union(cs.cliques));
    for (const auto& c : r.graph.cliques()) {
      const auto tc = t.cliques();
      EXPECT_TRUE(std::any_of(tc.begin(), tc.end(), [&](const VertexSet& x) { return is_subset(c, x); }));
    }
  }
}

TEST(RecomputeCliqueTree, NonAdjacentMergeFallsBackToCompletion) {
  // A, B, C, D share core {1}; merging A and D leaves B and C between them
  // with no tree that keeps vertex 2 connected
  const std::vector<VertexSet> merged{{1, 2, 3, 6}, {1, 3, 4}, {1, 4, 5}};
  CliqueSet cs{6, merged};
  canonicalize(cs);
  EXPECT_TRUE(admits_clique_tree(6, cs.cliques));
  const std::vector<VertexSet> bad{{1, 2, 5}, {1, 2, 3}, {1, 3, 4}, {1, 4, 5}};
  EXPECT_FALSE(admits_clique_tree(5, bad));
  CliqueSet bad_set{5, bad};
  canonicalize(bad_set);
  const auto t = recompute_clique_tree(build_clique_graph(bad_set));
  EXPECT_TRUE(verify_rip(t));
  for (const auto& c : bad) {
    const auto tc = t.cliques();
    EXPECT_TRUE(std::any_of(tc.begin(), tc.end(), [&](const VertexSet& x) { return is_subset(c, x); }));
  }
}

bool has_nested_cliques(const std::vector<VertexSet>& cs) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (i != j && is_subset(cs[i], cs[j])) return true;
    }
  }
  return false;
}

TEST(RecomputeCliqueTree, AbsorbsContainedCliques) {
  // {1,2,3,6,7,8} is the figure after merging {3,6,7,8} and {1,2,3}
  const std::vector<VertexSet> merged{{1, 2, 3, 6, 7, 8}, {6, 7, 8, 9}, {2, 3, 6}, {4, 5, 8}};
  const auto edges = detail::overlapping_pairs(9, merged);
  const auto t = recompute_clique_tree(CliqueGraph(9, merged, edges));
  EXPECT_EQ(t.size(), 3);
  EXPECT_FALSE(has_nested_cliques(t.cliques()));
  EXPECT_TRUE(verify_rip(t));
}

TEST(RecomputeCliqueTree, SinglePairMergesLeaveMaximalCliques) {
  testing::Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cs = cliques_of(testing::random_chordal_graph(rng, 6 + trial % 20));
    const auto edges = detail::overlapping_pairs(cs.n, cs.cliques);
    for (const auto& [i, j] : edges) {
      const std::vector<int> sel{i, j};
      const auto m = merge_cliques(cs.cliques, edges, sel);
      const auto t = recompute_clique_tree(CliqueGraph(cs.n, m.cliques, m.edges));
      ASSERT_TRUE(verify_rip(t));
      ASSERT_FALSE(has_nested_cliques(t.cliques()));
    }
  }
}

}  // namespace
}  // namespace cliquemerge

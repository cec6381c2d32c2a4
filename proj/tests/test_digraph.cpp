#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "tourep/canonical.hpp"
#include "tourep/dgr_format.hpp"
#include "tourep/digraph.hpp"
#include "tourep/rng.hpp"

using namespace tourep;

TEST(Digraph, RejectsLoopsAndBadIds) {
  EXPECT_THROW(Digraph(2, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Digraph(2, {{0, 2}}), std::out_of_range);
  EXPECT_THROW(Digraph(-1), std::invalid_argument);
}

TEST(Digraph, ParallelArcsAreDistinct) {
  Digraph g(2, {{0, 1}, {0, 1}, {1, 0}});
  EXPECT_EQ(g.num_arcs(), 3);
  EXPECT_EQ(g.multiplicity(0, 1), 2);
  EXPECT_EQ(g.out_degree(0), 2);
  EXPECT_EQ(g.in_degree(0), 1);
}

TEST(Digraph, NamedFamilies) {
  EXPECT_EQ(directed_cycle(3).num_arcs(), 3);
  EXPECT_TRUE(is_strongly_connected(directed_cycle(5)));
  EXPECT_TRUE(is_tournament(transitive_tournament(6)));
  EXPECT_EQ(scc(transitive_tournament(6)).count(), 6);
  EXPECT_EQ(complete_digraph(4).num_arcs(), 12);
  EXPECT_EQ(directed_path(4).num_arcs(), 3);
  const Digraph two = disjoint_copies(directed_cycle(3), 2);
  EXPECT_EQ(two.num_vertices(), 6);
  EXPECT_EQ(scc(two).count(), 2);
}

TEST(Digraph, SccMatchesOracleAndIsTopological) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const int n = 1 + static_cast<int>(rng.below(8));
    const Digraph g = random_s_semicomplete(n, static_cast<int>(rng.below(4)), 2, seed);
    const SccPartition p = scc(g);
    EXPECT_EQ(p.count(), oracle::scc_count(g));
    for (const auto& a : g.arcs())
      EXPECT_LE(p.component_of[static_cast<std::size_t>(a.tail)], p.component_of[static_cast<std::size_t>(a.head)]);
  }
}

TEST(Digraph, SemicompleteSampler) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int s = static_cast<int>(seed % 3);
    const Digraph g = random_s_semicomplete(7, s, 2, seed);
    EXPECT_TRUE(is_s_semicomplete(g, s));
    for (int u = 0; u < 7; ++u)
      for (int v = 0; v < 7; ++v)
        if (u != v) EXPECT_LE(g.multiplicity(u, v), 2);
    EXPECT_EQ(g, random_s_semicomplete(7, s, 2, seed));
  }
  EXPECT_TRUE(is_tournament(random_tournament(8, 3)));
}

TEST(Digraph, ContractibleArcs) {
  // 0->1->2->0 plus 0->2: arc 0->1 is the only arc into 1.
  Digraph g(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  EXPECT_TRUE(is_contractible_arc(g, 0));
  EXPECT_FALSE(is_contractible_arc(g, 3));
  const Relabeled r = contract_butterfly(g, 0);
  EXPECT_EQ(r.graph.num_vertices(), 2);
  EXPECT_EQ(r.arc_map[0], -1);
  EXPECT_THROW(is_contractible_arc(g, 9), std::out_of_range);
}

TEST(Digraph, StrongContractionKeepsSccCount) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Digraph g = random_s_semicomplete(6, 2, 2, seed);
    const SccPartition p = scc(g);
    const auto& big = *std::max_element(p.components.begin(), p.components.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    const Relabeled r = contract_strong(g, big);
    EXPECT_EQ(scc(r.graph).count(), p.count());
    EXPECT_EQ(r.graph.num_vertices(), g.num_vertices() - static_cast<int>(big.size()) + 1);
  }
  const Digraph path = directed_path(3);
  const std::vector<Vertex> not_strong{0, 1};
  EXPECT_THROW(contract_strong(path, not_strong), std::invalid_argument);
}

TEST(Digraph, Deletions) {
  const Digraph g = complete_digraph(4);
  const std::vector<Vertex> gone{1};
  const Relabeled r = delete_vertices(g, gone);
  EXPECT_EQ(r.graph.num_vertices(), 3);
  EXPECT_EQ(r.graph.num_arcs(), 6);
  EXPECT_EQ(r.vertex_map[1], -1);
  const std::vector<ArcId> arcs{0, 1};
  EXPECT_EQ(delete_arcs(g, arcs).graph.num_arcs(), 10);
  const std::vector<Vertex> keep{0, 2};
  EXPECT_EQ(induced(g, keep).graph.num_arcs(), 2);
}

TEST(DgrFormat, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Digraph g = random_s_semicomplete(6, 2, 3, seed);
    EXPECT_EQ(parse_dgr(format_dgr(g)), g);
  }
  const Digraph c3 = parse_dgr(format_dgr(directed_cycle(3)));
  EXPECT_TRUE(same_arc_multiset(c3, directed_cycle(3)));
}

TEST(DgrFormat, DoubledArcAndComments) {
  const Digraph g = parse_dgr("# two parallel arcs\n2 2\n0 1\n0 1  # again\n");
  EXPECT_EQ(g.multiplicity(0, 1), 2);
}

TEST(DgrFormat, Rejections) {
  EXPECT_THROW(parse_dgr("3 1\n2 2\n"), ParseError);
  EXPECT_THROW(parse_dgr("3 1\n0 3\n"), ParseError);
  EXPECT_THROW(parse_dgr("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_dgr("x y\n"), ParseError);
  EXPECT_THROW(parse_dgr(""), ParseError);
  EXPECT_THROW(parse_dgr("2 1\n0 1 5\n"), ParseError);
}

TEST(Canonical, TournamentClassCounts) {
  const std::vector<std::size_t> expected{1, 1, 1, 2, 4, 12, 56};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(tournament_classes(n).size(), expected[static_cast<std::size_t>(n)]) << n;
}

TEST(Canonical, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Digraph g = random_s_semicomplete(6, 1, 2, seed);
    Rng rng(seed);
    std::vector<Vertex> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 5; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<Arc> arcs;
    for (const auto& a : g.arcs()) arcs.push_back({perm[static_cast<std::size_t>(a.tail)], perm[static_cast<std::size_t>(a.head)]});
    const Digraph p(6, arcs);
    EXPECT_EQ(canonical_form(g), canonical_form(p));
    EXPECT_TRUE(are_isomorphic(g, p));
  }
  EXPECT_FALSE(are_isomorphic(directed_cycle(3), transitive_tournament(3)));
}

TEST(Canonical, Automorphisms) {
  EXPECT_EQ(automorphisms(directed_cycle(5)).size(), 5u);
  EXPECT_EQ(automorphisms(transitive_tournament(5)).size(), 1u);
  EXPECT_EQ(automorphisms(disjoint_copies(directed_cycle(3), 2)).size(), 18u);
}

TEST(Rng, InstanceSeedsAreStable) {
  EXPECT_EQ(instance_seed(7, 3), instance_seed(7, 3));
  EXPECT_NE(instance_seed(7, 3), instance_seed(7, 4));
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.below(17), b.below(17));
}

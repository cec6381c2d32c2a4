#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "tourep/canonical.hpp"
#include "tourep/duality.hpp"
#include "tourep/rng.hpp"

using namespace tourep;

namespace {

SetSystem random_system(Rng& rng, int ground, int members) {
  SetSystem s{ground, {}};
  for (int i = 0; i < members; ++i) {
    std::vector<int> m;
    for (int e = 0; e < ground; ++e)
      if (rng.below(4) == 0) m.push_back(e);
    if (m.empty()) m.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(ground))));
    s.members.push_back(m);
  }
  return s;
}

// Two directed triangles sharing vertex 0.
Digraph bowtie() { return Digraph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}); }

PiercingInstance random_piercing(Rng& rng, int length, int p, int members) {
  PiercingInstance inst{length, {}};
  for (int i = 0; i < members; ++i) {
    std::set<int> pts;
    const int runs = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
    for (int r = 0; r < runs; ++r) {
      const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(length)));
      const int len = 1 + static_cast<int>(rng.below(3));
      for (int x = a; x < std::min(length, a + len); ++x) pts.insert(x);
    }
    std::vector<int> m(pts.begin(), pts.end());
    if (run_count(m) <= p) inst.members.push_back(m);
  }
  return inst;
}

}  // namespace

TEST(SetSystem, PackingAndHittingMatchBruteForce) {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int ground = 3 + static_cast<int>(rng.below(10));
    const SetSystem s = random_system(rng, ground, 1 + static_cast<int>(rng.below(12)));
    const auto pack = max_disjoint_members(s);
    EXPECT_EQ(static_cast<int>(pack.size()), oracle::max_disjoint(s.members));
    for (std::size_t i = 0; i < pack.size(); ++i)
      for (std::size_t j = i + 1; j < pack.size(); ++j)
        for (int e : s.members[pack[i]])
          EXPECT_EQ(std::count(s.members[pack[j]].begin(), s.members[pack[j]].end(), e), 0);
    const auto hit = min_hitting_set(s);
    EXPECT_EQ(static_cast<int>(hit.size()), oracle::min_hitting(s.members, ground));
    for (const auto& m : s.members)
      EXPECT_TRUE(std::any_of(m.begin(), m.end(), [&](int e) { return std::count(hit.begin(), hit.end(), e) > 0; }));
    const SetSystem minimal = inclusion_minimal(s);
    EXPECT_EQ(max_disjoint_members(minimal).size(), pack.size());
    EXPECT_EQ(min_hitting_set(minimal).size(), hit.size());
  }
}

TEST(SetSystem, EdgeCases) {
  EXPECT_TRUE(max_disjoint_members({4, {}}).empty());
  EXPECT_TRUE(min_hitting_set({4, {}}).empty());
  EXPECT_THROW(min_hitting_set({3, {{}}}), std::invalid_argument);
  EXPECT_THROW(min_hitting_set({3, {{0, 1}}}, {2}), std::invalid_argument);
  EXPECT_THROW(max_disjoint_members({2, {{5}}}), std::out_of_range);
  EXPECT_EQ(max_disjoint_members({6, {{0}, {1}, {2}, {3}}}, 2).size(), 2u);
}

TEST(Piercing, RunCount) {
  EXPECT_EQ(run_count({}), 0);
  EXPECT_EQ(run_count({3}), 1);
  EXPECT_EQ(run_count({1, 2, 3, 7, 9, 10}), 3);
  EXPECT_EQ((PiercingInstance{10, {{0, 1}, {4, 6, 8}}}.max_components()), 3);
}

TEST(Piercing, ExactAgainstBruteForce) {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const int length = 4 + static_cast<int>(rng.below(9));
    const int p = 1 + static_cast<int>(rng.below(3));
    const PiercingInstance inst = random_piercing(rng, length, p, 1 + static_cast<int>(rng.below(8)));
    const int k = static_cast<int>(rng.below(3));
    const PiercingResult r = pierce_path_subgraphs(inst, k);
    const int nu = oracle::max_disjoint(inst.members);
    if (nu > k) {
      ASSERT_TRUE(r.packed);
      EXPECT_EQ(static_cast<int>(r.members.size()), k + 1);
    } else {
      ASSERT_FALSE(r.packed);
      EXPECT_EQ(static_cast<int>(r.pierce.size()), oracle::min_pierce(inst));
      EXPECT_LE(static_cast<long long>(r.pierce.size()), piercing_bound(inst.max_components(), std::max(k, 1)));
    }
  }
}

TEST(Duality, DerivedSmallCases) {
  const Digraph c3 = directed_cycle(3);
  const Digraph two = disjoint_copies(c3, 2);
  for (Relation r : {Relation::StrongMinor, Relation::Subdigraph, Relation::Immersion}) {
    SetSystem sys{6, minimal_host_vertex_sets(c3, two, r)};
    EXPECT_EQ(max_disjoint_members(sys).size(), 2u);
    EXPECT_EQ(min_hitting_set(sys).size(), 2u);
  }
  SetSystem bow{5, minimal_host_vertex_sets(c3, bowtie(), Relation::StrongMinor)};
  EXPECT_EQ(max_disjoint_members(bow).size(), 1u);
  EXPECT_EQ(min_hitting_set(bow).size(), 1u);
  EXPECT_EQ(arc_packing_and_cover(c3, bowtie(), Relation::Immersion), std::make_pair(2, 2));
  // Same pairs straight from subset scans.
  EXPECT_EQ(oracle::vertex_nu_tau(c3, bowtie(), Relation::StrongMinor), std::make_pair(1, 1));
  EXPECT_EQ(oracle::arc_nu_tau(c3, bowtie()), std::make_pair(2, 2));
  EXPECT_EQ(oracle::vertex_nu_tau(c3, two, Relation::StrongMinor), std::make_pair(2, 2));
}

TEST(Duality, NuTauMatchOracles) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Digraph g = random_s_semicomplete(5, 1, 1, seed);
    for (Relation r : {Relation::StrongMinor, Relation::ButterflyMinor, Relation::Immersion}) {
      SetSystem sys{g.num_vertices(), minimal_host_vertex_sets(directed_cycle(3), g, r)};
      const auto expected = oracle::vertex_nu_tau(directed_cycle(3), g, r);
      EXPECT_EQ(static_cast<int>(max_disjoint_members(sys).size()), expected.first);
      EXPECT_EQ(static_cast<int>(min_hitting_set(sys).size()), expected.second);
    }
    if (g.num_arcs() <= 14)
      EXPECT_EQ(arc_packing_and_cover(directed_cycle(3), g, Relation::Immersion),
                oracle::arc_nu_tau(directed_cycle(3), g));
  }
}

TEST(Duality, FamilyPackingAndCover) {
  const HostFamily f = enumerate_minimal_hosts(directed_cycle(3), bowtie(), Relation::Immersion);
  EXPECT_EQ(max_packing(f, Mode::Arc).size(), 2u);
  EXPECT_EQ(min_cover(f, Mode::Arc).size(), 2u);
  EXPECT_EQ(max_packing(f, Mode::Vertex).size(), 1u);
  HostFamily partial = f;
  partial.complete = false;
  EXPECT_THROW(max_packing(partial, Mode::Arc), std::invalid_argument);
}

TEST(Duality, VertexCoverConstruction) {
  for (const auto& t : tournament_classes(6)) {
    const auto pd = directed_pathwidth(t).decomposition();
    for (int k = 1; k <= 3; ++k) {
      const auto r = cover_from_path_decomposition(directed_cycle(3), t, Relation::StrongMinor, pd, k);
      if (r.packed) {
        EXPECT_EQ(static_cast<int>(r.hosts.size()), k);
      } else {
        EXPECT_LE(static_cast<long long>(r.cover.size()), r.bound);
        Subdigraph rest;
        for (int v = 0; v < t.num_vertices(); ++v)
          if (!std::binary_search(r.cover.begin(), r.cover.end(), v)) rest.vertices.push_back(v);
        for (int a = 0; a < t.num_arcs(); ++a)
          if (std::binary_search(rest.vertices.begin(), rest.vertices.end(), t.arc(a).tail) &&
              std::binary_search(rest.vertices.begin(), rest.vertices.end(), t.arc(a).head))
            rest.arcs.push_back(a);
        EXPECT_FALSE(contains_within(directed_cycle(3), t, Relation::StrongMinor, rest));
      }
    }
  }
  const Digraph c3 = directed_cycle(3);
  EXPECT_THROW(cover_from_path_decomposition(c3, c3, Relation::StrongMinor, directed_pathwidth(c3).decomposition(), 0),
               std::invalid_argument);
  EXPECT_THROW(cover_from_path_decomposition(c3, c3, Relation::StrongMinor, PathDecomposition{{{0}}}, 1),
               std::invalid_argument);
}

TEST(Duality, ArcCoverConstruction) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Digraph g = random_s_semicomplete(7, 0, 1, seed);
    const auto ctw = cutwidth(g);
    for (int k = 1; k <= 3; ++k) {
      const auto r = cover_from_cutwidth_ordering(directed_cycle(3), g, ctw.layout(), k);
      EXPECT_EQ(r.cutwidth, ctw.value);
      if (r.packed) {
        EXPECT_EQ(static_cast<int>(r.hosts.size()), k);
      } else {
        EXPECT_LE(static_cast<long long>(r.cover.size()), r.bound);
      }
    }
  }
  EXPECT_THROW(cover_from_cutwidth_ordering(directed_path(3), directed_cycle(3), Layout{{0, 1, 2}}, 1),
               std::invalid_argument);
}

TEST(Duality, EpVerifyReports) {
  const auto reports = ep_verify(directed_cycle(3), disjoint_copies(directed_cycle(3), 2), Relation::StrongMinor,
                                 Mode::Vertex, 3, {{}, 17});
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.bounds_ok);
    EXPECT_EQ(r.nu, 2);
    EXPECT_EQ(r.tau, 2);
    EXPECT_EQ(r.seed, 17u);
    EXPECT_EQ(r.outcome, r.k <= 2 ? "packing" : "cover");
  }
  nlohmann::json j = reports[2];
  EXPECT_EQ(j.get<EpReport>().constructive_size, reports[2].constructive_size);
  EXPECT_THROW(ep_verify(directed_cycle(3), directed_cycle(3), Relation::StrongMinor, Mode::Arc, 1),
               std::invalid_argument);
  const auto arc = ep_verify(directed_cycle(3), bowtie(), Relation::Immersion, Mode::Arc, 3);
  for (const auto& r : arc) {
    EXPECT_TRUE(r.bounds_ok);
    EXPECT_EQ(r.nu, 2);
  }
}

TEST(Duality, ModeNames) {
  EXPECT_EQ(parse_mode("vertex"), Mode::Vertex);
  EXPECT_EQ(parse_mode(to_string(Mode::Arc)), Mode::Arc);
  EXPECT_THROW(parse_mode("edge"), std::invalid_argument);
}

#include <conewalk/cones.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "test_support.hpp"

using namespace conewalk;
using testing_support::k3_rank3;

namespace {

MarkedLattice k3_marked() { return MarkedLattice(k3_rank3(), {3, 1, 1}); }

std::vector<LatticeVector> sorted(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<oracle::Vec> dual_rows(const LatticeSpace& L, const std::vector<LatticeVector>& gens) {
  std::vector<oracle::Vec> rows;
  for (const auto& g : gens) {
    oracle::Vec r;
    for (const auto& c : pairing_row(L, g)) r.push_back(static_cast<long long>(c));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST(PositiveCone, Examples) {
  auto M = k3_marked();
  EXPECT_TRUE(in_positive_cone(M, {1, 0, 0}, false));
  EXPECT_FALSE(in_positive_cone(M, {1, 0, 0}, true));
  EXPECT_TRUE(in_positive_cone(M, {3, 1, 1}, true));
  EXPECT_FALSE(in_positive_cone(M, {-3, -1, -1}, false));
  EXPECT_FALSE(in_positive_cone(M, {0, 1, 0}, false));
}

TEST(Nef, Examples) {
  auto L = k3_rank3();
  EXPECT_TRUE(is_nef_against({1, 0, 0}, {{0, 1, 0}, {0, 0, 1}}, L));
  auto bad = is_nef_against({0, 1, 0}, {{0, 1, 0}}, L);
  EXPECT_FALSE(bad.nef);
  EXPECT_EQ(*bad.violator, LatticeVector({0, 1, 0}));
  EXPECT_TRUE(is_nef_against({5, -7, 2}, {}, L));
}

TEST(Nef, ReportsFirstViolatorInOrder) {
  auto L = k3_rank3();
  auto r = is_nef_against({0, 1, 1}, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, L);
  ASSERT_FALSE(r.nef);
  EXPECT_EQ(*r.violator, LatticeVector({0, 0, 1}));
}

TEST(ChamberWalk, HandExample) {
  auto M = k3_marked();
  auto res = chamber_walk(M, {{0, 1, 0}, {0, 0, 1}}, {3, 2, 1});
  EXPECT_EQ(res.image, LatticeVector({3, 1, 1}));
  ASSERT_EQ(res.length(), 1u);
  EXPECT_EQ(res.word[0], LatticeVector({0, 1, 0}));
}

TEST(ChamberWalk, AlreadyInChamber) {
  auto M = k3_marked();
  auto res = chamber_walk(M, {{0, 1, 0}, {0, 0, 1}}, {3, 1, 1});
  EXPECT_EQ(res.image, LatticeVector({3, 1, 1}));
  EXPECT_TRUE(res.word.empty());
}

TEST(ChamberWalk, Preconditions) {
  auto M = k3_marked();
  EXPECT_THROW(chamber_walk(M, {{0, 1, 0}}, {1, 0, 0}), PreconditionError);
  EXPECT_THROW(chamber_walk(M, {{0, 1, 0}}, {-3, -1, -1}), PreconditionError);
  EXPECT_THROW(chamber_walk(M, {{0, -1, 0}}, {3, 1, 1}), PreconditionError);
  EXPECT_THROW(chamber_walk(M, {{1, 0, 0}}, {3, 1, 1}), PreconditionError);
}

TEST(ChamberWalk, TwoReflectionRoundTrip) {
  auto M = k3_marked();
  const auto& L = M.space();
  auto rs = root_set(M, 12);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, rs.roots.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& r1 = rs.roots[pick(rng)];
    const auto& r2 = rs.roots[pick(rng)];
    LatticeVector x = reflect_in_root(L, r1, reflect_in_root(L, r2, M.marking()));
    // Every root separating x from H is within the separation bound.
    auto bound = separating_root_degree_bound(M, x);
    auto roots = root_set(M, bound).roots;
    auto res = chamber_walk(M, roots, x);
    EXPECT_EQ(res.image, M.marking()) << "x=" << x << " bound=" << bound;
  }
}

TEST(ChamberWalk, WordReproducesImageAndPreservesNorm) {
  auto M = k3_marked();
  const auto& L = M.space();
  auto roots = root_set(M, 20).roots;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    LatticeVector x = {5, 1, 2};
    for (int k = 0; k < 4; ++k) x = reflect_in_root(L, roots[pick(rng)], x);
    auto res = chamber_walk(M, roots, x);
    LatticeVector y = x;
    Integer prev = M.degree(y);
    for (const auto& r : res.word) {
      y = reflect_in_root(L, r, y);
      EXPECT_EQ(norm(L, y), norm(L, x));
      EXPECT_LT(M.degree(y), prev);
      prev = M.degree(y);
    }
    EXPECT_EQ(y, res.image);
    EXPECT_TRUE(is_nef_against(res.image, roots, L));
    auto other = chamber_walk(M, roots, x, WalkPolicy::kFirstInOrder);
    EXPECT_EQ(other.image, res.image);
  }
}

TEST(ChamberWalk, SeparationBoundIsSufficient) {
  // Any root with <r,H> > 0 > <r,x> must satisfy the bound; check by scanning
  // a generous root set.
  auto M = k3_marked();
  auto roots = root_set(M, 60).roots;
  for (const LatticeVector& x : {LatticeVector{9, 1, 1}, LatticeVector{4, 3, 1}, LatticeVector{10, 7, -1},
                                 LatticeVector{3, 2, 2}}) {
    ASSERT_TRUE(in_positive_cone(M, x, true));
    auto bound = separating_root_degree_bound(M, x);
    for (const auto& r : roots)
      if (inner_product(M.space(), r, x) < 0) {
        EXPECT_LE(M.degree(r), bound) << r << " vs " << x;
      }
  }
}

TEST(DualCone, BlowupOnePoint) {
  auto L = LatticeSpace::diagonal({1, -1});
  RationalCone c(L, {{0, 1}, {1, -1}});
  auto d = dual_cone(c);
  EXPECT_EQ(sorted(d.generators()), sorted({{1, 0}, {1, -1}}));
  EXPECT_TRUE(d.lineality().empty());
}

TEST(DualCone, Orthant) {
  auto L = LatticeSpace::diagonal({1, -1});
  RationalCone c(L, {{1, 0}, {0, 1}});
  auto d = dual_cone(c);
  EXPECT_EQ(sorted(d.generators()), sorted({{1, 0}, {0, -1}}));
}

TEST(DualCone, SingleRayHasLineality) {
  auto L = LatticeSpace::diagonal({1, -1});
  RationalCone c(L, {{1, 0}});
  auto d = dual_cone(c);
  ASSERT_EQ(d.generators().size(), 3u);
  EXPECT_EQ(d.lineality().size(), 1u);
  EXPECT_EQ(sorted(d.generators()), sorted({{1, 0}, {0, 1}, {0, -1}}));
}

TEST(DualCone, RejectsZeroGenerator) {
  auto L = LatticeSpace::diagonal({1, -1});
  EXPECT_THROW(RationalCone(L, {{0, 0}}), InputError);
}

TEST(DualCone, GeneratorsNormalizedAndDeduplicated) {
  auto L = LatticeSpace::diagonal({1, -1});
  RationalCone c(L, {{2, 0}, {1, 0}, {0, 3}});
  EXPECT_EQ(c.generators(), (std::vector<LatticeVector>{{1, 0}, {0, 1}}));
}

TEST(DualCone, MatchesBruteForceAndIsInvolutive) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<long long> diag(n, -1);
    diag[0] = 1 + static_cast<long long>(trial % 2);
    auto L = LatticeSpace::diagonal(diag);
    std::uniform_int_distribution<long long> coord(-3, 3);
    std::vector<LatticeVector> gens;
    const std::size_t count = n + 1 + trial % 4;
    while (gens.size() < count) {
      std::vector<Integer> c(n);
      long long sum = 0;
      for (auto& x : c) {
        long long v = coord(rng);
        x = v;
        sum += v;
      }
      if (sum <= 0) continue;  // keeps the cone inside an open half-space
      gens.emplace_back(std::move(c));
    }
    std::vector<std::vector<Integer>> raw;
    for (const auto& g : gens) raw.push_back(g.coords());
    if (rank_of_vectors(raw, n) < n) continue;
    ++checked;
    RationalCone c(L, gens);
    auto d = dual_cone(c);
    EXPECT_TRUE(d.lineality().empty());
    auto expected = oracle::cone_rays_bruteforce(dual_rows(L, c.generators()), n);
    EXPECT_EQ(oracle::to_vecs(sorted(d.generators())), expected);

    auto ext = extremal_rays(c);
    ASSERT_TRUE(ext.pointed);
    auto expected_ext = oracle::cone_rays_bruteforce(dual_rows(L, d.generators()), n);
    EXPECT_EQ(oracle::to_vecs(sorted(ext.rays)), expected_ext);
    EXPECT_EQ(sorted(dual_cone(d).generators()), sorted(ext.rays));

    // Removing an extremal ray shrinks the cone.
    for (std::size_t i = 0; i < ext.rays.size(); ++i) {
      std::vector<LatticeVector> rest;
      for (std::size_t j = 0; j < ext.rays.size(); ++j)
        if (j != i) rest.push_back(ext.rays[j]);
      if (rest.empty()) continue;
      EXPECT_FALSE(cone_contains(RationalCone(L, rest), ext.rays[i]));
    }
    for (const auto& g : c.generators()) EXPECT_TRUE(cone_contains(c, g));
  }
  EXPECT_GT(checked, 80);
}

TEST(ExtremalRays, MidrayDropped) {
  auto L = LatticeSpace::diagonal({1, -1});
  auto ext = extremal_rays(RationalCone(L, {{0, 1}, {1, -1}, {1, 0}}));
  ASSERT_TRUE(ext.pointed);
  EXPECT_EQ(ext.rays, (std::vector<LatticeVector>{{0, 1}, {1, -1}}));
}

TEST(ExtremalRays, TwoIndependent) {
  auto L = LatticeSpace::diagonal({1, -1});
  auto ext = extremal_rays(RationalCone(L, {{1, 2}, {3, 1}}));
  EXPECT_EQ(ext.rays.size(), 2u);
}

TEST(ExtremalRays, NonPointedReported) {
  auto L = LatticeSpace::diagonal({1, -1, -1});
  auto ext = extremal_rays(RationalCone(L, {{1, 0, 0}, {0, 1, 0}, {0, -1, 0}}));
  EXPECT_FALSE(ext.pointed);
  ASSERT_EQ(ext.lineality.size(), 1u);
  EXPECT_EQ(ext.lineality[0].primitive() == LatticeVector({0, 1, 0}) ||
                ext.lineality[0].primitive() == LatticeVector({0, -1, 0}),
            true);
}

TEST(ExtremalRays, LowerDimensionalPointed) {
  auto L = LatticeSpace::diagonal({1, -1, -1});
  auto ext = extremal_rays(RationalCone(L, {{1, 0, 0}, {1, 1, 0}, {2, 1, 0}}));
  ASSERT_TRUE(ext.pointed);
  EXPECT_EQ(ext.rays, (std::vector<LatticeVector>{{1, 0, 0}, {1, 1, 0}}));
}

TEST(ExtremalRays, TwentySevenLines) {
  std::vector<long long> d(7, -1);
  d[0] = 1;
  auto L = LatticeSpace::diagonal(d);
  MarkedLattice M(L, {3, -1, -1, -1, -1, -1, -1});
  ClassQuery q{-1, 2, false, {{LatticeVector{-3, 1, 1, 1, 1, 1, 1}, -1}}};
  auto lines = classes_of_norm(M, q);
  ASSERT_EQ(lines.size(), 27u);
  auto ext = extremal_rays(RationalCone(L, lines));
  ASSERT_TRUE(ext.pointed);
  EXPECT_EQ(ext.rays.size(), 27u);
  // The dual (nef cone of the cubic surface) is rational polyhedral.
  auto nef = dual_cone(RationalCone(L, lines));
  EXPECT_TRUE(nef.lineality().empty());
  EXPECT_FALSE(nef.generators().empty());
  for (const auto& v : nef.generators()) EXPECT_TRUE(is_nef_against(v, lines, L));
}

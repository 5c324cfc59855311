#include <conewalk/isometry.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace conewalk;
using testing_support::k3_rank3;

namespace {

MarkedLattice k3_marked() { return MarkedLattice(k3_rank3(), {3, 1, 1}); }

// x -> x + <x,e>a - <x,a>e + 2<x,e>e with e = (1,0,0), a = (0,1,-1),
// evaluated column by column straight from the formula.
IntMatrix eichler_from_formula(const LatticeSpace& L) {
  const LatticeVector e{1, 0, 0}, a{0, 1, -1};
  IntMatrix m(3, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    LatticeVector x = LatticeVector::basis(3, c);
    LatticeVector y = x + inner_product(L, x, e) * a - inner_product(L, x, a) * e +
                      Integer(2) * inner_product(L, x, e) * e;
    for (std::size_t r = 0; r < 3; ++r) m(r, c) = y[r];
  }
  return m;
}

}  // namespace

TEST(MakeIsometry, Examples) {
  auto L = k3_rank3();
  EXPECT_NO_THROW(make_isometry(L, IntMatrix::identity(3)));
  EXPECT_NO_THROW(make_isometry(L, IntMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
  EXPECT_NO_THROW(make_isometry(L, IntMatrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
  try {
    make_isometry(L, IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
    FAIL() << "expected rejection";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("entry (1,1)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(make_isometry(L, IntMatrix::identity(2)), InputError);
}

TEST(MakeIsometry, FrozenMatrices) {
  auto L = k3_rank3();
  auto g = compose(reflection_isometry(L, {4, 2, -1}), reflection_isometry(L, {0, 0, 1}));
  EXPECT_EQ(g.matrix(), (IntMatrix{{29, 0, -24}, {14, 1, -12}, {-6, 0, 5}}));
  EXPECT_EQ(eichler_from_formula(L), (IntMatrix{{1, 4, 0}, {0, 2, 1}, {0, -1, 0}}));
  EXPECT_NO_THROW(make_isometry(L, eichler_from_formula(L)));
}

TEST(PositiveCone, Preservation) {
  auto M = k3_marked();
  const auto& L = M.space();
  EXPECT_TRUE(preserves_positive_cone(M, identity_isometry(L)));
  EXPECT_FALSE(preserves_positive_cone(M, make_isometry(L, IntMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})));
  for (const auto& r : root_set(M, 12).roots) {
    EXPECT_TRUE(preserves_positive_cone(M, reflection_isometry(L, r)));
    // <s_r H, H> = H^2 + <H,r>^2
    EXPECT_EQ(M.degree(reflection_isometry(L, r)(M.marking())),
              M.marking_norm() + M.degree(r) * M.degree(r));
  }
}

TEST(Classify, Trichotomy) {
  auto M = k3_marked();
  const auto& L = M.space();

  auto id = classify(M, identity_isometry(L));
  EXPECT_EQ(id.type, IsometryType::kElliptic);
  EXPECT_EQ(*id.order, 1);

  for (const auto& r : root_set(M, 9).roots) {
    auto k = classify(M, reflection_isometry(L, r));
    EXPECT_EQ(k.type, IsometryType::kElliptic);
    EXPECT_EQ(*k.order, 2);
  }

  auto swap = classify(M, make_isometry(L, IntMatrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
  EXPECT_EQ(swap.type, IsometryType::kElliptic);
  EXPECT_EQ(*swap.order, 2);

  auto e = make_isometry(L, eichler_from_formula(L));
  auto pk = classify(M, e);
  EXPECT_EQ(pk.type, IsometryType::kParabolic);
  EXPECT_EQ(*pk.fixed_ray, LatticeVector({1, 0, 0}));
  EXPECT_EQ(pk.charpoly, (Polynomial{-1, 3, -3, 1}));

  auto g = compose(reflection_isometry(L, {4, 2, -1}), reflection_isometry(L, {0, 0, 1}));
  auto hk = classify(M, g);
  EXPECT_EQ(hk.type, IsometryType::kHyperbolic);
  EXPECT_EQ(*hk.certificate, (Polynomial{1, -34, 1}));
  EXPECT_FALSE(cyclotomic_index(*hk.certificate));
  EXPECT_EQ(inner_product(L, LatticeVector{4, 2, -1}, LatticeVector{0, 0, 1}), 6);
}

TEST(Classify, RejectsComponentSwap) {
  auto M = k3_marked();
  auto minus = make_isometry(M.space(), IntMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
  EXPECT_THROW(classify(M, minus), PreconditionError);
}

TEST(Order, Examples) {
  auto L = k3_rank3();
  EXPECT_EQ(*order(identity_isometry(L)), 1);
  EXPECT_EQ(*order(reflection_isometry(L, {0, 1, 0})), 2);
  EXPECT_FALSE(order(make_isometry(L, eichler_from_formula(L))));
  // -I has order 2 even though classify refuses it.
  EXPECT_EQ(*order(make_isometry(L, IntMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})), 2);
}

TEST(Order, DivisorMinimality) {
  // Products of reflections in E8-like root systems give many finite orders.
  std::vector<long long> d(7, -1);
  d[0] = 1;
  auto L = LatticeSpace::diagonal(d);
  // Simple roots of E6 inside the cubic surface lattice.
  std::vector<LatticeVector> simple = {{0, 1, -1, 0, 0, 0, 0}, {0, 0, 1, -1, 0, 0, 0}, {0, 0, 0, 1, -1, 0, 0},
                                       {0, 0, 0, 0, 1, -1, 0}, {0, 0, 0, 0, 0, 1, -1}, {1, -1, -1, -1, 0, 0, 0}};
  auto minus_two = [&](const LatticeVector& v) { return norm(L, v) == -2; };
  for (const auto& s : simple) ASSERT_TRUE(minus_two(s));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, simple.size() - 1);
  for (int t = 0; t < 40; ++t) {
    LatticeIsometry g = identity_isometry(L);
    for (int k = 0; k < 1 + t % 6; ++k) g = compose(reflection_isometry(L, simple[pick(rng)]), g);
    auto n = order(g);
    ASSERT_TRUE(n) << "the Weyl group of E6 is finite";
    EXPECT_EQ(power(g, *n).matrix(), IntMatrix::identity(7));
    for (Integer dv = 1; dv < *n; ++dv)
      if (*n % dv == 0) {
        EXPECT_NE(power(g, dv).matrix(), IntMatrix::identity(7));
      }
    EXPECT_EQ(finite_order_bound(7) % *n, 0);
  }
  // Coxeter element of E6 has order 12.
  LatticeIsometry c = identity_isometry(L);
  for (const auto& s : simple) c = compose(reflection_isometry(L, s), c);
  EXPECT_EQ(*order(c), 12);
}

TEST(ParabolicRay, Examples) {
  auto M = k3_marked();
  const auto& L = M.space();
  auto e = make_isometry(L, eichler_from_formula(L));
  EXPECT_EQ(parabolic_fixed_ray(M, e), LatticeVector({1, 0, 0}));
  EXPECT_EQ(parabolic_fixed_ray(M, compose(e, e)), LatticeVector({1, 0, 0}));
  EXPECT_EQ(parabolic_fixed_ray(M, inverse(e)), LatticeVector({1, 0, 0}));
  EXPECT_THROW(parabolic_fixed_ray(M, reflection_isometry(L, {0, 1, 0})), PreconditionError);
  EXPECT_EQ(compose(e, e).matrix(), (IntMatrix{{1, 12, 4}, {0, 3, 2}, {0, -2, -1}}));
  EXPECT_EQ(compose(e, inverse(e)).matrix(), IntMatrix::identity(3));
}

TEST(Classify, ConjugationAndPowerInvariance) {
  auto M = k3_marked();
  const auto& L = M.space();
  auto roots = root_set(M, 12).roots;
  auto e = make_isometry(L, eichler_from_formula(L));
  auto g = compose(reflection_isometry(L, {4, 2, -1}), reflection_isometry(L, {0, 0, 1}));
  std::vector<std::pair<LatticeIsometry, IsometryType>> base = {
      {identity_isometry(L), IsometryType::kElliptic},
      {reflection_isometry(L, {0, 1, 0}), IsometryType::kElliptic},
      {e, IsometryType::kParabolic},
      {g, IsometryType::kHyperbolic}};
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
  for (int t = 0; t < 30; ++t) {
    LatticeIsometry h = identity_isometry(L);
    for (int k = 0; k < 1 + t % 3; ++k) h = compose(reflection_isometry(L, roots[pick(rng)]), h);
    ASSERT_TRUE(preserves_positive_cone(M, h));
    for (const auto& [x, type] : base) {
      auto conj = compose(compose(h, x), inverse(h));
      auto k = classify(M, conj);
      EXPECT_EQ(k.type, type);
      if (type == IsometryType::kParabolic) {
        // h maps the fixed ray of x to the fixed ray of h x h^-1.
        EXPECT_EQ(*k.fixed_ray, h(LatticeVector{1, 0, 0}));
        EXPECT_EQ(norm(L, *k.fixed_ray), 0);
        EXPECT_GT(M.degree(*k.fixed_ray), 0);
        EXPECT_TRUE(k.fixed_ray->is_primitive());
      }
    }
  }
  for (std::uint64_t p = 1; p <= 5; ++p) {
    EXPECT_EQ(classify(M, power(g, p)).type, IsometryType::kHyperbolic);
    EXPECT_EQ(classify(M, power(e, p)).type, IsometryType::kParabolic);
    EXPECT_EQ(classify(M, power(reflection_isometry(L, {0, 1, 0}), p)).type, IsometryType::kElliptic);
  }
}

TEST(SpectralProbe, AgreesWithExactClassification) {
  auto M = k3_marked();
  const auto& L = M.space();
  auto g = compose(reflection_isometry(L, {4, 2, -1}), reflection_isometry(L, {0, 0, 1}));
  auto e = make_isometry(L, eichler_from_formula(L));
  const double rho_g = testing_support::spectral_radius_probe(g.matrix());
  EXPECT_GT(rho_g, 1 + 1e-6);
  EXPECT_NEAR(rho_g, 17 + std::sqrt(288.0), 1e-6);
  EXPECT_NEAR(testing_support::spectral_radius_probe(e.matrix()), 1.0, 1e-6);
  EXPECT_NEAR(testing_support::spectral_radius_probe(IntMatrix::identity(3)), 1.0, 1e-6);
  EXPECT_NEAR(testing_support::spectral_radius_probe(reflection_matrix(L, {0, 1, 0})), 1.0, 1e-6);
}

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace ambient_cycles;
using namespace ambient_cycles::testing;

namespace {

DistanceMatrix4 planar_matrix(const std::array<Vec2, 4>& p) {
  DistanceMatrix4 d{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) d[i][j] = std::hypot(p[i].x - p[j].x, p[i].y - p[j].y);
  return d;
}

DistanceMatrix4 permuted(const DistanceMatrix4& d, const std::array<std::size_t, 4>& perm) {
  DistanceMatrix4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = d[perm[i]][perm[j]];
  return out;
}

void expect_matches_oracle(const DistanceMatrix4& d) {
  const auto fast = four_point_persistence(d);
  const auto slow = brute_force_rips_h1(d);
  EXPECT_EQ(fast.trivial, !slow.bar.has_value());
  if (slow.bar) {
    EXPECT_NEAR(fast.birth, slow.bar->first, 1e-12);
    EXPECT_NEAR(fast.death, slow.bar->second, 1e-12);
  }
}

template <Surface S>
double systole(S) {
  if constexpr (std::is_same_v<S, ProjectivePlane>) {
    return std::numbers::pi;
  } else if constexpr (std::is_same_v<S, GenusTwo>) {
    // shortest translation length 2 acosh(|tr|/2) over the orbit table
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : GenusTwo::default_table().entries())
      if (e.displacement > 0)
        best = std::min(best, 2.0 * std::acosh(std::abs(e.element.matrix().trace()) / 2.0));
    return best;
  } else {
    return 1.0;
  }
}

template <class S>
class PersistenceProperties : public ::testing::Test {};

using AllSurfaces = ::testing::Types<Torus, KleinBottle, ProjectivePlane, GenusTwo>;
TYPED_TEST_SUITE(PersistenceProperties, AllSurfaces);

}  // namespace

TEST(FourPointPersistence, UnitSquare) {
  const auto d = planar_matrix({{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}});
  const auto r = four_point_persistence(d);
  ASSERT_FALSE(r.trivial);
  EXPECT_NEAR(r.birth, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.death, 2.0, 1e-15);
  EXPECT_FALSE(r.degenerate);
  // diagonals are {0,1} and {2,3}; the cycle alternates between them
  EXPECT_EQ(r.cycle_order, (std::array<std::size_t, 4>{0, 2, 1, 3}));
  expect_matches_oracle(d);
  const auto oracle = brute_force_rips_h1(d);
  EXPECT_NEAR(oracle.bar->first, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(oracle.bar->second, 2.0, 1e-15);
}

TEST(FourPointPersistence, TrivialExamples) {
  const auto collinear = planar_matrix({{{0, 0}, {1, 0.01}, {2, -0.01}, {3.2, 0.02}}});
  EXPECT_TRUE(four_point_persistence(collinear).trivial);
  expect_matches_oracle(collinear);

  const double h = std::sqrt(3.0) / 2.0;
  const auto triangle = planar_matrix({{{0, 0}, {1, 0}, {0.5, h}, {0.5, h / 3.0}}});
  EXPECT_TRUE(four_point_persistence(triangle).trivial);
  EXPECT_FALSE(brute_force_rips_h1(triangle).bar.has_value());
}

TEST(FourPointPersistence, TiesAreDegenerate) {
  // a rhombus whose short diagonal equals its side
  const double h = std::sqrt(3.0) / 2.0;
  const auto rhombus = planar_matrix({{{0, 0}, {1, 0}, {0.5, h}, {0.5, -h}}});
  const auto r = four_point_persistence(rhombus);
  EXPECT_TRUE(r.trivial);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(brute_force_rips_h1(rhombus).tied);
}

TEST(FourPointPersistence, InvalidMatrices) {
  auto d = planar_matrix({{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}});
  auto bad = d;
  bad[0][1] += 1e-6;
  EXPECT_THROW(four_point_persistence(bad), InputError);
  bad = d;
  bad[2][2] = 0.1;
  EXPECT_THROW(four_point_persistence(bad), InputError);
  bad = d;
  bad[0][3] = bad[3][0] = 0.0;
  EXPECT_THROW(four_point_persistence(bad), InputError);
}

TEST(FourPointPersistence, RelabellingInvariance) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coord(-1, 1);
  std::size_t persistent = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto d = planar_matrix({{{coord(rng), coord(rng)}, {coord(rng), coord(rng)},
                                   {coord(rng), coord(rng)}, {coord(rng), coord(rng)}}});
    const auto base = four_point_persistence(d);
    persistent += !base.trivial;
    std::array<std::size_t, 4> perm{0, 1, 2, 3};
    do {
      const auto r = four_point_persistence(permuted(d, perm));
      ASSERT_EQ(r.trivial, base.trivial);
      EXPECT_EQ(r.birth, base.birth);
      EXPECT_EQ(r.death, base.death);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  EXPECT_GT(persistent, 0u);
}

TEST(MinimalCycleGraph, SquareExample) {
  const auto d = planar_matrix({{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}});
  const auto r = four_point_persistence(d);
  for (double eps : {1.6, r.birth, r.death - 1e-12}) {
    const auto g = minimal_cycle_graph(d, r, eps);
    ASSERT_EQ(g.edges.size(), 4u);
    EXPECT_FALSE(g.has_edge(0, 1));
    EXPECT_FALSE(g.has_edge(2, 3));
    EXPECT_EQ(cycle_basis(g).fundamental_cycles.size(), 1u);
  }
  EXPECT_THROW(minimal_cycle_graph(d, r, r.birth - 1e-9), InputError);
  EXPECT_THROW(minimal_cycle_graph(d, r, r.death), InputError);
  EXPECT_THROW(minimal_cycle_graph(d, QuadrupleResult{}, 1.6), InputError);
}

TEST(ClassifyQuadruple, TorusWrap) {
  const LiftedPointCloud<Torus> cloud{{{0.05, 0.5}, {0.30, 0.48}, {0.55, 0.5}, {0.80, 0.52}}};
  const auto r = classify_quadruple(cloud);
  ASSERT_FALSE(r.trivial);
  ASSERT_TRUE(r.homology.has_value());
  EXPECT_EQ(*r.homology, (AbelianClass{{1, 0}, {}}));
  EXPECT_FALSE(r.degenerate);

  // brute-force the loop product along the 4-cycle over the window [-2, 2]^2
  const auto window = lattice_window(2);
  LatticeElement total{0, 0};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& p = cloud.points[r.cycle_order[k]];
    const auto& q = cloud.points[r.cycle_order[(k + 1) % 4]];
    LatticeElement best{0, 0};
    for (const auto& g : window)
      if (Torus::distance(p, Torus::act(g, q)) < Torus::distance(p, Torus::act(best, q))) best = g;
    total = Torus::multiply(total, best);
  }
  EXPECT_EQ(std::abs(total.n), 1);
  EXPECT_EQ(total.m, 0);
}

TEST(ClassifyQuadruple, TrivialHasNoClass) {
  const LiftedPointCloud<Torus> cloud{{{0.1, 0.1}, {0.2, 0.1}, {0.3, 0.1}, {0.42, 0.11}}};
  const auto r = classify_quadruple(cloud);
  EXPECT_TRUE(r.trivial);
  EXPECT_FALSE(r.homology.has_value());
  EXPECT_THROW(classify_quadruple(LiftedPointCloud<Torus>{{{0.1, 0.1}}}), InputError);
}

TYPED_TEST(PersistenceProperties, MatchesBruteForceOracle) {
  using S = TypeParam;
  std::size_t tied = 0;
  const std::size_t n = 5000;
  const auto points = sample_uniform<S>(4 * n, 77);
  for (std::size_t q = 0; q < n; ++q) {
    LiftedPointCloud<S> cloud{{points.begin() + 4 * q, points.begin() + 4 * q + 4}};
    const auto d = distance_matrix(PairwiseDistances<S>::compute(cloud));
    const auto oracle = brute_force_rips_h1(d);
    if (oracle.tied) {
      ++tied;
      continue;
    }
    const auto r = four_point_persistence(d);
    ASSERT_EQ(r.trivial, !oracle.bar.has_value());
    if (oracle.bar) {
      ASSERT_NEAR(r.birth, oracle.bar->first, 1e-12);
      ASSERT_NEAR(r.death, oracle.bar->second, 1e-12);
    }
  }
  EXPECT_LT(tied, n / 1000 + 1);
}

TYPED_TEST(PersistenceProperties, ClassIndependentOfLifts) {
  using S = TypeParam;
  std::mt19937_64 rng(78);
  const std::size_t n = 400;
  const auto points = sample_uniform<S>(4 * n, 79);
  std::size_t compared = 0;
  for (std::size_t q = 0; q < n; ++q) {
    LiftedPointCloud<S> cloud{{points.begin() + 4 * q, points.begin() + 4 * q + 4}};
    const auto base = classify_quadruple(cloud);
    if (base.trivial || base.degenerate) continue;
    for (auto& p : cloud.points) p = S::act(S::random_element(rng, kLiftSpread), p);
    const auto moved = classify_quadruple(cloud);
    ASSERT_FALSE(moved.trivial);
    EXPECT_EQ(*moved.homology, *base.homology);
    EXPECT_NEAR(moved.birth, base.birth, 1e-9);
    EXPECT_NEAR(moved.death, base.death, 1e-9);
    ++compared;
  }
  EXPECT_GT(compared, 10u);
}

TYPED_TEST(PersistenceProperties, SmallBallIsTrivialOrZero) {
  using S = TypeParam;
  std::mt19937_64 rng(80);
  const double radius = 0.95 * systole(S{}) / 4.0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto centre = S::sample(rng);
    LiftedPointCloud<S> cloud;
    for (int k = 0; k < 4; ++k)
      cloud.points.push_back(S::act(S::random_element(rng, kLiftSpread), jitter<S>(rng, centre, radius)));
    const auto r = classify_quadruple(cloud);
    if (!r.trivial) {
      EXPECT_TRUE(r.homology->is_zero());
    }
  }
}

TEST(PersistenceProperties, GenusTwoSystole) {
  EXPECT_NEAR(systole(GenusTwo{}), 2.0 * std::acosh(1.0 + std::sqrt(2.0)), 1e-9);
}

TEST(PrincipalPersistenceMeasure, Basics) {
  EXPECT_THROW(principal_persistence_measure<Torus>(0, 1), InputError);
  const auto one = principal_persistence_measure<Torus>(1, 1);
  EXPECT_EQ(one.total, 1u);
  EXPECT_LE(one.persistent, 1u);

  const auto a = principal_persistence_measure<KleinBottle>(3000, 5, {}, 1);
  const auto b = principal_persistence_measure<KleinBottle>(3000, 5, {}, 3);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    EXPECT_EQ(a.points[k].index, b.points[k].index);
    EXPECT_EQ(a.points[k].birth, b.points[k].birth);
    EXPECT_EQ(a.points[k].death, b.points[k].death);
    EXPECT_EQ(a.points[k].homology, b.points[k].homology);
  }
  EXPECT_EQ(a.class_counts, b.class_counts);
  EXPECT_EQ(a.persistent, a.points.size());
  EXPECT_DOUBLE_EQ(a.phi_bar, static_cast<double>(a.persistent) / 3000.0);
  std::size_t counted = 0;
  for (const auto& [name, count] : a.class_counts) counted += count;
  std::size_t degenerate_persistent = 0;
  for (const auto& p : a.points) degenerate_persistent += p.degenerate;
  EXPECT_EQ(counted + degenerate_persistent, a.persistent);
}

TEST(PrincipalPersistenceMeasure, SystoleBounds) {
  const auto torus = principal_persistence_measure<Torus>(20'000, 11);
  for (const auto& p : torus.points)
    if (!p.homology->is_zero()) {
      EXPECT_GE(p.birth, 0.25 - 1e-9);
    }
  const auto rp2 = principal_persistence_measure<ProjectivePlane>(20'000, 12);
  for (const auto& p : rp2.points)
    if (!p.homology->is_zero()) {
      EXPECT_GE(p.birth, std::numbers::pi / 4 - 1e-9);
    }
}

#include <gtest/gtest.h>

#include "flatcover/core/cost.hpp"
#include "flatcover/core/rng.hpp"
#include "flatcover/fitting/best_fit.hpp"
#include "flatcover/fitting/hyperplane_fit.hpp"
#include "support/oracles.hpp"

namespace fc = flatcover;
using fc::Rational;

namespace {

fc::FloatCloud cloud2(std::initializer_list<std::pair<double, double>> pts) {
  fc::FloatCloud c(2);
  for (auto [x, y] : pts) c.add({x, y});
  return c;
}

std::vector<long> ints(const fc::Hyperplane& h) {
  std::vector<long> out;
  for (const auto& z : h.coeffs()) out.push_back(z.get_si());
  return out;
}

}  // namespace

TEST(Centroid, SinglePoint) {
  fc::FloatCloud c(3);
  c.add({1, -2, 4}, 9);
  EXPECT_EQ(fc::centroid(c), (Eigen::Vector3d(1, -2, 4)));
}

TEST(Centroid, Midpoint) { EXPECT_EQ(fc::centroid(cloud2({{0, 0}, {2, 4}})), (Eigen::Vector2d(1, 2))); }

TEST(Centroid, MultiplicityWeights) {
  fc::FloatCloud c(2);
  c.add({0, 0}, 3);
  c.add({4, 0});
  EXPECT_EQ(fc::centroid(c), (Eigen::Vector2d(1, 0)));
  fc::ExactCloud e(2);
  e.add({Rational(0), Rational(0)}, 3);
  e.add({Rational(4), Rational(1)});
  EXPECT_EQ(fc::centroid(e), (fc::ExactVector{Rational(1), Rational(1, 4)}));
}

TEST(Centroid, EmptyThrows) { EXPECT_THROW(fc::centroid(fc::FloatCloud(2)), std::invalid_argument); }

TEST(BestFit, CollinearHasZeroCost) {
  const auto c = cloud2({{0, 1}, {1, 3}, {2, 5}, {-3, -5}});
  const auto fit = fc::best_fit_flat(c, 1);
  EXPECT_NEAR(fit.cost, 0.0, 1e-24);
  for (const auto& r : c.records()) EXPECT_NEAR(fc::dist2_point_flat(fc::as_vector(r), fit.flat), 0.0, 1e-24);
}

TEST(BestFit, PointFlatIsCentroid) {
  fc::FloatCloud c(2);
  c.add({0, 0}, 3);
  c.add({4, 0});
  const auto fit = fc::best_fit_flat(c, 0);
  EXPECT_EQ(fit.flat.flat_dim(), 0);
  EXPECT_NEAR((fit.flat.offset() - Eigen::Vector2d(1, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(fit.cost, 3 * 1.0 + 9.0, 1e-12);
}

TEST(BestFit, ThreePointTriangle) {
  const auto c = cloud2({{0, 0}, {1, 1}, {2, 0}});
  const auto fit = fc::best_fit_flat(c, 1);
  EXPECT_NEAR(fit.cost, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::abs(fit.flat.basis()(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(fit.flat.offset()(1), 1.0 / 3.0, 1e-15);
  std::vector<oracle::P2> pts{{0, 0}, {1, 1}, {2, 0}};
  EXPECT_NEAR(oracle::angle_sweep_best_line(pts), fit.cost, 1e-12);
}

TEST(BestFit, CostMatchesTotalCost) {
  fc::CounterRng rng(3);
  fc::FloatCloud c(3);
  for (int i = 0; i < 40; ++i) c.add({rng.uniform(), 2 * rng.uniform(), rng.uniform()}, 1 + rng.below(4));
  for (int r = 0; r < 3; ++r) {
    const auto fit = fc::best_fit_flat(c, r);
    const fc::AffineFlat one[] = {fit.flat};
    EXPECT_NEAR(fit.cost, fc::total_cost(c, one), 1e-9 * fit.cost);
  }
}

TEST(BestFit, RankOutOfRangeThrows) {
  const auto c = cloud2({{0, 0}, {1, 1}});
  EXPECT_THROW(fc::best_fit_flat(c, 2), std::invalid_argument);
  EXPECT_THROW(fc::best_fit_flat(c, -1), std::invalid_argument);
}

TEST(HyperplaneFit, Diagonal) {
  EXPECT_EQ(ints(fc::fit_hyperplane_exact({{0, 0}, {1, 1}})), (std::vector<long>{0, 1, -1}));
}

TEST(HyperplaneFit, SimplexPlane) {
  const auto h = fc::fit_hyperplane_exact({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(ints(h), (std::vector<long>{-1, 1, 1, 1}));
}

TEST(HyperplaneFit, SinglePointCompletion) {
  EXPECT_EQ(ints(fc::fit_hyperplane_exact({{2, 3, 5}})), (std::vector<long>{-5, 0, 0, 1}));
}

TEST(HyperplaneFit, RationalPoints) {
  const auto h = fc::fit_hyperplane_exact({{Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 3)}});
  EXPECT_TRUE(h.contains({Rational(1, 2), Rational(0)}));
  EXPECT_TRUE(h.contains({Rational(0), Rational(1, 3)}));
  EXPECT_EQ(ints(h), (std::vector<long>{-1, 2, 3}));
}

TEST(HyperplaneFit, DependentPointsThrow) {
  EXPECT_THROW(fc::fit_hyperplane_exact({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
  EXPECT_THROW(fc::fit_hyperplane_exact({{1, 1}, {1, 1}}), std::invalid_argument);
}

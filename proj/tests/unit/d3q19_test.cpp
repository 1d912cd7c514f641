#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "ldp/d3q19.hpp"
#include "ldp/error.hpp"
#include "oracles.hpp"

namespace ldp::lb {
namespace {

const D3Q19Model kModel = make_d3q19();

TEST(D3Q19, TablesMatchIndependentRestatement) {
  for (std::size_t i = 0; i < kQ; ++i) {
    for (std::size_t d = 0; d < 3; ++d) {
      EXPECT_EQ(kModel.cv[i][d], oracle::kCv[i][d]);
    }
    EXPECT_EQ(kModel.wv[i], oracle::weight(static_cast<int>(i)));
  }
  EXPECT_EQ(kModel.cs2, 1.0 / 3.0);
}

TEST(D3Q19, ClosedUnderNegation) {
  for (std::size_t i = 0; i < kQ; ++i) {
    const std::size_t j = opposite(i);
    EXPECT_EQ(opposite(j), i);
    EXPECT_EQ(kModel.wv[i], kModel.wv[j]);
    for (std::size_t d = 0; d < 3; ++d) {
      EXPECT_EQ(kModel.cv[j][d], -kModel.cv[i][d]);
    }
  }
}

// sum w = 1, sum w c = 0, sum w c_a c_b = cs2 delta_ab, odd third moments 0,
// sum w c_a c_a c_b c_b = cs2^2 (1 + 2 delta_ab).
TEST(D3Q19, LatticeMomentIdentities) {
  double w0 = 0.0;
  for (std::size_t i = 0; i < kQ; ++i) w0 += kModel.wv[i];
  EXPECT_NEAR(w0, 1.0, 1e-15);
  for (int a = 0; a < 3; ++a) {
    double m1 = 0.0;
    for (std::size_t i = 0; i < kQ; ++i) m1 += kModel.wv[i] * kModel.cv[i][a];
    EXPECT_NEAR(m1, 0.0, 1e-15);
    for (int b = 0; b < 3; ++b) {
      double m2 = 0.0;
      double m4 = 0.0;
      for (std::size_t i = 0; i < kQ; ++i) {
        const double ca = kModel.cv[i][a];
        const double cb = kModel.cv[i][b];
        m2 += kModel.wv[i] * ca * cb;
        m4 += kModel.wv[i] * ca * ca * cb * cb;
      }
      EXPECT_NEAR(m2, a == b ? kModel.cs2 : 0.0, 1e-15);
      EXPECT_NEAR(m4, kModel.cs2 * kModel.cs2 * (a == b ? 3.0 : 1.0), 1e-15);
      for (int c = 0; c < 3; ++c) {
        double m3 = 0.0;
        for (std::size_t i = 0; i < kQ; ++i) {
          m3 += kModel.wv[i] * kModel.cv[i][a] * kModel.cv[i][b] * kModel.cv[i][c];
        }
        EXPECT_NEAR(m3, 0.0, 1e-15);
      }
    }
  }
}

TEST(D3Q19, RejectsUnstableTau) {
  EXPECT_THROW((void)make_d3q19(0.5, 1.0), ConfigError);
  EXPECT_THROW((void)make_d3q19(1.0, 0.4), ConfigError);
  EXPECT_NO_THROW((void)make_d3q19(0.51, 2.0));
}

TEST(Moments, RestState) {
  const auto feq = equilibrium(1.0, {0, 0, 0}, kModel);
  for (std::size_t i = 0; i < kQ; ++i) EXPECT_EQ(feq[i], kModel.wv[i]);
  const auto m = moments(feq, kModel);
  EXPECT_NEAR(m.rho, 1.0, 1e-15);
  for (double u : m.u) EXPECT_NEAR(u, 0.0, 1e-15);
}

TEST(Moments, SingularDensity) {
  Populations zero{};
  EXPECT_THROW((void)moments(zero, kModel), SingularStateError);
}

TEST(Equilibrium, ReproducesItsMoments) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> rho(0.5, 2.0);
  std::uniform_real_distribution<double> vel(-0.1, 0.1);
  for (int t = 0; t < 200; ++t) {
    const double r = rho(rng);
    const std::array<double, 3> u{vel(rng), vel(rng), vel(rng)};
    const auto feq = equilibrium(r, u, kModel);
    const auto m = moments(feq, kModel);
    EXPECT_NEAR(m.rho, r, 1e-14);
    for (int d = 0; d < 3; ++d) EXPECT_NEAR(m.u[d], u[d], 1e-14);
  }
}

TEST(Equilibrium, MatchesDefiningFormula) {
  const std::array<double, 3> u{0.02, -0.01, 0.03};
  const auto feq = equilibrium(1.1, u, kModel);
  const double cs2 = 1.0 / 3.0;
  const double usq = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  for (int i = 0; i < 19; ++i) {
    const double cu = oracle::kCv[i][0] * u[0] + oracle::kCv[i][1] * u[1] + oracle::kCv[i][2] * u[2];
    const double want = oracle::weight(i) * 1.1 *
                        (1.0 + cu / cs2 + (cu * cu) / (2.0 * cs2 * cs2) - usq / (2.0 * cs2));
    EXPECT_EQ(feq[i], want);
  }
}

// Reflecting u -> -u permutes populations onto their opposites.
TEST(Equilibrium, ReflectionSymmetry) {
  const std::array<double, 3> u{0.03, 0.01, -0.02};
  const auto a = equilibrium(1.0, u, kModel);
  const auto b = equilibrium(1.0, {-u[0], -u[1], -u[2]}, kModel);
  for (std::size_t i = 0; i < kQ; ++i) EXPECT_NEAR(a[i], b[opposite(i)], 1e-16);
}

TEST(Bgk, Examples) {
  Populations f{};
  Populations feq{};
  for (std::size_t i = 0; i < kQ; ++i) {
    f[i] = 0.1 * static_cast<double>(i);
    feq[i] = 0.05;
  }
  const auto one = bgk_relax(f, feq, 1.0);
  for (std::size_t i = 0; i < kQ; ++i) EXPECT_NEAR(one[i], feq[i], 1e-15);
  const auto same = bgk_relax(feq, feq, 0.8);
  for (std::size_t i = 0; i < kQ; ++i) EXPECT_EQ(same[i], feq[i]);
  const auto two = bgk_relax(f, feq, 2.0);
  for (std::size_t i = 0; i < kQ; ++i) EXPECT_NEAR(two[i], 0.5 * (f[i] + feq[i]), 1e-15);
  EXPECT_THROW((void)bgk_relax(f, feq, 0.5), ConfigError);
}

// BGK toward an equilibrium with the same moments keeps those moments.
TEST(Bgk, ConservesDensityAndMomentum) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  for (int t = 0; t < 100; ++t) {
    auto f = equilibrium(1.0, {0.01, 0.02, -0.03}, kModel);
    for (auto& v : f) v *= 1.0 + jitter(rng);
    const auto m = moments(f, kModel);
    const auto out = bgk_relax(f, equilibrium(m.rho, m.u, kModel), 0.7);
    const auto m2 = moments(out, kModel);
    EXPECT_NEAR(m2.rho, m.rho, 1e-14);
    for (int d = 0; d < 3; ++d) EXPECT_NEAR(m2.rho * m2.u[d], m.rho * m.u[d], 1e-15);
  }
}

}  // namespace
}  // namespace ldp::lb

#include "plate/profile.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace plate;

namespace {

// mpmath values at tau = 1 (tests/oracles/ball_oracle.py).
struct ConstantsRef
{
  int N;
  double R1, dR1, C1, cN, C2, eta;
};
ConstantsRef const kConstants[] = {
    {2, 0.80275098202776499501, 0.76102982231367084668, 1.0365388458512378939, 0.011048543456039805069,
     0.0048916636946696155208, 0.001193830143401284671},
    {3, 0.46984469859792429511, 0.44869009873367562771, 0.56438889496948635285, 0.011023618416445829686,
     0.0028777278386693307518, 0.0010285002873966695203},
};

// u_k(x) = rho(|x|) x_k / |x|
double trial_field(RadialProfile const &p, std::vector<double> x, int k)
{
  double r = 0.0;
  for (double v : x) {
    r += v * v;
  }
  r = std::sqrt(r);
  return rho(p, r, 0) * x[k] / r;
}

// sum_k |D^2 u_k|^2 + tau |D u_k|^2 by fourth-order central differences.
double energy_by_differences(RadialProfile const &p, std::vector<double> const &x)
{
  int const N = p.dim();
  double const h = 1e-3;
  double total = 0.0;
  auto shifted = [&](int i, double di, int j, double dj) {
    std::vector<double> y = x;
    y[i] += di;
    y[j] += dj;
    return y;
  };
  for (int k = 0; k < N; ++k) {
    auto u = [&](std::vector<double> const &y) { return trial_field(p, y, k); };
    for (int i = 0; i < N; ++i) {
      double const d = (-u(shifted(i, 2 * h, i, 0)) + 8 * u(shifted(i, h, i, 0)) - 8 * u(shifted(i, -h, i, 0)) +
                        u(shifted(i, -2 * h, i, 0))) /
                       (12 * h);
      total += p.tau() * d * d;
      for (int j = 0; j < N; ++j) {
        double dd;
        if (i == j) {
          dd = (-u(shifted(i, 2 * h, i, 0)) + 16 * u(shifted(i, h, i, 0)) - 30 * u(x) + 16 * u(shifted(i, -h, i, 0)) -
                u(shifted(i, -2 * h, i, 0))) /
               (12 * h * h);
        } else {
          dd = (u(shifted(i, h, j, h)) - u(shifted(i, h, j, -h)) - u(shifted(i, -h, j, h)) + u(shifted(i, -h, j, -h))) /
               (4 * h * h);
        }
        total += dd * dd;
      }
    }
  }
  return total;
}

} // namespace

TEST(Profile, ConstantsMatchReference)
{
  for (auto const &r : kConstants) {
    RadialProfile const p = make_profile(r.N, 1.0);
    EXPECT_NEAR(p.R1, r.R1, 1e-12);
    EXPECT_NEAR(p.dR1, r.dR1, 1e-12);
    EXPECT_NEAR(c1_constant(p), r.C1, 1e-10 * r.C1);
    EXPECT_NEAR(cN_constant(r.N), r.cN, 1e-16);
    EXPECT_NEAR(c2_constant(p), r.C2, 1e-10 * r.C2);
    EXPECT_NEAR(eta_constant(r.N, 1.0, unit_ball_volume(r.N)), r.eta, 1e-10 * r.eta);
  }
}

TEST(Profile, C1AgainstTrapezoid)
{
  RadialProfile const p = make_profile(2, 1.0);
  int const n = 1000000;
  double s = 0.0;
  for (int i = 1; i <= n; ++i) {
    double const r = static_cast<double>(i) / n;
    double const v = rho(p, r, 0);
    s += (i == n ? 0.5 : 1.0) * v * v * r;
  }
  EXPECT_NEAR(c1_constant(p), 2.0 * M_PI * s / n, 1e-8);
  EXPECT_LE(c1_constant(p), M_PI * p.R1 * p.R1);
}

TEST(Profile, PiecewiseDefinition)
{
  for (int N : {2, 3}) {
    RadialProfile const p = make_profile(N, 1.0);
    EXPECT_EQ(rho(p, 0.0, 0), 0.0);
    EXPECT_EQ(rho(p, 1.5, 2), 0.0);
    EXPECT_DOUBLE_EQ(rho(p, 1.5, 1), p.dR1);
    EXPECT_NEAR(rho(p, 2.5, 0), p.R1 + 1.5 * p.dR1, 1e-15);
    EXPECT_NEAR(rho(p, 1.0 - 1e-12, 0), rho(p, 1.0 + 1e-12, 0), 1e-11);
    EXPECT_NEAR(rho(p, 1.0 - 1e-12, 1), rho(p, 1.0 + 1e-12, 1), 1e-11);
    EXPECT_NEAR(rho(p, 1.0 - 1e-12, 2), 0.0, 1e-10);
    double const h = 1e-6;
    EXPECT_NEAR(rho(p, 0.5, 1), (rho(p, 0.5 + h, 0) - rho(p, 0.5 - h, 0)) / (2 * h), 1e-6);
    EXPECT_NEAR(rho(p, 0.5, 2), (rho(p, 0.5 + h, 1) - rho(p, 0.5 - h, 1)) / (2 * h), 1e-6);
  }
}

TEST(Profile, EnergyDensityClosedFormOnTheTail)
{
  for (int N : {2, 3}) {
    for (double tau : {0.1, 1.0, 10.0}) {
      RadialProfile const p = make_profile(N, tau);
      double const r = 2.0;
      double const v = p.R1 + (r - 1) * p.dR1;
      double const d = p.R1 - p.dR1;
      double const expect = 3.0 * (N - 1) * d * d / std::pow(r, 4) + tau * (N - 1) * v * v / (r * r) +
                            tau * p.dR1 * p.dR1;
      EXPECT_NEAR(n_rho(p, r), expect, 1e-13 * expect);
    }
  }
}

TEST(Profile, EnergyDensityMatchesFieldDerivatives)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-1.6, 1.6);
  for (int N : {2, 3}) {
    for (double tau : {0.1, 1.0, 10.0}) {
      RadialProfile const p = make_profile(N, tau);
      for (int n = 0; n < 20; ++n) {
        std::vector<double> x(N);
        double r2 = 0.0;
        for (double &v : x) {
          v = coord(rng);
          r2 += v * v;
        }
        double const r = std::sqrt(r2);
        if (r < 0.1 || std::abs(r - 1.0) < 0.01) {
          continue; // keep the difference stencil off the origin and the kink
        }
        double const closed = n_rho(p, r);
        EXPECT_NEAR(n_rho_cartesian(p, x), closed, 1e-10 * std::max(1.0, closed));
        EXPECT_NEAR(energy_by_differences(p, x), closed, 2e-6 * std::max(1.0, closed)) << "N=" << N << " r=" << r;
      }
    }
  }
  RadialProfile const p = make_profile(2, 1.0);
  EXPECT_NEAR(energy_by_differences(p, {0.7, 0.0}), n_rho(p, 0.7), 1e-6);
}

TEST(Profile, RayleighQuotientOnTheBallIsTheTone)
{
  for (int N : {2, 3}) {
    for (double tau : {0.1, 1.0, 10.0}) {
      RadialProfile const p = make_profile(N, tau);
      double const q = radial_moment(p, RadialDensity::Energy, 1.0) / radial_moment(p, RadialDensity::RhoSquared, 1.0);
      EXPECT_NEAR(q, p.params.lambda2, 1e-10 * p.params.lambda2);
    }
  }
}

TEST(Profile, RadialMomentsAreCumulative)
{
  RadialProfile const p = make_profile(2, 1.0);
  for (auto d : {RadialDensity::Rho, RadialDensity::RhoSquared, RadialDensity::Energy}) {
    double prev = 0.0;
    for (double s = 0.1; s <= 1.6; s += 0.1) {
      double const m = radial_moment(p, d, s);
      EXPECT_GT(m, prev);
      prev = m;
    }
    EXPECT_EQ(radial_moment(p, d, 0.0), 0.0);
    // continuity across the branch points of the implementation
    EXPECT_NEAR(radial_moment(p, d, 0.5 - 1e-13), radial_moment(p, d, 0.5), 1e-12);
    EXPECT_NEAR(radial_moment(p, d, 1.0 - 1e-13), radial_moment(p, d, 1.0 + 1e-13), 1e-12);
  }
}

TEST(Lemma, AllPropertiesHoldOnTheGrid)
{
  for (int N : {2, 3}) {
    for (double tau : {0.1, 1.0, 10.0}) {
      LemmaCheck const c = check_lemma(make_profile(N, tau));
      for (int k = 0; k < 8; ++k) {
        EXPECT_TRUE(c.holds[k]) << "N=" << N << " tau=" << tau << " property " << k + 1 << " margin " << c.worst[k];
      }
      EXPECT_TRUE(c.all());
    }
  }
}

TEST(Lemma, EnergyDropsAcrossTheUnitSphere)
{
  RadialProfile const p = make_profile(2, 1.0);
  EXPECT_GT(n_rho(p, 0.9), n_rho(p, 1.1));
}

TEST(Constants, CNClosedForms)
{
  EXPECT_NEAR(cN_constant(2), std::pow(2.0, -1.5) / 32.0, 1e-17);
  EXPECT_NEAR(cN_constant(3), 2.0 * std::pow(2.0, 2.0 / 3.0 - 2.0) / 72.0, 1e-17);
  for (int N = 2; N <= 10; ++N) {
    EXPECT_GT(cN_constant(N), 0.0);
  }
  EXPECT_THROW(cN_constant(1), DomainError);
}

TEST(Constants, C2Structure)
{
  RadialProfile const p = make_profile(2, 1.0);
  double const d = p.R1 - p.dR1;
  double const bracket = (3.0 + p.tau()) * d * d + 2.0 * p.tau() * p.dR1 * d;
  EXPECT_GT(d, 0.0);
  EXPECT_GT(bracket, 0.0);
  EXPECT_NEAR(c2_constant(p), 2.0 * M_PI * bracket * cN_constant(2), 1e-16);
}

TEST(Constants, C3Values)
{
  RadialProfile const p2 = make_profile(2, 1.0);
  RadialProfile const p3 = make_profile(3, 1.0);
  EXPECT_EQ(c3_constant(p2, 0.0), 0.0);
  // The admissible window [0, 1 - 1/sqrt(N-1)] collapses to {0} for N = 2,
  // and C3 is negative at sigma = 0.3.
  EXPECT_NEAR(c3_constant(p2, 0.3), -0.00013316012034350486751, 1e-15);
  EXPECT_LT(c3_constant(p2, 0.3), 0.0);
  // For N = 3 the window is [0, 1 - 1/sqrt 2] and sigma = 0.2 lies inside.
  EXPECT_NEAR(c3_constant(p3, 0.2), 0.000025060957343322305276, 1e-16);
  EXPECT_GT(c3_constant(p3, 0.2), 0.0);
  double const edge = 1.0 - 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(c3_constant(p3, edge), 0.0, 1e-16);
  EXPECT_THROW(c3_constant(p2, 1.0), DomainError);
  EXPECT_THROW(c3_constant(p2, -1.0), DomainError);
  EXPECT_THROW(c3_constant(p3, -0.5), DomainError);
}

TEST(Constants, EtaScaling)
{
  RadialProfile const p = make_profile(2, 1.0);
  double const base = c2_constant(p) / (p.params.lambda2 * c1_constant(p));
  EXPECT_NEAR(eta_constant(2, 1.0, M_PI), base, 1e-15);
  EXPECT_GT(base, 0.0);
  // volume 4 pi means s = 1/2, so the profile is taken at tau / s^2 = 4 tau.
  RadialProfile const q = make_profile(2, 4.0);
  double const stepwise = c2_constant(q) / (q.params.lambda2 * c1_constant(q));
  EXPECT_NEAR(eta_constant(2, 1.0, 4.0 * M_PI), stepwise, 1e-15);
  EXPECT_THROW(eta_constant(2, 1.0, 0.0), DomainError);
}

TEST(Errors, ProfileArguments)
{
  RadialProfile const p = make_profile(2, 1.0);
  EXPECT_THROW(rho(p, -0.1, 0), DomainError);
  EXPECT_THROW(rho(p, 0.5, 3), DomainError);
  EXPECT_THROW(n_rho(p, -1.0), DomainError);
  EXPECT_THROW(radial_moment(p, RadialDensity::Rho, -1.0), DomainError);
  EXPECT_THROW(n_rho_cartesian(p, {1.0, 0.0, 0.0}), DomainError);
  EXPECT_THROW(trial_energy_density(p, {0.0, 0.0}, {1.0, 0.0}), DomainError);
}

#include "plate/quant.hpp"

#include "plate/ball.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

using namespace plate;

namespace {

StarDomain cos3(double eps) { return StarDomain(eps, {0, 0, 0, 1}, {}); }

double sup_psi(StarDomain const &d)
{
  double m = 0.0;
  for (int i = 0; i < 4096; ++i) {
    m = std::max(m, std::abs(d.psi(2 * M_PI * i / 4096)));
  }
  return m;
}

} // namespace

TEST(TrialBound, DiskReproducesTheBallTone)
{
  for (double tau : {0.1, 1.0, 10.0}) {
    RadialProfile const p = make_profile(2, tau);
    EXPECT_NEAR(trial_upper_bound(unit_disk(), p, Point2::Zero()), p.params.lambda2, 1e-8 * p.params.lambda2);
  }
}

TEST(TrialBound, AsymmetricDomainMatchesRayReference)
{
  // 1024 rays from the centering origin, Gauss-Legendre split at s = 1 (tests/oracles/center_oracle.py)
  StarDomain const d(0.08, {-0.025025050125351053, 0, 0, 1}, {0, 0, 0, 0, 0.5});
  RadialProfile const p = make_profile(2, 1.0);
  Point2 const c = weinberger_center(d, p);
  EXPECT_NEAR(trial_upper_bound(d, p, c), 3.8941910998195186, 1e-10);
}

TEST(TrialBound, RequiresAreaPi)
{
  RadialProfile const p = make_profile(2, 1.0);
  EXPECT_THROW(trial_upper_bound(cos3(0.1), p, Point2::Zero()), DomainError);
  EXPECT_THROW(trial_upper_bound(unit_disk(), make_profile(3, 1.0), Point2::Zero()), DomainError);
}

TEST(TheoremBound, UnitDisk)
{
  BoundReport const r = theorem_bound(unit_disk(), 1.0);
  double const ball = solve_ball_params(2, 1.0).lambda2;
  EXPECT_NEAR(r.A, 0.0, 1e-10);
  EXPECT_NEAR(r.rhs, ball, 1e-9);
  EXPECT_NEAR(r.lambda2_ball, ball, 1e-12);
  EXPECT_NEAR(r.lambda2_domain, ball, 1e-9);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.trial_ordered);
}

TEST(TheoremBound, ThreefoldDomain)
{
  StarDomain const d = cos3(0.08);
  BoundReport const r = theorem_bound(d, 1.0);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.trial_ordered);
  EXPECT_EQ(r.holds, r.lambda2_domain <= r.rhs + r.tolerance);
  EXPECT_GE(r.trial_bound, r.lambda2_domain - r.tolerance);
  EXPECT_LE(r.trial_bound, r.lambda2_ball + r.tolerance);
  EXPECT_NEAR(r.eta, eta_constant(2, 1.0, area(d)), 1e-14);
  EXPECT_NEAR(r.A, fraenkel(d), 1e-10);
  EXPECT_NEAR(r.lambda2_ball, rescale_lambda(solve_ball_params(2, 1.0 / (r.scale * r.scale)).lambda2, r.scale),
              1e-12);
  EXPECT_NEAR(r.rhs, r.lambda2_ball * (1 - r.eta * r.A * r.A), 1e-12);
  // the asymmetry is a minimum over centers, so the centered overlap cannot beat it
  EXPECT_GE(r.alpha, r.A - 1e-8);
  EXPECT_GT(r.A, 0.0);
  EXPECT_LT(r.lambda2_domain, r.lambda2_ball);
}

TEST(TheoremBound, RejectsOutOfRangeTension)
{
  EXPECT_THROW(theorem_bound(unit_disk(), 1e-3), DomainError);
  EXPECT_THROW(theorem_bound(unit_disk(), 2e3), DomainError);
  EXPECT_THROW(theorem_bound(cos3(2.0), 1.0), DomainError);
}

TEST(RandomDomains, GeneratorProperties)
{
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    StarDomain const d = random_class_p_domain(rng);
    EXPECT_TRUE(d.is_class_P());
    EXPECT_GE(d.max_mode(), 3);
    EXPECT_LE(d.max_mode(), 8);
    EXPECT_GE(d.eps, 0.02);
    EXPECT_LE(d.eps, 0.1);
    EXPECT_NEAR(sup_psi(d), 1.0, 1e-12);
  }
  std::mt19937_64 a(9), b(9);
  for (int i = 0; i < 5; ++i) {
    StarDomain const x = random_class_p_domain(a), y = random_class_p_domain(b);
    EXPECT_EQ(x.eps, y.eps);
    EXPECT_EQ(x.cos, y.cos);
    EXPECT_EQ(x.sin, y.sin);
  }
}

TEST(RandomDomains, SmallSuiteHoldsAndIsDeterministic)
{
  BoundOptions opts;
  opts.degree = 16;
  auto const first = random_bound_suite(3, 1234, 1.0, opts);
  auto const second = random_bound_suite(3, 1234, 1.0, opts);
  ASSERT_EQ(first.size(), 3u);
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_TRUE(first[i].holds);
    EXPECT_TRUE(first[i].trial_ordered);
    EXPECT_EQ(first[i].lambda2_domain, second[i].lambda2_domain);
    EXPECT_EQ(first[i].trial_bound, second[i].trial_bound);
    EXPECT_EQ(first[i].A, second[i].A);
  }
}

TEST(Sharpness, LogLogSlope)
{
  std::vector<double> x{0.1, 0.2, 0.4, 0.8}, y;
  for (double v : x) {
    y.push_back(3.0 * std::pow(v, 2.5));
  }
  EXPECT_NEAR(loglog_slope(x, y), 2.5, 1e-12);
  EXPECT_THROW(loglog_slope({1.0}, {1.0}), DomainError);
  EXPECT_THROW(loglog_slope({1.0, 2.0}, {1.0, 0.0}), DomainError);
}

TEST(Sharpness, RejectsInvalidSweeps)
{
  std::vector<double> const eps{0.02, 0.04, 0.06, 0.08};
  EXPECT_THROW(sharpness_sweep(StarDomain(0, {0, 1}, {}), eps, 1.0, Problem::Neumann), ClassPError);
  EXPECT_THROW(sharpness_sweep(StarDomain(0, {0, 0, 1}, {}), eps, 1.0, Problem::Neumann), ClassPError);
  EXPECT_THROW(sharpness_sweep(cos3(0), {0.02, 0.04, 0.06}, 1.0, Problem::Neumann), DomainError);
  EXPECT_THROW(sharpness_sweep(cos3(0), {0.02, 0.04, 0.06, 0.2}, 1.0, Problem::Neumann), DomainError);
  EXPECT_THROW(sharpness_sweep(cos3(0), {0.0, 0.04, 0.06, 0.08}, 1.0, Problem::Neumann), DomainError);
}

TEST(Sharpness, NeumannSweepStructure)
{
  SharpnessOptions opts;
  opts.degree = 16;
  SharpnessReport const r = sharpness_sweep(cos3(0), {0.08, 0.02, 0.06, 0.04}, 1.0, Problem::Neumann, opts);
  ASSERT_EQ(r.records.size(), 4u);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    auto const &x = r.records[i];
    if (i > 0) {
      EXPECT_GT(x.eps, r.records[i - 1].eps);
    }
    EXPECT_NEAR(x.area_gap / (x.eps * x.eps), M_PI / 2, 1e-9);
    EXPECT_NEAR(x.tone_gap_over_eps2 * x.eps * x.eps, x.tone_gap, 1e-15);
    EXPECT_TRUE(x.chain_ordered);
    EXPECT_LE(x.tone, x.trial_bound + 1e-6);
    EXPECT_LE(x.trial_bound, x.ball_same_area + 1e-6);
    EXPECT_LE(x.ball_same_area, x.tone + r.coarse_constant * x.eps + 1e-6);
  }
  EXPECT_TRUE(std::isfinite(r.slope));
  EXPECT_GE(r.slope, 1.8);
  EXPECT_LE(r.slope, 2.2);
  EXPECT_LE(r.r4 / r.r3, 2.0);

  // enlarging the list moves the slope by at most 0.1
  SharpnessReport const more =
      sharpness_sweep(cos3(0), {0.02, 0.03, 0.04, 0.06, 0.08, 0.1}, 1.0, Problem::Neumann, opts);
  EXPECT_LE(std::abs(more.slope - r.slope), 0.1);
}

TEST(Sharpness, SteklovReferenceIsTheTension)
{
  EXPECT_NEAR(ball_reference_tone(2.0, Problem::Steklov, 16), 2.0, 1e-10);
  EXPECT_EQ(ball_reference_tone(2.0, Problem::Steklov, 16), ball_reference_tone(2.0, Problem::Steklov, 16));
  EXPECT_NEAR(ball_reference_tone(1.0, Problem::Neumann), solve_ball_params(2, 1.0).lambda2, 0.0);
}

TEST(HarmonicIdentity, BoundaryTraceInClosedForm)
{
  // For a = e_1 on the unit circle:
  //   |D^2 u|^2 + tau |D u|^2 = A cos^2 + B sin^2,
  //   A = (R - R')^2 + tau R'^2,  B = 2 (R - R')^2 + tau R^2.
  for (double tau : {0.1, 1.0, 10.0}) {
    RadialProfile const p = make_profile(2, tau);
    double const d = p.R1 - p.dR1;
    double const A = d * d + tau * p.dR1 * p.dR1;
    double const B = 2 * d * d + tau * p.R1 * p.R1;
    for (double t = 0.0; t < 2 * M_PI; t += 0.1) {
      double const v = trial_energy_density(p, {std::cos(t), std::sin(t)}, {1.0, 0.0});
      EXPECT_NEAR(v, A * std::cos(t) * std::cos(t) + B * std::sin(t) * std::sin(t), 1e-12 * B);
    }
    HarmonicFit const f = harmonic_identity_check(p, {1.0, 0.0});
    EXPECT_NEAR(f.c0, B, 1e-12 * B);
    EXPECT_NEAR(f.c1, A - B, 1e-12 * B);
    EXPECT_LT(f.affine_residual, 1e-12 * B);
    EXPECT_GT(f.c, 0.0);
    // B > 0 keeps the trace away from zero where a.x vanishes, so a pure
    // multiple of (a.x)^2 cannot fit it.
    EXPECT_GT(f.proportional_residual, 0.1 * B);
  }
}

TEST(HarmonicIdentity, IndependentOfDirection)
{
  for (int N : {2, 3}) {
    RadialProfile const p = make_profile(N, 1.0);
    std::vector<double> e(N, 0.0);
    e[0] = 1.0;
    HarmonicFit const base = harmonic_identity_check(p, e);
    for (int k = 0; k < 8; ++k) {
      double const t = 2 * M_PI * k / 8 + 0.1;
      std::vector<double> a{std::cos(t), std::sin(t)};
      if (N == 3) {
        a = {std::cos(t), 0.0, std::sin(t)};
      }
      HarmonicFit const f = harmonic_identity_check(p, a);
      if (N == 2) {
        // the residual is a sup over 256 nodes, so it moves with the node phase
        EXPECT_NEAR(f.proportional_residual, base.proportional_residual, 1e-3 * base.proportional_residual);
        EXPECT_NEAR(f.c, base.c, 1e-10);
      }
      EXPECT_LT(f.affine_residual, 1e-10);
      EXPECT_NEAR(f.c1, base.c1, 1e-8);
    }
  }
  EXPECT_THROW(harmonic_identity_check(make_profile(2, 1.0), {0.0, 0.0}), DomainError);
  EXPECT_THROW(harmonic_identity_check(make_profile(2, 1.0), {1.0, 0.0, 0.0}), DomainError);
}

TEST(Workers, EnvironmentCapsTheCount)
{
  setenv("PLATE_TONE_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  setenv("PLATE_TONE_THREADS", "junk", 1);
  EXPECT_GE(worker_count(), 1u);
  unsetenv("PLATE_TONE_THREADS");
  EXPECT_GE(worker_count(), 1u);
}

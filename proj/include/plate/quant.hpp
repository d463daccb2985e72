#pragma once

// The quantitative isoperimetric inequality for the free plate,
//
//   lambda2(Omega) <= lambda2(Omega*) (1 - eta A(Omega)^2),
//
// checked end to end on planar star domains, plus the eps^2 sharpness sweeps
// for the Neumann and Steklov tones.

#include "plate/domain.hpp"
#include "plate/galerkin.hpp"
#include "plate/profile.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace plate {

// int_Omega N[rho(|x - c|)] dx / int_Omega rho(|x - c|)^2 dx, integrated in
// polar coordinates about c. Requires |Omega| = pi.
double trial_upper_bound(StarDomain const &d, RadialProfile const &p, Point2 const &center);

struct BoundOptions
{
  int degree = 20;
  double tolerance = 1e-6; // absolute, in units of the normalized problem
};

struct BoundReport
{
  StarDomain domain;
  double tau = 0.0;
  double scale = 1.0;         // dilation to area pi
  double lambda2_ball = 0.0;  // lambda2(tau, Omega*)
  double A = 0.0;             // Fraenkel asymmetry
  double alpha = 0.0;         // |Omega sym-diff B| / |Omega| about the centering origin
  double eta = 0.0;
  double rhs = 0.0;           // lambda2_ball (1 - eta A^2)
  double lambda2_domain = 0.0;
  double delta_prev = 0.0;
  double trial_bound = 0.0;
  double tolerance = 0.0;     // in the units of the report
  Point2 center = Point2::Zero();
  bool holds = false;         // lambda2_domain <= rhs + tolerance
  bool trial_ordered = false; // lambda2_domain <= trial_bound <= lambda2_ball, within tolerance
};

BoundReport theorem_bound(StarDomain const &d, double tau, BoundOptions const &opts = {});

// Seeded random class-P domain: modes 3..M with M uniform in [3, 8],
// coefficients uniform in [-1, 1] rescaled to sup |psi| = 1, eps uniform in
// [0.02, 0.1].
StarDomain random_class_p_domain(std::mt19937_64 &rng);

std::vector<BoundReport> random_bound_suite(int count, std::uint64_t seed, double tau, BoundOptions const &opts = {});

struct SharpnessRecord
{
  double eps = 0.0;
  double area_gap = 0.0;
  double asymmetry = 0.0;
  double tone = 0.0;
  double tone_gap = 0.0;
  double tone_gap_over_eps2 = 0.0;
  double delta_prev = 0.0;
  bool used_in_fit = true;
  // Neumann only: trial quotient about the centering origin and the tone of
  // the ball of equal area, both in the units of Omega_eps.
  double trial_bound = 0.0;
  double ball_same_area = 0.0;
  bool chain_ordered = true; // tone <= trial_bound <= ball_same_area within 1e-6
};

struct SharpnessOptions
{
  int degree = 20;
  int ball_degree = 24; // Steklov reference on the disk
};

struct SharpnessReport
{
  Problem problem = Problem::Neumann;
  StarDomain psi; // eps field unused
  double tau = 0.0;
  double lambda2_ball = 0.0;
  std::vector<double> eps_list;
  std::vector<SharpnessRecord> records;
  double slope = 0.0;
  double r3 = 0.0; // min tone_gap / eps^2
  double r4 = 0.0; // max tone_gap / eps^2
  double coarse_constant = 0.0; // max (ball_same_area - tone) / eps, Neumann only
};

// Throws ClassPError when psi carries modes 0, 1 or 2.
SharpnessReport sharpness_sweep(StarDomain const &psi, std::vector<double> const &eps_list, double tau, Problem problem,
                                SharpnessOptions const &opts = {});

// Least-squares slope of log(y) against log(x).
double loglog_slope(std::vector<double> const &x, std::vector<double> const &y);

// Boundary trace of |D^2 u_a|^2 + tau |D u_a|^2 for u_a = rho(|x|) (a.x)/|x|,
// fitted by c (a.x)^2 and by c0 + c1 (a.x)^2.
struct HarmonicFit
{
  double c = 0.0;
  double proportional_residual = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double affine_residual = 0.0;
};

HarmonicFit harmonic_identity_check(RadialProfile const &p, std::vector<double> const &direction, int samples = 256);

// Disk reference tone: analytic for Neumann, degree-`degree` Galerkin for Steklov (cached).
double ball_reference_tone(double tau, Problem problem, int degree = 24);

// Worker count for sweeps: PLATE_TONE_THREADS if set, else hardware concurrency.
unsigned worker_count();

} // namespace plate

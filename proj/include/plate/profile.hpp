#pragma once

#include "plate/ball.hpp"

#include <array>
#include <vector>

namespace plate {

// The trial profile rho: R(r) on [0, 1), extended affinely by
// R(1) + (r - 1) R'(1) on [1, inf). Trial fields are u_k(x) = rho(|x|) x_k / |x|.
struct RadialProfile
{
  SpectralParams params;
  double R1 = 0.0;  // R(1)
  double dR1 = 0.0; // R'(1)
  // int_0^1 f(t) t^(N-1) dt for Rho, RhoSquared, Energy.
  std::array<double, 3> moment_at_one{};

  RadialProfile() = default;
  explicit RadialProfile(SpectralParams const &p);

  int dim() const { return params.N; }
  double tau() const { return params.tau; }
};

// Builds the profile from solve_ball_params(N, tau).
RadialProfile make_profile(int N, double tau);

// k-th derivative of rho at r (k = 0, 1, 2).
double rho(RadialProfile const &p, double r, int k);

// Pointwise quantities entering the trial energy, evaluated without
// cancellation near r = 0:
//   over_r   = rho / r
//   defect   = (rho - r rho') / r^2
struct RadialTerms
{
  double value;  // rho
  double d1;     // rho'
  double d2;     // rho''
  double over_r; // rho / r
  double defect; // (rho - r rho') / r^2
};
RadialTerms radial_terms(RadialProfile const &p, double r);

// N[rho](r) = rho''^2 + 3(N-1)(rho - r rho')^2 / r^4 + tau (N-1) rho^2 / r^2 + tau rho'^2
double n_rho(RadialProfile const &p, double r);

// Same quantity reconstructed as sum_k |D^2 u_k|^2 + tau |D u_k|^2 from the
// Cartesian gradient and Hessian of u_k at the point x (|x| = r > 0).
double n_rho_cartesian(RadialProfile const &p, std::vector<double> const &x);

// |D^2 u_a|^2 + tau |D u_a|^2 at x for the single field u_a(x) = rho(|x|) (a.x)/|x|.
double trial_energy_density(RadialProfile const &p, std::vector<double> const &x, std::vector<double> const &a);

// int_0^s f(t) t^(N-1) dt for the radial densities used by the trial bound.
enum class RadialDensity { Rho, RhoSquared, Energy };
double radial_moment(RadialProfile const &p, RadialDensity density, double s);

// C1 = N omega_N int_0^1 rho^2 r^(N-1) dr
double c1_constant(RadialProfile const &p);
// c_N = (N-1) 2^((N-1)/N - 2) / (8 N^2)
double cN_constant(int N);
// C2 = N omega_N ((3+tau)(R(1)-R'(1))^2 + 2 tau R'(1)(R(1)-R'(1))) c_N
double c2_constant(RadialProfile const &p);
// C3 = 1/2 (R(1)-R'(1))^2 (N-1) sigma (sigma (N-1)(sigma-2) + N - 2)
double c3_constant(RadialProfile const &p, double sigma);
// eta = C2 / (lambda2(B) C1), all at tau / s^2 with s = (omega_N / volume)^(1/N).
double eta_constant(int N, double tau, double volume);

// Finite-grid check of the eight structural properties of rho and N[rho].
struct LemmaCheck
{
  std::array<bool, 8> holds{};
  std::array<double, 8> worst{}; // most adverse margin seen (negative = violated)
  bool all() const;
};
LemmaCheck check_lemma(RadialProfile const &p, double step = 0.01, double r_max = 5.0);

} // namespace plate

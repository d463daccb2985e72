#pragma once

#include "plate/types.hpp"

namespace plate {

// Parameters of the fundamental tone of the free plate on the unit ball.
// The radial part of the eigenfunctions is R(r) = j1(a r) + gamma i1(b r) with
//   b^2 - a^2 = tau,   a^2 b^2 = lambda2,   R''(1) = 0.
struct SpectralParams
{
  int N = 2;
  double tau = 0.0;
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double lambda2 = 0.0;
};

// gamma enforcing R''(1) = 0 for the given a, b.
double natural_gamma(int N, double a, double b);

// Radial part R(r) = j1(a r) + gamma i1(b r) and its derivatives (k = 0..3).
double radial_part(SpectralParams const &p, double r, int k);

// Residual of the second natural boundary condition for u = R(r) x_k / |x|
// at r = 1, with b = sqrt(a^2 + tau) and gamma = natural_gamma(N, a, b):
//
//   W(a) = tau R'(1) + 3(N-1)(R'(1) - R(1)) - R'''(1).
//
// The l = 1 spherical harmonic has -Delta_S Y = (N-1) Y, and once R''(1) = 0
// the tangential divergence term contributes (N-1)(R'(1) - R(1)).
double boundary_residual(int N, double tau, double a);

struct BallSolveOptions
{
  double scan_step = 0.05;
  double scan_max = 30.0;
  double root_tol = 1e-13;
};

// Smallest positive root of W on (0, scan_max]. Throws ConvergenceError when no
// sign change is found.
SpectralParams solve_ball_params(int N, double tau, BallSolveOptions const &opts = {});

// s^4 lambda: lambda2(tau, Omega) = s^4 lambda2(tau / s^2, s Omega).
double rescale_lambda(double lambda, double s);

} // namespace plate

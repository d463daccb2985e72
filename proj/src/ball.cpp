#include "plate/ball.hpp"

#include "plate/specfun.hpp"

#include <cmath>
#include <sstream>

namespace plate {

double natural_gamma(int N, double a, double b)
{
  return -a * a * ultra_j1(N, a, 2) / (b * b * ultra_i1(N, b, 2));
}

double radial_part(SpectralParams const &p, double r, int k)
{
  double const ak = std::pow(p.a, k);
  double const bk = std::pow(p.b, k);
  return ak * ultra_j1(p.N, p.a * r, k) + p.gamma * bk * ultra_i1(p.N, p.b * r, k);
}

double boundary_residual(int N, double tau, double a)
{
  double const b = std::sqrt(a * a + tau);
  SpectralParams p{N, tau, a, b, natural_gamma(N, a, b), a * a * b * b};
  double const R = radial_part(p, 1.0, 0);
  double const dR = radial_part(p, 1.0, 1);
  double const d3R = radial_part(p, 1.0, 3);
  return tau * dR + 3.0 * (N - 1) * (dR - R) - d3R;
}

SpectralParams solve_ball_params(int N, double tau, BallSolveOptions const &opts)
{
  if (N != 2 && N != 3) {
    throw DomainError("solve_ball_params: N must be 2 or 3");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("solve_ball_params: tau must be positive");
  }
  auto W = [&](double a) { return boundary_residual(N, tau, a); };

  double lo = opts.scan_step;
  double wlo = W(lo);
  bool found = false;
  double hi = lo;
  for (double a = lo + opts.scan_step; a <= opts.scan_max + 1e-12; a += opts.scan_step) {
    double const w = W(a);
    if (wlo == 0.0 || (wlo < 0.0) != (w < 0.0)) {
      hi = a;
      found = true;
      break;
    }
    lo = a;
    wlo = w;
  }
  if (!found) {
    std::ostringstream msg;
    msg << "solve_ball_params: no sign change of the boundary residual in (0, " << opts.scan_max
        << "] for tau = " << tau;
    throw ConvergenceError(msg.str());
  }
  if (wlo != 0.0) {
    while (hi - lo > opts.root_tol * std::max(1.0, lo)) {
      double const mid = 0.5 * (lo + hi);
      double const wm = W(mid);
      if (wm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((wm < 0.0) == (wlo < 0.0)) {
        lo = mid;
        wlo = wm;
      } else {
        hi = mid;
      }
    }
  }
  double const a = 0.5 * (lo + hi);
  double const b = std::sqrt(a * a + tau);
  return SpectralParams{N, tau, a, b, natural_gamma(N, a, b), a * a * b * b};
}

double rescale_lambda(double lambda, double s)
{
  if (!(s > 0.0)) {
    throw DomainError("rescale_lambda: scale must be positive");
  }
  return s * s * s * s * lambda;
}

} // namespace plate

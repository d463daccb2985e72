#pragma once

#include "plate/types.hpp"

#include <functional>

namespace plate {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule
{
  VectorXd nodes;
  VectorXd weights;
};

// n-point Gauss-Legendre nodes/weights, computed by Newton iteration on P_n.
// Rules are cached per n; the returned reference stays valid for the process.
GaussRule const &gauss_legendre(int n);

// Fixed rule mapped onto [lo, hi].
double integrate_fixed(std::function<double(double)> const &f, double lo, double hi, int n);

// Adaptive 15-point Gauss-Legendre with recursive bisection. A panel is
// accepted once |I(panel) - I(left) - I(right)| <= tol * max(1, |I|).
double integrate_adaptive(std::function<double(double)> const &f, double lo, double hi, double tol = 1e-12,
                          int max_depth = 40);

} // namespace plate

#pragma once

// Star-shaped perturbations of the unit disk,
//
//   Omega_eps = { x : |x| < 1 + eps psi(theta) },
//   psi(theta) = sum_{k=0}^M c_k cos(k theta) + sum_{k=1}^M s_k sin(k theta),
//
// and the planar measures used by the asymmetry estimates.

#include "plate/profile.hpp"
#include "plate/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace plate {

inline constexpr int kMaxMode = 64;
inline constexpr int kPositivityGrid = 4096;

struct StarDomain
{
  double eps = 0.0;
  std::vector<double> cos; // cos[k] multiplies cos(k theta), k = 0..M
  std::vector<double> sin; // sin[k-1] multiplies sin(k theta), k = 1..M

  StarDomain() = default;
  StarDomain(double e, std::vector<double> c, std::vector<double> s);

  int max_mode() const;
  double psi(double theta, int derivative = 0) const;
  double radius(double theta) const { return 1.0 + eps * psi(theta); }
  double radius_derivative(double theta) const { return eps * psi(theta, 1); }

  // Modes 0, 1 and 2 vanish (the three orthogonality conditions of the
  // perturbation class, restricted to the circle).
  bool is_class_P(double tol = 0.0) const;

  // Throws DomainError if M > 64, eps < 0, or the boundary radius is not
  // positive on the 4096-point grid.
  void validate() const;
};

StarDomain unit_disk();

// Kills the k = 0, 1, 2 Fourier modes, leaving k >= 3 untouched.
StarDomain project_to_P(StarDomain const &d);

// Exact area: pi + 2 pi eps c_0 + (eps^2 / 2) int psi^2.
double area(StarDomain const &d);

// Area by direct polar quadrature of r dr dtheta; used as a cross-check.
double area_by_quadrature(StarDomain const &d, int rays = kPositivityGrid);

// s Omega, re-expressed in the same parametrization (the constant mode absorbs
// the dilation). Requires eps > 0 unless s == 1.
StarDomain scaled(StarDomain const &d, double s);

// Dilation of d to area pi, together with the factor used.
struct Normalized
{
  StarDomain domain;
  double scale;
};
Normalized normalized(StarDomain const &d);

// |Omega symmetric-difference B(center, radius)|.
double symdiff_with_ball(StarDomain const &d, Point2 const &center, double radius, int rays = kPositivityGrid);

// Fraenkel asymmetry: min over centers of |Omega sym-diff B| / |Omega| for balls
// of equal area. `hint` shifts the search box.
struct FraenkelResult
{
  double asymmetry;
  Point2 center;
};
FraenkelResult fraenkel_search(StarDomain const &d, Point2 const &hint = Point2::Zero());
double fraenkel(StarDomain const &d);

// Origin shift c with int_Omega u_k(x - c) dx = 0 for k = 1, 2 where
// u_k(y) = rho(|y|) y_k / |y|. Requires area pi (to 1e-9) and eps <= 0.3.
Point2 weinberger_center(StarDomain const &d, RadialProfile const &p, double tol = 1e-10, int max_iter = 100);

// int_Omega u_k(x - c) dx, k = 1, 2.
Point2 first_moments(StarDomain const &d, RadialProfile const &p, Point2 const &c);

// Distance along the ray c + s (cos phi, sin phi) to the boundary.
double boundary_distance(StarDomain const &d, Point2 const &c, double phi);

struct OverlapData
{
  double alpha;
  double r1;
  double r2;
};
// alpha = |Omega sym-diff B(center, 1)| / |Omega|, r1 = (1 - alpha/2)^(1/2), r2 = (1 + alpha/2)^(1/2).
OverlapData overlap(StarDomain const &d, Point2 const &center);

void to_json(nlohmann::json &j, StarDomain const &d);
void from_json(nlohmann::json const &j, StarDomain &d);

} // namespace plate

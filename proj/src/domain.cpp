#include "plate/domain.hpp"

#include <Eigen/LU>

#include "plate/quadrature.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace plate {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMomentAngles = 1024;

double sup_abs_psi(StarDomain const &d)
{
  double m = 0.0;
  for (int i = 0; i < kPositivityGrid; ++i) {
    m = std::max(m, std::abs(d.psi(2.0 * kPi * i / kPositivityGrid)));
  }
  return m;
}

// Signed radial gap (rho^2 - t^2) / 2 along direction theta, where t is the
// exit distance from the ball B(c, R) that contains the origin.
struct RayGap
{
  StarDomain const &d;
  Point2 c;
  double R;
  double operator()(double theta) const
  {
    double const ct = std::cos(theta), st = std::sin(theta);
    double const proj = c.x() * ct + c.y() * st;
    double const t = proj + std::sqrt(proj * proj - c.squaredNorm() + R * R);
    double const r = d.radius(theta);
    return 0.5 * (r * r - t * t);
  }
};

// Per-ray symmetric difference when the origin may lie outside the ball.
double ray_symdiff_general(StarDomain const &d, Point2 const &c, double R, double theta)
{
  double const ct = std::cos(theta), st = std::sin(theta);
  double const r = d.radius(theta);
  double const proj = c.x() * ct + c.y() * st;
  double const disc = proj * proj - c.squaredNorm() + R * R;
  double ball = 0.0, both = 0.0;
  if (disc > 0.0) {
    double const lo = std::max(0.0, proj - std::sqrt(disc));
    double const hi = proj + std::sqrt(disc);
    if (hi > lo) {
      ball = 0.5 * (hi * hi - lo * lo);
      double const olo = lo, ohi = std::min(hi, r);
      if (ohi > olo) {
        both = 0.5 * (ohi * ohi - olo * olo);
      }
    }
  }
  return 0.5 * r * r + ball - 2.0 * both;
}

double gauss_on(std::function<double(double)> const &f, double lo, double hi)
{
  return integrate_fixed(f, lo, hi, 4);
}

// Simplex minimizer in two dimensions.
Point2 nelder_mead(std::function<double(Point2 const &)> const &f, Point2 const &start, double size, double tol,
                   int max_iter = 400)
{
  std::array<Point2, 3> x{start, start + Point2(size, 0.0), start + Point2(0.0, size)};
  std::array<double, 3> fx{f(x[0]), f(x[1]), f(x[2])};
  for (int iter = 0; iter < max_iter; ++iter) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    std::array<Point2, 3> xs{x[idx[0]], x[idx[1]], x[idx[2]]};
    std::array<double, 3> fs{fx[idx[0]], fx[idx[1]], fx[idx[2]]};
    x = xs;
    fx = fs;
    double const spread = std::max((x[1] - x[0]).norm(), (x[2] - x[0]).norm());
    if (spread < tol) {
      break;
    }
    Point2 const centroid = 0.5 * (x[0] + x[1]);
    Point2 const xr = centroid + (centroid - x[2]);
    double const fr = f(xr);
    if (fr < fx[0]) {
      Point2 const xe = centroid + 2.0 * (centroid - x[2]);
      double const fe = f(xe);
      if (fe < fr) {
        x[2] = xe;
        fx[2] = fe;
      } else {
        x[2] = xr;
        fx[2] = fr;
      }
    } else if (fr < fx[1]) {
      x[2] = xr;
      fx[2] = fr;
    } else {
      Point2 const xc = centroid + 0.5 * (x[2] - centroid);
      double const fc = f(xc);
      if (fc < fx[2]) {
        x[2] = xc;
        fx[2] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          x[i] = x[0] + 0.5 * (x[i] - x[0]);
          fx[i] = f(x[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (fx[i] < fx[best]) {
      best = i;
    }
  }
  return x[best];
}

} // namespace

StarDomain::StarDomain(double e, std::vector<double> c, std::vector<double> s)
  : eps(e)
  , cos(std::move(c))
  , sin(std::move(s))
{
}

int StarDomain::max_mode() const
{
  int m = 0;
  for (std::size_t k = 0; k < cos.size(); ++k) {
    if (cos[k] != 0.0) {
      m = std::max(m, static_cast<int>(k));
    }
  }
  for (std::size_t k = 0; k < sin.size(); ++k) {
    if (sin[k] != 0.0) {
      m = std::max(m, static_cast<int>(k + 1));
    }
  }
  return m;
}

double StarDomain::psi(double theta, int derivative) const
{
  double v = 0.0;
  for (std::size_t k = 0; k < cos.size(); ++k) {
    if (cos[k] == 0.0) {
      continue;
    }
    double const kt = static_cast<double>(k) * theta;
    switch (derivative) {
    case 0: v += cos[k] * std::cos(kt); break;
    case 1: v -= cos[k] * k * std::sin(kt); break;
    default: v -= cos[k] * double(k * k) * std::cos(kt); break;
    }
  }
  for (std::size_t i = 0; i < sin.size(); ++i) {
    if (sin[i] == 0.0) {
      continue;
    }
    double const k = static_cast<double>(i + 1);
    switch (derivative) {
    case 0: v += sin[i] * std::sin(k * theta); break;
    case 1: v += sin[i] * k * std::cos(k * theta); break;
    default: v -= sin[i] * k * k * std::sin(k * theta); break;
    }
  }
  return v;
}

bool StarDomain::is_class_P(double tol) const
{
  for (std::size_t k = 0; k < std::min<std::size_t>(3, cos.size()); ++k) {
    if (std::abs(cos[k]) > tol) {
      return false;
    }
  }
  for (std::size_t i = 0; i < std::min<std::size_t>(2, sin.size()); ++i) {
    if (std::abs(sin[i]) > tol) {
      return false;
    }
  }
  return true;
}

void StarDomain::validate() const
{
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw DomainError("StarDomain: eps must be finite and non-negative");
  }
  if (static_cast<int>(cos.size()) > kMaxMode + 1 || static_cast<int>(sin.size()) > kMaxMode) {
    throw DomainError("StarDomain: at most 64 Fourier modes are supported");
  }
  for (int i = 0; i < kPositivityGrid; ++i) {
    double const theta = 2.0 * kPi * i / kPositivityGrid;
    if (!(radius(theta) > 0.0)) {
      std::ostringstream msg;
      msg << "StarDomain: boundary radius is not positive at theta = " << theta;
      throw DomainError(msg.str());
    }
  }
}

StarDomain unit_disk() { return StarDomain(0.0, {}, {}); }

StarDomain project_to_P(StarDomain const &d)
{
  StarDomain out = d;
  for (std::size_t k = 0; k < std::min<std::size_t>(3, out.cos.size()); ++k) {
    out.cos[k] = 0.0;
  }
  for (std::size_t i = 0; i < std::min<std::size_t>(2, out.sin.size()); ++i) {
    out.sin[i] = 0.0;
  }
  return out;
}

double area(StarDomain const &d)
{
  // int psi = 2 pi c_0;  int psi^2 = 2 pi c_0^2 + pi sum_{k>=1} (c_k^2 + s_k^2)
  double const c0 = d.cos.empty() ? 0.0 : d.cos[0];
  double sq = 2.0 * kPi * c0 * c0;
  for (std::size_t k = 1; k < d.cos.size(); ++k) {
    sq += kPi * d.cos[k] * d.cos[k];
  }
  for (double s : d.sin) {
    sq += kPi * s * s;
  }
  return kPi + 2.0 * kPi * d.eps * c0 + 0.5 * d.eps * d.eps * sq;
}

double area_by_quadrature(StarDomain const &d, int rays)
{
  // Radial integral is exact; the periodic trapezoid rule in theta is exact
  // for trigonometric polynomials of degree < rays.
  double s = 0.0;
  for (int i = 0; i < rays; ++i) {
    double const r = d.radius(2.0 * kPi * i / rays);
    s += 0.5 * r * r;
  }
  return s * 2.0 * kPi / rays;
}

StarDomain scaled(StarDomain const &d, double s)
{
  if (!(s > 0.0)) {
    throw DomainError("scaled: factor must be positive");
  }
  if (s == 1.0) {
    return d;
  }
  if (!(d.eps > 0.0)) {
    // Represent the dilated disk with eps = s - 1 and psi = 1 (or 1 - s and psi = -1).
    double const e = std::abs(s - 1.0);
    return StarDomain(e, {s > 1.0 ? 1.0 : -1.0}, {});
  }
  // s (1 + eps psi) = 1 + eps (s psi + (s - 1) / eps)
  StarDomain out = d;
  if (out.cos.empty()) {
    out.cos.push_back(0.0);
  }
  for (double &c : out.cos) {
    c *= s;
  }
  for (double &v : out.sin) {
    v *= s;
  }
  out.cos[0] += (s - 1.0) / d.eps;
  return out;
}

Normalized normalized(StarDomain const &d)
{
  double const s = std::sqrt(kPi / area(d));
  return Normalized{scaled(d, s), s};
}

double symdiff_with_ball(StarDomain const &d, Point2 const &center, double radius, int rays)
{
  if (!(radius > 0.0)) {
    throw DomainError("symdiff_with_ball: radius must be positive");
  }
  double const h = 2.0 * kPi / rays;
  double total = 0.0;
  if (center.norm() < radius) {
    RayGap const gap{d, center, radius};
    auto absgap = [&](double t) { return std::abs(gap(t)); };
    double g0 = gap(0.0);
    for (int i = 0; i < rays; ++i) {
      double const lo = i * h;
      double const hi = (i + 1) * h;
      double const g1 = gap(hi);
      if ((g0 < 0.0) != (g1 < 0.0) && g0 != 0.0 && g1 != 0.0) {
        // Split at the crossing so each piece is smooth.
        double a = lo, b = hi, ga = g0;
        for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
          double const m = 0.5 * (a + b);
          double const gm = gap(m);
          if ((gm < 0.0) == (ga < 0.0)) {
            a = m;
            ga = gm;
          } else {
            b = m;
          }
        }
        double const root = 0.5 * (a + b);
        total += gauss_on(absgap, lo, root) + gauss_on(absgap, root, hi);
      } else {
        total += gauss_on(absgap, lo, hi);
      }
      g0 = g1;
    }
    return total;
  }
  // Rays outside the tangent wedge miss the ball and contribute r^2 / 2, which
  // integrates to the area. Inside the wedge the integrand has square-root
  // endpoints, so it is integrated adaptively.
  double const phi0 = std::atan2(center.y(), center.x());
  double const half = std::asin(std::min(1.0, radius / center.norm()));
  auto inside = [&](double t) {
    double const r = d.radius(t);
    return ray_symdiff_general(d, center, radius, t) - 0.5 * r * r;
  };
  return area(d) + integrate_adaptive(inside, phi0 - half, phi0 + half, 1e-14);
}

FraenkelResult fraenkel_search(StarDomain const &d, Point2 const &hint)
{
  double const omega = area(d);
  double const r_eq = std::sqrt(omega / kPi);
  auto objective = [&](Point2 const &c) { return symdiff_with_ball(d, c, r_eq) / omega; };
  double const half = 2.0 * d.eps * std::max(1.0, sup_abs_psi(d));
  if (!(half > 0.0)) {
    return FraenkelResult{objective(hint), hint};
  }
  constexpr int n = 21;
  Point2 best = hint;
  double fbest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Point2 const c = hint + Point2(-half + 2.0 * half * i / (n - 1), -half + 2.0 * half * j / (n - 1));
      double const f = objective(c);
      if (f < fbest) {
        fbest = f;
        best = c;
      }
    }
  }
  Point2 const refined = nelder_mead(objective, best, 2.0 * half / (n - 1), 1e-8);
  double const fr = objective(refined);
  if (fr < fbest) {
    return FraenkelResult{fr, refined};
  }
  return FraenkelResult{fbest, best};
}

double fraenkel(StarDomain const &d) { return fraenkel_search(d).asymmetry; }

double boundary_distance(StarDomain const &d, Point2 const &c, double phi)
{
  Point2 const w(std::cos(phi), std::sin(phi));
  double s = d.radius(phi) - c.dot(w);
  for (int it = 0; it < 60; ++it) {
    Point2 const p = c + s * w;
    double const r = p.norm();
    double const theta = std::atan2(p.y(), p.x());
    double const g = r - d.radius(theta);
    double const dtheta = (p.x() * w.y() - p.y() * w.x()) / (r * r);
    double const dg = p.dot(w) / r - d.radius_derivative(theta) * dtheta;
    double const step = g / dg;
    s -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, s)) {
      break;
    }
  }
  return s;
}

Point2 first_moments(StarDomain const &d, RadialProfile const &p, Point2 const &c)
{
  if (p.dim() != 2) {
    throw DomainError("first_moments: planar domains need a two-dimensional profile");
  }
  Point2 m = Point2::Zero();
  double const h = 2.0 * kPi / kMomentAngles;
  for (int i = 0; i < kMomentAngles; ++i) {
    double const phi = i * h;
    double const s = boundary_distance(d, c, phi);
    m += radial_moment(p, RadialDensity::Rho, s) * Point2(std::cos(phi), std::sin(phi));
  }
  return m * h;
}

Point2 weinberger_center(StarDomain const &d, RadialProfile const &p, double tol, int max_iter)
{
  if (std::abs(area(d) - kPi) > 1e-9) {
    throw DomainError("weinberger_center: domain must be normalized to area pi");
  }
  if (d.eps > 0.3) {
    throw DomainError("weinberger_center: eps above 0.3 is not supported");
  }
  Point2 c = Point2::Zero();
  Point2 F = first_moments(d, p, c);
  double const fd = 1e-6;
  for (int it = 0; it < max_iter; ++it) {
    if (F.norm() <= tol) {
      return c;
    }
    Eigen::Matrix2d J;
    for (int k = 0; k < 2; ++k) {
      Point2 e = Point2::Zero();
      e(k) = fd;
      J.col(k) = (first_moments(d, p, c + e) - first_moments(d, p, c - e)) / (2.0 * fd);
    }
    Point2 const step = J.partialPivLu().solve(-F);
    double t = 1.0;
    Point2 trial = c + step;
    Point2 Ft = first_moments(d, p, trial);
    while (Ft.norm() >= F.norm() && t > 1e-4) {
      t *= 0.5;
      trial = c + t * step;
      Ft = first_moments(d, p, trial);
    }
    c = trial;
    F = Ft;
  }
  if (F.norm() <= tol) {
    return c;
  }
  std::ostringstream msg;
  msg << "weinberger_center: no convergence after " << max_iter << " iterations (|moment| = " << F.norm() << ")";
  throw ConvergenceError(msg.str());
}

OverlapData overlap(StarDomain const &d, Point2 const &center)
{
  double const alpha = symdiff_with_ball(d, center, 1.0) / area(d);
  return OverlapData{alpha, std::sqrt(1.0 - 0.5 * alpha), std::sqrt(1.0 + 0.5 * alpha)};
}

void to_json(nlohmann::json &j, StarDomain const &d)
{
  j = nlohmann::json{{"eps", d.eps}, {"cos", d.cos}, {"sin", d.sin}};
}

void from_json(nlohmann::json const &j, StarDomain &d)
{
  d.eps = j.at("eps").get<double>();
  d.cos = j.value("cos", std::vector<double>{});
  d.sin = j.value("sin", std::vector<double>{});
}

} // namespace plate

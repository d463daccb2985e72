#include "plate/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace plate {

namespace {

GaussRule compute_rule(int n)
{
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double const pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double const p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double const pn = n == 0 ? 1.0 : p1;
      double const pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      double const dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double const p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - (n == 1 ? 1.0 : p0)) / (x * x - 1.0);
    double const w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  return rule;
}

double panel(std::function<double(double)> const &f, double lo, double hi)
{
  GaussRule const &r = gauss_legendre(15);
  double const c = 0.5 * (lo + hi);
  double const h = 0.5 * (hi - lo);
  double s = 0.0;
  for (Index i = 0; i < r.nodes.size(); ++i) {
    s += r.weights(i) * f(c + h * r.nodes(i));
  }
  return s * h;
}

double adapt(std::function<double(double)> const &f, double lo, double hi, double whole, double tol, int depth)
{
  double const mid = 0.5 * (lo + hi);
  double const left = panel(f, lo, mid);
  double const right = panel(f, mid, hi);
  double const both = left + right;
  if (depth <= 0 || std::abs(both - whole) <= tol * std::max(1.0, std::abs(both))) {
    return both;
  }
  return adapt(f, lo, mid, left, tol, depth - 1) + adapt(f, mid, hi, right, tol, depth - 1);
}

} // namespace

GaussRule const &gauss_legendre(int n)
{
  if (n < 1) {
    throw DomainError("gauss_legendre: need at least one node");
  }
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, compute_rule(n)).first;
  }
  return it->second;
}

double integrate_fixed(std::function<double(double)> const &f, double lo, double hi, int n)
{
  GaussRule const &r = gauss_legendre(n);
  double const c = 0.5 * (lo + hi);
  double const h = 0.5 * (hi - lo);
  double s = 0.0;
  for (Index i = 0; i < r.nodes.size(); ++i) {
    s += r.weights(i) * f(c + h * r.nodes(i));
  }
  return s * h;
}

double integrate_adaptive(std::function<double(double)> const &f, double lo, double hi, double tol, int max_depth)
{
  if (lo == hi) {
    return 0.0;
  }
  return adapt(f, lo, hi, panel(f, lo, hi), tol, max_depth);
}

} // namespace plate

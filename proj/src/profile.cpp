#include "plate/profile.hpp"

#include "plate/quadrature.hpp"
#include "plate/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace plate {

namespace {

double density_value(RadialProfile const &p, RadialDensity density, double t)
{
  switch (density) {
  case RadialDensity::Rho: return rho(p, t, 0);
  case RadialDensity::RhoSquared: {
    double const v = rho(p, t, 0);
    return v * v;
  }
  case RadialDensity::Energy: return n_rho(p, t);
  }
  return 0.0;
}

double weighted(RadialProfile const &p, RadialDensity density, double t)
{
  return density_value(p, density, t) * std::pow(t, p.dim() - 1);
}

} // namespace

RadialProfile::RadialProfile(SpectralParams const &p)
  : params(p)
  , R1(radial_part(p, 1.0, 0))
  , dR1(radial_part(p, 1.0, 1))
{
  for (int i = 0; i < 3; ++i) {
    auto const d = static_cast<RadialDensity>(i);
    moment_at_one[i] = integrate_adaptive([&](double t) { return weighted(*this, d, t); }, 0.0, 1.0, 1e-14);
  }
}

RadialProfile make_profile(int N, double tau) { return RadialProfile(solve_ball_params(N, tau)); }

double rho(RadialProfile const &p, double r, int k)
{
  if (r < 0.0) {
    throw DomainError("rho: radius must be non-negative");
  }
  if (k < 0 || k > 2) {
    throw DomainError("rho: derivative order must be 0, 1 or 2");
  }
  if (r < 1.0) {
    return radial_part(p.params, r, k);
  }
  switch (k) {
  case 0: return p.R1 + (r - 1.0) * p.dR1;
  case 1: return p.dR1;
  default: return 0.0;
  }
}

RadialTerms radial_terms(RadialProfile const &p, double r)
{
  RadialTerms t{};
  if (r >= 1.0) {
    t.value = p.R1 + (r - 1.0) * p.dR1;
    t.d1 = p.dR1;
    t.d2 = 0.0;
    t.over_r = t.value / r;
    t.defect = (p.R1 - p.dR1) / (r * r);
    return t;
  }
  SpectralParams const &sp = p.params;
  double const nu = 0.5 * sp.N;
  double const za = sp.a * r;
  double const zb = sp.b * r;
  t.value = radial_part(sp, r, 0);
  t.d1 = radial_part(sp, r, 1);
  t.d2 = radial_part(sp, r, 2);
  // j1(z) = z g_nu(z) and g_nu' = -z g_{nu+1}; likewise for i1 with a plus sign.
  t.over_r = sp.a * reduced_j(BesselOrder(nu), za) + sp.gamma * sp.b * reduced_i(BesselOrder(nu), zb);
  t.defect = r * (sp.a * sp.a * sp.a * reduced_j(BesselOrder(nu + 1), za) -
                  sp.gamma * sp.b * sp.b * sp.b * reduced_i(BesselOrder(nu + 1), zb));
  return t;
}

double n_rho(RadialProfile const &p, double r)
{
  if (r < 0.0) {
    throw DomainError("n_rho: radius must be non-negative");
  }
  RadialTerms const t = radial_terms(p, r);
  int const N = p.dim();
  double const tau = p.tau();
  return t.d2 * t.d2 + 3.0 * (N - 1) * t.defect * t.defect + tau * (N - 1) * t.over_r * t.over_r +
         tau * t.d1 * t.d1;
}

// With f = rho / r and g = f'/r, the field u = f(|x|) (a.x) has
//   D_i u    = g x_i (a.x) + f a_i
//   D_ij u   = (g'/r) x_i x_j (a.x) + g (delta_ij (a.x) + x_i a_j + x_j a_i)
// where f' = -defect and f'' = rho''/r + 2 defect / r.
double trial_energy_density(RadialProfile const &p, std::vector<double> const &x, std::vector<double> const &a)
{
  int const N = static_cast<int>(x.size());
  double r2 = 0.0;
  for (double v : x) {
    r2 += v * v;
  }
  double const r = std::sqrt(r2);
  if (!(r > 0.0)) {
    throw DomainError("trial_energy_density: point must differ from the origin");
  }
  RadialTerms const t = radial_terms(p, r);
  double const f = t.over_r;
  double const fp = -t.defect;
  double const fpp = t.d2 / r + 2.0 * t.defect / r;
  double const g = fp / r;                 // f'/r
  double const gp_over_r = (fpp - g) / r2; // (f'/r)' / r = (f'' - f'/r) / r^2

  double ax = 0.0;
  for (int i = 0; i < N; ++i) {
    ax += a[i] * x[i];
  }
  double grad2 = 0.0;
  double hess2 = 0.0;
  for (int i = 0; i < N; ++i) {
    double const gi = g * x[i] * ax + f * a[i];
    grad2 += gi * gi;
    for (int j = 0; j < N; ++j) {
      double const hij = gp_over_r * x[i] * x[j] * ax + g * ((i == j ? ax : 0.0) + x[i] * a[j] + x[j] * a[i]);
      hess2 += hij * hij;
    }
  }
  return hess2 + p.tau() * grad2;
}

double n_rho_cartesian(RadialProfile const &p, std::vector<double> const &x)
{
  int const N = static_cast<int>(x.size());
  if (N != p.dim()) {
    throw DomainError("n_rho_cartesian: point dimension does not match the profile");
  }
  double sum = 0.0;
  std::vector<double> e(N, 0.0);
  for (int k = 0; k < N; ++k) {
    std::fill(e.begin(), e.end(), 0.0);
    e[k] = 1.0;
    sum += trial_energy_density(p, x, e);
  }
  return sum;
}

double radial_moment(RadialProfile const &p, RadialDensity density, double s)
{
  if (s < 0.0) {
    throw DomainError("radial_moment: radius must be non-negative");
  }
  auto f = [&](double t) { return weighted(p, density, t); };
  double const base = p.moment_at_one[static_cast<int>(density)];
  if (s < 0.5) {
    return integrate_adaptive(f, 0.0, s, 1e-14);
  }
  if (s <= 1.0) {
    return base - integrate_fixed(f, s, 1.0, 24);
  }
  return base + integrate_fixed(f, 1.0, s, 24);
}

double c1_constant(RadialProfile const &p)
{
  int const N = p.dim();
  return N * unit_ball_volume(N) * p.moment_at_one[static_cast<int>(RadialDensity::RhoSquared)];
}

double cN_constant(int N)
{
  if (N < 2) {
    throw DomainError("cN_constant: N must be at least 2");
  }
  return (N - 1) * std::pow(2.0, (N - 1.0) / N - 2.0) / (8.0 * N * N);
}

double c2_constant(RadialProfile const &p)
{
  int const N = p.dim();
  double const tau = p.tau();
  double const gap = p.R1 - p.dR1;
  double const bracket = (3.0 + tau) * gap * gap + 2.0 * tau * p.dR1 * gap;
  return N * unit_ball_volume(N) * bracket * cN_constant(N);
}

double c3_constant(RadialProfile const &p, double sigma)
{
  int const N = p.dim();
  if (!(sigma > -1.0 / (N - 1)) || !(sigma < 1.0)) {
    throw DomainError("c3_constant: Poisson ratio must lie in (-1/(N-1), 1)");
  }
  double const gap = p.R1 - p.dR1;
  return 0.5 * gap * gap * (N - 1) * sigma * (sigma * (N - 1) * (sigma - 2.0) + N - 2.0);
}

double eta_constant(int N, double tau, double volume)
{
  if (!(volume > 0.0)) {
    throw DomainError("eta_constant: volume must be positive");
  }
  double const s = std::pow(unit_ball_volume(N) / volume, 1.0 / N);
  RadialProfile const p = make_profile(N, tau / (s * s));
  return c2_constant(p) / (p.params.lambda2 * c1_constant(p));
}

bool LemmaCheck::all() const { return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; }); }

LemmaCheck check_lemma(RadialProfile const &p, double step, double r_max)
{
  int const N = p.dim();
  double const tau = p.tau();
  auto slack = [](double v) { return 1e-12 * (1.0 + std::abs(v)); };

  std::vector<double> grid;
  for (int i = 1; i * step <= r_max + 1e-12; ++i) {
    grid.push_back(i * step);
  }
  std::vector<RadialTerms> terms;
  std::vector<double> energy;
  terms.reserve(grid.size());
  for (double r : grid) {
    terms.push_back(radial_terms(p, r));
    energy.push_back(n_rho(p, r));
  }

  LemmaCheck out;
  out.holds.fill(true);
  out.worst.fill(std::numeric_limits<double>::infinity());
  auto record = [&](int idx, double margin, double tolerance) {
    out.worst[idx] = std::min(out.worst[idx], margin);
    if (margin < -tolerance) {
      out.holds[idx] = false;
    }
  };
  auto strict = [&](int idx, double margin) {
    out.worst[idx] = std::min(out.worst[idx], margin);
    if (!(margin > 0.0)) {
      out.holds[idx] = false;
    }
  };

  for (std::size_t i = 0; i < grid.size(); ++i) {
    RadialTerms const &t = terms[i];
    double const r = grid[i];
    // i) rho'' <= 0 and rho' non-increasing
    record(0, -t.d2, slack(t.d2));
    // ii) rho - r rho' > 0 for r > 0
    strict(1, t.defect * r * r);
    // vii) closed form against the Cartesian reconstruction
    std::vector<double> x(N, 0.0);
    x[0] = r * 0.6;
    x[1] = r * 0.8;
    double const cart = n_rho_cartesian(p, x);
    record(6, 1e-10 * std::max(1.0, std::abs(energy[i])) - std::abs(cart - energy[i]), 0.0);

    if (i + 1 < grid.size()) {
      RadialTerms const &u = terms[i + 1];
      double const rn = grid[i + 1];
      record(0, t.d1 - u.d1, slack(t.d1));
      // iii) rho^2 strictly increasing
      strict(2, u.value * u.value - t.value * t.value);
      // iv) rho^2 / r^2 non-increasing
      record(3, t.over_r * t.over_r - u.over_r * u.over_r, slack(t.over_r * t.over_r));
      // v) 3 (rho - r rho')^2 / r^4 + tau rho^2 / r^2 non-increasing
      double const v0 = 3.0 * t.defect * t.defect + tau * t.over_r * t.over_r;
      double const v1 = 3.0 * u.defect * u.defect + tau * u.over_r * u.over_r;
      record(4, v0 - v1, slack(v0));
      // viii) N[rho] non-increasing on [1, r_max]
      if (r >= 1.0 - 1e-12 && rn >= 1.0) {
        record(7, energy[i] - energy[i + 1], slack(energy[i]));
      }
    }
  }

  // vi) min over [0, 1) exceeds max over [1, r_max]
  double inner_min = n_rho(p, 0.0);
  double outer_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1.0 - 1e-12) {
      inner_min = std::min(inner_min, energy[i]);
    } else {
      outer_max = std::max(outer_max, energy[i]);
    }
  }
  strict(5, inner_min - outer_max);
  return out;
}

} // namespace plate

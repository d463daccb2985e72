#include "plate/quant.hpp"

#include "plate/ball.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace plate {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kTrialAngles = 1024;
constexpr double kChainSlack = 1e-6;

// Runs body(i) for i in [0, n) on up to worker_count() threads. Results are
// written by index, so the outcome does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t n, Body body)
{
  unsigned const workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (!error) {
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(run);
  }
  for (auto &t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

double sup_psi(StarDomain const &d)
{
  double m = 0.0;
  for (int i = 0; i < kPositivityGrid; ++i) {
    m = std::max(m, std::abs(d.psi(2.0 * kPi * i / kPositivityGrid)));
  }
  return m;
}

} // namespace

unsigned worker_count()
{
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (char const *env = std::getenv("PLATE_TONE_THREADS")) {
    char *end = nullptr;
    long const cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) {
      n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
  }
  return n;
}

double trial_upper_bound(StarDomain const &d, RadialProfile const &p, Point2 const &center)
{
  if (p.dim() != 2) {
    throw DomainError("trial_upper_bound: profile must be two-dimensional");
  }
  if (std::abs(area(d) - kPi) > 1e-9) {
    throw DomainError("trial_upper_bound: domain must have area pi");
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < kTrialAngles; ++i) {
    double const s = boundary_distance(d, center, 2.0 * kPi * i / kTrialAngles);
    num += radial_moment(p, RadialDensity::Energy, s);
    den += radial_moment(p, RadialDensity::RhoSquared, s);
  }
  return num / den;
}

BoundReport theorem_bound(StarDomain const &d, double tau, BoundOptions const &opts)
{
  if (!(tau >= 1e-2 && tau <= 1e3)) {
    throw DomainError("theorem_bound: tau must lie in [1e-2, 1e3]");
  }
  d.validate();
  Normalized const nd = normalized(d);
  double const s = nd.scale;
  double const tau_n = tau / (s * s);
  RadialProfile const p = make_profile(2, tau_n);

  BoundReport r;
  r.domain = d;
  r.tau = tau;
  r.scale = s;
  double const lb = p.params.lambda2;
  r.eta = c2_constant(p) / (lb * c1_constant(p));
  r.A = fraenkel(nd.domain);
  r.center = weinberger_center(nd.domain, p);
  r.alpha = overlap(nd.domain, r.center).alpha;
  double const trial = trial_upper_bound(nd.domain, p, r.center);
  ToneEstimate const tone = fundamental_tone(nd.domain, tau_n, opts.degree, Problem::Neumann);

  double const rhs = lb * (1.0 - r.eta * r.A * r.A);
  double const tol = opts.tolerance;
  r.holds = tone.lambda2 <= rhs + tol;
  r.trial_ordered = tone.lambda2 <= trial + tol && trial <= lb + tol;

  // Back to the units of the original domain.
  r.lambda2_ball = rescale_lambda(lb, s);
  r.rhs = rescale_lambda(rhs, s);
  r.lambda2_domain = rescale_lambda(tone.lambda2, s);
  r.delta_prev = rescale_lambda(tone.delta_prev, s);
  r.trial_bound = rescale_lambda(trial, s);
  r.tolerance = rescale_lambda(tol, s);
  return r;
}

StarDomain random_class_p_domain(std::mt19937_64 &rng)
{
  std::uniform_int_distribution<int> mode(3, 8);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> size(0.02, 0.1);
  int const M = mode(rng);
  std::vector<double> c(M + 1, 0.0), sn(M, 0.0);
  for (int k = 3; k <= M; ++k) {
    c[k] = coef(rng);
    sn[k - 1] = coef(rng);
  }
  StarDomain d(1.0, std::move(c), std::move(sn));
  double const m = sup_psi(d);
  for (double &v : d.cos) {
    v /= m;
  }
  for (double &v : d.sin) {
    v /= m;
  }
  d.eps = size(rng);
  return d;
}

std::vector<BoundReport> random_bound_suite(int count, std::uint64_t seed, double tau, BoundOptions const &opts)
{
  if (count < 0) {
    throw DomainError("random_bound_suite: count must be non-negative");
  }
  std::mt19937_64 rng(seed);
  std::vector<StarDomain> domains;
  for (int i = 0; i < count; ++i) {
    domains.push_back(random_class_p_domain(rng));
  }
  std::vector<BoundReport> out(domains.size());
  parallel_for(domains.size(), [&](std::size_t i) { out[i] = theorem_bound(domains[i], tau, opts); });
  return out;
}

double ball_reference_tone(double tau, Problem problem, int degree)
{
  if (problem == Problem::Neumann) {
    return solve_ball_params(2, tau).lambda2;
  }
  static std::mutex lock;
  static std::map<std::pair<double, int>, double> cache;
  std::unique_lock guard(lock);
  auto const key = std::make_pair(tau, degree);
  if (auto it = cache.find(key); it != cache.end()) {
    return it->second;
  }
  guard.unlock();
  double const value = fundamental_tone(unit_disk(), tau, degree, Problem::Steklov, false).lambda2;
  guard.lock();
  cache.emplace(key, value);
  return value;
}

double loglog_slope(std::vector<double> const &x, std::vector<double> const &y)
{
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("loglog_slope: need at least two matching points");
  }
  Eigen::MatrixXd A(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw DomainError("loglog_slope: values must be positive");
    }
    A(i, 0) = 1.0;
    A(i, 1) = std::log(x[i]);
    b(i) = std::log(y[i]);
  }
  return A.colPivHouseholderQr().solve(b)(1);
}

SharpnessReport sharpness_sweep(StarDomain const &psi, std::vector<double> const &eps_list, double tau, Problem problem,
                                SharpnessOptions const &opts)
{
  if (!psi.is_class_P(1e-14)) {
    throw ClassPError("sharpness_sweep: psi has modes 0, 1 or 2");
  }
  if (eps_list.size() < 4) {
    throw DomainError("sharpness_sweep: need at least four eps values");
  }
  for (double e : eps_list) {
    if (!(e > 0.0 && e <= 0.15)) {
      throw DomainError("sharpness_sweep: eps values must lie in (0, 0.15]");
    }
  }
  if (!(tau > 0.0)) {
    throw DomainError("sharpness_sweep: tau must be positive");
  }

  SharpnessReport rep;
  rep.problem = problem;
  rep.psi = psi;
  rep.psi.eps = 0.0;
  rep.tau = tau;
  rep.eps_list = eps_list;
  std::sort(rep.eps_list.begin(), rep.eps_list.end());
  rep.lambda2_ball = ball_reference_tone(tau, problem, opts.ball_degree);

  rep.records.resize(rep.eps_list.size());
  parallel_for(rep.records.size(), [&](std::size_t i) {
    StarDomain d = psi;
    d.eps = rep.eps_list[i];
    d.validate();
    SharpnessRecord &r = rep.records[i];
    r.eps = d.eps;
    r.area_gap = std::abs(area(d) - kPi);
    r.asymmetry = fraenkel(d);
    ToneEstimate const t = fundamental_tone(d, tau, opts.degree, problem);
    r.tone = t.lambda2;
    r.delta_prev = t.delta_prev;
    r.tone_gap = std::abs(t.lambda2 - rep.lambda2_ball);
    r.tone_gap_over_eps2 = r.tone_gap / (r.eps * r.eps);
    r.used_in_fit = std::abs(t.delta_prev) <= 0.1 * r.tone_gap;
    if (problem == Problem::Neumann) {
      Normalized const nd = normalized(d);
      double const s = nd.scale;
      RadialProfile const p = make_profile(2, tau / (s * s));
      Point2 const c = weinberger_center(nd.domain, p);
      double const trial = trial_upper_bound(nd.domain, p, c);
      double const tone_n = t.lambda2 / rescale_lambda(1.0, s);
      r.trial_bound = rescale_lambda(trial, s);
      r.ball_same_area = rescale_lambda(p.params.lambda2, s);
      r.chain_ordered = tone_n <= trial + kChainSlack && trial <= p.params.lambda2 + kChainSlack;
    }
  });

  std::vector<double> xs, ys;
  rep.r3 = rep.records.front().tone_gap_over_eps2;
  rep.r4 = rep.r3;
  for (auto const &r : rep.records) {
    rep.r3 = std::min(rep.r3, r.tone_gap_over_eps2);
    rep.r4 = std::max(rep.r4, r.tone_gap_over_eps2);
    if (r.used_in_fit && r.tone_gap > 0.0) {
      xs.push_back(r.eps);
      ys.push_back(r.tone_gap);
    }
    if (problem == Problem::Neumann) {
      rep.coarse_constant = std::max(rep.coarse_constant, (r.ball_same_area - r.tone) / r.eps);
    }
  }
  if (xs.size() < 2) {
    throw ConvergenceError("sharpness_sweep: fewer than two converged points for the slope fit");
  }
  rep.slope = loglog_slope(xs, ys);
  return rep;
}

HarmonicFit harmonic_identity_check(RadialProfile const &p, std::vector<double> const &direction, int samples)
{
  int const N = p.dim();
  if (static_cast<int>(direction.size()) != N) {
    throw DomainError("harmonic_identity_check: direction has the wrong dimension");
  }
  double norm = 0.0;
  for (double v : direction) {
    norm += v * v;
  }
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || samples < 4) {
    throw DomainError("harmonic_identity_check: need a non-zero direction and at least four samples");
  }
  std::vector<double> a(direction);
  for (double &v : a) {
    v /= norm;
  }

  std::vector<std::vector<double>> pts;
  if (N == 2) {
    for (int i = 0; i < samples; ++i) {
      double const t = 2.0 * kPi * i / samples;
      pts.push_back({std::cos(t), std::sin(t)});
    }
  } else {
    int const rings = std::max(2, samples / 8);
    for (int i = 0; i < rings; ++i) {
      double const th = kPi * (i + 0.5) / rings;
      for (int j = 0; j < 2 * rings; ++j) {
        double const ph = kPi * j / rings;
        pts.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
      }
    }
  }

  Eigen::VectorXd F(pts.size()), q(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double ax = 0.0;
    for (int k = 0; k < N; ++k) {
      ax += a[k] * pts[i][k];
    }
    q(i) = ax * ax;
    F(i) = trial_energy_density(p, pts[i], a);
  }

  HarmonicFit fit;
  fit.c = F.dot(q) / q.squaredNorm();
  fit.proportional_residual = (F - fit.c * q).cwiseAbs().maxCoeff();
  Eigen::MatrixXd A(pts.size(), 2);
  A.col(0).setOnes();
  A.col(1) = q;
  Eigen::Vector2d const cc = A.colPivHouseholderQr().solve(F);
  fit.c0 = cc(0);
  fit.c1 = cc(1);
  fit.affine_residual = (F - A * cc).cwiseAbs().maxCoeff();
  return fit;
}

} // namespace plate

#include "plate/galerkin.hpp"

#include "plate/quadrature.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/Householder>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plate {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kRaysPerChunk = 32;
constexpr Index kMaxRitz = 12;

// P_k, P_k', P_k'' for k = 0..n at X.
void legendre_jet(int n, double X, VectorXd &P, VectorXd &dP, VectorXd &ddP)
{
  P.resize(n + 1);
  dP.resize(n + 1);
  ddP.resize(n + 1);
  P(0) = 1.0;
  dP(0) = 0.0;
  ddP(0) = 0.0;
  if (n == 0) {
    return;
  }
  P(1) = X;
  dP(1) = 1.0;
  ddP(1) = 0.0;
  for (int k = 2; k <= n; ++k) {
    P(k) = ((2.0 * k - 1.0) * X * P(k - 1) - (k - 1.0) * P(k - 2)) / k;
    dP(k) = dP(k - 2) + (2.0 * k - 1.0) * P(k - 1);
    ddP(k) = ddP(k - 2) + (2.0 * k - 1.0) * dP(k - 1);
  }
}

double max_radius(StarDomain const &d)
{
  double m = 0.0;
  for (int i = 0; i < kPositivityGrid; ++i) {
    m = std::max(m, d.radius(2.0 * kPi * i / kPositivityGrid));
  }
  return m;
}

void check_finite(MatrixXd const &m, char const *what)
{
  if (!m.allFinite()) {
    throw ConvergenceError(std::string("assemble: non-finite entries in ") + what);
  }
}

} // namespace

PolynomialBasis::PolynomialBasis(int degree, double scale)
  : degree_(degree)
  , scale_(scale)
{
  for (int t = 0; t <= degree; ++t) {
    for (int p = t; p >= 0; --p) {
      pq_.emplace_back(p, t - p);
    }
  }
}

Index PolynomialBasis::index(int p, int q) const
{
  int const t = p + q;
  if (p < 0 || q < 0 || t > degree_) {
    throw DomainError("PolynomialBasis::index: exponent outside the basis");
  }
  return static_cast<Index>(t * (t + 1) / 2 + (t - p));
}

void PolynomialBasis::evaluate(double x, double y, Jet &out) const
{
  VectorXd Px, dPx, ddPx, Py, dPy, ddPy;
  legendre_jet(degree_, x / scale_, Px, dPx, ddPx);
  legendre_jet(degree_, y / scale_, Py, dPy, ddPy);
  Index const n = size();
  out.v.resize(n);
  out.dx.resize(n);
  out.dy.resize(n);
  out.dxx.resize(n);
  out.dxy.resize(n);
  out.dyy.resize(n);
  double const s1 = 1.0 / scale_;
  double const s2 = s1 * s1;
  for (Index i = 0; i < n; ++i) {
    auto const [p, q] = pq_[static_cast<std::size_t>(i)];
    out.v(i) = Px(p) * Py(q);
    out.dx(i) = s1 * dPx(p) * Py(q);
    out.dy(i) = s1 * Px(p) * dPy(q);
    out.dxx(i) = s2 * ddPx(p) * Py(q);
    out.dxy(i) = s2 * dPx(p) * dPy(q);
    out.dyy(i) = s2 * Px(p) * ddPy(q);
  }
}

GalerkinSystem assemble(StarDomain const &d, double tau, int degree, Problem problem, QuadratureOptions const &q)
{
  if (degree < 2 || degree > 30) {
    throw DomainError("assemble: degree must lie in [2, 30]");
  }
  if (!(tau > 0.0)) {
    throw DomainError("assemble: tau must be positive");
  }
  d.validate();

  GalerkinSystem sys;
  sys.problem = problem;
  sys.tau = tau;
  sys.basis_degree = degree;
  sys.basis = PolynomialBasis(degree, max_radius(d));
  Index const n = sys.basis.size();
  sys.n_basis = n;

  MatrixXd K = MatrixXd::Zero(n, n);
  MatrixXd G = MatrixXd::Zero(n, n);

  GaussRule const &rule = gauss_legendre(q.radial_nodes);
  double const h_theta = 2.0 * kPi / q.rays;
  Index const per_ray = q.radial_nodes;
  PolynomialBasis::Jet jet;

  MatrixXd V, Dx, Dy, Dxx, Dxy, Dyy;
  for (int ray0 = 0; ray0 < q.rays; ray0 += kRaysPerChunk) {
    int const nr = std::min(kRaysPerChunk, q.rays - ray0);
    Index const cols = nr * per_ray;
    V.resize(n, cols);
    Dx.resize(n, cols);
    Dy.resize(n, cols);
    Dxx.resize(n, cols);
    Dxy.resize(n, cols);
    Dyy.resize(n, cols);
    for (int j = 0; j < nr; ++j) {
      double const theta = (ray0 + j) * h_theta;
      double const R = d.radius(theta);
      double const ct = std::cos(theta), st = std::sin(theta);
      for (Index i = 0; i < per_ray; ++i) {
        double const t = 0.5 * (rule.nodes(i) + 1.0);
        double const r = R * t;
        // dx = r dr dtheta with dr = R dt
        double const w = 0.5 * rule.weights(i) * R * r * h_theta;
        double const sw = std::sqrt(w);
        sys.basis.evaluate(r * ct, r * st, jet);
        Index const col = j * per_ray + i;
        V.col(col) = sw * jet.v;
        Dx.col(col) = sw * jet.dx;
        Dy.col(col) = sw * jet.dy;
        Dxx.col(col) = sw * jet.dxx;
        Dxy.col(col) = (sw * std::sqrt(2.0)) * jet.dxy;
        Dyy.col(col) = sw * jet.dyy;
      }
    }
    auto Kl = K.selfadjointView<Eigen::Lower>();
    Kl.rankUpdate(Dxx);
    Kl.rankUpdate(Dxy);
    Kl.rankUpdate(Dyy);
    Kl.rankUpdate(Dx, tau);
    Kl.rankUpdate(Dy, tau);
    G.selfadjointView<Eigen::Lower>().rankUpdate(V);
  }
  sys.stiffness_raw = K.selfadjointView<Eigen::Lower>();
  sys.gram_raw = G.selfadjointView<Eigen::Lower>();
  check_finite(sys.stiffness_raw, "stiffness");
  check_finite(sys.gram_raw, "Gram matrix");

  if (problem == Problem::Neumann) {
    sys.mass_raw = sys.gram_raw;
  } else {
    MatrixXd B = MatrixXd::Zero(n, n);
    MatrixXd Vb(n, q.boundary_nodes);
    double const hb = 2.0 * kPi / q.boundary_nodes;
    for (int j = 0; j < q.boundary_nodes; ++j) {
      double const theta = j * hb;
      double const R = d.radius(theta);
      double const dR = d.radius_derivative(theta);
      double const ds = std::sqrt(R * R + dR * dR) * hb;
      sys.basis.evaluate(R * std::cos(theta), R * std::sin(theta), jet);
      Vb.col(j) = std::sqrt(ds) * jet.v;
    }
    B.selfadjointView<Eigen::Lower>().rankUpdate(Vb);
    sys.mass_raw = B.selfadjointView<Eigen::Lower>();
    check_finite(sys.mass_raw, "boundary mass");
  }

  // Orthonormalize against the domain L^2 inner product.
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sys.gram_raw);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceError("assemble: Gram eigendecomposition failed");
  }
  VectorXd const &lam = eig.eigenvalues();
  double const top = lam(n - 1);
  double const cut = top * 1e-26; // singular value ratio 1e-13
  Index keep = 0;
  for (Index i = 0; i < n; ++i) {
    if (lam(i) > cut) {
      ++keep;
    }
  }
  if (keep == 0) {
    throw ConvergenceError("assemble: degenerate Gram matrix");
  }
  sys.transform = eig.eigenvectors().rightCols(keep) * lam.tail(keep).cwiseSqrt().cwiseInverse().asDiagonal();
  sys.stiffness = sys.transform.transpose() * sys.stiffness_raw * sys.transform;
  sys.stiffness = 0.5 * (sys.stiffness + sys.stiffness.transpose()).eval();
  sys.mass = sys.transform.transpose() * sys.mass_raw * sys.transform;
  sys.mass = 0.5 * (sys.mass + sys.mass.transpose()).eval();
  return sys;
}

VectorXd ritz_values(GalerkinSystem const &sys)
{
  Index const m = sys.transform.cols();
  // Coordinates of the constant function (P_0 = 1) in the orthonormal basis.
  VectorXd e0 = VectorXd::Zero(sys.n_basis);
  e0(sys.basis.index(0, 0)) = 1.0;
  VectorXd const y0 = sys.transform.transpose() * (sys.gram_raw * e0);
  VectorXd const g = sys.mass * y0;
  if (!(g.norm() > 0.0)) {
    throw ConvergenceError("ritz_values: constant function has zero mass");
  }
  // Orthonormal basis of the mass-orthogonal complement of the constants.
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd const Q = qr.householderQ() * MatrixXd::Identity(m, m);
  MatrixXd const Z = Q.rightCols(m - 1);
  MatrixXd Kz = Z.transpose() * sys.stiffness * Z;
  MatrixXd Mz = Z.transpose() * sys.mass * Z;
  Kz = 0.5 * (Kz + Kz.transpose()).eval();
  Mz = 0.5 * (Mz + Mz.transpose()).eval();

  // Energy is definite off the constants, so solve M x = mu K x and take
  // lambda = 1 / mu. Directions without mass (Steklov) map to mu = 0.
  Eigen::LLT<MatrixXd> llt(Kz);
  if (llt.info() != Eigen::Success) {
    throw ConvergenceError("ritz_values: energy form is not positive definite off the constants");
  }
  MatrixXd C = llt.matrixL().solve(Mz);
  C = llt.matrixL().solve(C.transpose()).eval();
  C = 0.5 * (C + C.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceError("ritz_values: symmetric eigensolver did not converge");
  }
  VectorXd const &mu = eig.eigenvalues();
  double const mu_max = mu(mu.size() - 1);
  if (!(mu_max > 0.0)) {
    throw ConvergenceError("ritz_values: no direction with positive mass");
  }
  std::vector<double> out;
  for (Index i = mu.size() - 1; i >= 0 && static_cast<Index>(out.size()) < kMaxRitz; --i) {
    if (mu(i) <= mu_max * 1e-14) {
      break;
    }
    out.push_back(1.0 / mu(i));
  }
  return Eigen::Map<VectorXd>(out.data(), static_cast<Index>(out.size()));
}

ToneEstimate fundamental_tone(StarDomain const &d, double tau, int degree, Problem problem, bool with_previous,
                              QuadratureOptions const &q)
{
  if (degree < 4 || degree > 30) {
    throw DomainError("fundamental_tone: degree must lie in [4, 30]");
  }
  auto solve = [&](int deg) {
    GalerkinSystem const sys = assemble(d, tau, deg, problem, q);
    return ritz_values(sys);
  };
  ToneEstimate est;
  est.problem = problem;
  est.basis_degree = degree;
  est.ritz = solve(degree);
  est.lambda2 = est.ritz(0);
  if (!std::isfinite(est.lambda2) || !(est.lambda2 > 0.0)) {
    std::ostringstream msg;
    msg << "fundamental_tone: invalid Ritz value " << est.lambda2;
    throw ConvergenceError(msg.str());
  }
  if (with_previous) {
    est.delta_prev = est.lambda2 - solve(degree - 2)(0);
  }
  return est;
}

} // namespace plate

#pragma once

// Rayleigh-Ritz approximation of the fundamental tone of the free plate
// (mass on the domain) and of the biharmonic Steklov problem (mass on the
// boundary) on planar star domains, using polynomials of total degree <= d.

#include "plate/domain.hpp"
#include "plate/types.hpp"

namespace plate {

// Polynomials of total degree <= degree, represented by the tensor Legendre
// products P_p(x / L) P_q(y / L), p + q <= degree. This spans exactly the
// monomials x^p y^q, p + q <= degree, and is far better conditioned.
class PolynomialBasis
{
public:
  PolynomialBasis(int degree, double scale);

  int degree() const { return degree_; }
  double scale() const { return scale_; }
  Index size() const { return static_cast<Index>(pq_.size()); }
  Index index(int p, int q) const;

  // Values and derivatives of all basis functions at one point.
  struct Jet
  {
    VectorXd v, dx, dy, dxx, dxy, dyy;
  };
  void evaluate(double x, double y, Jet &out) const;

private:
  int degree_;
  double scale_;
  std::vector<std::pair<int, int>> pq_;
};

struct QuadratureOptions
{
  int rays = 512;
  int radial_nodes = 64;
  int boundary_nodes = 2048;
};

struct GalerkinSystem
{
  Problem problem = Problem::Neumann;
  double tau = 0.0;
  int basis_degree = 0;
  Index n_basis = 0;
  PolynomialBasis basis{0, 1.0};

  // Bilinear forms in the raw Legendre basis.
  MatrixXd stiffness_raw; // int D^2u : D^2v + tau Du . Dv
  MatrixXd gram_raw;      // int_Omega u v
  MatrixXd mass_raw;      // gram_raw (Neumann) or int_dOmega u v (Steklov)

  // Columns span the L^2(Omega)-orthonormalized basis, with directions of
  // relative singular value below 1e-13 dropped.
  MatrixXd transform;
  MatrixXd stiffness; // transform^T stiffness_raw transform
  MatrixXd mass;      // transform^T mass_raw transform
};

GalerkinSystem assemble(StarDomain const &d, double tau, int degree, Problem problem,
                        QuadratureOptions const &q = {});

struct ToneEstimate
{
  Problem problem = Problem::Neumann;
  double lambda2 = 0.0;
  int basis_degree = 0;
  double delta_prev = 0.0;  // lambda2(degree) - lambda2(degree - 2)
  VectorXd ritz;            // smallest positive Ritz values, ascending
};

// Smallest positive Ritz value on the complement of constants. When
// `with_previous` is set the problem is re-solved at degree - 2 to fill
// delta_prev.
ToneEstimate fundamental_tone(StarDomain const &d, double tau, int degree, Problem problem, bool with_previous = true,
                              QuadratureOptions const &q = {});

// Ritz values of an assembled system (ascending, constant mode excluded).
VectorXd ritz_values(GalerkinSystem const &sys);

} // namespace plate

#include "plate/specfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>

namespace plate {

namespace {

using Extended = boost::multiprecision::cpp_bin_float_100;

// Gamma(nu + 1) for nu a non-negative multiple of 1/2.
template <typename Scalar> Scalar gamma_plus_one(double nu)
{
  Scalar g;
  double start;
  if (std::floor(nu) == nu) {
    g = Scalar(1);
    start = 1.0;
  } else {
    using std::sqrt;
    g = sqrt(boost::math::constants::pi<Scalar>()) / 2; // Gamma(3/2)
    start = 1.5;
  }
  for (double x = start + 1.0; x <= nu + 1.0 + 1e-9; x += 1.0) {
    g *= Scalar(x - 1.0);
  }
  return g;
}

// Kahan-compensated partial sums; for the extended type the compensation is
// redundant but harmless.
template <typename Scalar> struct KahanSum
{
  Scalar sum{0};
  Scalar comp{0};
  void add(Scalar const &x)
  {
    Scalar y = x - comp;
    Scalar t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// sum_k sign^k (z^2/4)^k / (k! Gamma(k + nu + 1)) / 2^nu
template <typename Scalar> Scalar reduced_series(double nu, Scalar const &z, int sign)
{
  using std::abs;
  Scalar const q = z * z / 4;
  Scalar term = Scalar(1) / gamma_plus_one<Scalar>(nu);
  {
    using std::pow;
    term /= pow(Scalar(2), Scalar(nu));
  }
  KahanSum<Scalar> acc;
  acc.add(term);
  Scalar const eps = std::numeric_limits<Scalar>::epsilon();
  Scalar peak = abs(term);
  for (int k = 1; k < 2000; ++k) {
    term *= q / (Scalar(k) * Scalar(k + nu));
    if (sign < 0) {
      term = -term;
    }
    acc.add(term);
    Scalar const mag = abs(term);
    if (mag > peak) {
      peak = mag;
    }
    if (Scalar(k) > q && mag <= eps * abs(acc.sum) * Scalar(1e-3) && mag <= eps * peak) {
      break;
    }
  }
  return acc.sum;
}

double reduced(BesselOrder nu, double z, int sign)
{
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError("Bessel argument must be finite and non-negative");
  }
  if (z > kBesselMaxArgument) {
    throw DomainError("Bessel argument above the series window (z > 200)");
  }
  // The I series has no cancellation; J needs extra digits for large z.
  if (sign > 0 || z <= kBesselDoubleThreshold) {
    return reduced_series<double>(nu.nu, z, sign);
  }
  return static_cast<double>(reduced_series<Extended>(nu.nu, Extended(z), sign));
}

void check_dimension(int N, int k)
{
  if (N != 2 && N != 3) {
    throw DomainError("ultraspherical Bessel functions: N must be 2 or 3");
  }
  if (k < 0 || k > 3) {
    throw DomainError("ultraspherical Bessel functions: derivative order must be 0..3");
  }
}

// Derivatives of the reduced function f_nu with f_nu' = s z f_{nu+1}, s = -1 for
// J and +1 for I:
//   f'   = s z f1
//   f''  = s f1 + z^2 f2
//   f''' = 3 s^2 z f2 + s z^3 f3      (s^2 = 1)
// Then d^k/dz^k (z f) = z f^(k) + k f^(k-1).
template <typename F> double ultra(int N, double z, int k, int s, F f)
{
  check_dimension(N, k);
  double const nu = 0.5 * N;
  auto fd = [&](int order) -> double {
    switch (order) {
    case 0: return f(nu);
    case 1: return s * z * f(nu + 1);
    case 2: return s * f(nu + 1) + z * z * f(nu + 2);
    default: return 3.0 * z * f(nu + 2) + s * z * z * z * f(nu + 3);
    }
  };
  if (k == 0) {
    return z * fd(0);
  }
  return z * fd(k) + k * fd(k - 1);
}

} // namespace

BesselOrder::BesselOrder(double v)
  : nu(v)
{
  if (!(v >= 0.0) || std::floor(2.0 * v) != 2.0 * v) {
    throw DomainError("Bessel order must be a non-negative multiple of 1/2");
  }
}

double reduced_j(BesselOrder nu, double z) { return reduced(nu, z, -1); }
double reduced_i(BesselOrder nu, double z) { return reduced(nu, z, +1); }

double bessel_j(BesselOrder nu, double z)
{
  double const g = reduced_j(nu, z);
  return nu.nu == 0.0 ? g : std::pow(z, nu.nu) * g;
}

double bessel_i(BesselOrder nu, double z)
{
  double const h = reduced_i(nu, z);
  return nu.nu == 0.0 ? h : std::pow(z, nu.nu) * h;
}

double ultra_j1(int N, double z, int k)
{
  return ultra(N, z, k, -1, [z](double nu) { return reduced_j(BesselOrder(nu), z); });
}

double ultra_i1(int N, double z, int k)
{
  return ultra(N, z, k, +1, [z](double nu) { return reduced_i(BesselOrder(nu), z); });
}

} // namespace plate

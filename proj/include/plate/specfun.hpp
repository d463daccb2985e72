#pragma once

// Bessel functions of the first kind J_nu, I_nu for integer and half-integer
// orders, and the ultraspherical Bessel functions
//
//   j1(z) = z^(1-N/2) J_{N/2}(z),   i1(z) = z^(1-N/2) I_{N/2}(z)
//
// with derivatives up to third order.
//
// Everything is built on the reduced functions g_nu(z) = z^-nu J_nu(z) and
// h_nu(z) = z^-nu I_nu(z), which are entire and satisfy
//   g_nu' = -z g_{nu+1},   h_nu' = z h_{nu+1}.
// Since j1 = z g_{N/2}, the product rule gives every derivative without
// negative orders and without singular terms at z = 0.

#include "plate/types.hpp"

namespace plate {

// Largest argument accepted by the series evaluators.
inline constexpr double kBesselMaxArgument = 200.0;

// Arguments at or below this are summed in double precision; larger ones
// use a 100-digit working precision to survive the cancellation in J.
inline constexpr double kBesselDoubleThreshold = 8.0;

// Order of a Bessel function. Only non-negative multiples of 1/2 are
// supported (Gamma(nu + 1) is built by exact recurrence).
struct BesselOrder
{
  double nu;
  explicit BesselOrder(double v);
};

double bessel_j(BesselOrder nu, double z);
double bessel_i(BesselOrder nu, double z);

/// z^-nu J_nu(z), with the limit 1 / (2^nu Gamma(nu+1)) at z = 0.
double reduced_j(BesselOrder nu, double z);
/// z^-nu I_nu(z).
double reduced_i(BesselOrder nu, double z);

/// k-th derivative (k = 0..3) of j1(z) = z^(1-N/2) J_{N/2}(z), N in {2,3}.
double ultra_j1(int N, double z, int k);
/// k-th derivative (k = 0..3) of i1(z) = z^(1-N/2) I_{N/2}(z), N in {2,3}.
double ultra_i1(int N, double z, int k);

} // namespace plate

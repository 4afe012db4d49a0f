#pragma once

// Exact Heisenberg propagators for the inverse-linear, power-law and
// exponential frequency families.

#include <complex>

#include "tdho/symplectic.hpp"

namespace tdho {

/// Roots of beta (beta - 1) + Omega^2 = 0 with Omega = omega0 / v:
/// beta_{1,2} = 1/2 +- delta, delta = sqrt(1/4 - Omega^2).
struct ExponentPair {
  std::complex<double> beta1;
  std::complex<double> beta2;
  std::complex<double> delta;
};

ExponentPair exponent_pair(double omega0, double v);

/// Which branch the real-arithmetic evaluation of the inverse-linear
/// propagator takes.
enum class Regime { Oscillatory, Overdamped, Confluent };

Regime inverse_linear_regime(double omega0, double v);

/// S for omega(t) = omega0 / (1 + v t) evaluated at scale factor
/// lambda = 1 + v t. Requires lambda >= 1 for v > 0 and 0 < lambda <= 1 for v < 0.
Evolution propagate_inverse_linear(double omega0, double v, double lambda);

/// Mean energy at scale lambda from a stationary state of frequency omega0:
/// E0 [lambda^{2 delta} + lambda^{-2 delta} + 2(4 delta^2 - 1)] / (8 lambda delta^2).
double energy_inverse_linear(double omega0, double v, double lambda, const StationaryState& state);

/// S for omega(t) = omega0 z^{(k-2)/2}, z = z_start + v t, from z_start to
/// z_final, built from sqrt(z) J_{1/|k|}, sqrt(z) Y_{1/|k|} of argument
/// (2 omega0 / |k v|) z^{k/2}.
Evolution propagate_power_law(double k, double v, double z_final, double omega0 = 1.0, double z_start = 1.0);

/// S for omega(t) = omega0 e^{v t}, z = e^{v t} running from 1 to z_final,
/// built from J_0, Y_0 of argument omega0 z / |v|.
Evolution propagate_exponential(double v, double z_final, double omega0 = 1.0);

/// Large-v limit (omega / 4)(1 + 1/lambda^2) of the ground-state energy after
/// a sudden change of scale lambda.
double asymptotic_energy(double lambda, double omega);

/// z_final with z_final^{k-2} = lambda^{-2}, i.e. final frequency omega0 / lambda.
double power_law_z_for_scale(double k, double lambda);

namespace bessel {
/// J_nu(x) for nu >= 0, x > 0; throws NumericError if not finite.
double j(double nu, double x);
/// Y_nu(x) for nu >= 0, x > 0; throws NumericError if not finite.
double y(double nu, double x);
}  // namespace bessel

}  // namespace tdho

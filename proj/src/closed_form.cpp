#include "tdho/closed_form.hpp"

#include <cmath>
#include <sstream>

namespace tdho {

namespace bessel {

// libstdc++ special functions: Steed/Temme below x = 1000, Hankel asymptotics above.
double j(double nu, double x) {
  const double r = std::cyl_bessel_j(nu, x);
  if (!std::isfinite(r)) {
    std::ostringstream msg;
    msg << "Bessel J_" << nu << "(" << x << ") is not finite";
    throw NumericError(msg.str());
  }
  return r;
}

double y(double nu, double x) {
  const double r = std::cyl_neumann(nu, x);
  if (!std::isfinite(r)) {
    std::ostringstream msg;
    msg << "Bessel Y_" << nu << "(" << x << ") is not finite";
    throw NumericError(msg.str());
  }
  return r;
}

}  // namespace bessel

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

void require_reachable(double v, double from, double to, const char* op) {
  if (!(from > 0.0) || !(to > 0.0) || !std::isfinite(to)) {
    std::ostringstream msg;
    msg << op << ": scale must be positive and finite (got " << to << ")";
    throw DomainError(msg.str());
  }
  if ((v > 0.0 && to < from) || (v < 0.0 && to > from)) {
    std::ostringstream msg;
    msg << op << ": scale " << to << " is unreachable from " << from << " with rate v = " << v;
    throw DomainError(msg.str());
  }
}

Evolution checked(const Evolution& s, const char* op) {
  if (!s.allFinite() || det_error(s) > kPropagatorDetTol) {
    std::ostringstream msg;
    msg << op << ": special-function evaluation lost accuracy (|det - 1| = " << det_error(s) << ")";
    throw NumericError(msg.str());
  }
  return s;
}

// cosh(delta L) and sinh(delta L) / delta for real, imaginary or zero delta,
// given delta^2.
struct HyperbolicPair {
  double ch;
  double shd;
};

HyperbolicPair hyperbolic_pair(double delta2, double log_lambda) {
  if (delta2 > 0.0) {
    const double d = std::sqrt(delta2);
    return {std::cosh(d * log_lambda), std::sinh(d * log_lambda) / d};
  }
  if (delta2 < 0.0) {
    const double d = std::sqrt(-delta2);
    return {std::cos(d * log_lambda), std::sin(d * log_lambda) / d};
  }
  return {1.0, log_lambda};
}

double omega_ratio_squared(double omega0, double v) {
  const double r = omega0 / v;
  return r * r;
}

}  // namespace

ExponentPair exponent_pair(double omega0, double v) {
  require(omega0 > 0.0 && v != 0.0 && std::isfinite(v), "exponent_pair: need omega0 > 0 and finite v != 0");
  const std::complex<double> delta = std::sqrt(std::complex<double>(0.25 - omega_ratio_squared(omega0, v), 0.0));
  return {0.5 + delta, 0.5 - delta, delta};
}

Regime inverse_linear_regime(double omega0, double v) {
  const double delta2 = 0.25 - omega_ratio_squared(omega0, v);
  if (delta2 > 0.0) return Regime::Overdamped;
  if (delta2 < 0.0) return Regime::Oscillatory;
  return Regime::Confluent;
}

Evolution propagate_inverse_linear(double omega0, double v, double lambda) {
  require(omega0 > 0.0, "propagate_inverse_linear: omega0 must be positive");
  require(v != 0.0 && std::isfinite(v), "propagate_inverse_linear: v must be finite and nonzero");
  require_reachable(v, 1.0, lambda, "propagate_inverse_linear");

  const double omega2 = omega_ratio_squared(omega0, v);
  const auto [ch, shd] = hyperbolic_pair(0.25 - omega2, std::log(lambda));
  const double s = std::sqrt(lambda);
  Evolution m;
  m << s * (ch - 0.5 * shd), s * shd / v, -v * omega2 * shd / s, (ch + 0.5 * shd) / s;
  return m;
}

double energy_inverse_linear(double omega0, double v, double lambda, const StationaryState& state) {
  require(omega0 > 0.0, "energy_inverse_linear: omega0 must be positive");
  require(v != 0.0 && std::isfinite(v), "energy_inverse_linear: v must be finite and nonzero");
  require_reachable(v, 1.0, lambda, "energy_inverse_linear");
  if (std::abs(state.omega0 - omega0) > 1e-12 * omega0)
    throw DomainError("energy_inverse_linear: state must be stationary for the initial frequency omega0");
  // lambda^{2d} + lambda^{-2d} - 2 = 4 delta^2 (sinh(delta L)/delta)^2, so the
  // bracket reduces to (1 + shd^2 / 2) / lambda.
  const auto [ch, shd] = hyperbolic_pair(0.25 - omega_ratio_squared(omega0, v), std::log(lambda));
  (void)ch;
  return state.energy() * (1.0 + 0.5 * shd * shd) / lambda;
}

namespace {

// Columns: (u, v du/dz) for u = sqrt(z) J_nu(x) and sqrt(z) Y_nu(x).
Evolution power_law_fundamental(double k, double v, double omega0, double z) {
  const double nu = 1.0 / std::abs(k);
  const double c = 2.0 * omega0 / (std::abs(k) * std::abs(v));
  const double x = c * std::pow(z, k / 2.0);
  const double rz = std::sqrt(z);
  const double even = k > 0.0 ? 1.0 : 0.0;  // (1 + sign k) / 2
  const double jn = bessel::j(nu, x), jn1 = bessel::j(nu + 1.0, x);
  const double yn = bessel::y(nu, x), yn1 = bessel::y(nu + 1.0, x);
  Evolution phi;
  phi << rz * jn, rz * yn, v * (even * jn - 0.5 * k * x * jn1) / rz, v * (even * yn - 0.5 * k * x * yn1) / rz;
  return phi;
}

Evolution exponential_fundamental(double v, double omega0, double z) {
  const double x = omega0 * z / std::abs(v);
  const double w = (v > 0.0 ? -1.0 : 1.0) * omega0 * z;
  Evolution phi;
  phi << bessel::j(0.0, x), bessel::y(0.0, x), w * bessel::j(1.0, x), w * bessel::y(1.0, x);
  return phi;
}

}  // namespace

Evolution propagate_power_law(double k, double v, double z_final, double omega0, double z_start) {
  require(k != 0.0 && std::isfinite(k), "propagate_power_law: k must be finite and nonzero");
  require(omega0 > 0.0, "propagate_power_law: omega0 must be positive");
  require(v != 0.0 && std::isfinite(v), "propagate_power_law: v must be finite and nonzero");
  require_reachable(v, z_start, z_final, "propagate_power_law");
  if (z_final == z_start) return Evolution::Identity();
  const Evolution phi0 = power_law_fundamental(k, v, omega0, z_start);
  const Evolution phi1 = power_law_fundamental(k, v, omega0, z_final);
  return checked(phi1 * phi0.inverse(), "propagate_power_law");
}

Evolution propagate_exponential(double v, double z_final, double omega0) {
  require(omega0 > 0.0, "propagate_exponential: omega0 must be positive");
  require(v != 0.0 && std::isfinite(v), "propagate_exponential: v must be finite and nonzero");
  require_reachable(v, 1.0, z_final, "propagate_exponential");
  if (z_final == 1.0) return Evolution::Identity();
  const Evolution phi0 = exponential_fundamental(v, omega0, 1.0);
  const Evolution phi1 = exponential_fundamental(v, omega0, z_final);
  return checked(phi1 * phi0.inverse(), "propagate_exponential");
}

double asymptotic_energy(double lambda, double omega) {
  return omega / 4.0 * (1.0 + 1.0 / (lambda * lambda));
}

double power_law_z_for_scale(double k, double lambda) {
  require(lambda > 0.0, "power_law_z_for_scale: lambda must be positive");
  require(k != 2.0, "power_law_z_for_scale: k = 2 has constant frequency");
  return std::pow(lambda, -2.0 / (k - 2.0));
}

}  // namespace tdho

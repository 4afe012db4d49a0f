#pragma once

// Reference values and reference solvers used only by the tests. The frozen
// numbers were computed once with mpmath at 30 digits; the solvers are
// deliberately simple and share no code with the library.

#include <Eigen/Dense>
#include <cmath>
#include <functional>

namespace oracle {

/// Inverse-linear ramp omega0 = 1, v = 1 to lambda = 2.
inline const double kInverseLinear_1_1_2[4] = {0.70575535263527661055, 0.92243876938122912145,
                                               -0.46121938469061456073, 0.814097061008252866};
/// Ground-state energy for Omega = 1 at lambda = 10.
inline constexpr double kInverseLinearEnergy_1_1_10 = 0.077708873235538879774;
/// Power law k = -3, v = 2, z from 1 to 4, omega0 = 1.
inline const double kPowerLaw_m3_2_4[4] = {0.83437941544261275055, 1.4781220542176238762,
                                           -0.12315084031771380499, 0.98033102422241239457};
/// Exponential v = 0.7, z from 1 to 1.8, omega0 = 1.
inline const double kExponential_07_18[4] = {0.51124164011686507266, 0.66753139184610277773,
                                             -1.2789879861322127025, 0.28603962977133868622};
/// Gain factor of one inverse-linear cycle omega0 = 1, v = 1, lambda = 10.
inline constexpr double kCycleGain_1_1_10 = 10.713434991061346192;

struct BesselValue {
  double nu, x, j, y;
};
inline const BesselValue kBessel[] = {
    {0.5, 0.3, 0.43049351732812455754, -1.3916685091753702573},
    {1.0 / 3.0, 2.5, 0.19832093341860811226, 0.4614594741912908418},
    {0.25, 40.0, 0.054911752342599731717, 0.11357491874760488486},
    {1.25, 1e-3, 6.5990491108502934973e-5, -3858.8609763066783884},
    {0.0, 7.5, 0.26633965788037839687, 0.11731328614820863084},
    {1.0, 7.5, 0.13524842757970550518, -0.2591285104861162518},
    {10.0, 12.0, 0.30047603527126931073, -0.022876314070499700888},
    {0.5, 5000.0, -0.011148007472939753837, -0.0017452460734222186599},
};

/// Fixed-step classical RK4 for q'' = -omega(t)^2 q, fundamental matrix.
inline Eigen::Matrix2d rk4_propagator(const std::function<double(double)>& omega, double t0, double t1, int steps) {
  Eigen::Matrix2d y = Eigen::Matrix2d::Identity();
  const double h = (t1 - t0) / steps;
  auto f = [&](double t, const Eigen::Matrix2d& m) {
    Eigen::Matrix2d d;
    const double w2 = omega(t) * omega(t);
    d.row(0) = m.row(1);
    d.row(1) = -w2 * m.row(0);
    return d;
  };
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const Eigen::Matrix2d k1 = f(t, y), k2 = f(t + h / 2, y + h / 2 * k1), k3 = f(t + h / 2, y + h / 2 * k2),
                          k4 = f(t + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y;
}

/// Richardson-extrapolated RK4 (error O(h^5)) for tighter reference values.
inline Eigen::Matrix2d rk4_extrapolated(const std::function<double(double)>& omega, double t0, double t1,
                                        int steps) {
  const Eigen::Matrix2d coarse = rk4_propagator(omega, t0, t1, steps);
  const Eigen::Matrix2d fine = rk4_propagator(omega, t0, t1, 2 * steps);
  return fine + (fine - coarse) / 15.0;
}

/// Short-time correction for omega = e^{vt} ramped to z: the ground-state
/// energy is (1 + z^2)/4 + C(z) / (4 v^2) + O(v^-3), from a second-order
/// expansion of the propagator in the elapsed time ln(z) / v.
inline double exponential_correction(double z) {
  const double z2 = z * z, l = std::log(z);
  return z2 * (l * l - (z2 - 1.0 - 2.0 * l) / 2.0) + (z2 - 1.0) * (z2 - 1.0) / 4.0 - (2.0 * z2 * l - z2 + 1.0) / 2.0;
}

}  // namespace oracle

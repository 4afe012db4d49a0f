#pragma once

// First-order time-dependent perturbation theory for a drive
// delta_omega(t) x^N in the unit-frequency oscillator basis.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace tdho {

/// <m| x^N |n> on a truncated basis 0..cutoff-1. Entries in rows or columns
/// within N of the cutoff feel the truncation and are refused by at().
class OperatorMatrix {
 public:
  OperatorMatrix(Eigen::MatrixXd elements, int power);

  int power() const { return power_; }
  int cutoff() const { return static_cast<int>(elements_.rows()); }
  /// Indices below this bound are exact.
  int usable() const { return cutoff() - power_; }
  const Eigen::MatrixXd& elements() const { return elements_; }

  /// Throws DomainError for truncation-affected indices.
  double at(int m, int n) const;

 private:
  Eigen::MatrixXd elements_;
  int power_;
};

/// Extra basis states beyond n + N required of every cutoff.
inline constexpr int kCutoffMargin = 32;

/// x^N from the tridiagonal <n+1|x|n> = sqrt((n+1)/2).
OperatorMatrix x_power_matrix(int power, int cutoff);

/// A drive delta_omega(t) on [0, t0] with delta_omega(0) = delta_omega(t0) = 0.
struct PerturbingDrive {
  std::function<double(double)> delta_omega;
  double t0 = 1.0;
};

/// int_0^{t0} dt (delta_omega(t) / 2) e^{i w t}, composite Simpson refined
/// until the Richardson estimate is below 1e-10 relative.
std::complex<double> drive_amplitude(const PerturbingDrive& drive, double w);

/// First-order P(n_from -> n_to) = |int dt (delta_omega/2) e^{i w_fi t} (x^N)_fi|^2.
double transition_probability(const PerturbingDrive& drive, int n_from, int n_to, int power, int cutoff);

struct InequalityViolation {
  int power;
  int n;
  int m;
  double up;    // |(x^N)_{n+m,n}|
  double down;  // |(x^N)_{n-m,n}|
};

struct InequalityReport {
  int power = 0;
  int n_max = 0;
  int checked = 0;
  std::vector<InequalityViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks |(x^N)_{n+m,n}| >= |(x^N)_{n-m,n}| for n <= n_max, 0 < m <= min(n, N),
/// m = N mod 2. Violations are reported, never thrown.
InequalityReport check_inequality(int power, int n_max, int cutoff);

/// sum_f (E_f - E_n) P(n -> f) over the parity-allowed channels.
double first_order_energy_shift(const PerturbingDrive& drive, int n, int power, int cutoff);

}  // namespace tdho

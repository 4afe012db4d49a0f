#include "tdho/perturbation.hpp"

#include <cmath>
#include <sstream>

#include "tdho/error.hpp"

namespace tdho {

namespace {

constexpr double kEndpointTol = 1e-12;
constexpr double kQuadratureTol = 1e-10;
constexpr int kMaxQuadratureLevel = 24;

void require_cutoff(int cutoff, int highest, int power) {
  if (cutoff < highest + power + kCutoffMargin) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff << " too small: need at least " << highest + power + kCutoffMargin
        << " for level " << highest << " and power " << power;
    throw DomainError(msg.str());
  }
}

void require_drive(const PerturbingDrive& drive) {
  if (!drive.delta_omega) throw DomainError("perturbing drive is empty");
  if (!(drive.t0 > 0.0)) throw DomainError("perturbing drive needs t0 > 0");
  const double a = drive.delta_omega(0.0), b = drive.delta_omega(drive.t0);
  if (std::abs(a) > kEndpointTol || std::abs(b) > kEndpointTol) {
    std::ostringstream msg;
    msg << "perturbing drive must vanish at both ends (got " << a << ", " << b << ")";
    throw DomainError(msg.str());
  }
}

bool parity_allowed(int n_from, int n_to, int power) {
  const int gap = std::abs(n_to - n_from);
  return gap <= power && (power - gap) % 2 == 0;
}

}  // namespace

OperatorMatrix::OperatorMatrix(Eigen::MatrixXd elements, int power) : elements_(std::move(elements)), power_(power) {}

double OperatorMatrix::at(int m, int n) const {
  if (m < 0 || n < 0 || m >= usable() || n >= usable()) {
    std::ostringstream msg;
    msg << "x^" << power_ << " element (" << m << ", " << n << ") is outside the exact block of size " << usable();
    throw DomainError(msg.str());
  }
  return elements_(m, n);
}

OperatorMatrix x_power_matrix(int power, int cutoff) {
  if (power < 1) throw DomainError("x_power_matrix: power must be >= 1");
  if (cutoff <= power) throw DomainError("x_power_matrix: cutoff must exceed the power");
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(cutoff, cutoff);
  for (int n = 0; n + 1 < cutoff; ++n) x(n + 1, n) = x(n, n + 1) = std::sqrt((n + 1) / 2.0);
  Eigen::MatrixXd xn = x;
  for (int i = 1; i < power; ++i) xn = (xn * x).eval();
  xn = (0.5 * (xn + xn.transpose())).eval();
  return {std::move(xn), power};
}

std::complex<double> drive_amplitude(const PerturbingDrive& drive, double w) {
  require_drive(drive);
  auto integrand = [&](double t) { return drive.delta_omega(t) / 2.0 * std::exp(std::complex<double>(0.0, w * t)); };

  // Samples at level L are t_j = j t0 / 2^L; each level reuses the previous ones.
  const double t0 = drive.t0;
  std::complex<double> ends = integrand(0.0) + integrand(t0);
  std::complex<double> evens = 0.0, odds = 0.0;
  int intervals = 2;
  odds = integrand(t0 / 2);
  std::complex<double> previous = (ends + 4.0 * odds) * (t0 / intervals) / 3.0;
  for (int level = 2; level <= kMaxQuadratureLevel; ++level) {
    evens += odds;
    intervals *= 2;
    odds = 0.0;
    const double h = t0 / intervals;
    for (int j = 1; j < intervals; j += 2) odds += integrand(j * h);
    const std::complex<double> current = (ends + 2.0 * evens + 4.0 * odds) * h / 3.0;
    const double richardson = std::abs(current - previous) / 15.0;
    if (level >= 6 && richardson <= kQuadratureTol * std::abs(current)) return current + (current - previous) / 15.0;
    previous = current;
  }
  throw NumericError("drive_amplitude: Simpson quadrature did not converge");
}

double transition_probability(const PerturbingDrive& drive, int n_from, int n_to, int power, int cutoff) {
  if (n_from < 0 || n_to < 0) throw DomainError("transition_probability: levels must be >= 0");
  require_cutoff(cutoff, std::max(n_from, n_to), power);
  require_drive(drive);
  if (!parity_allowed(n_from, n_to, power)) return 0.0;
  const double element = x_power_matrix(power, cutoff).at(n_to, n_from);
  const std::complex<double> amp = drive_amplitude(drive, double(n_to - n_from)) * element;
  return std::norm(amp);
}

InequalityReport check_inequality(int power, int n_max, int cutoff) {
  if (power < 1 || n_max < 0) throw DomainError("check_inequality: need power >= 1 and n_max >= 0");
  require_cutoff(cutoff, n_max, power);
  const OperatorMatrix xn = x_power_matrix(power, cutoff);
  InequalityReport report;
  report.power = power;
  report.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 1; m <= std::min(n, power); ++m) {
      if ((power - m) % 2 != 0) continue;
      const double up = std::abs(xn.at(n + m, n));
      const double down = std::abs(xn.at(n - m, n));
      ++report.checked;
      if (up < down) report.violations.push_back({power, n, m, up, down});
    }
  }
  return report;
}

double first_order_energy_shift(const PerturbingDrive& drive, int n, int power, int cutoff) {
  if (n < 0) throw DomainError("first_order_energy_shift: level must be >= 0");
  require_cutoff(cutoff, n + power, power);
  require_drive(drive);
  const OperatorMatrix xn = x_power_matrix(power, cutoff);
  double shift = 0.0;
  for (int f = std::max(0, n - power); f <= n + power; ++f) {
    if (f == n || !parity_allowed(n, f, power)) continue;
    const double p = std::norm(drive_amplitude(drive, double(f - n)) * xn.at(f, n));
    shift += double(f - n) * p;
  }
  return shift;
}

}  // namespace tdho

#pragma once

#include <variant>
#include <vector>

namespace tdho {

/// omega(t) = omega.
struct Constant {
  double omega = 1.0;
};

/// omega(t) = omega0 / (1 + v t).
struct InverseLinear {
  double omega0 = 1.0;
  double v = 1.0;
};

/// omega(t) = omega0 z^{(k-2)/2} with z = z0 + v t. k = 0 is InverseLinear.
struct PowerLaw {
  double k = -2.0;
  double v = 1.0;
  double omega0 = 1.0;
  double z0 = 1.0;
};

/// omega(t) = omega0 exp(v t).
struct Exponential {
  double v = 1.0;
  double omega0 = 1.0;
};

/// omega(t) = omega0 exp(sum_m c_m sin(m pi t / period)), m = 1, 2, ...
/// Positive everywhere and equal to omega0 at t = 0 and t = period.
struct LogFourier {
  double period = 1.0;
  std::vector<double> coefficients;
  double omega0 = 1.0;
};

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolation of (t, omega)
/// samples starting at t = 0.
class Tabulated {
 public:
  Tabulated() = default;
  Tabulated(std::vector<double> t, std::vector<double> omega);

  double operator()(double t) const;
  const std::vector<double>& knots() const { return t_; }
  const std::vector<double>& values() const { return w_; }
  double duration() const { return t_.empty() ? 0.0 : t_.back(); }

 private:
  std::vector<double> t_;
  std::vector<double> w_;
  std::vector<double> slope_;
};

struct Segment;

/// Consecutive segments; each sub-profile runs on its own local clock.
struct Piecewise {
  std::vector<Segment> segments;
};

using FrequencyProfile =
    std::variant<Constant, InverseLinear, PowerLaw, Exponential, LogFourier, Tabulated, Piecewise>;

struct Segment {
  FrequencyProfile profile;
  double duration = 0.0;
};

/// omega(t); no domain checking.
double omega_at(const FrequencyProfile& profile, double t);

/// Throws DomainError unless omega(t) is defined and positive on [0, t_final].
void check_domain(const FrequencyProfile& profile, double t_final);

/// Interior times in (0, t_final) where omega or its derivatives jump.
std::vector<double> breakpoints(const FrequencyProfile& profile, double t_final);

/// Natural duration where one exists (Tabulated, Piecewise, LogFourier), else 0.
double natural_duration(const FrequencyProfile& profile);

}  // namespace tdho

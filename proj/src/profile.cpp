#include "tdho/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tdho/error.hpp"

namespace tdho {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_fourier_exponent(const LogFourier& p, double t) {
  double s = 0.0;
  for (std::size_t m = 0; m < p.coefficients.size(); ++m)
    s += p.coefficients[m] * std::sin(double(m + 1) * std::numbers::pi * t / p.period);
  return s;
}

}  // namespace

Tabulated::Tabulated(std::vector<double> t, std::vector<double> omega) : t_(std::move(t)), w_(std::move(omega)) {
  if (t_.size() != w_.size() || t_.size() < 2) throw DomainError("Tabulated: need at least two (t, omega) samples");
  if (t_.front() != 0.0) throw DomainError("Tabulated: samples must start at t = 0");
  for (std::size_t i = 1; i < t_.size(); ++i)
    if (!(t_[i] > t_[i - 1])) throw DomainError("Tabulated: sample times must be strictly increasing");
  for (double w : w_)
    if (!(w > 0.0)) throw DomainError("Tabulated: frequencies must be positive");

  const std::size_t n = t_.size();
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (w_[i + 1] - w_[i]) / (t_[i + 1] - t_[i]);

  slope_.assign(n, 0.0);
  slope_[0] = secant[0];
  slope_[n - 1] = secant[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    slope_[i] = secant[i - 1] * secant[i] <= 0.0 ? 0.0 : (secant[i - 1] + secant[i]) / 2;

  // Fritsch-Carlson limiter keeps each interval monotone.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (secant[i] == 0.0) {
      slope_[i] = slope_[i + 1] = 0.0;
      continue;
    }
    const double a = slope_[i] / secant[i];
    const double b = slope_[i + 1] / secant[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      slope_[i] = tau * a * secant[i];
      slope_[i + 1] = tau * b * secant[i];
    }
  }
}

double Tabulated::operator()(double t) const {
  if (t <= t_.front()) return w_.front();
  if (t >= t_.back()) return w_.back();
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t i = std::size_t(it - t_.begin()) - 1;
  const double h = t_[i + 1] - t_[i];
  const double s = (t - t_[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * w_[i] + h10 * h * slope_[i] + h01 * w_[i + 1] + h11 * h * slope_[i + 1];
}

double omega_at(const FrequencyProfile& profile, double t) {
  return std::visit(
      overloaded{
          [](const Constant& p) { return p.omega; },
          [t](const InverseLinear& p) { return p.omega0 / (1.0 + p.v * t); },
          [t](const PowerLaw& p) { return p.omega0 * std::pow(p.z0 + p.v * t, (p.k - 2.0) / 2.0); },
          [t](const Exponential& p) { return p.omega0 * std::exp(p.v * t); },
          [t](const LogFourier& p) { return p.omega0 * std::exp(log_fourier_exponent(p, t)); },
          [t](const Tabulated& p) { return p(t); },
          [t](const Piecewise& p) {
            double start = 0.0;
            for (std::size_t i = 0; i < p.segments.size(); ++i) {
              const auto& seg = p.segments[i];
              if (t <= start + seg.duration || i + 1 == p.segments.size())
                return omega_at(seg.profile, std::max(0.0, t - start));
              start += seg.duration;
            }
            throw DomainError("Piecewise: profile has no segments");
          },
      },
      profile);
}

void check_domain(const FrequencyProfile& profile, double t_final) {
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw DomainError("profile: t_final must be finite and >= 0");
  auto fail = [](const std::string& what) { throw DomainError("profile: " + what); };
  std::visit(overloaded{
                 [&](const Constant& p) {
                   if (!(p.omega > 0.0)) fail("constant frequency must be positive");
                 },
                 [&](const InverseLinear& p) {
                   if (!(p.omega0 > 0.0)) fail("omega0 must be positive");
                   if (!(1.0 + p.v * t_final > 0.0)) fail("1 + v t reaches zero before t_final");
                 },
                 [&](const PowerLaw& p) {
                   if (!(p.omega0 > 0.0)) fail("omega0 must be positive");
                   if (p.k == 0.0) fail("power-law exponent k must be nonzero");
                   if (!(p.z0 > 0.0) || !(p.z0 + p.v * t_final > 0.0)) fail("z = z0 + v t must stay positive");
                 },
                 [&](const Exponential& p) {
                   if (!(p.omega0 > 0.0)) fail("omega0 must be positive");
                 },
                 [&](const LogFourier& p) {
                   if (!(p.omega0 > 0.0) || !(p.period > 0.0)) fail("log-Fourier omega0 and period must be positive");
                 },
                 [&](const Tabulated& p) {
                   if (p.knots().empty()) fail("empty table");
                   if (t_final > p.duration() * (1 + 1e-12)) fail("t_final beyond the last tabulated sample");
                 },
                 [&](const Piecewise& p) {
                   if (p.segments.empty()) fail("piecewise profile has no segments");
                   double start = 0.0;
                   for (const auto& seg : p.segments) {
                     if (!(seg.duration >= 0.0)) fail("segment durations must be >= 0");
                     if (start >= t_final) break;
                     check_domain(seg.profile, std::min(seg.duration, t_final - start));
                     start += seg.duration;
                   }
                   if (t_final > start * (1 + 1e-12)) fail("t_final beyond the last segment");
                 },
             },
             profile);
}

std::vector<double> breakpoints(const FrequencyProfile& profile, double t_final) {
  std::vector<double> out;
  if (const auto* tab = std::get_if<Tabulated>(&profile)) {
    for (double t : tab->knots())
      if (t > 0.0 && t < t_final) out.push_back(t);
  } else if (const auto* pw = std::get_if<Piecewise>(&profile)) {
    double start = 0.0;
    for (const auto& seg : pw->segments) {
      for (double t : breakpoints(seg.profile, seg.duration))
        if (start + t < t_final) out.push_back(start + t);
      start += seg.duration;
      if (start > 0.0 && start < t_final) out.push_back(start);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double natural_duration(const FrequencyProfile& profile) {
  if (const auto* tab = std::get_if<Tabulated>(&profile)) return tab->duration();
  if (const auto* lf = std::get_if<LogFourier>(&profile)) return lf->period;
  if (const auto* pw = std::get_if<Piecewise>(&profile)) {
    double total = 0.0;
    for (const auto& seg : pw->segments) total += seg.duration;
    return total;
  }
  return 0.0;
}

}  // namespace tdho

#include "tdho/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tdho/closed_form.hpp"
#include "tdho/cycles.hpp"
#include "tdho/error.hpp"

namespace tdho::cavity {

namespace {

constexpr double kNuLow = 0.01;
constexpr double kNuHigh = 20.0;

/// Energy factor of a mode at frequency nu (Hz) after the box reaches lambda.
double mode_gain(double nu, const CavitySpec& spec) {
  if (spec.lambda == 1.0) return 1.0;
  const double omega = 2.0 * std::numbers::pi * nu / spec.v;
  const double rate = spec.lambda < 1.0 ? -1.0 : 1.0;
  const StationaryState ground{0, omega};
  return energy_inverse_linear(omega, rate, spec.lambda, ground) / ground.energy();
}

/// int_0^inf u(nu) dnu for a spectrum scaled to temperature T, Simpson in x = h nu / kT.
template <typename F>
double integrate_spectrum(F&& u, double temperature) {
  const double scale = kBoltzmann * temperature / kPlanck;
  constexpr int intervals = 8000;
  constexpr double x_max = 60.0;
  const double h = x_max / intervals;
  double sum = 0.0;  // u(0) = 0
  for (int i = 1; i <= intervals; ++i) {
    const double w = i == intervals ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * u(i * h * scale);
  }
  return sum * h / 3.0 * scale;
}

}  // namespace

double planck_density(double nu, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("planck_density: temperature must be positive");
  if (!(nu >= 0.0)) throw DomainError("planck_density: frequency must be >= 0");
  if (nu == 0.0) return 0.0;
  const double x = kPlanck * nu / (kBoltzmann * temperature);
  return 8.0 * std::numbers::pi * kPlanck * nu * nu * nu / std::pow(kLightSpeed, 3) / std::expm1(x);
}

double stefan_density(double temperature) { return kStefan * std::pow(temperature, 4); }

void CavitySpec::validate() const {
  if (!(L0 > 0.0) || !std::isfinite(L0)) throw DomainError("cavity: L0 must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("cavity: T must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("cavity: lambda must be positive");
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("cavity: v must be a finite rate >= 0");
  if (lambda != 1.0 && v == 0.0) throw DomainError("cavity: lambda != 1 needs a nonzero wall rate");
  if (mode_cutoff < 1) throw DomainError("cavity: mode_cutoff must be >= 1");
  if (samples < 3) throw DomainError("cavity: need at least 3 spectrum samples");
  const double wall = L0 * v;
  if (wall == 0.0) return;
  for (int n = 1; n <= mode_cutoff; ++n) {
    const double big_omega = std::numbers::pi * n * kLightSpeed / wall;
    if (!(big_omega > 1e3)) {
      std::ostringstream msg;
      msg << "cavity: mode " << n << " is not adiabatic (Omega = " << big_omega << ")";
      throw DomainError(msg.str());
    }
  }
  if (!(wall / kLightSpeed < 1e-3)) throw DomainError("cavity: wall speed must satisfy |V|/c < 1e-3");
}

double fit_temperature(const std::vector<SpectrumSample>& samples) {
  std::vector<SpectrumSample> good;
  for (const auto& s : samples)
    if (s.nu > 0.0 && s.u > 0.0 && std::isfinite(s.u)) good.push_back(s);
  if (good.size() < 3) throw DomainError("fit_temperature: need at least 3 positive samples");

  // Peak of u(nu) sits at h nu = kWienPeak k T.
  const auto peak = std::max_element(good.begin(), good.end(), [](auto& a, auto& b) { return a.u < b.u; });
  const double t_wien = kPlanck * peak->nu / (kWienPeak * kBoltzmann);

  auto misfit = [&](double log_t) {
    const double t = std::exp(log_t);
    double sum = 0.0;
    for (const auto& s : good) {
      const double r = std::log(s.u) - std::log(planck_density(s.nu, t));
      sum += r * r;
    }
    return sum;
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(t_wien) - std::log(2.0), b = std::log(t_wien) + std::log(2.0);
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = misfit(c), fd = misfit(d);
  while (b - a > 1e-13) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = misfit(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = misfit(d);
    }
  }
  return std::exp((a + b) / 2.0);
}

SpectrumShift shift_planck_spectrum(const CavitySpec& spec) {
  spec.validate();
  const double t_after = spec.T / spec.lambda;
  const double unit_before = kBoltzmann * spec.T / kPlanck;
  const double unit_after = kBoltzmann * t_after / kPlanck;

  // Spectral density after the change: modes now at nu' came from lambda nu'.
  auto u_after = [&](double nu) {
    if (nu == 0.0) return 0.0;
    const double origin = spec.lambda * nu;
    return mode_gain(origin, spec) * planck_density(origin, spec.T) / (spec.lambda * spec.lambda);
  };

  SpectrumShift out;
  const std::vector<double> x = log_grid(kNuLow, kNuHigh, spec.samples);
  out.before.reserve(x.size());
  out.after.reserve(x.size());
  for (double xi : x) {
    out.before.push_back({xi * unit_before, planck_density(xi * unit_before, spec.T)});
    out.after.push_back({xi * unit_after, u_after(xi * unit_after)});
  }
  out.fitted_T_after = fit_temperature(out.after);

  const double volume_before = std::pow(spec.L0, 3);
  const double volume_after = std::pow(spec.lambda * spec.L0, 3);
  out.energy_before = volume_before * integrate_spectrum([&](double nu) { return planck_density(nu, spec.T); }, spec.T);
  out.energy_after = volume_after * integrate_spectrum(u_after, t_after);
  return out;
}

SonoluminescenceEstimate sonoluminescence_estimate(double lambda, double T_initial, double L0) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("sonoluminescence_estimate: need 0 < lambda <= 1");
  if (!(T_initial > 0.0)) throw DomainError("sonoluminescence_estimate: T must be positive");
  if (!(L0 > 0.0)) throw DomainError("sonoluminescence_estimate: L0 must be positive");
  SonoluminescenceEstimate e;
  e.initial_energy = stefan_density(T_initial) * std::pow(L0, 3);
  e.excess_energy = e.initial_energy * (1.0 / lambda - 1.0);
  e.photon_count_range = {e.excess_energy / (kBoltzmann * 1e5), e.excess_energy / (kBoltzmann * 1e4)};
  e.effective_T = T_initial / lambda;
  return e;
}

}  // namespace tdho::cavity

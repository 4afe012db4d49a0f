#include "tdho/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tdho/closed_form.hpp"
#include "tdho/numeric.hpp"
#include "tdho/parallel.hpp"

namespace tdho {

const char* family_name(Family f) {
  switch (f) {
    case Family::InverseLinear:
      return "inverse-linear";
    case Family::PowerLaw:
      return "power";
    case Family::Exponential:
      return "exponential";
    case Family::Custom:
      return "custom";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "inverse-linear" || name == "linear") return Family::InverseLinear;
  if (name == "power" || name == "power-law") return Family::PowerLaw;
  if (name == "exponential" || name == "exp") return Family::Exponential;
  if (name == "custom") return Family::Custom;
  throw DomainError("unknown profile family '" + name + "'");
}

void CycleSpec::validate() const {
  if (n_cycles < 1) throw DomainError("CycleSpec: n_cycles must be >= 1");
  if (family == Family::Custom) {
    if (!(custom_duration > 0.0)) throw DomainError("CycleSpec: custom cycle needs a positive duration");
    check_domain(custom, custom_duration);
    const double w0 = omega_at(custom, 0.0), w1 = omega_at(custom, custom_duration);
    if (std::abs(w1 - w0) > 1e-9 * w0) {
      std::ostringstream msg;
      msg << "CycleSpec: custom profile is not closed (omega(0) = " << w0 << ", omega(T) = " << w1 << ")";
      throw DomainError(msg.str());
    }
    return;
  }
  if (!(omega0 > 0.0)) throw DomainError("CycleSpec: omega0 must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("CycleSpec: lambda must be positive");
  if (!(v != 0.0) || !std::isfinite(v)) throw DomainError("CycleSpec: v must be finite and nonzero");
  if (family == Family::PowerLaw && (k == 0.0 || k == 2.0))
    throw DomainError("CycleSpec: power-law k must differ from 0 and 2");
}

namespace {

// Legs of one cycle; `rate` carries the direction. The inverse-linear return
// leg runs at the same fractional rate from the turning point, so its
// duration differs from the outbound one.
struct Legs {
  FrequencyProfile outbound;
  FrequencyProfile back;
  double out_duration;
  double back_duration;
};

Legs legs(const CycleSpec& spec) {
  const double speed = std::abs(spec.v);
  switch (spec.family) {
    case Family::InverseLinear: {
      const double rate = spec.lambda >= 1.0 ? speed : -speed;
      return {InverseLinear{spec.omega0, rate}, InverseLinear{spec.omega0 / spec.lambda, -rate},
              (spec.lambda - 1.0) / rate, (1.0 - 1.0 / spec.lambda) / rate};
    }
    case Family::PowerLaw: {
      const double z = power_law_z_for_scale(spec.k, spec.lambda);
      const double rate = z >= 1.0 ? speed : -speed;
      const double t = (z - 1.0) / rate;
      return {PowerLaw{spec.k, rate, spec.omega0, 1.0}, PowerLaw{spec.k, -rate, spec.omega0, z}, t, t};
    }
    case Family::Exponential: {
      const double z = 1.0 / spec.lambda;
      const double rate = z >= 1.0 ? speed : -speed;
      const double t = std::log(z) / rate;
      return {Exponential{rate, spec.omega0}, Exponential{-rate, spec.omega0 * z}, t, t};
    }
    case Family::Custom:
      break;
  }
  throw DomainError("cycle legs are not defined for custom profiles");
}

Evolution power(const Evolution& one, int n) {
  Evolution out = one;
  for (int i = 1; i < n; ++i) out = compose(one, out);
  return out;
}

}  // namespace

FrequencyProfile cycle_profile(const CycleSpec& spec) {
  spec.validate();
  if (spec.family == Family::Custom) return spec.custom;
  auto l = legs(spec);
  Piecewise p;
  p.segments.push_back({std::move(l.outbound), l.out_duration});
  p.segments.push_back({std::move(l.back), l.back_duration});
  return p;
}

double cycle_duration(const CycleSpec& spec) {
  spec.validate();
  if (spec.family == Family::Custom) return spec.custom_duration;
  const auto l = legs(spec);
  return l.out_duration + l.back_duration;
}

Evolution build_cycle(const CycleSpec& spec) {
  spec.validate();
  if (spec.family == Family::Custom) return build_cycle_ode(spec);
  if (spec.lambda == 1.0) return Evolution::Identity();

  const double speed = std::abs(spec.v);
  Evolution out, back;
  switch (spec.family) {
    case Family::InverseLinear: {
      const double rate = spec.lambda >= 1.0 ? speed : -speed;
      out = propagate_inverse_linear(spec.omega0, rate, spec.lambda);
      back = propagate_inverse_linear(spec.omega0 / spec.lambda, -rate, 1.0 / spec.lambda);
      break;
    }
    case Family::PowerLaw: {
      const double z = power_law_z_for_scale(spec.k, spec.lambda);
      const double rate = z >= 1.0 ? speed : -speed;
      out = propagate_power_law(spec.k, rate, z, spec.omega0, 1.0);
      back = propagate_power_law(spec.k, -rate, 1.0, spec.omega0, z);
      break;
    }
    case Family::Exponential: {
      const double z = 1.0 / spec.lambda;
      const double rate = z >= 1.0 ? speed : -speed;
      out = propagate_exponential(rate, z, spec.omega0);
      back = propagate_exponential(-rate, 1.0 / z, spec.omega0 * z);
      break;
    }
    case Family::Custom:
      break;
  }
  return power(normalize_frequency(compose(back, out), spec.omega0), spec.n_cycles);
}

Evolution build_cycle_ode(const CycleSpec& spec, const IntegratorConfig& cfg) {
  spec.validate();
  if (spec.family != Family::Custom && spec.lambda == 1.0) return Evolution::Identity();
  const FrequencyProfile profile = cycle_profile(spec);
  const double w0 = omega_at(profile, 0.0);
  const Evolution one = propagate_ode(profile, cycle_duration(spec), cfg);
  return power(normalize_frequency(one, w0), spec.n_cycles);
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) throw DomainError("grid: count must be >= 1");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  return g;
}

std::vector<double> log_grid(double start, double stop, int count) {
  if (!(start > 0.0) || !(stop > 0.0)) throw DomainError("grid: log spacing needs positive end points");
  auto g = linear_grid(std::log(start), std::log(stop), count);
  for (auto& x : g) x = std::exp(x);
  if (count > 1) {
    g.front() = start;
    g.back() = stop;
  }
  return g;
}

namespace {

CycleSpec spec_for(const ScanGrid& grid, double v, double lambda, double omega0) {
  CycleSpec spec;
  spec.family = grid.family;
  spec.k = grid.k;
  spec.v = v;
  spec.lambda = lambda;
  spec.omega0 = omega0;
  spec.n_cycles = grid.n_cycles;
  return spec;
}

double gain_at(const ScanGrid& grid, double v, double lambda, double omega0) {
  const Evolution s = build_cycle(spec_for(grid, v, lambda, omega0));
  return s.squaredNorm() / 2.0;
}

}  // namespace

ScanResult scan_gain(const ScanGrid& grid, unsigned workers) {
  if (grid.family == Family::Custom) throw DomainError("scan_gain: custom profiles cannot be scanned over (v, lambda)");
  if (grid.v.empty() || grid.lambda.empty() || grid.omega0.empty()) throw DomainError("scan_gain: empty grid");
  if (grid.n_cycles < 1) throw DomainError("scan_gain: n_cycles must be >= 1");

  ScanResult result{grid, {}};
  const std::size_t nv = grid.v.size(), nw = grid.omega0.size();
  result.rows.resize(grid.lambda.size() * nw * nv);
  parallel_for(result.rows.size(), workers, [&](std::size_t idx) {
    ScanRow& row = result.rows[idx];
    row.v = grid.v[idx % nv];
    row.omega0 = grid.omega0[(idx / nv) % nw];
    row.lambda = grid.lambda[idx / (nv * nw)];
    row.n_cycles = grid.n_cycles;
    try {
      const Evolution s = build_cycle(spec_for(grid, row.v, row.lambda, row.omega0));
      row.R = s.squaredNorm() / 2.0;
      row.det_err = det_error(s);
    } catch (const std::exception& e) {
      row.R = std::numeric_limits<double>::quiet_NaN();
      row.det_err = std::numeric_limits<double>::quiet_NaN();
      row.error = e.what();
    }
  });
  return result;
}

std::vector<UnityPoint> find_unity_points(const ScanResult& sweep, double tol) {
  std::vector<UnityPoint> out;
  const std::size_t nv = sweep.grid.v.size();
  if (nv < 3) return out;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

  for (std::size_t base = 0; base + nv <= sweep.rows.size(); base += nv) {
    const ScanRow* r = &sweep.rows[base];
    for (std::size_t i = 1; i + 1 < nv; ++i) {
      if (!r[i].error.empty() || !r[i - 1].error.empty() || !r[i + 1].error.empty()) continue;
      if (!(r[i].R < r[i - 1].R && r[i].R <= r[i + 1].R)) continue;

      double best_v = r[i].v, best_R = r[i].R;
      double lo = r[i - 1].v, hi = r[i + 1].v;
      auto f = [&](double v) {
        const double R = gain_at(sweep.grid, v, r[i].lambda, r[i].omega0);
        if (R < best_R) {
          best_R = R;
          best_v = v;
        }
        return R;
      };
      double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
      double f1 = f(x1), f2 = f(x2);
      while (hi - lo > 1e-6) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - invphi * (hi - lo);
          f1 = f(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + invphi * (hi - lo);
          f2 = f(x2);
        }
      }
      if (best_R - 1.0 < tol) out.push_back({best_v, r[i].lambda, r[i].omega0, best_R, r[i].R});
    }
  }
  return out;
}

CycleSpec random_closed_cycle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double a, double b) { return a * std::pow(b / a, unit(rng)); };

  CycleSpec spec;
  spec.omega0 = log_uniform(0.1, 10.0);
  spec.v = log_uniform(1e-2, 1e2);
  spec.lambda = log_uniform(1e-2, 1e2);
  spec.n_cycles = 1;

  const int kind = static_cast<int>(unit(rng) * 5.0);
  switch (kind) {
    case 0:
      spec.family = Family::InverseLinear;
      break;
    case 1: {
      spec.family = Family::PowerLaw;
      // k away from the excluded values 0 and 2.
      const double u = unit(rng) * 5.25;
      spec.k = u < 3.75 ? -4.0 + u : (u < 4.75 ? 0.25 + (u - 3.75) * 1.5 : 2.25 + (u - 4.75) * 3.5);
      break;
    }
    case 2:
      spec.family = Family::Exponential;
      break;
    case 3: {
      spec.family = Family::Custom;
      LogFourier lf;
      lf.omega0 = spec.omega0;
      lf.period = log_uniform(0.5, 20.0) / spec.omega0;
      const int modes = 1 + static_cast<int>(unit(rng) * 6.0);
      for (int m = 0; m < modes; ++m) lf.coefficients.push_back((2.0 * unit(rng) - 1.0) * 1.5 / (m + 1));
      spec.custom_duration = lf.period;
      spec.custom = std::move(lf);
      break;
    }
    default: {
      spec.family = Family::Custom;
      Piecewise pw;
      const int pieces = 2 + static_cast<int>(unit(rng) * 6.0);
      double total = 0.0;
      for (int i = 0; i < pieces; ++i) {
        const bool end = i == 0 || i + 1 == pieces;
        const double w = end ? spec.omega0 : spec.omega0 * std::exp(4.0 * unit(rng) - 2.0);
        const double d = (0.05 + 3.0 * unit(rng)) / spec.omega0;
        pw.segments.push_back({Constant{w}, d});
        total += d;
      }
      spec.custom_duration = total;
      spec.custom = std::move(pw);
      break;
    }
  }
  return spec;
}

}  // namespace tdho

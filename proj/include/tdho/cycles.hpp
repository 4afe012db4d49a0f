#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tdho/integrator.hpp"
#include "tdho/profile.hpp"
#include "tdho/symplectic.hpp"

namespace tdho {

enum class Family { InverseLinear, PowerLaw, Exponential, Custom };

const char* family_name(Family f);
/// Accepts "inverse-linear", "power", "power-law", "exponential", "custom".
Family parse_family(const std::string& name);

/// A closed frequency cycle: out from omega0 to omega0 / lambda at rate |v|,
/// then back along the time-reversed path, repeated n_cycles times.
struct CycleSpec {
  Family family = Family::InverseLinear;
  double omega0 = 1.0;
  /// Outbound rate; only |v| is used, the direction follows from lambda.
  double v = 1.0;
  double lambda = 2.0;
  int n_cycles = 1;
  /// Power-law exponent (PowerLaw only).
  double k = -2.0;
  /// Custom only: one full cycle of omega(t) with omega(T) = omega(0).
  FrequencyProfile custom = Constant{};
  double custom_duration = 0.0;

  void validate() const;
};

/// One cycle as a two-segment profile (outbound, return), for the ODE route.
FrequencyProfile cycle_profile(const CycleSpec& spec);
double cycle_duration(const CycleSpec& spec);

/// S^cyc raised to n_cycles, in unit-frequency coordinates so that
/// gain_factor gives E_fin / E_in. Closed forms for the three families.
Evolution build_cycle(const CycleSpec& spec);

/// Same cycle integrated numerically.
Evolution build_cycle_ode(const CycleSpec& spec, const IntegratorConfig& cfg = {});

std::vector<double> linear_grid(double start, double stop, int count);
std::vector<double> log_grid(double start, double stop, int count);

struct ScanGrid {
  Family family = Family::InverseLinear;
  double k = -2.0;
  std::vector<double> v;
  std::vector<double> lambda;
  std::vector<double> omega0{1.0};
  int n_cycles = 1;
};

struct ScanRow {
  double v = 0.0;
  double lambda = 0.0;
  double omega0 = 0.0;
  int n_cycles = 1;
  /// (1/2) Tr[S S^T]; NaN when the propagator failed.
  double R = 0.0;
  double det_err = 0.0;
  /// Empty on success.
  std::string error;
};

/// Rows ordered by (lambda, omega0, v) grid index, v fastest.
struct ScanResult {
  ScanGrid grid;
  std::vector<ScanRow> rows;
};

/// Gain factor over the grid. Failures are recorded in the row, not dropped.
ScanResult scan_gain(const ScanGrid& grid, unsigned workers = 1);

struct UnityPoint {
  double v;
  double lambda;
  double omega0;
  /// Refined minimum of R(v); never above coarse_R.
  double R;
  double coarse_R;
};

/// Local minima of R(v) at fixed (lambda, omega0) with R - 1 < tol, refined
/// by golden-section search to a v-resolution of 1e-6.
std::vector<UnityPoint> find_unity_points(const ScanResult& sweep, double tol);

/// A random closed cycle for exercising the gain bound: one of the three
/// closed-form families with omega0 in [0.1, 10], |v| and lambda log-uniform
/// in [1e-2, 1e2], or a random smooth (log-Fourier) or piecewise-constant
/// profile pinned to omega(0) = omega(T).
CycleSpec random_closed_cycle(std::mt19937_64& rng);

}  // namespace tdho

#pragma once

// Black-body radiation in a slowly contracting or expanding box, in CGS units.

#include <utility>
#include <vector>

namespace tdho::cavity {

inline constexpr double kPlanck = 6.626e-27;       // erg s
inline constexpr double kBoltzmann = 1.381e-16;    // erg / K
inline constexpr double kLightSpeed = 2.998e10;    // cm / s
inline constexpr double kStefan = 7.64e-15;        // erg cm^-3 K^-4
/// Peak of x^3 / (e^x - 1).
inline constexpr double kWienPeak = 2.821439372122079;

/// u(nu) = (8 pi h nu^3 / c^3) / (e^{h nu / kT} - 1), erg cm^-3 Hz^-1.
double planck_density(double nu, double temperature);

/// Stefan's law U = sigma T^4, erg cm^-3.
double stefan_density(double temperature);

struct CavitySpec {
  double L0 = 1.0;      // cm
  double T = 300.0;     // K
  double v = 1.0;       // |L'| / L0, 1/s
  double lambda = 1.0;  // final L / L0
  int mode_cutoff = 1000;
  int samples = 200;

  /// Throws DomainError on bad values, on |V| / c >= 1e-3, and on the first
  /// mode below the cutoff with pi n c / |V| <= 1e3.
  void validate() const;
};

struct SpectrumSample {
  double nu;
  double u;
};

struct SpectrumShift {
  /// Log-spaced over [0.01, 20] kT/h at the initial temperature.
  std::vector<SpectrumSample> before;
  /// Same points in units of the final kT/h, i.e. nu / lambda.
  std::vector<SpectrumSample> after;
  double fitted_T_after = 0.0;
  /// Total radiation energy in the box, erg, from integrating each spectrum.
  double energy_before = 0.0;
  double energy_after = 0.0;
};

/// Each mode keeps its occupation while nu -> nu / lambda and its energy
/// gains the exact inverse-linear factor (close to 1/lambda). The resulting
/// spectrum is refit to a temperature.
SpectrumShift shift_planck_spectrum(const CavitySpec& spec);

/// Temperature whose Planck curve best fits the samples in log u: Wien peak
/// for the start, then golden-section least squares.
double fit_temperature(const std::vector<SpectrumSample>& samples);

struct SonoluminescenceEstimate {
  double initial_energy;  // sigma T^4 L0^3, erg
  double excess_energy;   // initial_energy (1/lambda - 1)
  /// Photon counts for photon energies kT with T between 1e5 and 1e4 K.
  std::pair<double, double> photon_count_range;
  double effective_T;     // T / lambda
};

/// Requires 0 < lambda <= 1.
SonoluminescenceEstimate sonoluminescence_estimate(double lambda, double T_initial, double L0);

}  // namespace tdho::cavity

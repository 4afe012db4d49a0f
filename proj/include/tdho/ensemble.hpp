#pragma once

// Coupled oscillators H = sum p_i^2 / 2 + q^T W(t) q / 2 and their
// Bogoliubov description in the instantaneous normal-mode basis.

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "tdho/integrator.hpp"

namespace tdho {

/// a'_i = A_ik a_k + B_ik a_k^dagger. For one mode, A = alpha and B = beta of
/// to_bogoliubov. Canonical: A A^dagger - B B^dagger = 1, A B^T - B A^T = 0.
struct MultimodeBogoliubov {
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd B;

  int modes() const { return static_cast<int>(A.rows()); }
  /// max |A A^dagger - B B^dagger - 1|.
  double unitarity_error() const;
  /// max |A B^T - B A^T|.
  double symmetry_error() const;
};

/// omega^2_ij(t): symmetric positive definite, diagonal at both ends.
using CouplingMatrix = std::function<Eigen::MatrixXd(double)>;

/// The 2N x 2N phase-space propagator of q' = p, p' = -W(t) q, ordered (q, p).
Eigen::MatrixXd multimode_propagator(const CouplingMatrix& coupling, double t_final, const IntegratorConfig& cfg = {});

/// Bogoliubov coefficients between the normal modes at t = 0 and t = t_final.
MultimodeBogoliubov multimode_from_hamiltonian(const CouplingMatrix& coupling, double t_final,
                                               const IntegratorConfig& cfg = {});

/// N_f = sum_k n_k + sum_{i,k} |B_ik|^2 (2 n_k + 1).
double phonon_number_final(const MultimodeBogoliubov& bg, const std::vector<double>& occupations);

/// sum_i omega_i (<a'^dagger_i a'_i> + 1/2), final energy including zero point.
double multimode_final_energy(const MultimodeBogoliubov& bg, const std::vector<double>& final_omegas,
                              const std::vector<double>& occupations);

struct ThermalEnergies {
  double initial;
  double final;
};

/// Thermal ensemble (hbar = k_B = 1): E_in = sum omega_i (nbar_i + 1/2) and
/// E_fin = sum R_i omega_i (nbar_i + 1/2).
ThermalEnergies thermal_gain(const std::vector<double>& omegas, double temperature, const std::vector<double>& gains);

/// Random cyclic coupling on [0, t_final]: diagonal frequencies with a
/// sin^2 bump plus a sin^2-enveloped symmetric coupling that keeps W
/// positive definite; W(0) = W(t_final) is diagonal.
CouplingMatrix random_cyclic_coupling(int modes, double t_final, std::mt19937_64& rng);

}  // namespace tdho

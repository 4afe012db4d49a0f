#pragma once

#include <functional>

#include "tdho/integrator.hpp"
#include "tdho/profile.hpp"
#include "tdho/symplectic.hpp"

namespace tdho {

/// Integrates q'' + omega(t)^2 q = 0 for the fundamental pair with initial
/// data (q, p) = (1, 0) and (0, 1); the columns of the result are those
/// solutions at t_final. Breakpoints of the profile are stepped to exactly.
Evolution propagate_ode(const FrequencyProfile& profile, double t_final, const IntegratorConfig& cfg = {},
                        IntegrationStats* stats = nullptr);

/// Propagator over [t_start, t_final].
Evolution propagate_ode(const FrequencyProfile& profile, double t_start, double t_final,
                        const IntegratorConfig& cfg = {}, IntegrationStats* stats = nullptr);

/// External force kappa(t) in H = (p^2 + omega^2 q^2)/2 - kappa q. Must vanish
/// at both ends of the interval.
using Drive = std::function<double(double)>;

struct ForcedEvolution {
  Evolution s;
  /// Particular solution of q'' = -omega^2 q + kappa with Q(0) = Q'(0) = 0.
  double qc = 0.0;
  double qc_dot = 0.0;
};

/// Homogeneous propagator plus the driven particular solution at t_final.
ForcedEvolution propagate_forced(const FrequencyProfile& profile, const Drive& kappa, double t_final,
                                 const IntegratorConfig& cfg = {});

/// E_f = E_f^{kappa=0} + (Qc'^2 + omega_final^2 Qc^2) / 2.
double forced_final_energy(const ForcedEvolution& f, const StationaryState& state, double omega_final);

}  // namespace tdho

#include "tdho/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tdho {

namespace {

constexpr double kDriveEndpointTol = 1e-12;

// Steps through each smooth piece of the profile in turn.
template <typename State, typename Rhs>
State integrate_piecewise(const FrequencyProfile& profile, Rhs&& rhs, double t_start, double t_final, State y,
                          const IntegratorConfig& cfg, IntegrationStats* stats) {
  std::vector<double> cuts;
  for (double b : breakpoints(profile, t_final))
    if (b > t_start) cuts.push_back(b);
  cuts.push_back(t_final);

  double t = t_start;
  for (double next : cuts) {
    IntegratorConfig local = cfg;
    if (local.initial_step == 0.0) {
      const double w = std::max(omega_at(profile, t), omega_at(profile, next));
      local.initial_step = std::min(next - t, 0.05 / std::max(w, 1e-300));
    }
    // At a jump the piece starting at t must see the right-hand limit.
    const double a = t;
    auto piece_rhs = [&rhs, a, next](double s, const State& v) { return rhs(s == a ? std::nextafter(a, next) : s, v); };
    y = integrate(piece_rhs, t, next, std::move(y), local, stats);
    t = next;
  }
  return y;
}

}  // namespace

Evolution propagate_ode(const FrequencyProfile& profile, double t_start, double t_final, const IntegratorConfig& cfg,
                        IntegrationStats* stats) {
  if (!(t_start >= 0.0) || !(t_final >= t_start)) throw DomainError("propagate_ode: need 0 <= t_start <= t_final");
  check_domain(profile, t_final);
  auto rhs = [&profile](double t, const Evolution& y) -> Evolution {
    const double w = omega_at(profile, t);
    Evolution dy;
    dy.row(0) = y.row(1);
    dy.row(1) = -w * w * y.row(0);
    return dy;
  };
  const Evolution s = integrate_piecewise(profile, rhs, t_start, t_final, Evolution(Evolution::Identity()), cfg, stats);
  if (!s.allFinite()) throw NumericError("propagate_ode: non-finite propagator");
  return s;
}

Evolution propagate_ode(const FrequencyProfile& profile, double t_final, const IntegratorConfig& cfg,
                        IntegrationStats* stats) {
  return propagate_ode(profile, 0.0, t_final, cfg, stats);
}

ForcedEvolution propagate_forced(const FrequencyProfile& profile, const Drive& kappa, double t_final,
                                 const IntegratorConfig& cfg) {
  if (!kappa) throw DomainError("propagate_forced: drive is empty");
  check_domain(profile, t_final);
  const double k0 = kappa(0.0), k1 = kappa(t_final);
  if (std::abs(k0) > kDriveEndpointTol || std::abs(k1) > kDriveEndpointTol) {
    std::ostringstream msg;
    msg << "propagate_forced: drive must vanish at both ends (kappa(0) = " << k0 << ", kappa(T) = " << k1 << ")";
    throw DomainError(msg.str());
  }

  // Columns 0, 1: homogeneous fundamental pair; column 2: particular solution.
  using State = Eigen::Matrix<double, 2, 3>;
  auto rhs = [&](double t, const State& y) -> State {
    const double w = omega_at(profile, t);
    State dy;
    dy.row(0) = y.row(1);
    dy.row(1) = -w * w * y.row(0);
    dy(1, 2) += kappa(t);
    return dy;
  };
  State y0 = State::Zero();
  y0(0, 0) = 1.0;
  y0(1, 1) = 1.0;
  const State y = integrate_piecewise(profile, rhs, 0.0, t_final, y0, cfg, nullptr);
  if (!y.allFinite()) throw NumericError("propagate_forced: non-finite solution");
  return {y.leftCols<2>(), y(0, 2), y(1, 2)};
}

double forced_final_energy(const ForcedEvolution& f, const StationaryState& state, double omega_final) {
  return final_energy(f.s, state, omega_final) +
         (f.qc_dot * f.qc_dot + omega_final * omega_final * f.qc * f.qc) / 2;
}

}  // namespace tdho

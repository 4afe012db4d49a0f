#pragma once

// Evolution matrices of the Heisenberg pair (q, p), the energy functional and
// the single-mode Bogoliubov map. Natural units: hbar = m = 1.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>

#include "tdho/error.hpp"

namespace tdho {

/// S with (q_H, p_H)^T = S (q, p)^T. Entries: (0,0) q->q, (0,1) p->q,
/// (1,0) q->p, (1,1) p->p.
template <typename Scalar>
using EvolutionMatrix = Eigen::Matrix<Scalar, 2, 2>;

using Evolution = EvolutionMatrix<double>;

/// det tolerance for a single propagator output.
inline constexpr double kPropagatorDetTol = 1e-9;
/// det tolerance accepted on inputs and long compositions.
inline constexpr double kCompositionDetTol = 1e-6;

template <typename Derived>
typename Derived::Scalar det_error(const Eigen::MatrixBase<Derived>& s) {
  using std::abs;
  return abs(s.determinant() - typename Derived::Scalar(1));
}

template <typename Scalar = double>
EvolutionMatrix<Scalar> rotation(Scalar theta) {
  using std::cos;
  using std::sin;
  EvolutionMatrix<Scalar> r;
  r << cos(theta), sin(theta), -sin(theta), cos(theta);
  return r;
}

/// diag(s, 1/s): the pure squeeze.
template <typename Scalar = double>
EvolutionMatrix<Scalar> squeeze(Scalar s) {
  EvolutionMatrix<Scalar> r;
  r << s, Scalar(0), Scalar(0), Scalar(1) / s;
  return r;
}

/// Time-reversal parity diag(1, -1). For any profile, the propagator of the
/// time-reversed profile equals P S^{-1} P.
template <typename Scalar = double>
EvolutionMatrix<Scalar> momentum_parity() {
  EvolutionMatrix<Scalar> r;
  r << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
  return r;
}

/// s2 after s1.
template <typename D2, typename D1>
auto compose(const Eigen::MatrixBase<D2>& s2, const Eigen::MatrixBase<D1>& s1) {
  return EvolutionMatrix<typename D2::Scalar>(s2 * s1);
}

/// Inverse of a symplectic 2x2 matrix, [[d, -b], [-c, a]].
template <typename Derived>
EvolutionMatrix<typename Derived::Scalar> symplectic_inverse(const Eigen::MatrixBase<Derived>& s) {
  EvolutionMatrix<typename Derived::Scalar> r;
  r << s(1, 1), -s(0, 1), -s(1, 0), s(0, 0);
  return r;
}

/// Rewrites S for coordinates scaled to unit frequency, q' = sqrt(w) q and
/// p' = p / sqrt(w), where w is the frequency at both ends of the evolution.
template <typename Derived>
EvolutionMatrix<typename Derived::Scalar> normalize_frequency(const Eigen::MatrixBase<Derived>& s,
                                                              typename Derived::Scalar omega) {
  EvolutionMatrix<typename Derived::Scalar> out;
  out << s(0, 0), s(0, 1) * omega, s(1, 0) / omega, s(1, 1);
  return out;
}

namespace detail {
template <typename Derived>
void require_symplectic(const Eigen::MatrixBase<Derived>& s, const char* op) {
  const auto err = det_error(s);
  if (!(err <= typename Derived::Scalar(kCompositionDetTol))) {
    std::ostringstream msg;
    msg << op << ": input is not symplectic (|det - 1| = " << err << ")";
    throw DomainError(msg.str());
  }
}
}  // namespace detail

/// R = (a^2 + b^2 + c^2 + d^2) / 2, the energy ratio of a cycle that returns
/// to the initial frequency. R >= 1, with equality exactly for rotations.
template <typename Derived>
typename Derived::Scalar gain_factor(const Eigen::MatrixBase<Derived>& s) {
  detail::require_symplectic(s, "gain_factor");
  return s.squaredNorm() / typename Derived::Scalar(2);
}

/// Second moments <q^2>, <p^2>, <D> with D = (qp + pq) / 2.
template <typename Scalar>
struct MomentTripleT {
  Scalar qq;
  Scalar pp;
  Scalar d;

  /// qq pp - d^2, at least 1/4 for a physical state.
  Scalar uncertainty() const { return qq * pp - d * d; }
};

using MomentTriple = MomentTripleT<double>;

/// Energy eigenstate |n> of the oscillator with frequency omega0.
struct StationaryState {
  unsigned n = 0;
  double omega0 = 1.0;

  double energy() const { return omega0 * (n + 0.5); }

  /// Virial moments: omega0^2 <q^2> = <p^2> = E, <D> = 0.
  MomentTriple moments() const {
    const double e = n + 0.5;
    return {e / omega0, e * omega0, 0.0};
  }
};

/// <H> after evolution S for arbitrary initial moments, measured with the
/// final frequency omega_final.
template <typename Derived>
typename Derived::Scalar final_energy_general(const Eigen::MatrixBase<Derived>& s,
                                              const MomentTripleT<typename Derived::Scalar>& m,
                                              typename Derived::Scalar omega_final) {
  const auto a = s(0, 0), b = s(0, 1), c = s(1, 0), d = s(1, 1);
  const auto qq = a * a * m.qq + b * b * m.pp + 2 * a * b * m.d;
  const auto pp = c * c * m.qq + d * d * m.pp + 2 * c * d * m.d;
  return (omega_final * omega_final * qq + pp) / 2;
}

/// <H> after evolution S starting from a stationary state. Factorised as
/// E_in times a state-independent bracket, so E_fin / E_in does not depend on n.
template <typename Derived>
typename Derived::Scalar final_energy(const Eigen::MatrixBase<Derived>& s, const StationaryState& state,
                                      typename Derived::Scalar omega_final) {
  if (!(omega_final > 0)) throw DomainError("final_energy: omega_final must be positive");
  const auto a = s(0, 0), b = s(0, 1), c = s(1, 0), d = s(1, 1);
  const auto w0 = typename Derived::Scalar(state.omega0);
  const auto wf2 = omega_final * omega_final;
  const auto bracket = wf2 * (a * a / (w0 * w0) + b * b) + c * c / (w0 * w0) + d * d;
  return typename Derived::Scalar(state.energy()) * bracket / 2;
}

/// Single-mode Bogoliubov coefficients, a' = alpha a + beta a^dagger.
struct BogoliubovPair {
  std::complex<double> alpha;
  std::complex<double> beta;

  /// |alpha|^2 - |beta|^2, equal to 1 for a canonical map.
  double norm() const { return std::norm(alpha) - std::norm(beta); }
};

/// Bogoliubov form of a unit-frequency evolution matrix.
template <typename Derived>
BogoliubovPair to_bogoliubov(const Eigen::MatrixBase<Derived>& s) {
  detail::require_symplectic(s, "to_bogoliubov");
  const double a = s(0, 0), b = s(0, 1), c = s(1, 0), d = s(1, 1);
  return {{(a + d) / 2, (c - b) / 2}, {(a - d) / 2, (c + b) / 2}};
}

/// E = omega [1/2 + |alpha|^2 n + |beta|^2 (n + 1)], including the quanta
/// created from the vacuum term.
inline double bogoliubov_energy(const BogoliubovPair& bp, const StationaryState& state) {
  const double n = state.n;
  return state.omega0 * (0.5 + std::norm(bp.alpha) * n + std::norm(bp.beta) * (n + 1));
}

}  // namespace tdho

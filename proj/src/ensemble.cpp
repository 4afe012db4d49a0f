#include "tdho/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tdho/error.hpp"

namespace tdho {

namespace {

void check_endpoint(const Eigen::MatrixXd& w, Eigen::Index n, const char* which) {
  if (w.rows() != n || w.cols() != n) throw DomainError("coupling matrix has inconsistent size");
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError(std::string("coupling matrix is not symmetric at ") + which);
  Eigen::MatrixXd off = w;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError(std::string("coupling matrix must be diagonal at ") + which);
  if (!(w.diagonal().minCoeff() > 0.0))
    throw DomainError(std::string("mode frequencies must be positive at ") + which);
}

}  // namespace

double MultimodeBogoliubov::unitarity_error() const {
  const auto n = A.rows();
  return (A * A.adjoint() - B * B.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double MultimodeBogoliubov::symmetry_error() const {
  return (A * B.transpose() - B * A.transpose()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd multimode_propagator(const CouplingMatrix& coupling, double t_final, const IntegratorConfig& cfg) {
  if (!coupling) throw DomainError("multimode_propagator: coupling is empty");
  if (!(t_final >= 0.0)) throw DomainError("multimode_propagator: t_final must be >= 0");
  const Eigen::MatrixXd w0 = coupling(0.0);
  const Eigen::Index n = w0.rows();
  if (n < 1) throw DomainError("multimode_propagator: need at least one mode");
  check_endpoint(w0, n, "t = 0");
  check_endpoint(coupling(t_final), n, "t_final");

  auto rhs = [&](double t, const Eigen::MatrixXd& m) -> Eigen::MatrixXd {
    const Eigen::MatrixXd w = coupling(t);
    Eigen::MatrixXd dm(2 * n, 2 * n);
    dm.topRows(n) = m.bottomRows(n);
    dm.bottomRows(n).noalias() = -w * m.topRows(n);
    return dm;
  };
  IntegratorConfig local = cfg;
  if (local.initial_step == 0.0) local.initial_step = std::min(t_final, 0.05 / std::sqrt(w0.diagonal().maxCoeff()));
  Eigen::MatrixXd m = integrate(rhs, 0.0, t_final, Eigen::MatrixXd(Eigen::MatrixXd::Identity(2 * n, 2 * n)), local);
  if (!m.allFinite()) throw NumericError("multimode_propagator: non-finite propagator");
  return m;
}

MultimodeBogoliubov multimode_from_hamiltonian(const CouplingMatrix& coupling, double t_final,
                                               const IntegratorConfig& cfg) {
  const Eigen::MatrixXd m = multimode_propagator(coupling, t_final, cfg);
  const Eigen::Index n = m.rows() / 2;
  const Eigen::ArrayXd w_in = coupling(0.0).diagonal().array().sqrt();
  const Eigen::ArrayXd w_out = coupling(t_final).diagonal().array().sqrt();
  const std::complex<double> i(0.0, 1.0);

  // a'_i = sqrt(w_i/2) q_i + i p_i / sqrt(2 w_i) at t_final, expressed in q, p at t = 0.
  const Eigen::VectorXd dq = (w_out / 2.0).sqrt().matrix();
  const Eigen::VectorXd dp = (2.0 * w_out).rsqrt().matrix();
  const Eigen::MatrixXcd gq = (dq.asDiagonal() * m.topLeftCorner(n, n)).cast<std::complex<double>>() +
                              i * (dp.asDiagonal() * m.bottomLeftCorner(n, n)).cast<std::complex<double>>();
  const Eigen::MatrixXcd gp = (dq.asDiagonal() * m.topRightCorner(n, n)).cast<std::complex<double>>() +
                              i * (dp.asDiagonal() * m.bottomRightCorner(n, n)).cast<std::complex<double>>();

  // q_k = (a_k + a_k^dagger) / sqrt(2 w_k), p_k = -i sqrt(w_k / 2) (a_k - a_k^dagger).
  const Eigen::VectorXcd q_of_a = (2.0 * w_in).rsqrt().matrix().cast<std::complex<double>>();
  const Eigen::VectorXcd p_of_a = -i * (w_in / 2.0).sqrt().matrix().cast<std::complex<double>>();

  MultimodeBogoliubov bg;
  bg.A = gq * q_of_a.asDiagonal() + gp * p_of_a.asDiagonal();
  bg.B = gq * q_of_a.asDiagonal() - gp * p_of_a.asDiagonal();
  return bg;
}

double phonon_number_final(const MultimodeBogoliubov& bg, const std::vector<double>& occupations) {
  if (static_cast<Eigen::Index>(occupations.size()) != bg.B.cols())
    throw DomainError("phonon_number_final: occupation count does not match the number of modes");
  double total = 0.0;
  for (double nk : occupations) {
    if (!(nk >= 0.0)) throw DomainError("phonon_number_final: occupations must be >= 0");
    total += nk;
  }
  for (Eigen::Index k = 0; k < bg.B.cols(); ++k) total += bg.B.col(k).squaredNorm() * (2.0 * occupations[k] + 1.0);
  return total;
}

double multimode_final_energy(const MultimodeBogoliubov& bg, const std::vector<double>& final_omegas,
                              const std::vector<double>& occupations) {
  const auto n = bg.A.rows();
  if (static_cast<Eigen::Index>(final_omegas.size()) != n || static_cast<Eigen::Index>(occupations.size()) != n)
    throw DomainError("multimode_final_energy: dimension mismatch");
  double e = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double quanta = 0.5;
    for (Eigen::Index k = 0; k < n; ++k)
      quanta += std::norm(bg.A(i, k)) * occupations[k] + std::norm(bg.B(i, k)) * (occupations[k] + 1.0);
    e += final_omegas[i] * quanta;
  }
  return e;
}

ThermalEnergies thermal_gain(const std::vector<double>& omegas, double temperature, const std::vector<double>& gains) {
  if (omegas.size() != gains.size()) throw DomainError("thermal_gain: dimension mismatch");
  if (!(temperature > 0.0)) throw DomainError("thermal_gain: temperature must be positive");
  ThermalEnergies e{0.0, 0.0};
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!(omegas[i] > 0.0)) throw DomainError("thermal_gain: frequencies must be positive");
    if (!(gains[i] >= 1.0 - 1e-12)) throw DomainError("thermal_gain: gain factors must be >= 1");
    const double nbar = 1.0 / std::expm1(omegas[i] / temperature);
    const double mode = omegas[i] * (nbar + 0.5);
    e.initial += mode;
    e.final += gains[i] * mode;
  }
  return e;
}

CouplingMatrix random_cyclic_coupling(int modes, double t_final, std::mt19937_64& rng) {
  if (modes < 1 || !(t_final > 0.0)) throw DomainError("random_cyclic_coupling: need modes >= 1 and t_final > 0");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd w2(modes), bump(modes);
  for (int i = 0; i < modes; ++i) {
    const double w = 0.5 + 1.5 * unit(rng);
    w2(i) = w * w;
    bump(i) = -0.5 + 1.5 * unit(rng);
  }
  Eigen::MatrixXd c(modes, modes);
  for (int i = 0; i < modes; ++i)
    for (int j = 0; j <= i; ++j) c(i, j) = c(j, i) = 2.0 * unit(rng) - 1.0;
  c.diagonal().setZero();
  const double norm = modes > 1 ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(c).eigenvalues().cwiseAbs().maxCoeff()
                                : 0.0;
  // min_t W_ii >= w2_min / 2, so a coupling of norm 0.4 w2_min keeps W positive.
  if (norm > 0.0) c *= 0.4 * w2.minCoeff() / norm;
  const double phase = unit(rng);

  return [=](double t) {
    const double s = std::sin(std::numbers::pi * t / t_final);
    const double env = s * s;
    const double mod = std::sin(2.0 * std::numbers::pi * (t / t_final + phase));
    Eigen::MatrixXd w = env * c;
    for (int i = 0; i < modes; ++i) w(i, i) = w2(i) * (1.0 + bump(i) * env * (1.0 + 0.5 * mod) / 1.5);
    return w;
  };
}

}  // namespace tdho

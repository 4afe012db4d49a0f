#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tdho/ensemble.hpp"
#include "tdho/error.hpp"
#include "tdho/numeric.hpp"

using namespace tdho;
using std::numbers::pi;

namespace {

IntegratorConfig tight() {
  IntegratorConfig cfg;
  cfg.rtol = 1e-12;
  cfg.atol = 1e-14;
  return cfg;
}

CouplingMatrix diagonal(std::vector<FrequencyProfile> modes) {
  return [modes](double t) {
    const auto n = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double om = omega_at(modes[i], t);
      w(i, i) = om * om;
    }
    return w;
  };
}

}  // namespace

TEST_CASE("single constant mode only acquires a phase") {
  const auto bg = multimode_from_hamiltonian(diagonal({Constant{1.7}}), 2.3, tight());
  REQUIRE(bg.modes() == 1);
  CHECK(std::abs(bg.A(0, 0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(bg.B(0, 0)) < 1e-10);
  CHECK(std::arg(bg.A(0, 0)) == doctest::Approx(std::remainder(-1.7 * 2.3, 2 * pi)).epsilon(1e-9));
}

TEST_CASE("uncoupled modes reproduce the single-mode coefficients") {
  const double t_final = 4.0;
  const LogFourier m1{t_final, {0.6, -0.2}, 1.0};
  const LogFourier m2{t_final, {-0.4, 0.3, 0.1}, 2.2};
  const auto bg = multimode_from_hamiltonian(diagonal({m1, m2}), t_final, tight());
  int i = 0;
  for (const LogFourier& m : {m1, m2}) {
    const BogoliubovPair bp = to_bogoliubov(normalize_frequency(propagate_ode(m, t_final, tight()), m.omega0));
    CHECK(std::abs(bg.A(i, i) - bp.alpha) < 1e-8);
    CHECK(std::abs(bg.B(i, i) - bp.beta) < 1e-8);
    ++i;
  }
  CHECK(std::abs(bg.A(0, 1)) < 1e-12);
  CHECK(std::abs(bg.B(1, 0)) < 1e-12);
}

TEST_CASE("random cyclic couplings stay canonical and never lower the phonon number") {
  std::mt19937_64 rng(2024);
  double worst_u = 0.0, worst_s = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const double t_final = 2.0 + 6.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const CouplingMatrix w = random_cyclic_coupling(n, t_final, rng);
    const Eigen::MatrixXd w0 = w(0.0);
    CHECK((w(t_final) - w0).cwiseAbs().maxCoeff() < 1e-12);
    const auto bg = multimode_from_hamiltonian(w, t_final, tight());
    worst_u = std::max(worst_u, bg.unitarity_error());
    worst_s = std::max(worst_s, bg.symmetry_error());

    std::vector<double> occ(n, 0.0);
    const int total = static_cast<int>(std::pow(11, n));
    for (int code = 0; code < total; ++code) {
      double sum = 0.0;
      for (int k = 0, c = code; k < n; ++k, c /= 11) sum += occ[k] = c % 11;
      CHECK(phonon_number_final(bg, occ) >= sum - 1e-12);
    }
  }
  CHECK(worst_u < 1e-8);
  CHECK(worst_s < 1e-8);
}

TEST_CASE("phonon number") {
  MultimodeBogoliubov bg;
  bg.A = Eigen::MatrixXcd::Identity(2, 2) * std::sqrt(2.0);
  bg.B = Eigen::MatrixXcd::Identity(2, 2);
  CHECK(phonon_number_final(bg, {0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(phonon_number_final(bg, {1.0, 3.0}) == doctest::Approx(4.0 + 3.0 + 7.0));
  CHECK_THROWS_AS(phonon_number_final(bg, {1.0}), DomainError);
  CHECK_THROWS_AS(phonon_number_final(bg, {1.0, -1.0}), DomainError);
}

TEST_CASE("thermal ensembles") {
  const double nbar = 1.0 / (std::exp(1.0) - 1.0);
  const ThermalEnergies same = thermal_gain({1.0}, 1.0, {1.0});
  CHECK(same.initial == doctest::Approx(nbar + 0.5));
  CHECK(same.final == doctest::Approx(same.initial));
  const ThermalEnergies two = thermal_gain({1.0, 2.0}, 1.0, {2.0, 1.5});
  const double e2 = 2.0 * (1.0 / (std::exp(2.0) - 1.0) + 0.5);
  CHECK(two.initial == doctest::Approx(nbar + 0.5 + e2));
  CHECK(two.final == doctest::Approx(2.0 * (nbar + 0.5) + 1.5 * e2));
  CHECK(two.final >= two.initial);
  CHECK_THROWS_AS(thermal_gain({1.0}, 1.0, {0.9}), DomainError);
  CHECK_THROWS_AS(thermal_gain({1.0}, 0.0, {1.0}), DomainError);
  CHECK_THROWS_AS(thermal_gain({1.0, 2.0}, 1.0, {1.0}), DomainError);
}

TEST_CASE("single-mode final energy matches the propagator") {
  const LogFourier m{3.0, {0.8}, 1.4};
  const auto bg = multimode_from_hamiltonian(diagonal({m}), 3.0, tight());
  const Evolution s = propagate_ode(m, 3.0, tight());
  for (unsigned n : {0u, 2u, 7u})
    CHECK(multimode_final_energy(bg, {1.4}, {double(n)}) ==
          doctest::Approx(final_energy(s, StationaryState{n, 1.4}, 1.4)).epsilon(1e-9));
  CHECK_THROWS_AS(multimode_final_energy(bg, {1.4, 1.0}, {0.0}), DomainError);
}

TEST_CASE("endpoint requirements") {
  const CouplingMatrix coupled = [](double) {
    Eigen::MatrixXd w(2, 2);
    w << 1.0, 0.1, 0.1, 2.0;
    return w;
  };
  CHECK_THROWS_AS(multimode_from_hamiltonian(coupled, 1.0), DomainError);
  const CouplingMatrix negative = [](double) { return Eigen::MatrixXd::Constant(1, 1, -1.0); };
  CHECK_THROWS_AS(multimode_from_hamiltonian(negative, 1.0), DomainError);
  CHECK_THROWS_AS(multimode_from_hamiltonian(CouplingMatrix{}, 1.0), DomainError);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(random_cyclic_coupling(0, 1.0, rng), DomainError);
}

TEST_CASE("energy change of coupled thermal modes") {
  std::mt19937_64 rng(99);
  const double t_final = 5.0;
  const CouplingMatrix w = random_cyclic_coupling(3, t_final, rng);
  const auto bg = multimode_from_hamiltonian(w, t_final, tight());
  const Eigen::VectorXd om = w(0.0).diagonal().cwiseSqrt();
  std::vector<double> omegas(om.data(), om.data() + om.size()), occ;
  double initial = 0.0;
  for (double o : omegas) {
    occ.push_back(1.0 / std::expm1(o / 0.8));
    initial += o * (occ.back() + 0.5);
  }
  const double final = multimode_final_energy(bg, omegas, occ);
  MESSAGE("coupled 3-mode cycle at T = 0.8: E_f - E_i = " << final - initial);
}

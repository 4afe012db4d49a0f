#include <doctest.h>

#include <numbers>
#include <random>

#include "tdho/cycles.hpp"
#include "tdho/error.hpp"
#include "tdho/symplectic.hpp"

using namespace tdho;

namespace {

Evolution diag(double a, double d) {
  Evolution s;
  s << a, 0.0, 0.0, d;
  return s;
}

Evolution random_symplectic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), sq(-2.0, 2.0);
  return rotation(angle(rng)) * squeeze(std::exp(sq(rng))) * rotation(angle(rng));
}

}  // namespace

TEST_CASE("compose multiplies in application order") {
  CHECK(compose(Evolution::Identity(), Evolution::Identity()).isApprox(Evolution::Identity()));
  const Evolution r = compose(rotation(0.3), rotation(1.1));
  CHECK((r - rotation(1.4)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((compose(diag(2.0, 0.5), diag(0.5, 2.0)) - Evolution::Identity()).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Evolution a = random_symplectic(rng), b = random_symplectic(rng);
    CHECK(det_error(compose(a, b)) < kPropagatorDetTol);
  }
}

TEST_CASE("gain factor of orthogonal and squeezing matrices") {
  CHECK(gain_factor(Evolution::Identity()) == 1.0);
  for (double theta : {0.0, 0.4, 2.0, -5.0}) CHECK(gain_factor(rotation(theta)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gain_factor(diag(2.0, 0.5)) == 2.125);
}

TEST_CASE("gain factor rejects non-symplectic input") {
  CHECK_THROWS_AS(gain_factor(diag(2.0, 0.6)), DomainError);
  CHECK_THROWS_AS(to_bogoliubov(diag(1.0, 1.0 + 2e-6)), DomainError);
  CHECK_NOTHROW(gain_factor(diag(1.0, 1.0 + 5e-7)));
}

TEST_CASE("gain factor bound and equality only for rotations") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Evolution s = random_symplectic(rng);
    const double r = gain_factor(s);
    CHECK(r >= 1.0 - 1e-12);
    if (std::abs(r - 1.0) < 1e-12) CHECK((s * s.transpose() - Evolution::Identity()).norm() < 1e-9);
  }
  // Pure rotations sit exactly on the bound.
  CHECK(std::abs(gain_factor(rotation(0.77)) - 1.0) < 1e-15);
}

TEST_CASE("final energy from a stationary state") {
  const StationaryState ground{0, 1.0};
  CHECK(final_energy(Evolution::Identity(), ground, 1.0) == 0.5);
  CHECK(final_energy(diag(2.0, 0.5), ground, 1.0) == doctest::Approx(2.125 * 0.5));
  CHECK_THROWS_AS(final_energy(Evolution::Identity(), ground, 0.0), DomainError);

  // Energy ratio does not depend on the initial level.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Evolution s = random_symplectic(rng);
    const double ref = final_energy(s, StationaryState{0, 1.0}, 1.0) / 0.5;
    CHECK(ref == doctest::Approx(gain_factor(s)).epsilon(1e-14));
    for (unsigned n : {1u, 5u, 20u}) {
      const StationaryState st{n, 1.0};
      CHECK(final_energy(s, st, 1.0) / st.energy() == doctest::Approx(ref).epsilon(1e-15));
    }
  }
}

TEST_CASE("general moments reduce to the stationary formula") {
  const MomentTriple unit{1.0, 1.0, 0.0};
  CHECK(final_energy_general(Evolution::Identity(), unit, 1.0) == 1.0);
  CHECK(final_energy_general(rotation(std::numbers::pi / 2), MomentTriple{2.0, 0.5, 0.0}, 1.0) ==
        doctest::Approx(1.25));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Evolution s = random_symplectic(rng);
    for (unsigned n : {0u, 3u}) {
      const StationaryState st{n, 1.0};
      CHECK(final_energy_general(s, st.moments(), 0.7) == doctest::Approx(final_energy(s, st, 0.7)).epsilon(1e-14));
    }
  }
  CHECK(StationaryState{0, 1.0}.moments().uncertainty() >= 0.25 - 1e-9);
}

TEST_CASE("a squeezed initial state can lose energy under the reversed cycle") {
  CycleSpec spec;
  spec.lambda = 10.0;
  spec.v = 1.0;
  const Evolution s = build_cycle(spec);
  const double a = s(0, 0), b = s(0, 1), c = s(1, 0), d = s(1, 1);
  // Moments of s applied to the ground state.
  const MomentTriple squeezed{(a * a + b * b) / 2, (c * c + d * d) / 2, (a * c + b * d) / 2};
  CHECK(squeezed.uncertainty() == doctest::Approx(0.25));
  const double before = (squeezed.qq + squeezed.pp) / 2;
  const double after = final_energy_general(symplectic_inverse(s), squeezed, 1.0);
  CHECK(after == doctest::Approx(0.5));
  CHECK(after < before);
}

TEST_CASE("Bogoliubov map") {
  const BogoliubovPair id = to_bogoliubov(Evolution::Identity());
  CHECK(id.alpha == std::complex<double>(1.0, 0.0));
  CHECK(id.beta == std::complex<double>(0.0, 0.0));

  const double theta = 0.9;
  const BogoliubovPair rot = to_bogoliubov(rotation(theta));
  CHECK(std::abs(rot.alpha - std::polar(1.0, -theta)) < 1e-15);
  CHECK(std::abs(rot.beta) < 1e-15);

  const BogoliubovPair sq = to_bogoliubov(diag(2.0, 0.5));
  CHECK(sq.alpha == std::complex<double>(1.25, 0.0));
  CHECK(sq.beta == std::complex<double>(0.75, 0.0));
  CHECK(sq.norm() == 1.0);
  CHECK(1.0 + 2.0 * std::norm(sq.beta) == 2.125);
}

TEST_CASE("Bogoliubov energy") {
  CHECK(bogoliubov_energy({1.0, 0.0}, StationaryState{5, 1.0}) == 5.5);
  CHECK(bogoliubov_energy({1.25, 0.75}, StationaryState{0, 1.0}) == 1.0625);
  CHECK(bogoliubov_energy({1.25, 0.75}, StationaryState{0, 1.0}) == final_energy(diag(2.0, 0.5), {0, 1.0}, 1.0));
  CHECK(bogoliubov_energy({std::sqrt(2.0), 1.0}, StationaryState{1, 1.0}) == doctest::Approx(4.5));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Evolution s = random_symplectic(rng);
    const BogoliubovPair bp = to_bogoliubov(s);
    CHECK(std::abs(gain_factor(s) - 1.0 - 2.0 * std::norm(bp.beta)) < 1e-12);
    CHECK(std::abs(bp.norm() - 1.0) < 1e-9);
    const StationaryState st{static_cast<unsigned>(i % 7), 1.0};
    CHECK(std::abs(bogoliubov_energy(bp, st) - final_energy(s, st, 1.0)) < 1e-9);
    CHECK(bogoliubov_energy(bp, st) >= st.energy() - 1e-12);
  }
}

TEST_CASE("frequency normalisation and inverse") {
  std::mt19937_64 rng(17);
  const Evolution s = random_symplectic(rng);
  CHECK((compose(symplectic_inverse(s), s) - Evolution::Identity()).cwiseAbs().maxCoeff() < 1e-13);
  const Evolution n = normalize_frequency(s, 3.0);
  CHECK(det_error(n) < 1e-13);
  CHECK(n(0, 1) == s(0, 1) * 3.0);
  CHECK(n(1, 0) == s(1, 0) / 3.0);
}

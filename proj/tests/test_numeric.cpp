#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tdho/closed_form.hpp"
#include "tdho/error.hpp"
#include "tdho/numeric.hpp"

using namespace tdho;
using std::numbers::pi;

namespace {

double max_diff(const Evolution& a, const Evolution& b) { return (a - b).cwiseAbs().maxCoeff(); }

IntegratorConfig tight() {
  IntegratorConfig cfg;
  cfg.rtol = 1e-12;
  cfg.atol = 1e-14;
  return cfg;
}

}  // namespace

TEST_CASE("constant frequency gives a rotation") {
  for (double omega : {0.3, 1.0, 4.0})
    for (double t : {0.1, 2.0, 17.0}) {
      const Evolution s = propagate_ode(Constant{omega}, t, tight());
      const Evolution expect = normalize_frequency(rotation(omega * t), 1.0 / omega);
      CAPTURE(omega);
      CAPTURE(t);
      CHECK(max_diff(s, expect) < 1e-9);
    }
  CHECK(propagate_ode(Constant{1.0}, 0.0) == Evolution::Identity());
}

TEST_CASE("integrator reproduces the inverse-linear closed form") {
  for (double omega0 : {0.2, 0.5, 1.0, 3.0})
    for (double lambda : {0.3, 2.0, 8.0}) {
      const double v = lambda >= 1.0 ? 0.7 : -0.7;
      const Evolution exact = propagate_inverse_linear(omega0, v, lambda);
      const Evolution ode = propagate_ode(InverseLinear{omega0, v}, (lambda - 1.0) / v, tight());
      CHECK(max_diff(exact, ode) < 1e-8);
    }
}

TEST_CASE("propagators compose over time slices") {
  const FrequencyProfile p = LogFourier{5.0, {0.4, -0.2, 0.1}, 1.3};
  const Evolution whole = propagate_ode(p, 5.0, tight());
  const Evolution first = propagate_ode(p, 0.0, 2.2, tight());
  const Evolution second = propagate_ode(p, 2.2, 5.0, tight());
  CHECK(max_diff(whole, compose(second, first)) < 1e-8);
}

TEST_CASE("self-convergence under tighter tolerances") {
  const FrequencyProfile p = LogFourier{8.0, {0.7, 0.3}, 1.0};
  IntegratorConfig loose;
  loose.rtol = 1e-8;
  loose.atol = 1e-10;
  const Evolution a = propagate_ode(p, 8.0, loose);
  const Evolution b = propagate_ode(p, 8.0);
  const Evolution c = propagate_ode(p, 8.0, tight());
  CHECK(max_diff(b, c) < max_diff(a, c) + 1e-14);
  CHECK(max_diff(b, c) < 1e-7);
  const Evolution ref = oracle::rk4_extrapolated([](double t) { return std::exp(0.7 * std::sin(pi * t / 8.0) + 0.3 * std::sin(2 * pi * t / 8.0)); },
                                                 0.0, 8.0, 20000);
  CHECK(max_diff(c, ref) < 1e-9);
}

TEST_CASE("determinant drift stays small on long runs") {
  IntegrationStats stats;
  const Evolution s = propagate_ode(LogFourier{1000.0, {0.5, 0.2}, 2.0}, 1000.0, IntegratorConfig{}, &stats);
  CHECK(det_error(s) < 1e-6);
  CHECK(stats.accepted > 100);
}

TEST_CASE("piecewise-constant profiles are stepped exactly at the jumps") {
  Piecewise pw;
  pw.segments.push_back({Constant{1.0}, 0.7});
  pw.segments.push_back({Constant{3.0}, 1.1});
  pw.segments.push_back({Constant{0.5}, 2.0});
  const Evolution s = propagate_ode(pw, 3.8, tight());
  Evolution expect = normalize_frequency(rotation(0.7), 1.0);
  expect = compose(normalize_frequency(rotation(3.0 * 1.1), 1.0 / 3.0), expect);
  expect = compose(normalize_frequency(rotation(0.5 * 2.0), 2.0), expect);
  CHECK(max_diff(s, expect) < 1e-10);
  const auto bp = breakpoints(pw, 3.8);
  REQUIRE(bp.size() == 2);
  CHECK(bp[0] == doctest::Approx(0.7));
  CHECK(bp[1] == doctest::Approx(1.8));
}

TEST_CASE("tabulated profiles") {
  const Tabulated flat({0.0, 1.0, 2.0, 3.0}, {2.0, 2.0, 2.0, 2.0});
  CHECK(flat(1.7) == doctest::Approx(2.0));
  CHECK(max_diff(propagate_ode(flat, 3.0, tight()), normalize_frequency(rotation(6.0), 0.5)) < 1e-9);

  const Tabulated ramp({0.0, 1.0, 2.0}, {1.0, 2.0, 4.0});
  CHECK(ramp(0.0) == 1.0);
  CHECK(ramp(2.0) == 4.0);
  for (double t = 0.0; t < 2.0; t += 0.05) CHECK(ramp(t + 0.05) >= ramp(t));
  CHECK(det_error(propagate_ode(ramp, 2.0)) < 1e-9);

  CHECK_THROWS_AS(Tabulated({0.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(Tabulated({0.5, 1.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(Tabulated({0.0, 1.0}, {1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(propagate_ode(ramp, 3.0), DomainError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(propagate_ode(InverseLinear{1.0, -1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(propagate_ode(Constant{-1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(propagate_ode(Constant{1.0}, -1.0), DomainError);
  CHECK_THROWS_AS(propagate_ode(PowerLaw{-2.0, -1.0, 1.0, 1.0}, 2.0), DomainError);
}

TEST_CASE("exhausted step budget raises NumericError") {
  IntegratorConfig cfg;
  cfg.max_steps = 10;
  CHECK_THROWS_AS(propagate_ode(Constant{50.0}, 100.0, cfg), NumericError);
}

TEST_CASE("forced oscillator") {
  // q'' = -q + sin^2(t/2) with zero initial data: Q = (1 - cos t)/2 - (t/4) sin t.
  const Drive kappa = [](double t) { return std::sin(t / 2) * std::sin(t / 2); };
  const ForcedEvolution f = propagate_forced(Constant{1.0}, kappa, 2 * pi, tight());
  CHECK(std::abs(f.qc) < 1e-9);
  CHECK(f.qc_dot == doctest::Approx(-pi / 2).epsilon(1e-9));
  CHECK(max_diff(f.s, Evolution::Identity()) < 1e-9);

  const StationaryState ground{0, 1.0};
  const double e = forced_final_energy(f, ground, 1.0);
  CHECK(e == doctest::Approx(0.5 + pi * pi / 8).epsilon(1e-9));

  // kappa = 0 reduces to the homogeneous result.
  const FrequencyProfile p = LogFourier{4.0, {0.3}, 1.0};
  const ForcedEvolution free = propagate_forced(p, [](double) { return 0.0; }, 4.0, tight());
  CHECK(free.qc == 0.0);
  CHECK(free.qc_dot == 0.0);
  CHECK(max_diff(free.s, propagate_ode(p, 4.0, tight())) < 1e-12);
  CHECK(forced_final_energy(free, ground, 1.0) == doctest::Approx(final_energy(free.s, ground, 1.0)));

  // Forcing never lowers the energy relative to the homogeneous evolution.
  const ForcedEvolution driven = propagate_forced(p, [](double t) { return 0.3 * std::sin(pi * t / 4.0); }, 4.0);
  CHECK(forced_final_energy(driven, ground, 1.0) >= final_energy(driven.s, ground, 1.0));

  CHECK_THROWS_AS(propagate_forced(Constant{1.0}, [](double) { return 1.0; }, 1.0), DomainError);
  CHECK_THROWS_AS(propagate_forced(Constant{1.0}, Drive{}, 1.0), DomainError);
}

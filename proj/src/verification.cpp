#include "tdho/verification.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tdho/cycles.hpp"
#include "tdho/ensemble.hpp"
#include "tdho/numeric.hpp"
#include "tdho/parallel.hpp"
#include "tdho/perturbation.hpp"

namespace tdho {

namespace {

struct Outcome {
  double measure = 0.0;
  bool failed = false;
  std::string detail;
};

/// Runs `count` independent samples and folds them in index order.
template <typename Sample>
CheckResult run_check(std::string name, double tolerance, int count, unsigned workers, Sample&& sample) {
  std::vector<Outcome> out(static_cast<std::size_t>(std::max(count, 0)));
  parallel_for(out.size(), workers, [&](std::size_t i) {
    try {
      out[i] = sample(i);
    } catch (const std::exception& e) {
      out[i] = {std::numeric_limits<double>::infinity(), true, e.what()};
    }
  });
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  for (std::size_t i = 0; i < out.size(); ++i) {
    ++r.checked;
    r.worst = std::max(r.worst, out[i].measure);
    if (out[i].failed) {
      if (r.failed == 0) r.detail = "sample " + std::to_string(i) + ": " + out[i].detail;
      ++r.failed;
    }
  }
  return r;
}

std::string describe(const CycleSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << family_name(s.family) << " omega0=" << s.omega0 << " v=" << s.v << " lambda=" << s.lambda;
  if (s.family == Family::PowerLaw) os << " k=" << s.k;
  return os.str();
}

double log_uniform(std::mt19937_64& rng, double a, double b) {
  return a * std::pow(b / a, std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

LogFourier random_log_fourier(std::mt19937_64& rng, double omega0, double period, int max_modes, double amplitude) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LogFourier lf;
  lf.omega0 = omega0;
  lf.period = period;
  const int modes = 1 + static_cast<int>(unit(rng) * max_modes);
  for (int m = 0; m < modes; ++m) lf.coefficients.push_back((2.0 * unit(rng) - 1.0) * amplitude / (m + 1));
  return lf;
}

}  // namespace

std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t check, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(check), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

CheckResult check_gain_bound(const VerifyOptions& opt) {
  constexpr double tol = 1e-9;
  return run_check("gain-bound", tol, opt.cycles, opt.workers, [&](std::size_t i) {
    auto rng = task_rng(opt.seed, 1, i);
    const CycleSpec spec = random_closed_cycle(rng);
    const double r = gain_factor(build_cycle(spec));
    Outcome o{std::max(0.0, 1.0 - r), !(r >= 1.0 - tol), {}};
    if (o.failed) o.detail = describe(spec) + " R=" + std::to_string(r);
    return o;
  });
}

CheckResult check_closed_form_oracle(const VerifyOptions& opt) {
  constexpr double tol = 1e-6;
  return run_check("closed-form-vs-ode", tol, opt.oracle_samples, opt.workers, [&](std::size_t i) {
    auto rng = task_rng(opt.seed, 2, i);
    CycleSpec spec;
    spec.family = static_cast<Family>(i % 3);
    spec.omega0 = log_uniform(rng, 0.3, 3.0);
    spec.v = log_uniform(rng, 0.2, 5.0);
    spec.lambda = log_uniform(rng, 0.3, 3.0);
    if (spec.family == Family::PowerLaw) spec.k = -4.0 + 3.5 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Evolution exact = build_cycle(spec);
    const Evolution ode = build_cycle_ode(spec);
    const double diff = (exact - ode).cwiseAbs().maxCoeff();
    const double det = std::max(det_error(exact), det_error(ode));
    Outcome o{diff, !(diff < tol) || !(det < kPropagatorDetTol), {}};
    if (o.failed) o.detail = describe(spec) + " max|dS|=" + std::to_string(diff) + " det_err=" + std::to_string(det);
    return o;
  });
}

CheckResult check_bogoliubov(const VerifyOptions& opt) {
  constexpr double tol = 1e-12;
  return run_check("bogoliubov", tol, opt.symplectic, opt.workers, [&](std::size_t i) {
    auto rng = task_rng(opt.seed, 3, i);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), sq(-2.0, 2.0);
    const Evolution s = rotation(angle(rng)) * squeeze(std::exp(sq(rng))) * rotation(angle(rng));
    const BogoliubovPair bp = to_bogoliubov(s);
    const double gain_gap = std::abs(gain_factor(s) - (1.0 + 2.0 * std::norm(bp.beta)));
    const double norm_gap = std::abs(bp.norm() - 1.0);
    const StationaryState state{static_cast<unsigned>(i % 8), 1.0};
    const double energy_gap = std::abs(bogoliubov_energy(bp, state) - final_energy(s, state, 1.0));
    Outcome o{gain_gap, gain_gap > tol || norm_gap > 1e-9 || energy_gap > 1e-9, {}};
    if (o.failed) {
      std::ostringstream os;
      os << "R gap " << gain_gap << ", norm gap " << norm_gap << ", energy gap " << energy_gap;
      o.detail = os.str();
    }
    return o;
  });
}

CheckResult check_multimode(const VerifyOptions& opt) {
  constexpr double tol = 1e-8;
  return run_check("multimode", tol, opt.multimode, opt.workers, [&](std::size_t i) {
    auto rng = task_rng(opt.seed, 4, i);
    const int modes = 1 + static_cast<int>(i % 4);
    const double t_final = log_uniform(rng, 1.0, 10.0);
    const MultimodeBogoliubov bg = multimode_from_hamiltonian(random_cyclic_coupling(modes, t_final, rng), t_final);
    const double err = std::max(bg.unitarity_error(), bg.symmetry_error());
    std::uniform_int_distribution<int> occupation(0, 10);
    bool monotone = true;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> n(static_cast<std::size_t>(modes));
      double initial = 0.0;
      for (auto& nk : n) initial += nk = occupation(rng);
      monotone = monotone && phonon_number_final(bg, n) >= initial;
    }
    Outcome o{err, !(err < tol) || !monotone, {}};
    if (o.failed) o.detail = "modes=" + std::to_string(modes) + " relation error " + std::to_string(err) +
                             (monotone ? "" : ", phonon number decreased");
    return o;
  });
}

CheckResult check_forced(const VerifyOptions& opt) {
  constexpr double tol = 1e-8;
  return run_check("forced-decomposition", tol, opt.forced, opt.workers, [&](std::size_t i) {
    auto rng = task_rng(opt.seed, 5, i);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double omega0 = log_uniform(rng, 0.3, 3.0);
    const double period = log_uniform(rng, 1.0, 10.0) / omega0;
    const FrequencyProfile profile = random_log_fourier(rng, omega0, period, 4, 1.0);
    const double amp = 4.0 * unit(rng) - 2.0, wobble = unit(rng), cycles = 1.0 + std::floor(4.0 * unit(rng));
    const Drive kappa = [=](double t) {
      const double s = std::sin(std::numbers::pi * t / period);
      return amp * s * s * (1.0 + wobble * std::sin(2.0 * std::numbers::pi * cycles * t / period));
    };
    const StationaryState state{static_cast<unsigned>(i % 6), omega0};

    const ForcedEvolution f = propagate_forced(profile, kappa, period);
    const double split = forced_final_energy(f, state, omega_at(profile, period));

    // Independent route: first and second moments under the driven flow.
    using Moments = Eigen::Matrix<double, 5, 1>;  // <q>, <p>, <q^2>, <p^2>, <D>
    auto rhs = [&](double t, const Moments& m) {
      const double w2 = std::pow(omega_at(profile, t), 2), k = kappa(t);
      Moments d;
      d << m(1), -w2 * m(0) + k, 2.0 * m(4), -2.0 * w2 * m(4) + 2.0 * k * m(1), m(3) - w2 * m(2) + k * m(0);
      return d;
    };
    Moments m0;
    m0 << 0.0, 0.0, state.moments().qq, state.moments().pp, 0.0;
    IntegratorConfig cfg;
    cfg.rtol = 1e-12;
    cfg.atol = 1e-14;
    cfg.initial_step = 0.01 / omega0;
    const Moments m1 = integrate(rhs, 0.0, period, m0, cfg);
    const double direct = 0.5 * (m1(3) + std::pow(omega_at(profile, period), 2) * m1(2));

    const double gap = std::abs(split - direct) / std::max(1.0, direct);
    Outcome o{gap, !(gap < tol) || !(split >= state.energy() * (1.0 - 1e-9)), {}};
    if (o.failed) {
      std::ostringstream os;
      os.precision(17);
      os << "E split " << split << " vs moments " << direct << ", E_in " << state.energy();
      o.detail = os.str();
    }
    return o;
  });
}

CheckResult check_matrix_inequality(const VerifyOptions& opt) {
  CheckResult r;
  r.name = "matrix-inequality";
  for (int power = 1; power <= opt.inequality_power; ++power) {
    const InequalityReport rep =
        check_inequality(power, opt.inequality_levels, opt.inequality_levels + power + kCutoffMargin);
    r.checked += rep.checked;
    r.failed += static_cast<int>(rep.violations.size());
    for (const auto& v : rep.violations) {
      r.worst = std::max(r.worst, v.down - v.up);
      if (r.detail.empty())
        r.detail = "N=" + std::to_string(v.power) + " n=" + std::to_string(v.n) + " m=" + std::to_string(v.m);
    }
  }
  return r;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  return {check_gain_bound(opt),  check_closed_form_oracle(opt), check_bogoliubov(opt),
          check_multimode(opt),   check_forced(opt),             check_matrix_inequality(opt)};
}

}  // namespace tdho

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "table.hpp"
#include "tdho/cavity.hpp"
#include "tdho/closed_form.hpp"
#include "tdho/cycles.hpp"
#include "tdho/error.hpp"
#include "tdho/numeric.hpp"
#include "tdho/parallel.hpp"
#include "tdho/perturbation.hpp"
#include "tdho/verification.hpp"

namespace tdho::cli {

namespace {

struct Common {
  std::string config;
  std::string output;
  std::string format = "csv";
  unsigned workers = 0;
  std::uint64_t seed = 42;
};

struct PropagateArgs {
  std::string family = "inverse-linear";
  double k = -2.0;
  double omega0 = 1.0;
  double v = 1.0;
  double lambda = 2.0;
  unsigned n = 0;
  std::string method = "closed";
};

struct CycleArgs {
  std::string family = "inverse-linear";
  double k = -2.0;
  double omega0 = 1.0;
  double v = 1.0;
  double lambda = 2.0;
  int cycles = 1;
  std::string method = "closed";
};

struct ScanArgs {
  std::string family = "inverse-linear";
  double k = -2.0;
  std::string v_grid;
  std::string lambda_grid = "10";
  std::string omega0_grid = "1";
  int cycles = 1;
  double unity_tol = -1.0;
};

struct ForcedArgs {
  double omega0 = 1.0;
  double period = 2.0 * std::numbers::pi;
  std::vector<double> coefficients;
  double amplitude = 1.0;
  int harmonic = 0;
  unsigned n = 0;
};

struct PerturbArgs {
  std::string mode = "inequality";
  int power = 2;
  int n_max = 20;
  int cutoff = 0;
  int level = 0;
  double epsilon = 1e-3;
  double t0 = 5.0;
};

struct SpectrumArgs {
  double L0 = 1e-2;
  double T = 300.0;
  double v = 1e3;
  double lambda = 0.5;
  int samples = 200;
  int mode_cutoff = 1000;
  bool sonoluminescence = false;
};

struct VerifyArgs {
  int cycles = 1000;
  int oracle_samples = 60;
  int symplectic = 1000;
  int multimode = 100;
  int forced = 100;
};

std::vector<double> parse_grid(const std::string& text, const char* what) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(x))
      throw ConfigError(std::string(what) + ": '" + s + "' is not a number");
    return x;
  };
  if (parts.size() == 1) return {number(parts[0])};
  if (parts.size() != 3 && parts.size() != 4)
    throw ConfigError(std::string(what) + ": expected start:stop:count[:log|lin], got '" + text + "'");
  const double start = number(parts[0]), stop = number(parts[1]), count = number(parts[2]);
  if (count < 1 || count != std::floor(count)) throw ConfigError(std::string(what) + ": count must be a positive integer");
  const std::string spacing = parts.size() == 4 ? parts[3] : "lin";
  if (spacing == "lin") return linear_grid(start, stop, static_cast<int>(count));
  if (spacing == "log") {
    if (!(start > 0.0 && stop > 0.0)) throw ConfigError(std::string(what) + ": log grids need positive ends");
    return log_grid(start, stop, static_cast<int>(count));
  }
  throw ConfigError(std::string(what) + ": spacing must be 'lin' or 'log'");
}

Family closed_family(const std::string& name) {
  Family f;
  try {
    f = parse_family(name);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (f == Family::Custom) throw ConfigError("family 'custom' is not available from the command line");
  return f;
}

void require_method(const std::string& m) {
  if (m != "closed" && m != "ode") throw ConfigError("method must be 'closed' or 'ode'");
}

/// Fills options not given on the command line from a flat JSON object whose
/// keys are long option names.
void apply_config(const std::string& path, CLI::App& app, CLI::App& sub) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "config") throw ConfigError("config files cannot nest --config");
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) throw ConfigError("config key '" + key + "' is not an option of '" + sub.get_name() + "'");
    if (opt->count() > 0) continue;
    std::vector<std::string> items;
    auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array())
      for (const auto& v : value) items.push_back(text(v));
    else
      items.push_back(text(value));
    try {
      for (const auto& s : items) opt->add_result(s);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

void put_matrix(std::vector<Cell>& row, const Evolution& s) {
  row.insert(row.end(), {s(0, 0), s(0, 1), s(1, 0), s(1, 1), det_error(s)});
}

Table run_propagate(const PropagateArgs& a) {
  const Family f = closed_family(a.family);
  require_method(a.method);
  if (a.v == 0.0) throw DomainError("propagate: v must be nonzero");
  const double speed = std::abs(a.v);
  const bool ode = a.method == "ode";

  double z = a.lambda, rate = 0.0, t_final = 0.0;
  Evolution s;
  switch (f) {
    case Family::InverseLinear:
      rate = a.lambda >= 1.0 ? speed : -speed;
      t_final = (a.lambda - 1.0) / rate;
      s = ode ? propagate_ode(InverseLinear{a.omega0, rate}, t_final)
              : propagate_inverse_linear(a.omega0, rate, a.lambda);
      break;
    case Family::PowerLaw:
      if (a.k == 0.0 || a.k == 2.0) throw DomainError("propagate: power-law k must differ from 0 and 2");
      z = power_law_z_for_scale(a.k, a.lambda);
      rate = z >= 1.0 ? speed : -speed;
      t_final = (z - 1.0) / rate;
      s = ode ? propagate_ode(PowerLaw{a.k, rate, a.omega0, 1.0}, t_final)
              : propagate_power_law(a.k, rate, z, a.omega0);
      break;
    default:
      z = 1.0 / a.lambda;
      rate = z >= 1.0 ? speed : -speed;
      t_final = std::log(z) / rate;
      s = ode ? propagate_ode(Exponential{rate, a.omega0}, t_final) : propagate_exponential(rate, z, a.omega0);
      break;
  }
  const StationaryState state{a.n, a.omega0};
  const double omega_f = a.omega0 / a.lambda;
  const double e = final_energy(s, state, omega_f);

  Table t;
  t.command = "propagate";
  t.columns = {"family", "k",   "omega0", "v",   "lambda",  "z_final", "omega_final", "t_final", "S11",
               "S12",    "S21", "S22",    "det_err", "E_in", "energy",  "energy_ratio", "sudden_limit"};
  std::vector<Cell> row{std::string(family_name(f)), f == Family::PowerLaw ? a.k : std::nan(""), a.omega0, rate,
                        a.lambda, z, omega_f, t_final};
  put_matrix(row, s);
  row.insert(row.end(), {state.energy(), e, e / state.energy(),
                         state.energy() * 2.0 * asymptotic_energy(a.lambda, 1.0)});
  t.add_row(std::move(row));
  return t;
}

Table run_cycle(const CycleArgs& a) {
  require_method(a.method);
  CycleSpec spec;
  spec.family = closed_family(a.family);
  spec.k = a.k;
  spec.omega0 = a.omega0;
  spec.v = a.v;
  spec.lambda = a.lambda;
  spec.n_cycles = a.cycles;
  const Evolution s = a.method == "ode" ? build_cycle_ode(spec) : build_cycle(spec);

  Table t;
  t.command = "cycle";
  t.columns = {"family", "k",   "omega0", "v",   "lambda",  "n_cycles", "R",
               "S11",    "S12", "S21",    "S22", "det_err", "beta_abs2"};
  std::vector<Cell> row{std::string(family_name(spec.family)),
                        spec.family == Family::PowerLaw ? a.k : std::nan(""),
                        a.omega0,
                        std::abs(a.v),
                        a.lambda,
                        std::int64_t{a.cycles},
                        gain_factor(s)};
  put_matrix(row, s);
  row.push_back(std::norm(to_bogoliubov(s).beta));
  t.add_row(std::move(row));
  return t;
}

Table run_scan(const ScanArgs& a, unsigned workers) {
  if (a.v_grid.empty()) throw ConfigError("scan: --v-grid is required");
  ScanGrid grid;
  grid.family = closed_family(a.family);
  grid.k = a.k;
  grid.v = parse_grid(a.v_grid, "--v-grid");
  grid.lambda = parse_grid(a.lambda_grid, "--lambda");
  grid.omega0 = parse_grid(a.omega0_grid, "--omega0");
  grid.n_cycles = a.cycles;
  const ScanResult result = scan_gain(grid, workers);

  Table t;
  t.command = "scan";
  t.meta = {{"family", std::string(family_name(grid.family))}, {"n_cycles", std::int64_t{a.cycles}}};
  if (grid.family == Family::PowerLaw) t.meta.push_back({"k", a.k});
  if (a.unity_tol >= 0.0) {
    t.command = "scan-unity";
    t.meta.push_back({"tol", a.unity_tol});
    t.columns = {"v", "lambda", "omega0", "R", "coarse_R"};
    for (const auto& p : find_unity_points(result, a.unity_tol)) t.add_row({p.v, p.lambda, p.omega0, p.R, p.coarse_R});
    return t;
  }
  t.columns = {"v", "lambda", "omega0", "n_cycles", "R", "det_err", "error"};
  for (const auto& r : result.rows)
    t.add_row({r.v, r.lambda, r.omega0, std::int64_t{r.n_cycles}, r.R, r.det_err, r.error});
  return t;
}

Table run_forced(const ForcedArgs& a) {
  if (!(a.period > 0.0)) throw ConfigError("forced: --period must be positive");
  if (a.harmonic < 0) throw ConfigError("forced: --harmonic must be >= 0");
  const LogFourier profile{a.period, a.coefficients, a.omega0};
  const double period = a.period, amp = a.amplitude, m = a.harmonic;
  const Drive kappa = [=](double t) {
    const double s = std::sin(std::numbers::pi * t / period);
    return amp * s * s * std::cos(2.0 * std::numbers::pi * m * t / period);
  };
  const ForcedEvolution f = propagate_forced(profile, kappa, a.period);
  const StationaryState state{a.n, a.omega0};
  const double omega_f = omega_at(profile, a.period);

  Table t;
  t.command = "forced";
  t.columns = {"t_final", "omega_final", "qc",  "qc_dot", "E_in",    "E_homogeneous",
               "E_forced", "S11",        "S12", "S21",    "S22", "det_err"};
  std::vector<Cell> row{a.period,       omega_f,
                        f.qc,           f.qc_dot,
                        state.energy(), final_energy(f.s, state, omega_f),
                        forced_final_energy(f, state, omega_f)};
  put_matrix(row, f.s);
  t.add_row(std::move(row));
  return t;
}

Table run_perturb(const PerturbArgs& a) {
  Table t;
  t.meta = {{"power", std::int64_t{a.power}}};
  if (a.mode == "inequality") {
    const int cutoff = a.cutoff > 0 ? a.cutoff : a.n_max + a.power + kCutoffMargin;
    const OperatorMatrix xn = x_power_matrix(a.power, cutoff);
    const InequalityReport rep = check_inequality(a.power, a.n_max, cutoff);
    t.command = "perturb-inequality";
    t.meta.push_back({"violations", static_cast<std::int64_t>(rep.violations.size())});
    t.columns = {"N", "n", "m", "up", "down", "holds"};
    for (int n = 0; n <= a.n_max; ++n)
      for (int m = 1; m <= std::min(n, a.power); ++m) {
        if ((a.power - m) % 2 != 0) continue;
        const double up = std::abs(xn.at(n + m, n)), down = std::abs(xn.at(n - m, n));
        t.add_row({std::int64_t{a.power}, std::int64_t{n}, std::int64_t{m}, up, down, std::int64_t{up >= down}});
      }
    return t;
  }
  if (a.mode != "transitions") throw ConfigError("perturb: --mode must be 'inequality' or 'transitions'");
  const int cutoff = a.cutoff > 0 ? a.cutoff : a.level + 2 * a.power + kCutoffMargin;
  const double eps = a.epsilon, t0 = a.t0;
  const PerturbingDrive drive{[=](double s) {
                                const double b = std::sin(std::numbers::pi * s / t0);
                                return eps * b * b;
                              },
                              t0};
  t.command = "perturb-transitions";
  t.meta.push_back({"epsilon", eps});
  t.meta.push_back({"t0", t0});
  t.meta.push_back({"energy_shift", first_order_energy_shift(drive, a.level, a.power, cutoff)});
  t.columns = {"n_from", "n_to", "omega_fi", "probability"};
  for (int f = std::max(0, a.level - a.power); f <= a.level + a.power; ++f) {
    if (f == a.level) continue;
    t.add_row({std::int64_t{a.level}, std::int64_t{f}, double(f - a.level),
               transition_probability(drive, a.level, f, a.power, cutoff)});
  }
  return t;
}

Table run_spectrum(const SpectrumArgs& a) {
  Table t;
  if (a.sonoluminescence) {
    const auto e = cavity::sonoluminescence_estimate(a.lambda, a.T, a.L0);
    t.command = "spectrum-sonoluminescence";
    t.columns = {"lambda", "T", "L0", "initial_energy", "excess_energy", "photons_low", "photons_high", "effective_T"};
    t.add_row({a.lambda, a.T, a.L0, e.initial_energy, e.excess_energy, e.photon_count_range.first,
               e.photon_count_range.second, e.effective_T});
    return t;
  }
  cavity::CavitySpec spec;
  spec.L0 = a.L0;
  spec.T = a.T;
  spec.v = a.v;
  spec.lambda = a.lambda;
  spec.samples = a.samples;
  spec.mode_cutoff = a.mode_cutoff;
  const auto shift = cavity::shift_planck_spectrum(spec);
  t.command = "spectrum";
  t.meta = {{"T", a.T},
            {"lambda", a.lambda},
            {"fitted_T_after", shift.fitted_T_after},
            {"energy_before", shift.energy_before},
            {"energy_after", shift.energy_after},
            {"energy_ratio", shift.energy_after / shift.energy_before}};
  t.columns = {"nu_before", "u_before", "nu_after", "u_after", "u_planck_after"};
  for (std::size_t i = 0; i < shift.before.size(); ++i) {
    const auto& b = shift.before[i];
    const auto& s = shift.after[i];
    t.add_row({b.nu, b.u, s.nu, s.u, cavity::planck_density(s.nu, a.T / a.lambda)});
  }
  return t;
}

Table run_verify(const VerifyArgs& a, const Common& c, bool& failed) {
  VerifyOptions opt;
  opt.seed = c.seed;
  opt.workers = c.workers;
  opt.cycles = a.cycles;
  opt.oracle_samples = a.oracle_samples;
  opt.symplectic = a.symplectic;
  opt.multimode = a.multimode;
  opt.forced = a.forced;
  Table t;
  t.command = "verify";
  t.meta = {{"seed", static_cast<std::int64_t>(c.seed)}};
  t.columns = {"check", "checked", "failed", "worst", "tolerance", "status", "detail"};
  failed = false;
  for (const auto& r : run_verification(opt)) {
    failed = failed || !r.ok();
    t.add_row({r.name, std::int64_t{r.checked}, std::int64_t{r.failed}, r.worst, r.tolerance,
               std::string(r.ok() ? "pass" : "fail"), r.detail});
  }
  return t;
}

void report(std::ostream& err, const char* kind, const std::string& message, int code) {
  nlohmann::json j{{"error", kind}, {"message", message}, {"exit_code", code}};
  err << j.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolution matrices, gain factors and spectra for oscillators with time-dependent frequency", "tdho"};
  app.set_version_flag("--version", TDHO_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config, "JSON file of option values; flags take precedence");
  app.add_option("--output,-o", common.output, "Output file (default: standard output)");
  app.add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", common.workers, "Worker threads (default: TDHO_WORKERS or all cores)");
  app.add_option("--seed", common.seed, "Seed for randomized checks");

  PropagateArgs pa;
  auto* propagate = app.add_subcommand("propagate", "Evolution matrix and final energy for one frequency ramp");
  propagate->add_option("--family", pa.family, "inverse-linear, power or exponential");
  propagate->add_option("--k", pa.k, "Power-law exponent");
  propagate->add_option("--omega0", pa.omega0, "Initial frequency");
  propagate->add_option("--v", pa.v, "Ramp rate (magnitude; direction follows --lambda)");
  propagate->add_option("--lambda", pa.lambda, "Final frequency is omega0 / lambda");
  propagate->add_option("--n", pa.n, "Initial quantum number");
  propagate->add_option("--method", pa.method, "closed or ode");

  CycleArgs ca;
  auto* cycle = app.add_subcommand("cycle", "Gain factor of a closed out-and-back cycle");
  cycle->add_option("--family", ca.family, "inverse-linear, power or exponential");
  cycle->add_option("--k", ca.k, "Power-law exponent");
  cycle->add_option("--omega0", ca.omega0, "Initial frequency");
  cycle->add_option("--v", ca.v, "Ramp rate");
  cycle->add_option("--lambda", ca.lambda, "Turning-point scale");
  cycle->add_option("--cycles", ca.cycles, "Number of repetitions");
  cycle->add_option("--method", ca.method, "closed or ode");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Gain factor over a (v, lambda, omega0) grid");
  scan->add_option("--family", sa.family, "inverse-linear, power or exponential");
  scan->add_option("--k", sa.k, "Power-law exponent");
  scan->add_option("--v-grid", sa.v_grid, "start:stop:count[:log|lin]");
  scan->add_option("--lambda,--lambda-grid", sa.lambda_grid, "Value or grid");
  scan->add_option("--omega0,--omega0-grid", sa.omega0_grid, "Value or grid");
  scan->add_option("--cycles", sa.cycles, "Number of repetitions");
  scan->add_option("--unity-tol", sa.unity_tol, "Report refined local minima with R - 1 below this instead");

  ForcedArgs fa;
  auto* forced = app.add_subcommand("forced", "Driven oscillator over one period of a log-Fourier profile");
  forced->add_option("--omega0", fa.omega0, "Frequency at both ends");
  forced->add_option("--period", fa.period, "Duration of the cycle");
  forced->add_option("--coefficients", fa.coefficients, "c_m in omega0 exp(sum c_m sin(m pi t / T))")->delimiter(',');
  forced->add_option("--amplitude", fa.amplitude, "Drive A in A sin^2(pi t / T) cos(2 pi m t / T)");
  forced->add_option("--harmonic", fa.harmonic, "Drive harmonic m");
  forced->add_option("--n", fa.n, "Initial quantum number");

  PerturbArgs ra;
  auto* perturb = app.add_subcommand("perturb", "First-order transitions and x^N matrix-element checks");
  perturb->add_option("--mode", ra.mode, "inequality or transitions");
  perturb->add_option("--power", ra.power, "Power N of x");
  perturb->add_option("--n-max", ra.n_max, "Highest level checked (inequality)");
  perturb->add_option("--cutoff", ra.cutoff, "Basis size (default: highest level + N + 32)");
  perturb->add_option("--level", ra.level, "Initial level (transitions)");
  perturb->add_option("--epsilon", ra.epsilon, "Drive amplitude in eps sin^2(pi t / t0)");
  perturb->add_option("--t0", ra.t0, "Drive duration");

  SpectrumArgs pa2;
  auto* spectrum = app.add_subcommand("spectrum", "Black-body spectrum in a contracting or expanding box");
  spectrum->add_option("--L0", pa2.L0, "Initial box size (cm)");
  spectrum->add_option("--T", pa2.T, "Initial temperature (K)");
  spectrum->add_option("--v", pa2.v, "Fractional wall rate (1/s)");
  spectrum->add_option("--lambda", pa2.lambda, "Final size / initial size");
  spectrum->add_option("--samples", pa2.samples, "Spectrum samples");
  spectrum->add_option("--mode-cutoff", pa2.mode_cutoff, "Highest mode checked for adiabaticity");
  spectrum->add_flag("--sonoluminescence", pa2.sonoluminescence, "Report the excess energy and photon estimate");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Randomized invariant checks; exit 1 on any violation");
  verify->add_option("--cycles", va.cycles, "Random closed cycles");
  verify->add_option("--oracle-samples", va.oracle_samples, "Closed-form vs ODE cycles");
  verify->add_option("--symplectic", va.symplectic, "Random symplectic matrices");
  verify->add_option("--multimode", va.multimode, "Random coupled systems");
  verify->add_option("--forced", va.forced, "Random driven cycles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream ignored;
      return app.exit(e, out, ignored);
    }
    report(err, "config", e.what(), kExitConfig);
    return kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    apply_config(common.config, app, *sub);
    if (common.workers == 0) common.workers = default_worker_count();

    bool verify_failed = false;
    Table table;
    if (sub == propagate)
      table = run_propagate(pa);
    else if (sub == cycle)
      table = run_cycle(ca);
    else if (sub == scan)
      table = run_scan(sa, common.workers);
    else if (sub == forced)
      table = run_forced(fa);
    else if (sub == perturb)
      table = run_perturb(ra);
    else if (sub == spectrum)
      table = run_spectrum(pa2);
    else
      table = run_verify(va, common, verify_failed);

    std::ofstream file;
    if (!common.output.empty()) {
      file.open(common.output);
      if (!file) throw ConfigError("cannot write '" + common.output + "'");
    }
    std::ostream& dest = common.output.empty() ? out : file;
    if (common.format == "json")
      write_json(dest, table);
    else
      write_csv(dest, table);
    if (verify_failed) {
      report(err, "verify", "one or more invariant checks failed", kExitVerifyFailed);
      return kExitVerifyFailed;
    }
    return 0;
  } catch (const ConfigError& e) {
    report(err, "config", e.what(), kExitConfig);
    return kExitConfig;
  } catch (const DomainError& e) {
    report(err, "domain", e.what(), kExitNumeric);
    return kExitNumeric;
  } catch (const NumericError& e) {
    report(err, "numeric", e.what(), kExitNumeric);
    return kExitNumeric;
  } catch (const std::exception& e) {
    report(err, "numeric", e.what(), kExitNumeric);
    return kExitNumeric;
  }
}

}  // namespace tdho::cli

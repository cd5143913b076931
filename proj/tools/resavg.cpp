#include "resavg/common/errors.hpp"
#include "resavg/dynamics/model.hpp"
#include "resavg/dynamics/steppers.hpp"
#include "resavg/experiments/convergence.hpp"
#include "resavg/experiments/ensemble.hpp"
#include "resavg/experiments/phase_test.hpp"
#include "resavg/experiments/stationary.hpp"
#include "resavg/io/config.hpp"
#include "resavg/io/outputs.hpp"
#include "resavg/lattice/resonance_module.hpp"

#include "CLI11.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace {

using namespace resavg;
using nlohmann::json;

int code(ExitCode c) { return static_cast<int>(c); }

std::size_t steps_for(double interval, double h) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(interval / h)));
}

struct ResonancesArgs {
  int dim = 1, kmax = 2, qstar = 1;
  std::string period = "1";
  std::optional<int> order;
  std::string out = "-";
};

int run_resonances(const ResonancesArgs& a) {
  Rational L;
  try {
    L = parse_rational(a.period);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("--period: ") + e.what());
  }
  if (a.qstar < 0) throw ConfigError("--qstar: must be >= 0");
  const ModeBasis basis = build_mode_basis(a.dim, a.kmax, L);
  ResonanceTable table = build_resonance_table(basis, a.qstar);
  if (a.order && *a.order != table.order_m) {
    if (*a.order < 1) throw ConfigError("--order: must be >= 1");
    table.order_m = *a.order;
    table.resonance_set = enumerate_resonance_set(basis, table.order_m, table.set_modes);
  }
  const ResonanceModule module = resonance_module_basis(table.resonance_set, basis.size());
  write_json(a.out, resonance_table_json(basis, table, module));
  return 0;
}

struct SimulateArgs {
  std::string mode = "effective";
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> save_every;
  std::string out = "-";
  std::optional<double> until;
  std::string checkpoint_out;
  std::string resume;
};

int run_simulate(const SimulateArgs& a) {
  ConfigDocument doc = load_config_document(a.config);
  if (a.seed) doc.seed = *a.seed;
  if (a.save_every) {
    if (*a.save_every == 0) throw ConfigError("--save-every: must be >= 1");
    doc.save_every = *a.save_every;
  }
  const LoadedConfig cfg = realize_config(doc);
  const Scheme scheme = parse_scheme(a.mode);
  if (scheme == Scheme::kFull && !cfg.sim.nu) throw ConfigError("integration.nu: required for --mode full");

  const Model model(cfg.basis, cfg.sim);
  const TimeGrid grid = make_time_grid(cfg.sim.horizon, max_step(cfg.sim, scheme));
  const NoiseStream stream{cfg.sim.seed, 0, kPlainDomain};

  ModeState state;
  std::uint64_t from = 0;
  if (!a.resume.empty()) {
    const Checkpoint c = load_checkpoint(a.resume);
    if (c.config_digest != cfg.digest) throw ConfigError("--resume: checkpoint was written for a different config");
    if (c.scheme != to_string(scheme)) throw ConfigError("--resume: checkpoint scheme is " + c.scheme);
    if (c.v.size() != model.size() || c.total_steps != grid.steps || c.h != grid.h)
      throw ConfigError("--resume: checkpoint does not match the time grid or basis");
    state.v = c.v;
    state.tau = c.tau;
    from = c.step;
  } else {
    state.v = initial_state(doc, cfg.basis);
  }
  std::uint64_t to = grid.steps;
  if (a.until) {
    if (*a.until < 0.0) throw ConfigError("--until: must be >= 0");
    to = std::min<std::uint64_t>(grid.steps, grid.index_of(*a.until));
    to = std::max(to, from);
  }

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (a.out != "-") {
    file.open(a.out, std::ios::binary);
    if (!file) throw ConfigError(a.out + ": cannot write");
    os = &file;
  }
  TrajectoryCsv csv(*os, model.size());
  if (a.resume.empty()) csv.row(state.tau, state.v);
  const std::uint64_t every = doc.save_every;
  int status = 0;
  try {
    integrate(model, scheme, stream, grid.h, state, from, to, [&](std::uint64_t n, const ModeState& s) {
      if (n % every == 0 || n == to) csv.row(s.tau, s.v);
    });
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up at tau = " << e.tau() << " (step " << e.step() << "): " << e.what() << "\n";
    status = code(ExitCode::kRuntimeAbort);
  }
  os->flush();
  if (status == 0 && !a.checkpoint_out.empty()) {
    Checkpoint c;
    c.config_digest = cfg.digest;
    c.scheme = to_string(scheme);
    c.tau = state.tau;
    c.h = grid.h;
    c.step = to;
    c.total_steps = grid.steps;
    c.v = state.v;
    c.stream = stream;
    c.next_step = to;
    save_checkpoint(a.checkpoint_out, c);
  }
  return status;
}

struct EnsembleArgs {
  std::string config;
  std::size_t ensemble = 64;
  unsigned threads = 1;
  std::string out = "-";
};

EnsembleSpec base_spec(const EnsembleArgs& a, const LoadedConfig& cfg) {
  if (a.ensemble < 1) throw ConfigError("--ensemble: must be >= 1");
  EnsembleSpec spec;
  spec.trajectories = a.ensemble;
  spec.threads = std::max(1u, a.threads);
  spec.initial = initial_state(cfg.doc, cfg.basis);
  return spec;
}

json norm_json(const EnsembleSummary& s) {
  return {{"exponent", s.norm_exponent}, {"peak", s.norm_peak}};
}

int aborted_status(std::size_t aborted) { return aborted > 0 ? code(ExitCode::kRuntimeAbort) : 0; }

struct CompareArgs : EnsembleArgs {
  std::vector<double> nu_list{0.3, 0.1, 0.03};
  std::vector<double> times{1.0};
};

int run_compare(const CompareArgs& a) {
  LoadedConfig cfg = load_config(a.config);
  if (a.times.empty()) throw ConfigError("--times: empty");
  cfg.sim.horizon = *std::max_element(a.times.begin(), a.times.end());
  if (!(cfg.sim.horizon > 0.0)) throw ConfigError("--times: need a positive time");
  EnsembleSpec spec = base_spec(a, cfg);
  spec.sample_times = a.times;
  std::sort(spec.sample_times.begin(), spec.sample_times.end());
  const Model model(cfg.basis, cfg.sim);
  Report report;
  report.config_digest = cfg.digest;
  report.convergence = convergence_sweep(model, spec, a.nu_list);
  report.extra = {{"ensemble", a.ensemble}, {"times", spec.sample_times},
                  {"distances", "per-mode marginals of I_k and joint laws of consecutive mode pairs, "
                                "averaged over sample times"}};
  write_json(a.out, to_json(report));
  std::size_t aborted = report.convergence->reference_aborted;
  for (const auto& r : report.convergence->per_nu) aborted += r.aborted;
  return aborted_status(aborted);
}

struct StationaryArgs : EnsembleArgs {
  std::string mode = "effective";
  double burn_in = 20.0;
  double horizon = 200.0;
  double sample_every = 0.1;
  std::vector<std::string> alpha{"mass"};
};

int run_stationary(const StationaryArgs& a) {
  LoadedConfig cfg = load_config(a.config);
  const Scheme scheme = parse_scheme(a.mode);
  if (scheme == Scheme::kFull && !cfg.sim.nu) throw ConfigError("integration.nu: required for --mode full");
  if (!(a.horizon > a.burn_in) || a.burn_in < 0.0) throw ConfigError("--horizon: must exceed --burn-in >= 0");
  if (!(a.sample_every > 0.0)) throw ConfigError("--sample-every: must be positive");
  cfg.sim.horizon = a.horizon;
  const Model model(cfg.basis, cfg.sim);
  const ResonanceModule module = resonance_module_basis(model.table().resonance_set, cfg.basis.size());
  std::vector<std::pair<std::string, std::vector<Rational>>> alphas;
  for (const auto& name : a.alpha) {
    const AlphaChoice choice = parse_alpha(name);
    alphas.emplace_back(choice.name(), alpha_weights(choice, cfg.basis, module));
    if (!is_admissible(alphas.back().second, model.table().resonance_set))
      throw ConfigError("--alpha: " + name + " is not orthogonal to the resonance set");
  }

  EnsembleSpec spec = base_spec(a, cfg);
  spec.scheme = scheme;
  spec.average_from = a.burn_in;
  spec.average_stride = steps_for(a.sample_every, make_time_grid(a.horizon, max_step(cfg.sim, scheme)).h);
  const EnsembleSummary summary = run_ensemble(model, spec);
  if (summary.completed == 0) throw BlowUpError("every trajectory blew up", 0.0, 0);

  Report report;
  report.config_digest = cfg.digest;
  json balances = json::array();
  for (const auto& [name, w] : alphas) {
    const BalanceResult b = stationary_balance(summary, cfg.sim, w, model.table().resonance_set, name);
    if (!report.balance) report.balance = b;
    balances.push_back(to_json(b));
  }
  report.extra = {{"mode", a.mode},
                  {"burn_in", a.burn_in},
                  {"horizon", a.horizon},
                  {"ensemble", a.ensemble},
                  {"completed", summary.completed},
                  {"time_samples_per_trajectory", summary.time_samples_per_trajectory},
                  {"balances", std::move(balances)},
                  {"spectrum", spectrum_json(cfg.basis, summary.time_average)},
                  {"spectrum_stderr", summary.time_average_stderr},
                  {"norm", norm_json(summary)}};
  write_json(a.out, to_json(report));
  return aborted_status(summary.aborted);
}

struct PhasesArgs : EnsembleArgs {
  std::vector<std::string> s;
  std::string mode = "full";
  double window_start = 0.0;
  double sample_every = 0.05;
  double alpha = 0.01;
};

int run_phases(const PhasesArgs& a) {
  const LoadedConfig cfg = load_config(a.config);
  const Scheme scheme = parse_scheme(a.mode);
  if (scheme == Scheme::kFull && !cfg.sim.nu) throw ConfigError("integration.nu: required for --mode full");
  if (a.s.empty()) throw ConfigError("--s: at least one probe is required");
  if (!(a.sample_every > 0.0)) throw ConfigError("--sample-every: must be positive");
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw ConfigError("--level: must lie in (0, 1)");
  const Model model(cfg.basis, cfg.sim);
  EnsembleSpec spec = base_spec(a, cfg);
  spec.scheme = scheme;
  for (const auto& text : a.s) spec.phase_probes.push_back(parse_sparse_vector(text, cfg.basis.size()));
  spec.phase_window_start = a.window_start;
  spec.phase_stride = steps_for(a.sample_every, make_time_grid(cfg.sim.horizon, max_step(cfg.sim, scheme)).h);
  const EnsembleSummary summary = run_ensemble(model, spec);

  Report report;
  report.config_digest = cfg.digest;
  const double n_eff = static_cast<double>(summary.completed);
  json excluded = json::array();
  for (std::size_t p = 0; p < spec.phase_probes.size(); ++p) {
    const auto& probe = spec.phase_probes[p];
    const auto& sample = summary.probe_phases[p];
    excluded.push_back(summary.probe_excluded[p]);
    if (sample.empty()) throw BlowUpError("no usable phase samples for probe " + a.s[p], 0.0, 0);
    const bool resonant = is_zero(s_dot_lambda(probe, cfg.basis));
    report.phases.push_back(resonant ? phase_contrast_test(sample, probe, cfg.basis, n_eff, a.alpha)
                                     : phase_equidistribution_test(sample, probe, cfg.basis, n_eff, a.alpha));
  }
  report.extra = {{"mode", a.mode}, {"ensemble", a.ensemble}, {"window_start", a.window_start},
                  {"excluded_samples", std::move(excluded)}, {"norm", norm_json(summary)}};
  write_json(a.out, to_json(report));
  return aborted_status(summary.aborted);
}

int run_oracle_cmd(const std::string& name, const std::string& fixture) {
  std::ifstream in(fixture);
  if (!in) throw ConfigError(fixture + ": cannot open");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(fixture + ": " + e.what());
  }
  write_json("-", resavg::oracles::to_json(resavg::oracles::run_oracle(name, j)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonant averaging experiments for damped-driven NLS Galerkin systems"};
  app.set_version_flag("--version", std::string("resavg ") + kVersion + " (rng " + kRngAlgorithm + ")");
  app.require_subcommand(1);

  ResonancesArgs ra;
  auto* res = app.add_subcommand("resonances", "Interaction tuples, resonance set and module as JSON");
  res->add_option("--dim", ra.dim)->required();
  res->add_option("--kmax", ra.kmax)->required();
  res->add_option("--period", ra.period, "rational p/q");
  res->add_option("--qstar", ra.qstar);
  res->add_option("--order", ra.order, "l1 order m of the resonance set (default 2 qstar + 2)");
  res->add_option("--out", ra.out);

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Single trajectory as CSV");
  sim->add_option("--mode", sa.mode)->check(CLI::IsMember({"full", "effective"}));
  sim->add_option("--config", sa.config)->required();
  sim->add_option("--seed", sa.seed);
  sim->add_option("--save-every", sa.save_every);
  sim->add_option("--out", sa.out);
  sim->add_option("--until", sa.until, "stop at this time (use with --checkpoint-out)");
  sim->add_option("--checkpoint-out", sa.checkpoint_out);
  sim->add_option("--resume", sa.resume);

  auto ensemble_opts = [](CLI::App* cmd, EnsembleArgs& e) {
    cmd->add_option("--config", e.config)->required();
    cmd->add_option("--ensemble", e.ensemble);
    cmd->add_option("--threads", e.threads);
    cmd->add_option("--out", e.out);
  };

  CompareArgs ca;
  auto* cmp = app.add_subcommand("compare", "Full-equation action laws against the effective reference");
  ensemble_opts(cmp, ca);
  cmp->add_option("--nu-list", ca.nu_list)->delimiter(',');
  cmp->add_option("--times", ca.times)->delimiter(',');

  StationaryArgs st;
  auto* sta = app.add_subcommand("stationary", "Long-run balance identities and spectrum");
  ensemble_opts(sta, st);
  sta->add_option("--mode", st.mode)->check(CLI::IsMember({"full", "effective"}));
  sta->add_option("--burn-in", st.burn_in);
  sta->add_option("--horizon", st.horizon);
  sta->add_option("--sample-every", st.sample_every, "time between samples of the time average");
  sta->add_option("--alpha", st.alpha, "mass | energy | dual:<i>")->delimiter(',');

  PhasesArgs pa;
  auto* ph = app.add_subcommand("phases", "Time-averaged laws of s . phi");
  ensemble_opts(ph, pa);
  ph->add_option("--s", pa.s, "sparse vector k1:c1,k2:c2 (repeatable)")->required();
  ph->add_option("--mode", pa.mode)->check(CLI::IsMember({"full", "effective"}));
  ph->add_option("--window-start", pa.window_start);
  ph->add_option("--sample-every", pa.sample_every);
  ph->add_option("--level", pa.alpha, "test level");

  std::string oracle_name, fixture;
  auto* orc = app.add_subcommand("oracle", "Run a brute-force oracle on a JSON fixture");
  orc->add_option("--name", oracle_name)->required();
  orc->add_option("--fixture", fixture)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return code(ExitCode::kConfigError);
  }

  try {
    if (*res) return run_resonances(ra);
    if (*sim) return run_simulate(sa);
    if (*cmp) return run_compare(ca);
    if (*sta) return run_stationary(st);
    if (*ph) return run_phases(pa);
    if (*orc) return run_oracle_cmd(oracle_name, fixture);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return code(ExitCode::kConfigError);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return code(ExitCode::kConfigError);
  } catch (const BlowUpError& e) {
    std::cerr << "runtime abort: " << e.what() << "\n";
    return code(ExitCode::kRuntimeAbort);
  } catch (const ResourceGuardError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return code(ExitCode::kResourceGuard);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

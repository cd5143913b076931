#include "resavg/experiments/convergence.hpp"

#include "resavg/experiments/statistics.hpp"

#include <cmath>
#include <stdexcept>

namespace resavg {

NuResult compare_ensembles(const EnsembleSummary& full, const EnsembleSummary& reference) {
  if (full.actions.size() != reference.actions.size() || full.modes != reference.modes)
    throw std::invalid_argument("ensembles are not comparable");
  NuResult r;
  r.aborted = full.aborted;
  r.norm_mean = full.norm_mean;
  r.norm_peak = full.norm_peak;
  r.exp_moment = full.exp_moment;
  const std::size_t times = full.actions.size();
  for (std::size_t k = 0; k < full.modes; ++k) {
    ModeDistance d;
    d.k = k;
    for (std::size_t t = 0; t < times; ++t) {
      const auto& a = full.actions[t][k];
      const auto& b = reference.actions[t][k];
      if (a.empty() || b.empty()) continue;
      const auto dist = action_law_distance(a, b);
      d.ks += dist.ks / static_cast<double>(times);
      d.w1 += dist.w1 / static_cast<double>(times);
    }
    r.aggregate_ks += d.ks / static_cast<double>(full.modes);
    r.aggregate_w1 += d.w1 / static_cast<double>(full.modes);
    r.per_mode.push_back(d);
  }
  for (std::size_t p = 0; p < kJointPairs && p + 1 < full.modes; ++p) {
    PairDistance d{p, p + 1, 0.0};
    for (std::size_t t = 0; t < times; ++t) {
      auto pairs = [&](const EnsembleSummary& e) {
        std::vector<std::pair<double, double>> out;
        for (const auto& I : e.trajectory_actions[t]) out.emplace_back(I[d.k1], I[d.k2]);
        return out;
      };
      const auto a = pairs(full);
      const auto b = pairs(reference);
      if (a.empty() || b.empty()) continue;
      d.ks += joint_ks_distance(a, b) / static_cast<double>(times);
    }
    r.joint.push_back(d);
  }
  return r;
}

ConvergenceReport convergence_sweep(const Model& base, const EnsembleSpec& spec,
                                    std::span<const double> nu_list) {
  if (nu_list.empty()) throw std::invalid_argument("empty nu list");
  for (std::size_t i = 0; i < nu_list.size(); ++i) {
    if (!(nu_list[i] > 0.0)) throw std::invalid_argument("nu must be positive");
    if (i > 0 && !(nu_list[i] < nu_list[i - 1]))
      throw std::invalid_argument("nu list must be strictly decreasing");
  }
  if (spec.sample_times.empty()) throw std::invalid_argument("no sample times");

  EnsembleSpec ref_spec = spec;
  ref_spec.scheme = Scheme::kEffective;
  ref_spec.domain = kReferenceDomain;
  const EnsembleSummary reference = run_ensemble(base, ref_spec);

  ConvergenceReport report;
  report.reference_aborted = reference.aborted;
  report.norm_exponent = reference.norm_exponent;
  report.reference_norm_mean = reference.norm_mean;
  report.reference_norm_peak = reference.norm_peak;
  report.reference_exp_moment = reference.exp_moment;
  report.moment_epsilon = reference.moment_epsilon;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < nu_list.size(); ++i) {
    SimConfig cfg = base.config();
    cfg.nu = nu_list[i];
    const Model model = base.with_config(cfg);
    EnsembleSpec full_spec = spec;
    full_spec.scheme = Scheme::kFull;
    full_spec.domain = kSweepDomainBase + static_cast<std::uint32_t>(i);
    const EnsembleSummary full = run_ensemble(model, full_spec);
    NuResult r = compare_ensembles(full, reference);
    r.nu = nu_list[i];
    x.push_back(std::log10(r.nu));
    y.push_back(r.aggregate_ks);
    report.per_nu.push_back(std::move(r));
  }
  if (x.size() >= 2) report.trend_slope = fit_slope(x, y);
  return report;
}

}  // namespace resavg

#include "resavg/experiments/ensemble.hpp"

#include "resavg/common/errors.hpp"
#include "resavg/dynamics/observables.hpp"
#include "resavg/experiments/statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace resavg {

namespace {

struct TrajectoryResult {
  bool aborted = false;
  std::string abort_message;
  std::vector<std::vector<double>> actions;  // [time][mode]
  std::vector<std::vector<double>> phases;   // [probe]
  std::vector<std::size_t> excluded;
  std::vector<std::vector<double>> resonance_phases;  // [time][member]
  std::vector<double> time_average;
  std::size_t time_samples = 0;
  std::vector<double> norms;  // [time]
  std::vector<double> mass;   // [time] sum |v_k|^2
  double norm_peak = 0.0;
};

TrajectoryResult run_one(const Model& model, const EnsembleSpec& spec, const TimeGrid& grid,
                         const std::vector<std::uint64_t>& sample_steps, std::uint32_t trajectory) {
  const std::size_t n = model.size();
  TrajectoryResult r;
  r.phases.resize(spec.phase_probes.size());
  r.excluded.assign(spec.phase_probes.size(), 0);
  r.time_average.assign(n, 0.0);

  const auto phase_start = grid.index_of(spec.phase_window_start);
  const bool averaging = spec.average_from >= 0.0;
  const auto average_start = averaging ? grid.index_of(spec.average_from) : 0;
  const auto& set = model.table().resonance_set;
  std::size_t next_sample = 0;

  std::vector<double> weight(n);
  for (std::size_t k = 0; k < n; ++k)
    weight[k] = std::pow(1.0 + model.basis().lambdas()[k], model.config().noise.r);

  auto observe = [&](std::uint64_t step, const ModeState& s) {
    double sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) sq += weight[k] * std::norm(s.v[k]);
    const double norm = std::sqrt(sq);
    r.norm_peak = std::max(r.norm_peak, norm);
    while (next_sample < sample_steps.size() && sample_steps[next_sample] == step) {
      std::vector<double> I(n);
      for (std::size_t k = 0; k < n; ++k) I[k] = action(s.v[k]);
      r.actions.push_back(std::move(I));
      r.norms.push_back(norm);
      double m = 0.0;
      for (const auto& z : s.v) m += std::norm(z);
      r.mass.push_back(m);
      if (spec.resonance_histogram_bins > 0) {
        std::vector<double> phi(n);
        for (std::size_t k = 0; k < n; ++k) phi[k] = angle(s.v[k]);
        std::vector<double> Phi;
        Phi.reserve(set.size());
        for (const auto& m : set) Phi.push_back(phase_combination(m, phi));
        r.resonance_phases.push_back(std::move(Phi));
      }
      ++next_sample;
    }
    if (!spec.phase_probes.empty() && step >= phase_start &&
        (step - phase_start) % spec.phase_stride == 0) {
      for (std::size_t p = 0; p < spec.phase_probes.size(); ++p) {
        const auto& probe = spec.phase_probes[p];
        bool near = false;
        double acc = 0.0;
        for (const auto& [l, c] : probe.entries) {
          near = near || action(s.v[l]) < kPhaseExclusionThreshold;
          acc += static_cast<double>(c) * angle(s.v[l]);
        }
        if (near)
          ++r.excluded[p];
        else
          r.phases[p].push_back(wrap_angle(acc));
      }
    }
    if (averaging && step >= average_start && (step - average_start) % spec.average_stride == 0) {
      for (std::size_t k = 0; k < n; ++k) r.time_average[k] += action(s.v[k]);
      ++r.time_samples;
    }
  };

  ModeState state;
  state.v = spec.initial.empty() ? ComplexVec(n) : spec.initial;
  if (state.v.size() != n) throw std::invalid_argument("initial state does not match the basis");
  const NoiseStream stream{model.config().seed, trajectory, spec.domain};
  try {
    observe(0, state);
    integrate(model, spec.scheme, stream, grid.h, state, 0, grid.steps, observe);
  } catch (const BlowUpError& e) {
    r.aborted = true;
    r.abort_message = "trajectory " + std::to_string(trajectory + 1) + ": " + e.what();
    return r;
  }
  if (r.time_samples > 0)
    for (auto& x : r.time_average) x /= static_cast<double>(r.time_samples);
  return r;
}

}  // namespace

EnsembleSummary run_ensemble(const Model& model, const EnsembleSpec& spec) {
  if (spec.trajectories < 1) throw std::invalid_argument("need at least one trajectory");
  if (spec.phase_stride == 0 || spec.average_stride == 0)
    throw std::invalid_argument("strides must be positive");
  const double horizon = model.config().horizon;
  for (double t : spec.sample_times)
    if (t < 0.0 || t > horizon + 1e-12) throw std::invalid_argument("sample time outside [0, T]");

  const TimeGrid grid = make_time_grid(horizon, max_step(model.config(), spec.scheme));
  std::vector<std::uint64_t> sample_steps;
  for (double t : spec.sample_times) sample_steps.push_back(grid.index_of(t));
  if (!std::is_sorted(sample_steps.begin(), sample_steps.end()))
    throw std::invalid_argument("sample times must be non-decreasing");

  std::vector<TrajectoryResult> results(spec.trajectories);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t m = next.fetch_add(1);
      if (m >= spec.trajectories) return;
      try {
        results[m] = run_one(model, spec, grid, sample_steps, static_cast<std::uint32_t>(m));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = spec.trajectories;
        return;
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(spec.trajectories)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Merge in trajectory order.
  const std::size_t n = model.size();
  EnsembleSummary s;
  s.modes = n;
  s.trajectories = spec.trajectories;
  s.step = grid.h;
  s.sample_times = spec.sample_times;
  s.actions.assign(sample_steps.size(), std::vector<std::vector<double>>(n));
  s.probe_phases.resize(spec.phase_probes.size());
  s.probe_excluded.assign(spec.phase_probes.size(), 0);
  const std::size_t members = model.table().resonance_set.size();
  std::vector<std::vector<std::vector<double>>> res_phases(
      sample_steps.size(), std::vector<std::vector<double>>(spec.resonance_histogram_bins > 0 ? members : 0));
  std::vector<std::vector<double>> per_traj_avg(n);
  s.norm_exponent = model.config().noise.r;
  s.norm_mean.assign(sample_steps.size(), 0.0);
  s.moment_epsilon = spec.moment_epsilon;
  s.exp_moment.assign(sample_steps.size(), 0.0);
  s.trajectory_actions.resize(sample_steps.size());

  for (const auto& r : results) {
    if (r.aborted) {
      ++s.aborted;
      s.abort_log.push_back(r.abort_message);
      continue;
    }
    ++s.completed;
    s.norm_peak = std::max(s.norm_peak, r.norm_peak);
    for (std::size_t t = 0; t < r.norms.size(); ++t) {
      s.norm_mean[t] += r.norms[t];
      s.exp_moment[t] += std::exp(spec.moment_epsilon * r.mass[t]);
      s.trajectory_actions[t].push_back(r.actions[t]);
    }
    for (std::size_t t = 0; t < r.actions.size(); ++t)
      for (std::size_t k = 0; k < n; ++k) s.actions[t][k].push_back(r.actions[t][k]);
    for (std::size_t p = 0; p < r.phases.size(); ++p) {
      s.probe_phases[p].insert(s.probe_phases[p].end(), r.phases[p].begin(), r.phases[p].end());
      s.probe_excluded[p] += r.excluded[p];
    }
    for (std::size_t t = 0; t < r.resonance_phases.size(); ++t)
      for (std::size_t j = 0; j < members; ++j) res_phases[t][j].push_back(r.resonance_phases[t][j]);
    if (r.time_samples > 0) {
      s.time_samples_per_trajectory = r.time_samples;
      s.trajectory_time_averages.push_back(r.time_average);
      for (std::size_t k = 0; k < n; ++k) per_traj_avg[k].push_back(r.time_average[k]);
    }
  }

  if (s.completed > 0)
    for (std::size_t t = 0; t < sample_steps.size(); ++t) {
      s.norm_mean[t] /= static_cast<double>(s.completed);
      s.exp_moment[t] /= static_cast<double>(s.completed);
    }

  s.action_mean.assign(sample_steps.size(), std::vector<double>(n, 0.0));
  s.action_variance.assign(sample_steps.size(), std::vector<double>(n, 0.0));
  for (std::size_t t = 0; t < sample_steps.size(); ++t) {
    for (std::size_t k = 0; k < n; ++k) {
      auto& sample = s.actions[t][k];
      const auto m = sample_moments(sample);
      s.action_mean[t][k] = m.mean;
      s.action_variance[t][k] = m.variance;
      std::sort(sample.begin(), sample.end());
    }
  }
  if (spec.resonance_histogram_bins > 0) {
    s.resonance_histograms.resize(sample_steps.size());
    for (std::size_t t = 0; t < sample_steps.size(); ++t)
      for (std::size_t j = 0; j < members; ++j)
        s.resonance_histograms[t].push_back(circular_histogram(res_phases[t][j], spec.resonance_histogram_bins));
  }
  if (spec.average_from >= 0.0) {
    s.time_average.assign(n, 0.0);
    s.time_average_stderr.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto m = sample_moments(per_traj_avg[k]);
      s.time_average[k] = m.mean;
      s.time_average_stderr[k] = m.mean_stderr;
    }
  }
  return s;
}

}  // namespace resavg

#pragma once

#include "resavg/dynamics/steppers.hpp"
#include "resavg/lattice/resonance_vector.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace resavg {

// Noise domains. Full-equation runs in a sweep use kSweepDomainBase + i for
// the i-th nu so that no two ensembles ever share draws.
inline constexpr std::uint32_t kPlainDomain = 0;
inline constexpr std::uint32_t kReferenceDomain = 1;
inline constexpr std::uint32_t kSweepDomainBase = 2;

// Samples with some relevant action below this are left out of phase laws.
inline constexpr double kPhaseExclusionThreshold = 1e-10;

struct EnsembleSpec {
  Scheme scheme = Scheme::kEffective;
  std::size_t trajectories = 2;
  std::vector<double> sample_times;  // snapshot times of the action laws
  ComplexVec initial;                // empty means v(0) = 0
  std::uint32_t domain = kPlainDomain;

  // Phase probes: s . phi mod 2 pi recorded at every `phase_stride`-th step
  // with tau >= phase_window_start, pooled over the window and trajectories.
  std::vector<ResonanceVector> phase_probes;
  double phase_window_start = 0.0;
  std::size_t phase_stride = 1;

  // Time averages of the actions over tau >= average_from (disabled if < 0),
  // sampled every `average_stride`-th step.
  double average_from = -1.0;
  std::size_t average_stride = 1;

  // Circular histograms of the resonance-set phases Phi_j at the sample times.
  std::size_t resonance_histogram_bins = 0;

  // Exponential moment E exp(eps |v|^2) reported at the sample times.
  double moment_epsilon = 0.1;

  unsigned threads = 1;
};

struct EnsembleSummary {
  std::size_t modes = 0;
  std::size_t trajectories = 0;
  std::size_t completed = 0;
  std::size_t aborted = 0;
  std::vector<std::string> abort_log;
  double step = 0.0;
  std::vector<double> sample_times;

  // [time][mode]: sorted sample of I_k over completed trajectories.
  std::vector<std::vector<std::vector<double>>> actions;
  std::vector<std::vector<double>> action_mean;
  std::vector<std::vector<double>> action_variance;
  // [time][completed trajectory][mode]: unsorted, for joint laws.
  std::vector<std::vector<std::vector<double>>> trajectory_actions;

  // [probe]: pooled samples in trajectory order; excluded near-locus count.
  std::vector<std::vector<double>> probe_phases;
  std::vector<std::size_t> probe_excluded;

  // [time][member][bin].
  std::vector<std::vector<std::vector<double>>> resonance_histograms;

  // Per mode: mean over trajectories of the time-averaged action and its
  // standard error (trajectories are independent).
  std::vector<double> time_average;
  std::vector<double> time_average_stderr;
  std::vector<std::vector<double>> trajectory_time_averages;  // [completed trajectory][mode]
  std::size_t time_samples_per_trajectory = 0;

  // Runtime norm monitor for the h^r norm, r = noise.r: mean over completed
  // trajectories at each sample time, and the largest value seen at any step.
  int norm_exponent = 0;
  std::vector<double> norm_mean;
  double norm_peak = 0.0;
  double moment_epsilon = 0.0;
  std::vector<double> exp_moment;  // [time], raw, no bound asserted
};

// M independent trajectories with noise substream (seed, trajectory, domain).
// The result depends only on (model, spec), never on the thread count.
EnsembleSummary run_ensemble(const Model& model, const EnsembleSpec& spec);

}  // namespace resavg

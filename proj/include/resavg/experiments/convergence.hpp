#pragma once

#include "resavg/experiments/ensemble.hpp"

#include <span>
#include <vector>

namespace resavg {

struct ModeDistance {
  std::size_t k = 0;  // 0-based mode index
  double ks = 0.0;    // mean over sample times
  double w1 = 0.0;
};

struct PairDistance {
  std::size_t k1 = 0, k2 = 0;  // 0-based
  double ks = 0.0;             // joint KS of (I_k1, I_k2), mean over sample times
};

// Mode pairs (0,1), (1,2), ... checked jointly in addition to the marginals.
inline constexpr std::size_t kJointPairs = 3;

struct NuResult {
  double nu = 0.0;
  std::vector<ModeDistance> per_mode;
  std::vector<PairDistance> joint;
  double aggregate_ks = 0.0;  // mean over modes
  double aggregate_w1 = 0.0;
  std::size_t aborted = 0;
  std::vector<double> norm_mean;  // h^r norm at the sample times
  double norm_peak = 0.0;
  std::vector<double> exp_moment;
};

struct ConvergenceReport {
  std::vector<NuResult> per_nu;
  std::size_t reference_aborted = 0;
  int norm_exponent = 0;
  std::vector<double> reference_norm_mean;
  double reference_norm_peak = 0.0;
  std::vector<double> reference_exp_moment;
  double moment_epsilon = 0.0;
  // Least-squares slope of the aggregate KS distance against log10(nu).
  double trend_slope = 0.0;
};

// Per-mode marginal distances between a full ensemble and a reference.
NuResult compare_ensembles(const EnsembleSummary& full, const EnsembleSummary& reference);

// For each nu: full-equation ensemble (domain kSweepDomainBase + i) against
// one effective reference ensemble (kReferenceDomain) at spec.sample_times.
// nu_list must be strictly decreasing.
ConvergenceReport convergence_sweep(const Model& base, const EnsembleSpec& spec,
                                    std::span<const double> nu_list);

}  // namespace resavg

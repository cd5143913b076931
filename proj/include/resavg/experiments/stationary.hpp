#pragma once

#include "resavg/common/rational.hpp"
#include "resavg/dynamics/sim_config.hpp"
#include "resavg/experiments/ensemble.hpp"
#include "resavg/lattice/resonance_module.hpp"

#include <span>
#include <string>
#include <vector>

namespace resavg {

// Weights alpha of a quadratic integral 1/2 sum alpha_j |v_j|^2.
struct AlphaChoice {
  enum class Kind { kMass, kEnergy, kDual } kind = Kind::kMass;
  std::size_t dual = 0;  // 0-based index into the dual vectors

  std::string name() const;  // "mass", "energy", "dual:<1-based>"
};

AlphaChoice parse_alpha(const std::string& text);

// Exact weights: 1, lambda, or the dual vector eta.
std::vector<Rational> alpha_weights(const AlphaChoice& choice, const ModeBasis& basis,
                                    const ResonanceModule& module);

// alpha = 1, or alpha . s = 0 for every member of the resonance set.
bool is_admissible(std::span<const Rational> alpha, std::span<const ResonanceVector> set);

struct BalanceResult {
  std::string alpha_name;
  std::vector<double> alpha;
  double lhs = 0.0;         // 2 sum <I_j> gamma_j alpha_j
  double rhs = 0.0;         // sum b_j^2 alpha_j
  double rel_err = 0.0;     // |lhs - rhs| / |rhs|
  double lhs_stderr = 0.0;  // from the per-trajectory time averages
};

// Needs a summary with time averages. Throws std::invalid_argument for an
// inadmissible alpha.
BalanceResult stationary_balance(const EnsembleSummary& summary, const SimConfig& cfg,
                                 std::span<const Rational> alpha,
                                 std::span<const ResonanceVector> set,
                                 const std::string& name = "custom");

}  // namespace resavg

#include "resavg/experiments/stationary.hpp"

#include "resavg/experiments/statistics.hpp"

#include <cmath>
#include <stdexcept>

namespace resavg {

std::string AlphaChoice::name() const {
  switch (kind) {
    case Kind::kMass: return "mass";
    case Kind::kEnergy: return "energy";
    case Kind::kDual: return "dual:" + std::to_string(dual + 1);
  }
  return "?";
}

AlphaChoice parse_alpha(const std::string& text) {
  AlphaChoice c;
  if (text == "mass") return c;
  if (text == "energy") {
    c.kind = AlphaChoice::Kind::kEnergy;
    return c;
  }
  if (text.rfind("dual:", 0) == 0) {
    const std::string idx = text.substr(5);
    std::size_t used = 0;
    long long i = 0;
    try {
      i = std::stoll(idx, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != idx.size() || idx.empty() || i < 1)
      throw std::invalid_argument("bad dual index in '" + text + "'");
    c.kind = AlphaChoice::Kind::kDual;
    c.dual = static_cast<std::size_t>(i - 1);
    return c;
  }
  throw std::invalid_argument("alpha must be mass, energy or dual:<i>, got '" + text + "'");
}

std::vector<Rational> alpha_weights(const AlphaChoice& choice, const ModeBasis& basis,
                                    const ResonanceModule& module) {
  switch (choice.kind) {
    case AlphaChoice::Kind::kMass: return std::vector<Rational>(basis.size(), Rational(1));
    case AlphaChoice::Kind::kEnergy: return basis.freqs();
    case AlphaChoice::Kind::kDual: {
      if (choice.dual >= module.eta.size())
        throw std::invalid_argument("dual index " + std::to_string(choice.dual + 1) +
                                    " out of range (" + std::to_string(module.eta.size()) +
                                    " dual vectors)");
      std::vector<Rational> w(basis.size(), Rational(0));
      const auto& eta = module.eta[choice.dual];
      for (std::size_t k = 0; k < eta.size(); ++k) w[k] = Rational(eta[k]);
      return w;
    }
  }
  return {};
}

bool is_admissible(std::span<const Rational> alpha, std::span<const ResonanceVector> set) {
  bool all_one = true;
  for (const auto& a : alpha) all_one = all_one && a == Rational(1);
  if (all_one) return true;
  for (const auto& s : set) {
    Rational dot(0);
    for (const auto& [l, c] : s.entries) {
      if (static_cast<std::size_t>(l) >= alpha.size()) return false;
      dot += Rational(c) * alpha[static_cast<std::size_t>(l)];
    }
    if (!is_zero(dot)) return false;
  }
  return true;
}

BalanceResult stationary_balance(const EnsembleSummary& summary, const SimConfig& cfg,
                                 std::span<const Rational> alpha,
                                 std::span<const ResonanceVector> set, const std::string& name) {
  if (alpha.size() != summary.modes) throw std::invalid_argument("alpha has wrong length");
  if (summary.time_average.size() != summary.modes)
    throw std::invalid_argument("summary carries no time averages");
  if (!is_admissible(alpha, set))
    throw std::invalid_argument("alpha is not 1 and not orthogonal to the resonance set");
  BalanceResult r;
  r.alpha_name = name;
  std::vector<double> w(summary.modes);
  for (std::size_t j = 0; j < summary.modes; ++j) {
    const double a = to_double(alpha[j]);
    r.alpha.push_back(a);
    w[j] = 2.0 * cfg.gamma[j] * a;
    r.lhs += w[j] * summary.time_average[j];
    r.rhs += cfg.noise.amplitudes[j] * cfg.noise.amplitudes[j] * a;
  }
  std::vector<double> per_trajectory;
  for (const auto& avg : summary.trajectory_time_averages) {
    double x = 0.0;
    for (std::size_t j = 0; j < summary.modes; ++j) x += w[j] * avg[j];
    per_trajectory.push_back(x);
  }
  r.lhs_stderr = sample_moments(per_trajectory).mean_stderr;
  r.rel_err = r.rhs != 0.0 ? std::abs(r.lhs - r.rhs) / std::abs(r.rhs) : std::abs(r.lhs);
  return r;
}

}  // namespace resavg

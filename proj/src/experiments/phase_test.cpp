#include "resavg/experiments/phase_test.hpp"

#include "resavg/experiments/statistics.hpp"

#include <stdexcept>

namespace resavg {

Rational s_dot_lambda(const ResonanceVector& s, const ModeBasis& basis) {
  Rational acc(0);
  for (const auto& [l, c] : s.entries) {
    if (l < 0 || static_cast<std::size_t>(l) >= basis.size())
      throw std::invalid_argument("probe index outside the basis");
    acc += Rational(c) * basis.freqs()[static_cast<std::size_t>(l)];
  }
  return acc;
}

PhaseTestResult phase_contrast_test(std::span<const double> angles, const ResonanceVector& s,
                                    const ModeBasis& basis, double n_eff, double alpha) {
  if (s.empty()) throw std::invalid_argument("probe must be nonzero");
  PhaseTestResult r;
  r.s = s;
  r.s_dot_lambda = s_dot_lambda(s, basis);
  r.resonant = is_zero(r.s_dot_lambda);
  r.alpha = alpha;
  r.n_eff = n_eff;
  r.samples = angles.size();
  r.kuiper = kuiper_statistic(angles);
  r.threshold = kuiper_critical_value(alpha, n_eff);
  r.verdict = r.kuiper <= r.threshold ? "uniform" : "non-uniform";
  return r;
}

PhaseTestResult phase_equidistribution_test(std::span<const double> angles,
                                            const ResonanceVector& s, const ModeBasis& basis,
                                            double n_eff, double alpha) {
  if (is_zero(s_dot_lambda(s, basis)))
    throw std::invalid_argument("probe is resonant (s . Lambda = 0); use the contrast test");
  return phase_contrast_test(angles, s, basis, n_eff, alpha);
}

}  // namespace resavg

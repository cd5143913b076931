#include "resavg/lattice/resonance_set.hpp"

#include "resavg/common/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace resavg {

double l1_ball_size(std::size_t n, int m) {
  // sum_t C(n,t) 2^t C(m,t): choose t support positions, signs, and a
  // composition of at most m into t positive parts.
  double total = 0.0;
  double cn = 1.0;
  double cm = 1.0;
  double pow2 = 1.0;
  for (int t = 1; t <= m && static_cast<std::size_t>(t) <= n; ++t) {
    cn = cn * static_cast<double>(n - static_cast<std::size_t>(t) + 1) / t;
    cm = cm * static_cast<double>(m - t + 1) / t;
    pow2 *= 2.0;
    total += cn * pow2 * cm;
  }
  return total;
}

std::vector<ResonanceVector> enumerate_resonances(std::span<const std::int64_t> weights,
                                                  int order_m, std::size_t limit) {
  if (order_m < 1) throw std::invalid_argument("order_m must be >= 1");
  if (l1_ball_size(weights.size(), order_m) > static_cast<double>(limit)) {
    throw ResourceGuardError("resonance candidate count exceeds limit " + std::to_string(limit));
  }
  std::vector<ResonanceVector> out;
  for_each_l1_bounded(weights.size(), order_m, [&](const ResonanceVector& s) {
    if (s.dot(weights) == 0) out.push_back(s);
  });
  std::sort(out.begin(), out.end(), resonance_order_less);
  return out;
}

std::vector<ResonanceVector> enumerate_resonance_set(const ModeBasis& basis, int order_m,
                                                     std::size_t n, std::size_t limit) {
  if (n > basis.size()) throw std::invalid_argument("n exceeds the mode count");
  const auto& w = basis.sq_norms();
  return enumerate_resonances(std::span<const std::int64_t>(w.data(), n), order_m, limit);
}

std::size_t ResonanceTable::J_of_N(std::size_t N) const {
  const auto it = std::partition_point(resonance_set.begin(), resonance_set.end(),
                                       [N](const ResonanceVector& s) {
                                         return static_cast<std::size_t>(s.ceil()) + 1 <= N;
                                       });
  return static_cast<std::size_t>(it - resonance_set.begin());
}

ResonanceTable build_resonance_table(const ModeBasis& basis, int qstar,
                                     std::optional<std::size_t> set_modes,
                                     std::size_t tuple_ceiling, std::size_t candidate_limit) {
  ResonanceTable table;
  table.qstar = qstar;
  table.order_m = 2 * qstar + 2;
  table.tuples = enumerate_interaction_tuples(basis, qstar, tuple_ceiling);
  table.set_modes = set_modes.value_or(basis.size());
  table.resonance_set =
      enumerate_resonance_set(basis, table.order_m, table.set_modes, candidate_limit);
  return table;
}

}  // namespace resavg

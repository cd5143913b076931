#include "resavg/lattice/resonance_vector.hpp"

#include <cstdlib>

namespace resavg {

ResonanceVector ResonanceVector::from_dense(std::span<const std::int64_t> dense) {
  ResonanceVector s;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) s.entries.emplace_back(static_cast<int>(i), dense[i]);
  }
  return s;
}

std::int64_t ResonanceVector::l1_norm() const {
  std::int64_t total = 0;
  for (const auto& [i, c] : entries) total += std::llabs(c);
  return total;
}

std::vector<int> ResonanceVector::support() const {
  std::vector<int> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.first);
  return out;
}

std::vector<std::int64_t> ResonanceVector::dense(std::size_t n) const {
  std::vector<std::int64_t> out(n, 0);
  for (const auto& [i, c] : entries) {
    if (static_cast<std::size_t>(i) < n) out[static_cast<std::size_t>(i)] = c;
  }
  return out;
}

std::int64_t ResonanceVector::dot(std::span<const std::int64_t> weights) const {
  std::int64_t total = 0;
  for (const auto& [i, c] : entries) total += c * weights[static_cast<std::size_t>(i)];
  return total;
}

double ResonanceVector::dot(std::span<const double> x) const {
  double total = 0.0;
  for (const auto& [i, c] : entries) total += static_cast<double>(c) * x[static_cast<std::size_t>(i)];
  return total;
}

ResonanceVector ResonanceVector::negated() const {
  ResonanceVector out = *this;
  for (auto& e : out.entries) e.second = -e.second;
  return out;
}

bool resonance_order_less(const ResonanceVector& a, const ResonanceVector& b) {
  if (a.ceil() != b.ceil()) return a.ceil() < b.ceil();
  // Dense lexicographic comparison without materialising the vectors.
  std::size_t ia = 0;
  std::size_t ib = 0;
  while (ia < a.entries.size() || ib < b.entries.size()) {
    const int pa = ia < a.entries.size() ? a.entries[ia].first : INT32_MAX;
    const int pb = ib < b.entries.size() ? b.entries[ib].first : INT32_MAX;
    const int p = pa < pb ? pa : pb;
    const std::int64_t va = pa == p ? a.entries[ia].second : 0;
    const std::int64_t vb = pb == p ? b.entries[ib].second : 0;
    if (va != vb) return va < vb;
    if (pa == p) ++ia;
    if (pb == p) ++ib;
  }
  return false;
}

}  // namespace resavg

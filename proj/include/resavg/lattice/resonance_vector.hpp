#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace resavg {

// Sparse integer vector s over mode indices (0-based), entries sorted by index
// and never zero.
struct ResonanceVector {
  std::vector<std::pair<int, std::int64_t>> entries;

  static ResonanceVector from_dense(std::span<const std::int64_t> dense);

  std::int64_t l1_norm() const;
  std::vector<int> support() const;
  // Largest supported index, or -1 for the zero vector.
  int ceil() const { return entries.empty() ? -1 : entries.back().first; }
  bool empty() const { return entries.empty(); }

  std::vector<std::int64_t> dense(std::size_t n) const;
  // Exact s . w for integer weights indexed like the modes.
  std::int64_t dot(std::span<const std::int64_t> weights) const;
  double dot(std::span<const double> x) const;

  ResonanceVector negated() const;

  friend bool operator==(const ResonanceVector&, const ResonanceVector&) = default;
};

// Ordering used for resonance sets: by ceil, then lexicographic on the dense
// representation.
bool resonance_order_less(const ResonanceVector& a, const ResonanceVector& b);

}  // namespace resavg

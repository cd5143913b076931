#pragma once

#include "resavg/lattice/mode_basis.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace resavg {

inline constexpr std::size_t kDefaultTupleCeiling = 50'000'000;

// Ordered interaction tuples (k_1..k_{q+1}; k_{q+2}..k_{2q+1}) -> k with
//   k_1 + ... + k_{q+1} - k_{q+2} - ... - k_{2q+1} - k = 0
//   |k_1|^2 + ... + |k_{q+1}|^2 - |k_{q+2}|^2 - ... - |k_{2q+1}|^2 - |k|^2 = 0
// grouped by output index. Legs are mode indices; the first q+1 legs enter
// unconjugated, the remaining q conjugated. Within an output the tuples are
// sorted lexicographically.
class TupleTable {
 public:
  TupleTable() = default;
  TupleTable(int qstar, std::vector<std::vector<int>> legs_by_output)
      : qstar_(qstar), legs_(std::move(legs_by_output)) {}

  int qstar() const { return qstar_; }
  std::size_t arity() const { return 2 * static_cast<std::size_t>(qstar_) + 1; }
  std::size_t outputs() const { return legs_.size(); }
  std::size_t count(std::size_t k) const { return legs_[k].size() / arity(); }
  std::size_t total() const;

  std::span<const int> tuple(std::size_t k, std::size_t t) const {
    return {legs_[k].data() + t * arity(), arity()};
  }
  // Flattened legs for output k, stride arity().
  const std::vector<int>& legs(std::size_t k) const { return legs_[k]; }

 private:
  int qstar_ = 0;
  std::vector<std::vector<int>> legs_;
};

// Meet-in-the-middle index over the unconjugated half (q+1 legs), keyed by
// (momentum sum, |k|^2 sum). Lets callers enumerate one output at a time
// when the whole table would not fit in memory. The basis must outlive it.
class TupleEnumerator {
 public:
  TupleEnumerator(const ModeBasis& basis, int qstar, std::size_t ceiling = kDefaultTupleCeiling);

  int qstar() const { return qstar_; }
  // Flattened, lexicographically sorted legs of every tuple with output k.
  std::vector<int> output_legs(std::size_t k, std::size_t ceiling = kDefaultTupleCeiling) const;

 private:
  const ModeBasis* basis_;
  int qstar_;
  std::vector<std::int64_t> left_keys_;  // sorted
  std::vector<int> left_legs_;           // stride q+1, aligned with left_keys_
};

// Meet-in-the-middle enumeration over (momentum, |k|^2) half-sums. For
// qstar = 0 every output carries the single diagonal tuple (k) -> k, which is
// the linear term |u|^0 u = u. Throws ResourceGuardError once the half-sum
// table or the stored tuple count would exceed `ceiling`.
TupleTable enumerate_interaction_tuples(const ModeBasis& basis, int qstar,
                                        std::size_t ceiling = kDefaultTupleCeiling);

}  // namespace resavg

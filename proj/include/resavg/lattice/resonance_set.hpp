#pragma once

#include "resavg/lattice/interaction_tuples.hpp"
#include "resavg/lattice/mode_basis.hpp"
#include "resavg/lattice/resonance_vector.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace resavg {

inline constexpr std::size_t kDefaultCandidateLimit = 100'000'000;

// Upper bound on the number of nonzero s in Z^n with |s|_1 <= m.
double l1_ball_size(std::size_t n, int m);

// Visits every nonzero integer vector s on n coordinates with |s|_1 <= m, as
// a sparse entry list. Support indices are chosen in increasing order, so
// each vector is seen exactly once.
template <typename F>
void for_each_l1_bounded(std::size_t n, int m, F&& visit) {
  ResonanceVector s;
  auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
    for (std::size_t i = start; i < n; ++i) {
      for (int c = 1; c <= remaining; ++c) {
        for (int sign : {1, -1}) {
          s.entries.emplace_back(static_cast<int>(i), sign * c);
          visit(static_cast<const ResonanceVector&>(s));
          if (remaining - c > 0) self(self, i + 1, remaining - c);
          s.entries.pop_back();
        }
      }
    }
  };
  rec(rec, 0, m);
}

// All nonzero s on the first n coordinates with |s|_1 <= order_m and
// sum_j s_j w_j = 0, sorted by (ceil, dense lexicographic).
std::vector<ResonanceVector> enumerate_resonances(std::span<const std::int64_t> weights,
                                                  int order_m,
                                                  std::size_t limit = kDefaultCandidateLimit);

// Resonances of the basis frequencies restricted to the first n modes. The
// test Lambda . s = 0 runs on the integers |k|^2.
std::vector<ResonanceVector> enumerate_resonance_set(const ModeBasis& basis, int order_m,
                                                     std::size_t n,
                                                     std::size_t limit = kDefaultCandidateLimit);

// Interaction tuples and the order-(2q+2) resonance set of one truncation.
struct ResonanceTable {
  int qstar = 0;
  int order_m = 2;
  TupleTable tuples;
  std::vector<ResonanceVector> resonance_set;
  std::size_t set_modes = 0;  // n the resonance set was computed on

  // Number of leading resonance-set members supported on the first N modes,
  // i.e. J(N) with 1-based N.
  std::size_t J_of_N(std::size_t N) const;
};

// set_modes defaults to the whole basis.
ResonanceTable build_resonance_table(const ModeBasis& basis, int qstar,
                                     std::optional<std::size_t> set_modes = std::nullopt,
                                     std::size_t tuple_ceiling = kDefaultTupleCeiling,
                                     std::size_t candidate_limit = kDefaultCandidateLimit);

}  // namespace resavg

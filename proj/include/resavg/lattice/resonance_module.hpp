#pragma once

#include "resavg/common/rational.hpp"
#include "resavg/lattice/int_matrix.hpp"
#include "resavg/lattice/resonance_vector.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace resavg {

// Integer structure of the span of a set of resonance vectors in Z^n.
//
// zeta[0..r) is an integer basis of span(generators) ∩ Z^n; the completion R
// has these as its first r columns and det R = ±1. eta[0..n-r) are the rows
// r..n-1 of R^{-1}, i.e. eta^j = (R^T)^{-1} e^j for j > r, an integer basis of
// the orthogonal complement of the generators.
//
// The zeta lattice may be finer than the Z-span of the generators; only the
// rational span is guaranteed to agree.
struct ResonanceModule {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::vector<ResonanceVector> generators;
  std::vector<std::vector<std::int64_t>> zeta;
  IntMatrix completion;
  IntMatrix completion_inverse;
  std::vector<std::vector<std::int64_t>> eta;
};

// Computes the module via two column-style Hermite reductions: the first
// yields a saturated integer kernel basis (the eta directions), the second
// recovers the saturated lattice orthogonal to that kernel together with a
// unimodular completion. Throws std::logic_error if the exact inverse check
// fails.
ResonanceModule resonance_module_basis(std::span<const ResonanceVector> generators, std::size_t n);

// Smallest nonzero |s . W| over integer s with |s|_1 <= m; nullopt when every
// such s gives zero.
std::optional<Rational> kappa(std::span<const Rational> W, int m,
                              std::size_t limit = 100'000'000);

}  // namespace resavg

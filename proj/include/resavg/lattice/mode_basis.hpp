#pragma once

#include "resavg/common/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace resavg {

// Wavevector k in Z^d.
using Wavevector = std::vector<int>;

inline constexpr std::size_t kDefaultModeLimit = 20000;

// Galerkin basis of Fourier modes |k|_inf <= kmax on the torus of period
// 2*pi*L, ordered by |k|^2 ascending with lexicographic ties, so the k = 0
// mode comes first and frequencies are non-decreasing.
//
// Indices are 0-based in the C++ API. External formats (JSON, CSV, CLI) use
// 1-based mode indices.
class ModeBasis {
 public:
  ModeBasis() = default;

  int dim() const { return dim_; }
  int kmax() const { return kmax_; }
  const Rational& period() const { return period_; }
  std::size_t size() const { return modes_.size(); }

  const std::vector<Wavevector>& modes() const { return modes_; }
  const Wavevector& mode(std::size_t j) const { return modes_[j]; }

  // lambda_j = |k_j|^2 / L^2, exact.
  const std::vector<Rational>& freqs() const { return freqs_; }
  // |k_j|^2 as an integer; resonance tests compare these directly since the
  // common factor 1/L^2 cancels.
  const std::vector<std::int64_t>& sq_norms() const { return sq_norms_; }
  const std::vector<double>& lambdas() const { return lambdas_; }

  std::optional<std::size_t> index_of(const Wavevector& k) const;

  // Fast lookup for callers that already know |k_i| <= kmax componentwise.
  // Returns -1 for vectors outside the cutoff.
  int index_of_unchecked(const int* k) const;

  friend ModeBasis build_mode_basis(int dim, int kmax, const Rational& period,
                                    std::size_t mode_limit);

 private:
  int dim_ = 0;
  int kmax_ = 0;
  Rational period_{1};
  std::vector<Wavevector> modes_;
  std::vector<Rational> freqs_;
  std::vector<std::int64_t> sq_norms_;
  std::vector<double> lambdas_;
  std::vector<int> lookup_;  // flat box index -> mode index
};

// Throws std::invalid_argument for dim outside {1,2,3}, kmax < 1 or a
// non-positive period; ResourceGuardError if (2 kmax + 1)^dim > mode_limit.
ModeBasis build_mode_basis(int dim, int kmax, const Rational& period = Rational(1),
                           std::size_t mode_limit = kDefaultModeLimit);

}  // namespace resavg

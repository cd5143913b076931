#pragma once

#include "resavg/lattice/mode_basis.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace resavg {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

inline constexpr std::size_t kDefaultGridLimit = std::size_t{1} << 24;

// Evaluates F(|u|^{2q} u) restricted to the basis, where u(x) = sum_k v_k
// e^{i k.x/L}, on a collocation grid of (2q+2) kmax + 1 points per dimension.
// That grid is large enough that no product of 2q+2 basis modes aliases onto
// a retained mode, so the result equals the momentum-delta convolution
// exactly (up to roundoff).
//
// The object is immutable after construction; apply() may be called from
// many threads at once.
class PseudospectralNonlinearity {
 public:
  PseudospectralNonlinearity(const ModeBasis& basis, int qstar,
                             std::size_t grid_limit = kDefaultGridLimit);
  ~PseudospectralNonlinearity();
  PseudospectralNonlinearity(const PseudospectralNonlinearity&) = delete;
  PseudospectralNonlinearity& operator=(const PseudospectralNonlinearity&) = delete;

  int qstar() const { return qstar_; }
  int grid_points() const { return grid_; }
  std::size_t grid_size() const { return total_; }

  // out_k = sum over momentum-delta tuples of v_{k1}..v_{k_{q+1}} conj(v..).
  void convolve(std::span<const Complex> v, std::span<Complex> out) const;

  // Grid mean of |u|^{2q+2}, which equals the full (2q+2)-fold momentum sum.
  double mean_power(std::span<const Complex> v) const;

 private:
  void to_grid(std::span<const Complex> v, std::vector<Complex>& grid) const;

  int qstar_;
  int dim_;
  int grid_;
  std::size_t total_;
  std::vector<std::size_t> slot_;  // mode index -> flat grid index
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace resavg

#include "resavg/lattice/mode_basis.hpp"

#include "resavg/common/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace resavg {

std::optional<std::size_t> ModeBasis::index_of(const Wavevector& k) const {
  if (static_cast<int>(k.size()) != dim_) return std::nullopt;
  for (int c : k) {
    if (c < -kmax_ || c > kmax_) return std::nullopt;
  }
  const int j = index_of_unchecked(k.data());
  if (j < 0) return std::nullopt;
  return static_cast<std::size_t>(j);
}

int ModeBasis::index_of_unchecked(const int* k) const {
  const int side = 2 * kmax_ + 1;
  int flat = 0;
  for (int i = 0; i < dim_; ++i) {
    const int c = k[i];
    if (c < -kmax_ || c > kmax_) return -1;
    flat = flat * side + (c + kmax_);
  }
  return lookup_[static_cast<std::size_t>(flat)];
}

ModeBasis build_mode_basis(int dim, int kmax, const Rational& period, std::size_t mode_limit) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be 1, 2 or 3");
  if (kmax < 1) throw std::invalid_argument("kmax must be >= 1");
  if (period.numerator() <= 0) throw std::invalid_argument("period must be positive");

  const std::size_t side = 2 * static_cast<std::size_t>(kmax) + 1;
  std::size_t count = 1;
  for (int i = 0; i < dim; ++i) {
    count *= side;
    if (count > mode_limit) {
      throw ResourceGuardError("mode count (2*kmax+1)^dim exceeds limit " +
                               std::to_string(mode_limit));
    }
  }

  ModeBasis basis;
  basis.dim_ = dim;
  basis.kmax_ = kmax;
  basis.period_ = period;

  std::vector<Wavevector> all;
  all.reserve(count);
  Wavevector k(static_cast<std::size_t>(dim), -kmax);
  for (std::size_t n = 0; n < count; ++n) {
    all.push_back(k);
    for (int i = dim - 1; i >= 0; --i) {
      if (++k[static_cast<std::size_t>(i)] <= kmax) break;
      k[static_cast<std::size_t>(i)] = -kmax;
    }
  }
  auto sq = [](const Wavevector& w) {
    std::int64_t s = 0;
    for (int c : w) s += static_cast<std::int64_t>(c) * c;
    return s;
  };
  std::stable_sort(all.begin(), all.end(), [&](const Wavevector& a, const Wavevector& b) {
    const auto sa = sq(a);
    const auto sb = sq(b);
    if (sa != sb) return sa < sb;
    return a < b;
  });

  const Rational inv_l2 = Rational(1) / (period * period);
  basis.lookup_.assign(count, -1);
  for (std::size_t j = 0; j < all.size(); ++j) {
    const auto s = sq(all[j]);
    basis.sq_norms_.push_back(s);
    basis.freqs_.push_back(Rational(s) * inv_l2);
    basis.lambdas_.push_back(to_double(basis.freqs_.back()));
    std::size_t flat = 0;
    for (int c : all[j]) flat = flat * side + static_cast<std::size_t>(c + kmax);
    basis.lookup_[flat] = static_cast<int>(j);
  }
  basis.modes_ = std::move(all);
  return basis;
}

}  // namespace resavg

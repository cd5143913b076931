#include "resavg/lattice/interaction_tuples.hpp"

#include "resavg/common/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace resavg {

std::size_t TupleTable::total() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < legs_.size(); ++k) n += count(k);
  return n;
}

namespace {

// Packs (momentum sum, squared-norm sum) into one integer key. Each momentum
// component of a sum of at most `terms` modes lies in [-terms*kmax, terms*kmax].
class KeyPacker {
 public:
  KeyPacker(int dim, int kmax, int terms) : dim_(dim) {
    span_ = 2 * static_cast<std::int64_t>(terms) * kmax + 1;
    offset_ = static_cast<std::int64_t>(terms) * kmax;
    sq_span_ = static_cast<std::int64_t>(terms) * dim * kmax * kmax + 1;
  }

  std::int64_t pack(const std::int64_t* momentum, std::int64_t sq) const {
    std::int64_t key = sq;
    for (int i = 0; i < dim_; ++i) key = key * span_ + (momentum[i] + offset_);
    return key;
  }

  bool in_range(const std::int64_t* momentum, std::int64_t sq) const {
    if (sq < 0 || sq >= sq_span_) return false;
    for (int i = 0; i < dim_; ++i) {
      if (momentum[i] < -offset_ || momentum[i] > offset_) return false;
    }
    return true;
  }

 private:
  int dim_;
  std::int64_t span_;
  std::int64_t offset_;
  std::int64_t sq_span_;
};

// Calls f(indices) for every ordered tuple of `len` mode indices.
template <typename F>
void for_each_ordered_tuple(std::size_t modes, std::size_t len, F&& f) {
  std::vector<int> idx(len, 0);
  if (len == 0) {
    f(idx);
    return;
  }
  while (true) {
    f(idx);
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (static_cast<std::size_t>(++idx[pos]) < modes) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
  }
}

double ipow(double base, std::size_t e) {
  double r = 1.0;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

TupleEnumerator::TupleEnumerator(const ModeBasis& basis, int qstar, std::size_t ceiling)
    : basis_(&basis), qstar_(qstar) {
  if (qstar < 0) throw std::invalid_argument("qstar must be >= 0");
  const std::size_t m = basis.size();
  const int dim = basis.dim();
  const std::size_t left_len = static_cast<std::size_t>(qstar) + 1;

  if (ipow(static_cast<double>(m), left_len) > static_cast<double>(ceiling)) {
    throw ResourceGuardError("interaction tuple half-sum table would exceed ceiling " +
                             std::to_string(ceiling));
  }

  const KeyPacker packer(dim, basis.kmax(), static_cast<int>(left_len));
  const auto& modes = basis.modes();
  const auto& sq = basis.sq_norms();

  // Left half: unconjugated legs keyed by their sums.
  left_keys_.reserve(static_cast<std::size_t>(ipow(static_cast<double>(m), left_len)));
  std::vector<std::pair<std::int64_t, std::uint32_t>> keyed;
  std::vector<int> legs;
  std::vector<std::int64_t> mom(static_cast<std::size_t>(dim));
  for_each_ordered_tuple(m, left_len, [&](const std::vector<int>& idx) {
    std::fill(mom.begin(), mom.end(), 0);
    std::int64_t s = 0;
    for (int j : idx) {
      for (int i = 0; i < dim; ++i) mom[static_cast<std::size_t>(i)] += modes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      s += sq[static_cast<std::size_t>(j)];
    }
    keyed.emplace_back(packer.pack(mom.data(), s), static_cast<std::uint32_t>(keyed.size()));
    legs.insert(legs.end(), idx.begin(), idx.end());
  });
  std::sort(keyed.begin(), keyed.end());
  left_legs_.reserve(legs.size());
  for (const auto& [key, id] : keyed) {
    left_keys_.push_back(key);
    const int* l = legs.data() + static_cast<std::size_t>(id) * left_len;
    left_legs_.insert(left_legs_.end(), l, l + left_len);
  }
}

std::vector<int> TupleEnumerator::output_legs(std::size_t k, std::size_t ceiling) const {
  const ModeBasis& basis = *basis_;
  const std::size_t m = basis.size();
  const int dim = basis.dim();
  const std::size_t q = static_cast<std::size_t>(qstar_);
  const std::size_t left_len = q + 1;
  const std::size_t arity = 2 * q + 1;
  const KeyPacker packer(dim, basis.kmax(), static_cast<int>(left_len));
  const auto& modes = basis.modes();
  const auto& sq = basis.sq_norms();
  std::vector<std::int64_t> mom(static_cast<std::size_t>(dim));

  // Right half: conjugated legs plus the output mode must reproduce the key.
  std::vector<int> out;
  for_each_ordered_tuple(m, q, [&](const std::vector<int>& idx) {
    for (int i = 0; i < dim; ++i) mom[static_cast<std::size_t>(i)] = modes[k][static_cast<std::size_t>(i)];
    std::int64_t s = sq[k];
    for (int j : idx) {
      for (int i = 0; i < dim; ++i) mom[static_cast<std::size_t>(i)] += modes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      s += sq[static_cast<std::size_t>(j)];
    }
    if (!packer.in_range(mom.data(), s)) return;
    const std::int64_t key = packer.pack(mom.data(), s);
    auto lo = std::lower_bound(left_keys_.begin(), left_keys_.end(), key);
    for (; lo != left_keys_.end() && *lo == key; ++lo) {
      const auto pos = static_cast<std::size_t>(lo - left_keys_.begin());
      const int* l = left_legs_.data() + pos * left_len;
      out.insert(out.end(), l, l + left_len);
      out.insert(out.end(), idx.begin(), idx.end());
      if (out.size() / arity > ceiling) {
        throw ResourceGuardError("interaction tuple count exceeds ceiling " +
                                 std::to_string(ceiling));
      }
    }
  });

  // Lexicographic order of tuples within the output. When the tuple fits in
  // one base-m integer, sorting those is much cheaper than comparing ranges.
  const std::size_t n = out.size() / arity;
  if (ipow(static_cast<double>(m), arity) < 9.0e18) {
    std::vector<std::uint64_t> packed(n);
    for (std::size_t t = 0; t < n; ++t) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < arity; ++i) code = code * m + static_cast<std::uint64_t>(out[t * arity + i]);
      packed[t] = code;
    }
    std::sort(packed.begin(), packed.end());
    for (std::size_t t = 0; t < n; ++t) {
      std::uint64_t code = packed[t];
      for (std::size_t i = arity; i-- > 0;) {
        out[t * arity + i] = static_cast<int>(code % m);
        code /= m;
      }
    }
    return out;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t t = 0; t < n; ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(out.begin() + static_cast<std::ptrdiff_t>(a * arity),
                                        out.begin() + static_cast<std::ptrdiff_t>((a + 1) * arity),
                                        out.begin() + static_cast<std::ptrdiff_t>(b * arity),
                                        out.begin() + static_cast<std::ptrdiff_t>((b + 1) * arity));
  });
  std::vector<int> sorted;
  sorted.reserve(out.size());
  for (std::size_t t : order) {
    sorted.insert(sorted.end(), out.begin() + static_cast<std::ptrdiff_t>(t * arity),
                  out.begin() + static_cast<std::ptrdiff_t>((t + 1) * arity));
  }
  return sorted;
}

TupleTable enumerate_interaction_tuples(const ModeBasis& basis, int qstar, std::size_t ceiling) {
  const TupleEnumerator enumerator(basis, qstar, ceiling);
  const std::size_t arity = 2 * static_cast<std::size_t>(qstar) + 1;
  std::vector<std::vector<int>> by_output(basis.size());
  std::size_t stored = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    by_output[k] = enumerator.output_legs(k, ceiling - stored);
    stored += by_output[k].size() / arity;
  }
  return TupleTable(qstar, std::move(by_output));
}

}  // namespace resavg

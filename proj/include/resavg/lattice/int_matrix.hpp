#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace resavg {

// Dense row-major integer matrix. Arithmetic helpers below are overflow
// checked and throw ResourceGuardError rather than wrap.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  static IntMatrix identity(std::size_t n);

  std::int64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  std::vector<std::int64_t> column(std::size_t j) const;
  std::vector<std::int64_t> row(std::size_t i) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);

// Exact determinant by fraction-free (Bareiss) elimination.
std::int64_t determinant(const IntMatrix& m);

std::int64_t checked_add(std::int64_t x, std::int64_t y);
std::int64_t checked_mul(std::int64_t x, std::int64_t y);

}  // namespace resavg

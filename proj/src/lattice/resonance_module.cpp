#include "resavg/lattice/resonance_module.hpp"

#include "resavg/common/errors.hpp"
#include "resavg/lattice/resonance_set.hpp"

#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace resavg {
namespace {

// g = x*a + y*b with g = gcd(a, b) > 0.
std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_x = 1, x = 0;
  std::int64_t old_y = 0, y = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_x, x) = std::make_pair(x, checked_add(old_x, -checked_mul(q, x)));
    std::tie(old_y, y) = std::make_pair(y, checked_add(old_y, -checked_mul(q, y)));
  }
  if (old_r < 0) return {-old_r, -old_x, -old_y};
  return {old_r, old_x, old_y};
}

struct ColumnReduction {
  IntMatrix u;      // A * u has its columns [rank, n) equal to zero
  IntMatrix u_inv;
  std::size_t rank = 0;
};

// Unimodular column operations bringing A to lower echelon form.
ColumnReduction column_reduce(const IntMatrix& a) {
  const std::size_t n = a.cols;
  IntMatrix w = a;
  ColumnReduction red{IntMatrix::identity(n), IntMatrix::identity(n), 0};
  std::size_t p = 0;

  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    for (std::size_t i = 0; i < w.rows; ++i) std::swap(w(i, c1), w(i, c2));
    for (std::size_t i = 0; i < n; ++i) std::swap(red.u(i, c1), red.u(i, c2));
    for (std::size_t j = 0; j < n; ++j) std::swap(red.u_inv(c1, j), red.u_inv(c2, j));
  };
  // Columns (p, c) <- (x p + y c, -b/g p + a/g c); inverse acts on rows.
  auto combine = [&](std::size_t cp, std::size_t cc, std::int64_t x, std::int64_t y,
                     std::int64_t ag, std::int64_t bg) {
    auto apply_cols = [&](IntMatrix& m, std::size_t nrows) {
      for (std::size_t i = 0; i < nrows; ++i) {
        const auto vp = m(i, cp);
        const auto vc = m(i, cc);
        m(i, cp) = checked_add(checked_mul(x, vp), checked_mul(y, vc));
        m(i, cc) = checked_add(checked_mul(-bg, vp), checked_mul(ag, vc));
      }
    };
    apply_cols(w, w.rows);
    apply_cols(red.u, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto rp = red.u_inv(cp, j);
      const auto rc = red.u_inv(cc, j);
      red.u_inv(cp, j) = checked_add(checked_mul(ag, rp), checked_mul(bg, rc));
      red.u_inv(cc, j) = checked_add(checked_mul(-y, rp), checked_mul(x, rc));
    }
  };

  for (std::size_t i = 0; i < w.rows && p < n; ++i) {
    for (std::size_t c = p + 1; c < n; ++c) {
      const auto b = w(i, c);
      if (b == 0) continue;
      const auto av = w(i, p);
      if (av == 0) {
        swap_cols(p, c);
        continue;
      }
      const auto [g, x, y] = extended_gcd(av, b);
      combine(p, c, x, y, av / g, b / g);
    }
    if (w(i, p) != 0) ++p;
  }
  red.rank = p;
  return red;
}

}  // namespace

ResonanceModule resonance_module_basis(std::span<const ResonanceVector> generators, std::size_t n) {
  ResonanceModule mod;
  mod.n = n;
  mod.generators.assign(generators.begin(), generators.end());

  IntMatrix gen(generators.size(), n);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (const auto& [idx, c] : generators[i].entries) {
      if (static_cast<std::size_t>(idx) >= n) {
        throw std::invalid_argument("generator supported outside the first n coordinates");
      }
      gen(i, static_cast<std::size_t>(idx)) = c;
    }
  }

  // Integer kernel of the generator matrix: the last n - r columns of u.
  const auto first = column_reduce(gen);
  const std::size_t r = first.rank;
  IntMatrix kernel_rows(n - r, n);
  for (std::size_t t = 0; t < n - r; ++t) {
    for (std::size_t i = 0; i < n; ++i) kernel_rows(t, i) = first.u(i, r + t);
  }

  // Lattice orthogonal to the kernel: the last r columns of the second u.
  const auto second = column_reduce(kernel_rows);
  if (second.rank != n - r) throw std::logic_error("kernel basis lost rank");

  IntMatrix big_r(n, n);
  IntMatrix big_r_inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = col < r ? (n - r) + col : col - r;
    for (std::size_t i = 0; i < n; ++i) {
      big_r(i, col) = second.u(i, src);
      big_r_inv(col, i) = second.u_inv(src, i);
    }
    // First nonzero entry of each column positive.
    std::size_t lead = 0;
    while (lead < n && big_r(lead, col) == 0) ++lead;
    if (lead < n && big_r(lead, col) < 0) {
      for (std::size_t i = 0; i < n; ++i) {
        big_r(i, col) = -big_r(i, col);
        big_r_inv(col, i) = -big_r_inv(col, i);
      }
    }
  }

  if (multiply(big_r, big_r_inv) != IntMatrix::identity(n)) {
    throw std::logic_error("resonance module completion failed the exact inverse check");
  }
  const auto det = determinant(big_r);
  if (det != 1 && det != -1) {
    throw std::logic_error("resonance module completion is not unimodular (det " +
                           std::to_string(det) + ")");
  }

  mod.rank = r;
  for (std::size_t col = 0; col < r; ++col) mod.zeta.push_back(big_r.column(col));
  for (std::size_t row = r; row < n; ++row) mod.eta.push_back(big_r_inv.row(row));
  mod.completion = std::move(big_r);
  mod.completion_inverse = std::move(big_r_inv);
  return mod;
}

std::optional<Rational> kappa(std::span<const Rational> W, int m, std::size_t limit) {
  if (m < 1) throw std::invalid_argument("kappa needs m >= 1");
  if (l1_ball_size(W.size(), m) > static_cast<double>(limit)) {
    throw ResourceGuardError("kappa enumeration exceeds limit " + std::to_string(limit));
  }
  std::optional<Rational> best;
  for_each_l1_bounded(W.size(), m, [&](const ResonanceVector& s) {
    Rational dot(0);
    for (const auto& [i, c] : s.entries) dot += Rational(c) * W[static_cast<std::size_t>(i)];
    if (dot.numerator() == 0) return;
    const Rational a = dot.numerator() < 0 ? -dot : dot;
    if (!best || a < *best) best = a;
  });
  return best;
}

}  // namespace resavg

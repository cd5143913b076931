#pragma once

#include "resavg/common/rational.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace resavg {

// Finite sum  sum_{s,p} c_{s,p} I^p e^{i s.phi}  on n angle/action pairs,
// where I^p = prod_j I_j^{p_j}. Terms with equal (s, p) are merged.
class TrigPolynomial {
 public:
  using Key = std::pair<std::vector<std::int64_t>, std::vector<int>>;  // (s, p)

  explicit TrigPolynomial(std::size_t n = 0) : n_(n) {}

  std::size_t n() const { return n_; }
  const std::map<Key, std::complex<double>>& terms() const { return terms_; }

  // Adds c I^p e^{i s.phi}; p may be empty for a constant-in-I coefficient.
  void add(std::vector<std::int64_t> s, std::complex<double> c, std::vector<int> p = {});

  // max |s|_1 over nonzero terms (0 for the zero polynomial).
  std::int64_t degree() const;

  std::complex<double> evaluate(std::span<const double> actions, std::span<const double> angles) const;

  TrigPolynomial operator+(const TrigPolynomial& other) const;
  TrigPolynomial operator*(std::complex<double> scale) const;

 private:
  std::size_t n_;
  std::map<Key, std::complex<double>> terms_;
};

// Keeps the harmonics with s . Lambda = 0 verbatim and drops the rest.
// Throws std::invalid_argument if a term has |s|_1 > m or Lambda is shorter
// than the polynomial.
TrigPolynomial resonant_average_polynomial(const TrigPolynomial& poly,
                                           std::span<const Rational> lambda, int m);

}  // namespace resavg

#include "resavg/lattice/trig_polynomial.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace resavg {

void TrigPolynomial::add(std::vector<std::int64_t> s, std::complex<double> c, std::vector<int> p) {
  if (s.size() != n_) throw std::invalid_argument("harmonic has the wrong length");
  if (p.empty()) p.assign(n_, 0);
  if (p.size() != n_) throw std::invalid_argument("action exponent has the wrong length");
  auto& slot = terms_[Key{std::move(s), std::move(p)}];
  slot += c;
}

std::int64_t TrigPolynomial::degree() const {
  std::int64_t d = 0;
  for (const auto& [key, c] : terms_) {
    if (c == std::complex<double>(0.0)) continue;
    std::int64_t l1 = 0;
    for (auto v : key.first) l1 += std::llabs(v);
    d = std::max(d, l1);
  }
  return d;
}

std::complex<double> TrigPolynomial::evaluate(std::span<const double> actions,
                                              std::span<const double> angles) const {
  std::complex<double> total(0.0);
  for (const auto& [key, c] : terms_) {
    double phase = 0.0;
    double weight = 1.0;
    for (std::size_t j = 0; j < n_; ++j) {
      phase += static_cast<double>(key.first[j]) * angles[j];
      if (key.second[j] != 0) weight *= std::pow(actions[j], key.second[j]);
    }
    total += c * weight * std::polar(1.0, phase);
  }
  return total;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& other) const {
  if (other.n_ != n_) throw std::invalid_argument("polynomials on different tori");
  TrigPolynomial out = *this;
  for (const auto& [key, c] : other.terms_) out.terms_[key] += c;
  return out;
}

TrigPolynomial TrigPolynomial::operator*(std::complex<double> scale) const {
  TrigPolynomial out = *this;
  for (auto& [key, c] : out.terms_) c *= scale;
  return out;
}

TrigPolynomial resonant_average_polynomial(const TrigPolynomial& poly,
                                           std::span<const Rational> lambda, int m) {
  if (lambda.size() < poly.n()) throw std::invalid_argument("frequency vector too short");
  TrigPolynomial out(poly.n());
  for (const auto& [key, c] : poly.terms()) {
    std::int64_t l1 = 0;
    Rational dot(0);
    for (std::size_t j = 0; j < poly.n(); ++j) {
      l1 += std::llabs(key.first[j]);
      if (key.first[j] != 0) dot += Rational(key.first[j]) * lambda[j];
    }
    if (l1 > m) throw std::invalid_argument("term degree exceeds the averaging order");
    if (dot.numerator() == 0) out.add(key.first, c, key.second);
  }
  return out;
}

}  // namespace resavg

#include "resavg/dynamics/observables.hpp"

#include <cmath>
#include <numbers>

namespace resavg {

double action(Complex v) { return 0.5 * std::norm(v); }

double angle(Complex v) {
  if (v == Complex{}) return 0.0;
  return std::arg(v);
}

double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

Complex resonant_monomial(const ResonanceVector& s, std::span<const Complex> v) {
  Complex acc{1.0, 0.0};
  for (const auto& [l, c] : s.entries) {
    const Complex f = c > 0 ? v[l] : std::conj(v[l]);
    for (std::int64_t i = 0; i < std::abs(c); ++i) acc *= f;
  }
  return acc;
}

double phase_combination(const ResonanceVector& s, std::span<const double> phi) {
  double acc = 0.0;
  for (const auto& [l, c] : s.entries) acc += static_cast<double>(c) * phi[l];
  return wrap_angle(acc);
}

Observables observables(std::span<const Complex> v, std::span<const ResonanceVector> set) {
  Observables obs;
  obs.I.reserve(v.size());
  obs.phi.reserve(v.size());
  for (const auto& x : v) {
    obs.I.push_back(action(x));
    obs.phi.push_back(angle(x));
    obs.near_locus.push_back(obs.I.back() < kLocusThreshold);
  }
  for (const auto& s : set) {
    obs.V.push_back(resonant_monomial(s, v));
    obs.Phi.push_back(phase_combination(s, obs.phi));
    bool singular = false;
    for (const auto& e : s.entries) singular = singular || obs.near_locus[e.first];
    obs.Phi_singular.push_back(singular);
  }
  return obs;
}

}  // namespace resavg

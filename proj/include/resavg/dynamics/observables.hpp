#pragma once

#include "resavg/dynamics/nonlinearity.hpp"
#include "resavg/lattice/resonance_vector.hpp"

#include <span>
#include <vector>

namespace resavg {

// Actions below this count as lying on the locus where some I_k = 0.
inline constexpr double kLocusThreshold = 1e-14;

struct Observables {
  std::vector<double> I;       // |v_k|^2 / 2
  std::vector<double> phi;     // Arg v_k in (-pi, pi], 0 when v_k = 0
  std::vector<Complex> V;      // v^{s+} conj(v)^{s-} per resonance-set member
  std::vector<double> Phi;     // s . phi reduced to [0, 2 pi)
  std::vector<bool> near_locus;    // per mode: I_k < kLocusThreshold
  std::vector<bool> Phi_singular;  // per member: some supported mode near locus
};

double action(Complex v);
double angle(Complex v);
// Reduces x to [0, 2 pi).
double wrap_angle(double x);

// V^s(v) = prod_{s_l > 0} v_l^{s_l} prod_{s_l < 0} conj(v_l)^{-s_l}.
Complex resonant_monomial(const ResonanceVector& s, std::span<const Complex> v);
// s . phi mod 2 pi.
double phase_combination(const ResonanceVector& s, std::span<const double> phi);

Observables observables(std::span<const Complex> v, std::span<const ResonanceVector> set);

}  // namespace resavg

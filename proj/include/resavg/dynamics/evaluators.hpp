#pragma once

#include "resavg/dynamics/model.hpp"

#include <span>
#include <vector>

namespace resavg {

// Galerkin state: amplitudes in basis order and slow time tau.
struct ModeState {
  ComplexVec v;
  double tau = 0.0;
};

// P^0(v) = -i rho F(|u|^{2q} u), pseudospectral.
ComplexVec eval_nonlinearity_full(const Model& model, std::span<const Complex> v);

// Sum over the double-delta tuples of v_{k1}..v_{k_{q+1}} conj(v_{k_{q+2}}..).
void resonant_sum(const TupleTable& tuples, std::span<const Complex> v, std::span<Complex> out);

// R^0(v) = -i rho * resonant_sum.
ComplexVec eval_resonant_drift(const Model& model, std::span<const Complex> v);

// R(v) = -gamma v + R^0(v).
ComplexVec eval_effective_drift(const Model& model, std::span<const Complex> v);
void eval_effective_drift(const Model& model, std::span<const Complex> v, std::span<Complex> out);

struct Hamiltonians {
  double H = 0.0;      // -(1/(2q+2)) sum over momentum-delta tuples
  double H_res = 0.0;  // same sum restricted to the frequency delta
  double H0 = 0.0;     // 1/2 sum |v_j|^2
  double H2 = 0.0;     // 1/2 sum lambda_j |v_j|^2
};

// Sign convention: the nonlinear vector fields are i rho grad H with
// grad = 2 d/d(conj v), so R^0 = i rho grad H_res and P^0 = i rho grad H.
Hamiltonians eval_hamiltonians(const Model& model, std::span<const Complex> v);
double eval_H_res(const TupleTable& tuples, std::span<const Complex> v);

// v'_k = e^{i theta_k} v_k; theta may be longer than v.
ComplexVec rotate(std::span<const Complex> v, std::span<const double> theta);

// Per-mode drift of I_k = |v_k|^2 / 2 under the full equation:
// Re(conj(v_k) P_k(v)) + b_k^2 with P = -gamma v + P^0.
std::vector<double> action_sde_drift(const Model& model, std::span<const Complex> v);

// Weighted norm sqrt(sum (1 + lambda_j)^r |v_j|^2).
double hr_norm(const ModeBasis& basis, std::span<const Complex> v, int r);

}  // namespace resavg

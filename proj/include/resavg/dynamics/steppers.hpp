#pragma once

#include "resavg/dynamics/evaluators.hpp"
#include "resavg/dynamics/rng.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace resavg {

enum class Scheme { kFull, kEffective };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);  // "full" | "effective"

// Uniform step grid covering [0, horizon] with h <= max_step.
struct TimeGrid {
  double h = 0.0;
  std::uint64_t steps = 0;
  double time(std::uint64_t n) const { return static_cast<double>(n) * h; }
  // Nearest grid index of tau.
  std::uint64_t index_of(double tau) const;
};

TimeGrid make_time_grid(double horizon, double max_step);

// Step cap of a scheme under cfg: min(dt, nu/10) for the full equation, dt
// for the effective one.
double max_step(const SimConfig& cfg, Scheme scheme);

// Reusable buffers for the in-place steppers.
struct StepWorkspace {
  ComplexVec a, b;
  void resize(std::size_t n) {
    a.resize(n);
    b.resize(n);
  }
};

// Exponential Euler-Maruyama in the rotating frame:
//   v_k <- e^{-i lambda_k h / nu} (v_k + h P_k(v)) + b_k dbeta_k.
void advance_full(const Model& model, ComplexVec& v, double h, std::span<const Complex> dbeta,
                  StepWorkspace& work);

// Explicit midpoint on dv = R(v) dtau, then additive noise b_k dbeta_k.
void advance_effective(const Model& model, ComplexVec& v, double h,
                       std::span<const Complex> dbeta, StepWorkspace& work);

ModeState step_full(const ModeState& state, const Model& model, const WienerIncrement& noise);
ModeState step_effective(const ModeState& state, const Model& model, const WienerIncrement& noise);

// Throws BlowUpError if any amplitude is non-finite.
void check_finite(std::span<const Complex> v, double tau, long long step);

// Called with the global step index n and the state at time n h.
using StepObserver = std::function<void(std::uint64_t, const ModeState&)>;

// Advances state from grid index `from` to `to`. The increment driving step
// n -> n+1 is drawn at counter n, so splitting a run at any index and
// resuming reproduces it exactly. The observer sees every index in
// (from, to]; it is not called for `from`.
void integrate(const Model& model, Scheme scheme, const NoiseStream& stream, double h,
               ModeState& state, std::uint64_t from, std::uint64_t to,
               const StepObserver& observer = {});

}  // namespace resavg

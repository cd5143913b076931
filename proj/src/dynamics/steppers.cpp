#include "resavg/dynamics/steppers.hpp"

#include "resavg/common/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resavg {

std::string to_string(Scheme scheme) { return scheme == Scheme::kFull ? "full" : "effective"; }

Scheme parse_scheme(const std::string& name) {
  if (name == "full") return Scheme::kFull;
  if (name == "effective") return Scheme::kEffective;
  throw std::invalid_argument("unknown mode '" + name + "' (expected full or effective)");
}

std::uint64_t TimeGrid::index_of(double tau) const {
  if (tau <= 0.0) return 0;
  const auto n = static_cast<std::uint64_t>(std::llround(tau / h));
  return std::min(n, steps);
}

TimeGrid make_time_grid(double horizon, double max_step) {
  if (!(max_step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be non-negative");
  TimeGrid grid;
  if (horizon == 0.0) {
    grid.h = max_step;
    return grid;
  }
  grid.steps = static_cast<std::uint64_t>(std::ceil(horizon / max_step - 1e-9));
  grid.steps = std::max<std::uint64_t>(grid.steps, 1);
  grid.h = horizon / static_cast<double>(grid.steps);
  return grid;
}

double max_step(const SimConfig& cfg, Scheme scheme) {
  return scheme == Scheme::kFull ? cfg.full_step() : cfg.effective_step();
}

void advance_full(const Model& model, ComplexVec& v, double h, std::span<const Complex> dbeta,
                  StepWorkspace& work) {
  const auto& cfg = model.config();
  const double inv_nu = 1.0 / cfg.nu.value();
  const auto& lambda = model.basis().lambdas();
  const auto& b = cfg.noise.amplitudes;
  work.resize(v.size());
  model.nonlinearity().convolve(v, work.a);
  const Complex p0_scale{0.0, -cfg.rho};
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Complex p = p0_scale * work.a[k] - cfg.gamma[k] * v[k];
    v[k] = std::polar(1.0, -lambda[k] * h * inv_nu) * (v[k] + h * p) + b[k] * dbeta[k];
  }
}

void advance_effective(const Model& model, ComplexVec& v, double h,
                       std::span<const Complex> dbeta, StepWorkspace& work) {
  const auto& b = model.config().noise.amplitudes;
  work.resize(v.size());
  eval_effective_drift(model, v, work.a);
  for (std::size_t k = 0; k < v.size(); ++k) work.b[k] = v[k] + 0.5 * h * work.a[k];
  eval_effective_drift(model, work.b, work.a);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += h * work.a[k] + b[k] * dbeta[k];
}

ModeState step_full(const ModeState& state, const Model& model, const WienerIncrement& noise) {
  ModeState next = state;
  StepWorkspace work;
  advance_full(model, next.v, noise.h, noise.dbeta, work);
  next.tau += noise.h;
  check_finite(next.v, next.tau, -1);
  return next;
}

ModeState step_effective(const ModeState& state, const Model& model, const WienerIncrement& noise) {
  ModeState next = state;
  StepWorkspace work;
  advance_effective(model, next.v, noise.h, noise.dbeta, work);
  next.tau += noise.h;
  check_finite(next.v, next.tau, -1);
  return next;
}

void check_finite(std::span<const Complex> v, double tau, long long step) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag()))
      throw BlowUpError("non-finite amplitude in mode " + std::to_string(k + 1) +
                            " at tau = " + std::to_string(tau),
                        tau, step);
  }
}

void integrate(const Model& model, Scheme scheme, const NoiseStream& stream, double h,
               ModeState& state, std::uint64_t from, std::uint64_t to,
               const StepObserver& observer) {
  if (state.v.size() != model.size()) throw std::invalid_argument("state size does not match basis");
  const bool noisy = std::any_of(model.config().noise.amplitudes.begin(),
                                 model.config().noise.amplitudes.end(),
                                 [](double b) { return b != 0.0; });
  ComplexVec dbeta(state.v.size());
  StepWorkspace work;
  for (std::uint64_t n = from; n < to; ++n) {
    if (noisy) draw_increments(stream, n, h, dbeta);
    if (scheme == Scheme::kFull)
      advance_full(model, state.v, h, dbeta, work);
    else
      advance_effective(model, state.v, h, dbeta, work);
    state.tau = static_cast<double>(n + 1) * h;
    check_finite(state.v, state.tau, static_cast<long long>(n + 1));
    if (observer) observer(n + 1, state);
  }
}

}  // namespace resavg

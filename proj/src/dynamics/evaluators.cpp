#include "resavg/dynamics/evaluators.hpp"

#include <cmath>
#include <stdexcept>

namespace resavg {

namespace {

void check_size(const Model& model, std::span<const Complex> v) {
  if (v.size() != model.size()) throw std::invalid_argument("state size does not match basis");
}

constexpr Complex kMinusI{0.0, -1.0};

}  // namespace

ComplexVec eval_nonlinearity_full(const Model& model, std::span<const Complex> v) {
  check_size(model, v);
  ComplexVec out(v.size());
  model.nonlinearity().convolve(v, out);
  const Complex scale = kMinusI * model.config().rho;
  for (auto& x : out) x *= scale;
  return out;
}

void resonant_sum(const TupleTable& tuples, std::span<const Complex> v, std::span<Complex> out) {
  if (tuples.outputs() != v.size() || out.size() != v.size())
    throw std::invalid_argument("state size does not match resonance table");
  const std::size_t arity = tuples.arity();
  const std::size_t plain = static_cast<std::size_t>(tuples.qstar()) + 1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto& legs = tuples.legs(k);
    Complex acc{};
    for (std::size_t t = 0; t < legs.size(); t += arity) {
      Complex term = v[legs[t]];
      for (std::size_t i = 1; i < plain; ++i) term *= v[legs[t + i]];
      for (std::size_t i = plain; i < arity; ++i) term *= std::conj(v[legs[t + i]]);
      acc += term;
    }
    out[k] = acc;
  }
}

ComplexVec eval_resonant_drift(const Model& model, std::span<const Complex> v) {
  check_size(model, v);
  ComplexVec out(v.size());
  resonant_sum(model.table().tuples, v, out);
  const Complex scale = kMinusI * model.config().rho;
  for (auto& x : out) x *= scale;
  return out;
}

void eval_effective_drift(const Model& model, std::span<const Complex> v, std::span<Complex> out) {
  check_size(model, v);
  resonant_sum(model.table().tuples, v, out);
  const Complex scale = kMinusI * model.config().rho;
  const auto& gamma = model.config().gamma;
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = scale * out[k] - gamma[k] * v[k];
}

ComplexVec eval_effective_drift(const Model& model, std::span<const Complex> v) {
  ComplexVec out(v.size());
  eval_effective_drift(model, v, out);
  return out;
}

double eval_H_res(const TupleTable& tuples, std::span<const Complex> v) {
  ComplexVec sum(v.size());
  resonant_sum(tuples, v, sum);
  double acc = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) acc += (std::conj(v[k]) * sum[k]).real();
  return -acc / (2.0 * tuples.qstar() + 2.0);
}

Hamiltonians eval_hamiltonians(const Model& model, std::span<const Complex> v) {
  check_size(model, v);
  Hamiltonians h;
  const double order = 2.0 * model.config().qstar + 2.0;
  h.H = -model.nonlinearity().mean_power(v) / order;
  h.H_res = eval_H_res(model.table().tuples, v);
  const auto& lambda = model.basis().lambdas();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double a = std::norm(v[k]);
    h.H0 += 0.5 * a;
    h.H2 += 0.5 * lambda[k] * a;
  }
  return h;
}

ComplexVec rotate(std::span<const Complex> v, std::span<const double> theta) {
  if (theta.size() < v.size()) throw std::invalid_argument("rotation vector too short");
  ComplexVec out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::polar(1.0, theta[k]) * v[k];
  return out;
}

std::vector<double> action_sde_drift(const Model& model, std::span<const Complex> v) {
  const ComplexVec p0 = eval_nonlinearity_full(model, v);
  const auto& gamma = model.config().gamma;
  const auto& b = model.config().noise.amplitudes;
  std::vector<double> drift(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Complex p = p0[k] - gamma[k] * v[k];
    drift[k] = (std::conj(v[k]) * p).real() + b[k] * b[k];
  }
  return drift;
}

double hr_norm(const ModeBasis& basis, std::span<const Complex> v, int r) {
  double acc = 0.0;
  const auto& lambda = basis.lambdas();
  for (std::size_t k = 0; k < v.size(); ++k) acc += std::pow(1.0 + lambda[k], r) * std::norm(v[k]);
  return std::sqrt(acc);
}

}  // namespace resavg

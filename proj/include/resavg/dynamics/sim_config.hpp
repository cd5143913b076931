#pragma once

#include "resavg/lattice/mode_basis.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace resavg {

// gamma_k = f(lambda_k) with f(t) = sum_i coefficients[i] t^i.
struct DampingProfile {
  std::string type = "affine";
  std::vector<double> coefficients{1.0, 1.0};  // f(t) = t + 1

  static DampingProfile affine(double c1, double c0);
  static DampingProfile polynomial(std::vector<double> ascending);
  double operator()(double t) const;
};

// Real noise amplitudes b_k = b0 (1 + lambda_k)^(-p).
struct NoiseModel {
  std::string profile = "power_law";
  double b0 = 1.0;
  double decay_p = 1.0;
  int r = 2;  // smoothness exponent used for B_r
  std::vector<double> amplitudes;
  double B_r = 0.0;  // 2 sum_k lambda_k^r b_k^2
};

// Smallest even integer >= ceil(dim/2) + 1, or `configured` if larger.
int smoothness_exponent(int dim, int configured = 0);

NoiseModel power_law_noise(const ModeBasis& basis, double b0, double decay_p, int r_configured = 0);

struct SimConfig {
  std::optional<double> nu;  // absent for the nu-free effective dynamics
  double rho = 1.0;
  int qstar = 1;
  DampingProfile damping;
  std::vector<double> gamma;  // per mode, gamma_k = damping(lambda_k)
  NoiseModel noise;
  double dt = 1e-3;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  std::string scheme = "default";

  // Step of the full (rotating-frame) scheme: min(dt, nu / 10).
  double full_step() const;
  double effective_step() const { return dt; }
};

// Fills gamma and the noise amplitudes for the basis.
SimConfig make_sim_config(const ModeBasis& basis, std::optional<double> nu, double rho, int qstar,
                          const DampingProfile& damping, double b0, double decay_p,
                          double dt, double horizon, std::uint64_t seed = 0, int r_configured = 0);

}  // namespace resavg

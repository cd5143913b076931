#include "resavg/dynamics/sim_config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resavg {

DampingProfile DampingProfile::affine(double c1, double c0) {
  DampingProfile p;
  p.type = "affine";
  p.coefficients = {c0, c1};
  return p;
}

DampingProfile DampingProfile::polynomial(std::vector<double> ascending) {
  DampingProfile p;
  p.type = "polynomial";
  p.coefficients = std::move(ascending);
  return p;
}

double DampingProfile::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
  return acc;
}

int smoothness_exponent(int dim, int configured) {
  int r = (dim + 1) / 2 + 1;
  if (r % 2 != 0) ++r;
  return std::max(r, configured);
}

NoiseModel power_law_noise(const ModeBasis& basis, double b0, double decay_p, int r_configured) {
  NoiseModel noise;
  noise.b0 = b0;
  noise.decay_p = decay_p;
  noise.r = smoothness_exponent(basis.dim(), r_configured);
  noise.amplitudes.reserve(basis.size());
  for (double lambda : basis.lambdas()) {
    const double b = b0 * std::pow(1.0 + lambda, -decay_p);
    noise.amplitudes.push_back(b);
    noise.B_r += 2.0 * std::pow(lambda, noise.r) * b * b;
  }
  return noise;
}

double SimConfig::full_step() const {
  if (!nu) throw std::logic_error("full dynamics need nu");
  return std::min(dt, *nu / 10.0);
}

SimConfig make_sim_config(const ModeBasis& basis, std::optional<double> nu, double rho, int qstar,
                          const DampingProfile& damping, double b0, double decay_p, double dt,
                          double horizon, std::uint64_t seed, int r_configured) {
  SimConfig cfg;
  cfg.nu = nu;
  cfg.rho = rho;
  cfg.qstar = qstar;
  cfg.damping = damping;
  for (double lambda : basis.lambdas()) cfg.gamma.push_back(damping(lambda));
  cfg.noise = power_law_noise(basis, b0, decay_p, r_configured);
  cfg.dt = dt;
  cfg.horizon = horizon;
  cfg.seed = seed;
  return cfg;
}

}  // namespace resavg

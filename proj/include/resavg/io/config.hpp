#pragma once

#include "resavg/common/rational.hpp"
#include "resavg/dynamics/sim_config.hpp"
#include "resavg/lattice/mode_basis.hpp"

#include "json.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace resavg {

// Parsed configuration document with every default filled in.
//
//   [model]       dim, kmax, period ("p/q"), qstar, rho
//   [damping]     type = affine (c1, c0: f(t) = c1 t + c0)
//                 type = polynomial (coefficients = "a0, a1, ...", ascending)
//   [noise]       profile = power_law, b0, decay_p, r (0 = automatic)
//   [integration] dt, horizon, nu (omit for the effective equation), scheme
//   [run]         seed, save_every
//   [initial]     type = zero | profile (amplitude, decay_p): real
//                 v_k(0) = amplitude (1 + lambda_k)^(-decay_p)
struct ConfigDocument {
  int dim = 1;
  int kmax = 4;
  Rational period{1};
  int qstar = 1;
  double rho = 1.0;

  DampingProfile damping;

  std::string noise_profile = "power_law";
  double b0 = 1.0;
  double decay_p = 1.0;
  int r = 0;

  double dt = 1e-3;
  double horizon = 1.0;
  std::optional<double> nu;
  std::string scheme = "default";

  std::uint64_t seed = 0;
  std::uint64_t save_every = 100;

  std::string initial_type = "zero";
  double initial_amplitude = 0.0;
  double initial_decay_p = 0.0;
};

// Throws ConfigError with the offending key path ("noise.b0: ...").
ConfigDocument parse_config(const std::string& text, const std::string& source = "<config>");
ConfigDocument load_config_document(const std::string& path);

// Canonical JSON form (sorted keys, all defaults explicit). Two documents
// with the same meaning serialize identically.
nlohmann::json canonical_json(const ConfigDocument& doc);
// SHA-256 of canonical_json(doc).dump(), hex encoded.
std::string config_digest(const ConfigDocument& doc);
// INI text that parses back to an equivalent document.
std::string to_ini(const ConfigDocument& doc);

// A validated configuration ready to run.
struct LoadedConfig {
  ConfigDocument doc;
  ModeBasis basis;
  SimConfig sim;
  std::string digest;
};

// Builds the basis and derived tables and checks the standing positivity
// assumptions (gamma_k > 0, b_k != 0) on every mode.
LoadedConfig realize_config(const ConfigDocument& doc);
LoadedConfig load_config(const std::string& path);

// Initial amplitudes described by the [initial] section.
std::vector<std::complex<double>> initial_state(const ConfigDocument& doc, const ModeBasis& basis);

}  // namespace resavg

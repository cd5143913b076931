#pragma once

#include "resavg/dynamics/evaluators.hpp"
#include "resavg/dynamics/rng.hpp"
#include "resavg/experiments/convergence.hpp"
#include "resavg/experiments/phase_test.hpp"
#include "resavg/experiments/stationary.hpp"
#include "resavg/lattice/resonance_module.hpp"
#include "resavg/lattice/resonance_set.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace resavg {

inline constexpr const char* kVersion = "0.1.0";

// "k1:c1,k2:c2" with 1-based mode indices; entries are merged and sorted.
ResonanceVector parse_sparse_vector(const std::string& text, std::size_t modes);
std::string format_sparse_vector(const ResonanceVector& s);

nlohmann::json resonance_table_json(const ModeBasis& basis, const ResonanceTable& table,
                                    const ResonanceModule& module);

// tau, re_v1, im_v1, ..., re_vN, im_vN with %.17g.
class TrajectoryCsv {
 public:
  TrajectoryCsv(std::ostream& out, std::size_t modes, bool header = true);
  void row(double tau, std::span<const Complex> v);

 private:
  std::ostream& out_;
  std::size_t modes_;
};

struct Checkpoint {
  std::string config_digest;
  std::string scheme;
  double tau = 0.0;
  double h = 0.0;
  std::uint64_t step = 0;
  std::uint64_t total_steps = 0;
  ComplexVec v;
  std::string rng_algorithm = kRngAlgorithm;
  NoiseStream stream;
  std::uint64_t next_step = 0;  // counter of the next increment to draw
};

nlohmann::json to_json(const Checkpoint& c);
// Throws ConfigError on a malformed document or a foreign RNG algorithm.
Checkpoint checkpoint_from_json(const nlohmann::json& j);
void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const BalanceResult& b);
nlohmann::json to_json(const PhaseTestResult& p);

// Unscaled stationary spectrum: per-mode mean actions and their averages over
// shells of equal |k|^2.
nlohmann::json spectrum_json(const ModeBasis& basis, std::span<const double> mean_actions);

// The shared report layout. Sections that were not computed are null.
struct Report {
  std::string config_digest;
  std::optional<ConvergenceReport> convergence;
  std::optional<BalanceResult> balance;
  std::vector<PhaseTestResult> phases;
  nlohmann::json extra = nlohmann::json::object();  // merged under "details"
};

nlohmann::json to_json(const Report& r);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace resavg

#pragma once

#include "resavg/dynamics/nonlinearity.hpp"
#include "resavg/dynamics/sim_config.hpp"
#include "resavg/lattice/mode_basis.hpp"
#include "resavg/lattice/resonance_set.hpp"

#include <memory>

namespace resavg {

// Basis, resonance table and FFT evaluator of one truncation, shared by every
// trajectory, plus the physical parameters. Copies share the heavy parts.
class Model {
 public:
  Model(ModeBasis basis, SimConfig config);
  Model(std::shared_ptr<const ModeBasis> basis, std::shared_ptr<const ResonanceTable> table,
        std::shared_ptr<const PseudospectralNonlinearity> nonlinearity, SimConfig config);

  const ModeBasis& basis() const { return *basis_; }
  const ResonanceTable& table() const { return *table_; }
  const PseudospectralNonlinearity& nonlinearity() const { return *nonlinearity_; }
  const SimConfig& config() const { return config_; }
  std::size_t size() const { return basis_->size(); }

  // Same truncation and tables with different parameters. qstar must match.
  Model with_config(SimConfig config) const;

 private:
  std::shared_ptr<const ModeBasis> basis_;
  std::shared_ptr<const ResonanceTable> table_;
  std::shared_ptr<const PseudospectralNonlinearity> nonlinearity_;
  SimConfig config_;
};

}  // namespace resavg

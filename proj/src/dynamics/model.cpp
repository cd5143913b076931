#include "resavg/dynamics/model.hpp"

#include <stdexcept>

namespace resavg {

Model::Model(ModeBasis basis, SimConfig config) : config_(std::move(config)) {
  auto b = std::make_shared<const ModeBasis>(std::move(basis));
  table_ = std::make_shared<const ResonanceTable>(build_resonance_table(*b, config_.qstar));
  nonlinearity_ = std::make_shared<const PseudospectralNonlinearity>(*b, config_.qstar);
  basis_ = std::move(b);
  if (config_.gamma.size() != basis_->size() || config_.noise.amplitudes.size() != basis_->size())
    throw std::invalid_argument("config tables do not match the basis");
}

Model::Model(std::shared_ptr<const ModeBasis> basis, std::shared_ptr<const ResonanceTable> table,
             std::shared_ptr<const PseudospectralNonlinearity> nonlinearity, SimConfig config)
    : basis_(std::move(basis)),
      table_(std::move(table)),
      nonlinearity_(std::move(nonlinearity)),
      config_(std::move(config)) {
  if (table_->qstar != config_.qstar || nonlinearity_->qstar() != config_.qstar)
    throw std::invalid_argument("qstar of tables and config differ");
  if (table_->tuples.outputs() != basis_->size())
    throw std::invalid_argument("resonance table does not match the basis");
  if (config_.gamma.size() != basis_->size() || config_.noise.amplitudes.size() != basis_->size())
    throw std::invalid_argument("config tables do not match the basis");
}

Model Model::with_config(SimConfig config) const {
  return Model(basis_, table_, nonlinearity_, std::move(config));
}

}  // namespace resavg

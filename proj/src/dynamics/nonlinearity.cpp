#include "resavg/dynamics/nonlinearity.hpp"

#include "resavg/common/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace resavg {

namespace {
// The FFTW planner is not thread safe; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct PseudospectralNonlinearity::Plans {
  fftw_plan backward = nullptr;
  fftw_plan forward = nullptr;
};

PseudospectralNonlinearity::PseudospectralNonlinearity(const ModeBasis& basis, int qstar,
                                                       std::size_t grid_limit)
    : qstar_(qstar), dim_(basis.dim()), plans_(std::make_unique<Plans>()) {
  if (qstar < 0) throw std::invalid_argument("qstar must be >= 0");
  grid_ = (2 * qstar + 2) * basis.kmax() + 1;
  total_ = 1;
  for (int i = 0; i < dim_; ++i) {
    total_ *= static_cast<std::size_t>(grid_);
    if (total_ > grid_limit)
      throw ResourceGuardError("collocation grid exceeds " + std::to_string(grid_limit) +
                               " points");
  }

  slot_.reserve(basis.size());
  for (const auto& k : basis.modes()) {
    std::size_t flat = 0;
    for (int i = 0; i < dim_; ++i) {
      const int wrapped = ((k[i] % grid_) + grid_) % grid_;
      flat = flat * static_cast<std::size_t>(grid_) + static_cast<std::size_t>(wrapped);
    }
    slot_.push_back(flat);
  }

  std::vector<int> n(dim_, grid_);
  auto* scratch = fftw_alloc_complex(total_);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->backward = fftw_plan_dft(dim_, n.data(), scratch, scratch, FFTW_BACKWARD, flags);
  plans_->forward = fftw_plan_dft(dim_, n.data(), scratch, scratch, FFTW_FORWARD, flags);
  fftw_free(scratch);
  if (!plans_->backward || !plans_->forward) throw std::runtime_error("FFTW planning failed");
}

PseudospectralNonlinearity::~PseudospectralNonlinearity() {
  std::lock_guard lock(planner_mutex());
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
}

void PseudospectralNonlinearity::to_grid(std::span<const Complex> v,
                                         std::vector<Complex>& grid) const {
  if (v.size() != slot_.size()) throw std::invalid_argument("state size does not match basis");
  grid.assign(total_, Complex{});
  for (std::size_t j = 0; j < v.size(); ++j) grid[slot_[j]] = v[j];
  auto* data = reinterpret_cast<fftw_complex*>(grid.data());
  fftw_execute_dft(plans_->backward, data, data);
}

void PseudospectralNonlinearity::convolve(std::span<const Complex> v,
                                          std::span<Complex> out) const {
  std::vector<Complex> grid;
  to_grid(v, grid);
  for (auto& u : grid) {
    const double a = std::norm(u);
    double w = 1.0;
    for (int i = 0; i < qstar_; ++i) w *= a;
    u *= w;
  }
  auto* data = reinterpret_cast<fftw_complex*>(grid.data());
  fftw_execute_dft(plans_->forward, data, data);
  const double inv = 1.0 / static_cast<double>(total_);
  for (std::size_t j = 0; j < slot_.size(); ++j) out[j] = grid[slot_[j]] * inv;
}

double PseudospectralNonlinearity::mean_power(std::span<const Complex> v) const {
  std::vector<Complex> grid;
  to_grid(v, grid);
  double acc = 0.0;
  for (const auto& u : grid) {
    const double a = std::norm(u);
    double w = a;
    for (int i = 0; i < qstar_; ++i) w *= a;
    acc += w;
  }
  return acc / static_cast<double>(total_);
}

}  // namespace resavg

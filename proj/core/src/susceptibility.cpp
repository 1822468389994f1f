#include "slowlight/susceptibility.hpp"

#include <cmath>

#include "slowlight/errors.hpp"

namespace slowlight {

Susceptibility::Susceptibility(FrequencyGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw GridError("susceptibility: value count does not match grid");
}

Susceptibility Susceptibility::zeros(const FrequencyGrid& grid) {
  return Susceptibility(grid, std::vector<Complex>(grid.size()));
}

Complex Susceptibility::at(double omega) const {
  const double pos = omega / grid_.d_omega() + static_cast<double>(grid_.zero_index());
  if (pos < 0.0 || pos > static_cast<double>(grid_.size() - 1)) return {};
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= grid_.size()) return values_.back();
  const double f = pos - static_cast<double>(lo);
  return values_[lo] + f * (values_[lo + 1] - values_[lo]);
}

Susceptibility Susceptibility::resampled(const FrequencyGrid& grid) const {
  std::vector<Complex> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = at(grid.detuning(k));
  return Susceptibility(grid, std::move(out));
}

Susceptibility Susceptibility::scaled(double factor) const {
  std::vector<Complex> out(values_);
  for (auto& v : out) v *= factor;
  return Susceptibility(grid_, std::move(out));
}

std::vector<double> Susceptibility::real_part() const {
  std::vector<double> out(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) out[k] = values_[k].real();
  return out;
}

std::vector<double> Susceptibility::imag_part() const {
  std::vector<double> out(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) out[k] = values_[k].imag();
  return out;
}

}  // namespace slowlight

#pragma once

#include <vector>

#include "slowlight/spectral.hpp"

namespace slowlight {

// Complex linear susceptibility χ(ω) sampled on a detuning grid. Im χ ≥ 0 is
// absorption; the field transfer over length L is exp(i·k₀L·χ/2).
class Susceptibility {
 public:
  Susceptibility(FrequencyGrid grid, std::vector<Complex> values);
  static Susceptibility zeros(const FrequencyGrid& grid);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  const std::vector<Complex>& values() const noexcept { return values_; }

  // Linear interpolation; zero outside the grid.
  Complex at(double omega) const;
  Susceptibility resampled(const FrequencyGrid& grid) const;
  Susceptibility scaled(double factor) const;

  std::vector<double> real_part() const;
  std::vector<double> imag_part() const;

 private:
  FrequencyGrid grid_;
  std::vector<Complex> values_;
};

}  // namespace slowlight

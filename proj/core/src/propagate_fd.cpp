#include "slowlight/propagate_fd.hpp"

#include <algorithm>
#include <cmath>

#include "slowlight/analysis.hpp"
#include "slowlight/errors.hpp"

namespace slowlight {

TransferFunction TransferFunction::identity(const FrequencyGrid& grid) {
  return {grid, std::vector<Complex>(grid.size(), Complex(1.0, 0.0))};
}

double TransferFunction::max_gain() const {
  double m = 0.0;
  for (const auto& h : values) m = std::max(m, std::abs(h));
  return m;
}

TransferFunction transfer_function(const Susceptibility& chi, double k0_per_mm, double length_mm,
                                   bool include_vacuum_transit) {
  if (!(k0_per_mm > 0.0)) throw DomainError("transfer function: k0 must be positive");
  if (!(length_mm >= 0.0)) throw DomainError("transfer function: length must be non-negative");
  const auto& grid = chi.grid();
  const Complex factor(0.0, 0.5 * k0_per_mm * length_mm);
  TransferFunction h{grid, std::vector<Complex>(grid.size())};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Complex exponent = factor * chi.values()[k];
    if (include_vacuum_transit) exponent += Complex(0.0, grid.detuning(k) * length_mm / kSpeedOfLightMmPerPs);
    h.values[k] = std::exp(exponent);
  }
  return h;
}

TransferFunction compose(const TransferFunction& first, const TransferFunction& second) {
  if (!first.grid.matches(second.grid)) throw GridError("compose: transfer functions live on different grids");
  TransferFunction out{first.grid, first.values};
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] *= second.values[k];
  return out;
}

ComplexEnvelope propagate(const ComplexEnvelope& env, const TransferFunction& h) {
  if (!env.grid().conjugate().matches(h.grid)) {
    throw GridError("propagate: transfer function grid is not conjugate to the envelope grid");
  }
  SpectralEnvelope spec = forward_transform(env);
  for (std::size_t k = 0; k < h.values.size(); ++k) spec.samples()[k] *= h.values[k];
  return inverse_transform(spec);
}

SpectraPair output_spectra(const ComplexEnvelope& env, const TransferFunction& h) {
  if (!env.grid().conjugate().matches(h.grid)) {
    throw GridError("output spectra: transfer function grid is not conjugate to the envelope grid");
  }
  SpectralEnvelope off = forward_transform(env);
  SpectralEnvelope on = off;
  for (std::size_t k = 0; k < h.values.size(); ++k) on.samples()[k] *= h.values[k];
  return {std::move(off), std::move(on)};
}

std::vector<ScanPoint> fd_delay_scan(const Susceptibility& unit_chi, std::span<const double> intensities,
                                     const ComplexEnvelope& input, double k0_per_mm, double length_mm) {
  std::vector<ScanPoint> out;
  out.reserve(intensities.size());
  for (double intensity : intensities) {
    if (!(intensity >= 0.0)) throw DomainError("scan: control intensities must be non-negative");
  }
  for (double intensity : intensities) {
    const auto h = transfer_function(unit_chi.scaled(intensity), k0_per_mm, length_mm);
    const auto output = propagate(input, h);
    out.push_back({intensity, centroid_delay(input, output), energy_loss_db(input, output)});
  }
  return out;
}

}  // namespace slowlight

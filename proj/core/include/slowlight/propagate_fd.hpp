#pragma once

// Linear frequency-domain propagation: Ẽ_out(ω) = H(ω)·Ẽ_in(ω) with
// H = exp(i·k₀L·χ(ω)/2), optionally times the vacuum transit exp(iωL/c).

#include <span>
#include <vector>

#include "slowlight/spectral.hpp"
#include "slowlight/susceptibility.hpp"

namespace slowlight {

struct TransferFunction {
  FrequencyGrid grid;
  std::vector<Complex> values;

  static TransferFunction identity(const FrequencyGrid& grid);
  // max |H(ω)|
  double max_gain() const;
};

TransferFunction transfer_function(const Susceptibility& chi, double k0_per_mm, double length_mm,
                                   bool include_vacuum_transit = false);

// H₁·H₂ on a shared grid.
TransferFunction compose(const TransferFunction& first, const TransferFunction& second);

ComplexEnvelope propagate(const ComplexEnvelope& env, const TransferFunction& h);

struct SpectraPair {
  SpectralEnvelope off;  // input spectrum
  SpectralEnvelope on;   // H·input spectrum
};

SpectraPair output_spectra(const ComplexEnvelope& env, const TransferFunction& h);

struct ScanPoint {
  double control_intensity;
  double delay_ps;  // centroid shift relative to the input
  double loss_db;
};

// FD counterpart of the time-domain control scan: χ is linear in the
// control intensity, so each point propagates through exp(i·k₀L·I·χ₁/2) with
// χ₁ the susceptibility at unit intensity.
std::vector<ScanPoint> fd_delay_scan(const Susceptibility& unit_chi, std::span<const double> intensities,
                                     const ComplexEnvelope& input, double k0_per_mm, double length_mm);

}  // namespace slowlight

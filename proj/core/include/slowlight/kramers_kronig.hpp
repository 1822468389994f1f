#pragma once

// Dispersion from absorption: ingest a measured Raman absorption spectrum,
// convert it to optical depth on a detuning grid, and rebuild Re χ with a
// principal-value Hilbert transform.

#include <span>
#include <vector>

#include "slowlight/spectral.hpp"
#include "slowlight/susceptibility.hpp"

namespace slowlight {

// d(ω) = α(ω)L on a detuning grid around `center_wavelength_nm`.
//
// The support [support_begin, support_end) marks the samples backed by data;
// outside it the depth is zero-filled. Edge-decay checks and tapering act on
// the support boundaries.
class OpticalDepthSpectrum {
 public:
  OpticalDepthSpectrum(FrequencyGrid grid, std::vector<double> depth, double center_wavelength_nm);
  OpticalDepthSpectrum(FrequencyGrid grid, std::vector<double> depth, double center_wavelength_nm,
                       std::size_t support_begin, std::size_t support_end);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& depth() const noexcept { return depth_; }
  double center_wavelength_nm() const noexcept { return center_wavelength_nm_; }
  std::size_t support_begin() const noexcept { return support_begin_; }
  std::size_t support_end() const noexcept { return support_end_; }
  double peak() const;

 private:
  FrequencyGrid grid_;
  std::vector<double> depth_;
  double center_wavelength_nm_;
  std::size_t support_begin_;
  std::size_t support_end_;
};

enum class SpectrumQuantity {
  absorption,     // fractional A = 1 − I_on/I_off
  optical_depth,  // d = −ln(I_on/I_off)
};

struct SpectralRecord {
  double wavelength_nm;
  double value;
};

// Maps λ → ν = c/λ, places ν − c/λ_center on the detuning axis, converts A to
// d = −ln(1 − A) and interpolates linearly onto `grid`; zero outside the
// measured range. Rejects A ∉ [0, 1), d < 0 and non-monotonic wavelengths.
OpticalDepthSpectrum ingest_absorption(std::span<const SpectralRecord> records, double center_wavelength_nm,
                                       const FrequencyGrid& grid,
                                       SpectrumQuantity quantity = SpectrumQuantity::absorption);

// d(ω) = k₀L·Im χ(ω) for an existing susceptibility.
OpticalDepthSpectrum depth_from_susceptibility(const Susceptibility& chi, double k0_per_mm, double length_mm,
                                               double center_wavelength_nm);

struct KramersKronigOptions {
  // Edge samples above this fraction of the peak depth count as truncated.
  double edge_tolerance = 0.01;
  // Taper truncated spectra to zero instead of refusing.
  bool force_taper = false;
  // Raised-cosine taper width per side, as a fraction of the support.
  double taper_fraction = 0.05;
};

// Re f(ω) = (1/π) PV ∫ g(ω')/(ω' − ω) dω' for samples g on a uniform grid of
// spacing dω: the dispersion partner of an absorption profile g = Im χ.
// Odd-point (Maclaurin) quadrature of the PV integral, evaluated as an FFT
// linear convolution.
std::vector<double> principal_value_transform(std::span<const double> imag_part);

// Im χ = d/(k₀L); Re χ from principal_value_transform. Throws
// TruncationRiskError when the depth at either support edge exceeds
// edge_tolerance of the peak unless force_taper is set.
Susceptibility kk_real_from_imag(const OpticalDepthSpectrum& depth, double k0_per_mm, double length_mm,
                                 const KramersKronigOptions& options = {});

// Central-difference slope of (k₀L/2)·Re χ at omega_eval, in ps.
double group_delay_from_susceptibility(const Susceptibility& chi, double k0_per_mm, double length_mm,
                                       double omega_eval);

}  // namespace slowlight

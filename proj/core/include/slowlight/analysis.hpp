#pragma once

// Experiment-facing metrics: intensity cross-correlation, first-moment
// delay, FWHM and deconvolution, absorption spectra, and the linearity check
// on delay-versus-control scans.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slowlight/spectral.hpp"

namespace slowlight {

struct CorrelationCurve {
  std::vector<double> delays;     // ps, uniform
  std::vector<double> intensity;  // ≥ 0
  bool normalized = false;

  CorrelationCurve normalized_to_peak() const;
};

// I_xc(τ) = ∫ I_sig(t)·I_ref(t − τ) dt on lags τ = m·dt, m ∈ [−n/2, n/2).
// Both envelopes must share a time grid.
CorrelationCurve cross_correlate(const ComplexEnvelope& signal, const ComplexEnvelope& reference);

struct MomentWindow {
  double lower;
  double upper;
};

// Normalised first moment of a curve, optionally restricted to a window.
double first_moment(const CorrelationCurve& curve, std::optional<MomentWindow> window = std::nullopt);

// ⟨τ⟩_on − ⟨τ⟩_off. The default integrates over the whole grid.
double first_moment_delay(const CorrelationCurve& on, const CorrelationCurve& off,
                          std::optional<MomentWindow> window = std::nullopt);

double fwhm(const CorrelationCurve& curve);
double fwhm(const ComplexEnvelope& env);

// √(τ_xc² − τ_ref²)
double deconvolve_duration(double xcorr_fwhm_ps, double reference_fwhm_ps);

struct AbsorptionSpectrum {
  std::vector<double> values;  // A = 1 − on/off; 0 where masked
  std::vector<bool> valid;     // false where off < floor·max(off)
};

AbsorptionSpectrum absorption_spectrum(std::span<const double> on, std::span<const double> off,
                                       double floor = 1e-6);

struct LinearityDiagnostic {
  double slope;           // least-squares line through the origin
  double residual_ratio;  // max |y − slope·x| / max |y|
};

LinearityDiagnostic linearity_diagnostic(std::span<const std::pair<double, double>> series);

// Intensity-centroid shift of `output` relative to `input`.
double centroid_delay(const ComplexEnvelope& input, const ComplexEnvelope& output);
// 10·log10(E_in/E_out)
double energy_loss_db(const ComplexEnvelope& input, const ComplexEnvelope& output);
// Time of the intensity maximum, refined by a parabola through the three
// highest samples. Diagnostic only; delays are reported as centroids.
double peak_time(const ComplexEnvelope& env);

}  // namespace slowlight

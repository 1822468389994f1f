#pragma once

// Maxwell-Bloch integration in the retarded frame τ = t − z/c. Each Raman
// line ν at detuning ω_ν carries a coherence driven by the two-photon product
// of control and signal; the signal is marched in z with explicit midpoint
// steps and the coherences are integrated along τ with an exponential
// integrator.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slowlight/medium.hpp"
#include "slowlight/propagate_fd.hpp"
#include "slowlight/spectral.hpp"

namespace slowlight {

// Control amplitude u(τ) relative to its peak; the medium's control
// intensity sets the absolute scale, so the instantaneous intensity is
// I·|u(τ)|².
class ControlField {
 public:
  static ControlField constant();
  // Gaussian intensity profile of the given FWHM centred at `center_ps`.
  static ControlField gaussian(double fwhm_ps, const TimeGrid& grid, double center_ps = 0.0);
  // Flat-top intensity of full width `fwhm_ps` at half maximum with
  // raised-cosine edges of duration `rise_ps` (10%–90% not implied).
  static ControlField flat_top(double fwhm_ps, const TimeGrid& grid, double rise_ps = 0.2,
                               double center_ps = 0.0);
  // Arbitrary envelope, rescaled to unit peak amplitude.
  static ControlField from_envelope(const ComplexEnvelope& env);

  bool is_constant() const noexcept { return !samples_.has_value(); }
  const std::optional<TimeGrid>& grid() const noexcept { return grid_; }
  Complex amplitude(std::size_t i) const { return samples_ ? (*samples_)[i] : Complex(1.0, 0.0); }
  // Span of |u|² above half maximum; infinite for constant control.
  double duration_ps() const;

 private:
  ControlField() = default;
  std::optional<TimeGrid> grid_;
  std::optional<std::vector<Complex>> samples_;
};

enum class Scheme { midpoint };

struct SolverSettings {
  std::size_t nz = 256;
  Scheme scheme = Scheme::midpoint;
  double coherence_warning = 0.1;
};

// Slowly varying coherences over τ at one propagation slice, one series per
// line in RamanMedium::lines() order. The lower line (−Δ/2) is Q₃₁ and the
// upper line (+Δ/2) is Q₂₁.
struct CoherenceState {
  std::vector<std::vector<Complex>> lines;

  const std::vector<Complex>& q31() const { return lines.at(0); }
  const std::vector<Complex>& q21() const { return lines.at(1); }
};

struct TdResult {
  ComplexEnvelope output;
  CoherenceState final_coherences;
  std::vector<std::string> warnings;
  double max_coherence = 0.0;
};

struct Resolution {
  std::size_t required_nz;
  double max_dt_ps;
};

// Smallest nz and largest dt the solver accepts for this medium.
Resolution required_resolution(const RamanMedium& medium);

// Throws ResolutionError (with the accepted settings) when nz < 16, the
// per-step phase reaches 0.1, or dt exceeds the accepted maximum.
void validate_settings(const RamanMedium& medium, const TimeGrid& grid, const SolverSettings& settings);

TdResult solve(const RamanMedium& medium, const ControlField& control, const ComplexEnvelope& input,
               const SolverSettings& settings = {});

// One solve per intensity; points run concurrently and share no mutable
// state. Delay is the intensity-centroid shift and loss the energy ratio in
// dB, both relative to the input.
std::vector<ScanPoint> delay_vs_control_scan(const RamanMedium& medium, const ControlField& control,
                                             std::span<const double> intensities, const ComplexEnvelope& input,
                                             const SolverSettings& settings = {});

}  // namespace slowlight

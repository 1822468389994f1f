#pragma once

// Time and frequency grids, complex envelopes, and the Fourier transform pair
// every other module is built on.
//
// Units: time in ps, detuning as an angular rate in 1/ps (rad/ps), length in
// mm. Transform convention, matching fields ∝ e^{i(ωt − kz)}:
//
//   Ẽ(ω) = ∫ E(t) e^{+iωt} dt,        E(t) = (1/2π) ∫ Ẽ(ω) e^{−iωt} dω
//
// so a spectral phase e^{+iωτ₀} delays the envelope by +τ₀.

#include <complex>
#include <cstddef>
#include <numbers>
#include <variant>
#include <vector>

namespace slowlight {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLightMmPerPs = 0.299792458;
inline constexpr double kSpeedOfLightNmPerPs = 2.99792458e5;

// Temporal intensity FWHM × spectral intensity FWHM (cyclic) for a
// transform-limited Gaussian: 2 ln2 / π.
inline constexpr double kGaussianTimeBandwidth = 2.0 * std::numbers::ln2 / std::numbers::pi;
// Same product for a rectangular spectrum (sinc² intensity).
inline constexpr double kFlatTopTimeBandwidth = 0.88589294137890468;

class FrequencyGrid {
 public:
  // n samples at ω_k = (k − n/2)·dω, so zero detuning is sample n/2.
  FrequencyGrid(double d_omega, std::size_t n);

  // Grid of n points covering [−half_span, half_span).
  static FrequencyGrid spanning(double half_span, std::size_t n);

  double d_omega() const noexcept { return d_omega_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t zero_index() const noexcept { return n_ / 2; }
  double detuning(std::size_t k) const noexcept {
    return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * d_omega_;
  }
  double min_detuning() const noexcept { return detuning(0); }
  double max_detuning() const noexcept { return detuning(n_ - 1); }
  std::vector<double> detunings() const;

  bool matches(const FrequencyGrid& other) const noexcept;

 private:
  double d_omega_;
  std::size_t n_;
};

class TimeGrid {
 public:
  // n must be a power of two and at least 8; dt > 0.
  TimeGrid(double t_start, double dt, std::size_t n);

  // t = 0 falls on sample n/2.
  static TimeGrid centered(double dt, std::size_t n);

  double t_start() const noexcept { return t_start_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return n_; }
  double span() const noexcept { return dt_ * static_cast<double>(n_); }
  double time(std::size_t i) const noexcept { return t_start_ + dt_ * static_cast<double>(i); }
  std::vector<double> times() const;

  // dω = 2π / (n·dt).
  FrequencyGrid conjugate() const;

  bool matches(const TimeGrid& other) const noexcept;

 private:
  double t_start_;
  double dt_;
  std::size_t n_;
};

class ComplexEnvelope {
 public:
  ComplexEnvelope(TimeGrid grid, std::vector<Complex> samples);
  static ComplexEnvelope zeros(const TimeGrid& grid);

  const TimeGrid& grid() const noexcept { return grid_; }
  const std::vector<Complex>& samples() const noexcept { return samples_; }
  std::vector<Complex>& samples() noexcept { return samples_; }

  // ∫|E|² dt
  double energy() const;
  std::vector<double> intensity() const;
  // Intensity-weighted mean time.
  double centroid() const;

 private:
  TimeGrid grid_;
  std::vector<Complex> samples_;
};

class SpectralEnvelope {
 public:
  // `t_start` is the start of the conjugate time grid; it fixes the phase
  // reference so that inverse_transform lands back on the same times.
  SpectralEnvelope(FrequencyGrid grid, double t_start, std::vector<Complex> samples);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  double t_start() const noexcept { return t_start_; }
  const std::vector<Complex>& samples() const noexcept { return samples_; }
  std::vector<Complex>& samples() noexcept { return samples_; }

  // (1/2π) ∫|Ẽ|² dω
  double energy() const;
  std::vector<double> intensity() const;
  TimeGrid time_grid() const;

 private:
  FrequencyGrid grid_;
  double t_start_;
  std::vector<Complex> samples_;
};

SpectralEnvelope forward_transform(const ComplexEnvelope& env);
ComplexEnvelope inverse_transform(const SpectralEnvelope& spec);

enum class PulseShape { gaussian, flat_top_spectrum };

// Spectral intensity FWHM in cyclic frequency, 1/ps (THz).
struct Bandwidth {
  double fwhm_invps;
};
// Transform-limited temporal intensity FWHM, ps.
struct Duration {
  double fwhm_ps;
};
using PulseWidth = std::variant<Bandwidth, Duration>;

struct PulseSpec {
  PulseShape shape = PulseShape::gaussian;
  PulseWidth width = Duration{1.0};
  // Quadratic spectral phase φ(ω) = gdd·ω²/2, ps².
  double gdd_ps2 = 0.0;
  // Flat-top only: width of the raised-cosine spectral roll-off as a fraction
  // of the bandwidth. The half-intensity points stay at ±bandwidth/2.
  double edge_fraction = 0.02;
};

// Cyclic spectral intensity FWHM implied by a PulseSpec (1/ps).
double spectral_fwhm(const PulseSpec& spec);
// Transform-limited temporal intensity FWHM implied by a PulseSpec (ps).
double transform_limited_fwhm(const PulseSpec& spec);

// Unit-energy pulse centred at t = 0. Throws GridError when the
// transform-limited FWHM spans fewer than 16 samples or the spectrum does
// not fit below the grid's Nyquist detuning.
ComplexEnvelope synthesize_pulse(const PulseSpec& spec, const TimeGrid& grid);

// c·Δλ/λ₀², in 1/ps.
double wavelength_bandwidth_to_frequency(double lambda0_nm, double dlambda_nm);
// c/λ, in 1/ps.
double optical_frequency(double lambda_nm);

// Linear resampling onto another time grid; zero outside the source span.
ComplexEnvelope resample(const ComplexEnvelope& env, const TimeGrid& grid);

}  // namespace slowlight

#include "slowlight/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/sampling.hpp"

namespace slowlight {
namespace {

bool close(double a, double b, double rel = 1e-12) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

double sum_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

// e^{iω_k t₀} for every sample of the spectral grid.
std::vector<Complex> reference_phase(const FrequencyGrid& grid, double t_start, double sign) {
  std::vector<Complex> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out[k] = std::polar(1.0, sign * grid.detuning(k) * t_start);
  }
  return out;
}

}  // namespace

FrequencyGrid::FrequencyGrid(double d_omega, std::size_t n) : d_omega_(d_omega), n_(n) {
  if (!(d_omega > 0.0) || !std::isfinite(d_omega)) throw GridError("frequency grid: dω must be positive");
  if (n < 8) throw GridError("frequency grid: need at least 8 samples");
}

FrequencyGrid FrequencyGrid::spanning(double half_span, std::size_t n) {
  if (!(half_span > 0.0)) throw GridError("frequency grid: half span must be positive");
  return FrequencyGrid(2.0 * half_span / static_cast<double>(n), n);
}

std::vector<double> FrequencyGrid::detunings() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = detuning(k);
  return out;
}

bool FrequencyGrid::matches(const FrequencyGrid& other) const noexcept {
  return n_ == other.n_ && close(d_omega_, other.d_omega_);
}

TimeGrid::TimeGrid(double t_start, double dt, std::size_t n) : t_start_(t_start), dt_(dt), n_(n) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw GridError("time grid: dt must be positive");
  if (!std::isfinite(t_start)) throw GridError("time grid: t_start must be finite");
  if (n < 8 || !std::has_single_bit(n)) {
    std::ostringstream msg;
    msg << "time grid: n = " << n << " must be a power of two and at least 8";
    throw GridError(msg.str());
  }
}

TimeGrid TimeGrid::centered(double dt, std::size_t n) {
  return TimeGrid(-static_cast<double>(n / 2) * dt, dt, n);
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = time(i);
  return out;
}

FrequencyGrid TimeGrid::conjugate() const {
  return FrequencyGrid(2.0 * kPi / span(), n_);
}

bool TimeGrid::matches(const TimeGrid& other) const noexcept {
  return n_ == other.n_ && close(dt_, other.dt_) &&
         std::abs(t_start_ - other.t_start_) <= 1e-9 * dt_;
}

ComplexEnvelope::ComplexEnvelope(TimeGrid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) throw GridError("envelope: sample count does not match grid");
}

ComplexEnvelope ComplexEnvelope::zeros(const TimeGrid& grid) {
  return ComplexEnvelope(grid, std::vector<Complex>(grid.size()));
}

double ComplexEnvelope::energy() const { return sum_norm(samples_) * grid_.dt(); }

std::vector<double> ComplexEnvelope::intensity() const {
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), [](Complex z) { return std::norm(z); });
  return out;
}

double ComplexEnvelope::centroid() const {
  const auto t = grid_.times();
  const auto w = intensity();
  return slowlight::centroid(t, w);
}

SpectralEnvelope::SpectralEnvelope(FrequencyGrid grid, double t_start, std::vector<Complex> samples)
    : grid_(grid), t_start_(t_start), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) throw GridError("spectrum: sample count does not match grid");
}

double SpectralEnvelope::energy() const {
  return sum_norm(samples_) * grid_.d_omega() / (2.0 * kPi);
}

std::vector<double> SpectralEnvelope::intensity() const {
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), [](Complex z) { return std::norm(z); });
  return out;
}

TimeGrid SpectralEnvelope::time_grid() const {
  const double dt = 2.0 * kPi / (grid_.d_omega() * static_cast<double>(grid_.size()));
  return TimeGrid(t_start_, dt, grid_.size());
}

// Ẽ_k = dt·e^{iω_k t₀}·Σ_j (−1)^j E_j e^{+2πi jk/n}
SpectralEnvelope forward_transform(const ComplexEnvelope& env) {
  const auto& grid = env.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> work(env.samples());
  for (std::size_t j = 1; j < n; j += 2) work[j] = -work[j];
  detail::dft(work, work, +1);

  const FrequencyGrid fgrid = grid.conjugate();
  const auto phase = reference_phase(fgrid, grid.t_start(), +1.0);
  for (std::size_t k = 0; k < n; ++k) work[k] *= grid.dt() * phase[k];
  return SpectralEnvelope(fgrid, grid.t_start(), std::move(work));
}

// E_j = (dω/2π)·(−1)^j·Σ_k Ẽ_k e^{−iω_k t₀} e^{−2πi jk/n}
ComplexEnvelope inverse_transform(const SpectralEnvelope& spec) {
  const auto& fgrid = spec.grid();
  const std::size_t n = fgrid.size();
  const auto phase = reference_phase(fgrid, spec.t_start(), -1.0);
  std::vector<Complex> work(n);
  for (std::size_t k = 0; k < n; ++k) work[k] = spec.samples()[k] * phase[k];
  detail::dft(work, work, -1);

  const double scale = fgrid.d_omega() / (2.0 * kPi);
  for (std::size_t j = 0; j < n; ++j) work[j] *= (j % 2 == 0 ? scale : -scale);
  return ComplexEnvelope(spec.time_grid(), std::move(work));
}

double spectral_fwhm(const PulseSpec& spec) {
  const double tbp = spec.shape == PulseShape::gaussian ? kGaussianTimeBandwidth : kFlatTopTimeBandwidth;
  return std::visit(
      [&](const auto& w) -> double {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, Bandwidth>) {
          if (!(w.fwhm_invps > 0.0)) throw DomainError("pulse: bandwidth must be positive");
          return w.fwhm_invps;
        } else {
          if (!(w.fwhm_ps > 0.0)) throw DomainError("pulse: duration must be positive");
          return tbp / w.fwhm_ps;
        }
      },
      spec.width);
}

double transform_limited_fwhm(const PulseSpec& spec) {
  const double tbp = spec.shape == PulseShape::gaussian ? kGaussianTimeBandwidth : kFlatTopTimeBandwidth;
  return tbp / spectral_fwhm(spec);
}

namespace {

// Amplitude of a flat-top spectrum of angular full width `width` whose
// intensity falls through one half exactly at ±width/2.
double flat_top_amplitude(double omega, double width, double edge_fraction) {
  const double x = std::abs(omega);
  const double half = 0.5 * width;
  if (edge_fraction <= 0.0) return x <= half ? 1.0 : 0.0;
  // Raised-cosine amplitude reaches 1/√2 at this fraction of the roll-off.
  static const double kHalfIntensityPoint = std::acos(std::numbers::sqrt2 - 1.0) / kPi;
  const double edge = edge_fraction * width;
  const double inner = half - kHalfIntensityPoint * edge;
  const double outer = inner + edge;
  if (x <= inner) return 1.0;
  if (x >= outer) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (x - inner) / edge));
}

}  // namespace

ComplexEnvelope synthesize_pulse(const PulseSpec& spec, const TimeGrid& grid) {
  if (spec.edge_fraction < 0.0 || spec.edge_fraction > 0.5) {
    throw DomainError("pulse: edge_fraction must lie in [0, 0.5]");
  }
  const double bandwidth = spectral_fwhm(spec);
  const double fwhm = transform_limited_fwhm(spec);
  if (fwhm < 16.0 * grid.dt()) {
    std::ostringstream msg;
    msg << "pulse: transform-limited FWHM " << fwhm << " ps spans fewer than 16 samples (dt = "
        << grid.dt() << " ps)";
    throw GridError(msg.str());
  }
  const double width = 2.0 * kPi * bandwidth;  // angular FWHM of spectral intensity
  const double chirped = std::abs(spec.gdd_ps2) * width;
  if (chirped + 8.0 * fwhm > 0.5 * grid.span()) {
    std::ostringstream msg;
    msg << "pulse: chirped duration ≈ " << chirped + fwhm << " ps does not fit in half the grid span "
        << 0.5 * grid.span() << " ps";
    throw GridError(msg.str());
  }

  const FrequencyGrid fgrid = grid.conjugate();
  std::vector<Complex> spectrum(fgrid.size());
  const double gaussian_rate = 2.0 * std::numbers::ln2 / (width * width);
  for (std::size_t k = 0; k < fgrid.size(); ++k) {
    const double w = fgrid.detuning(k);
    const double amplitude = spec.shape == PulseShape::gaussian
                                 ? std::exp(-gaussian_rate * w * w)
                                 : flat_top_amplitude(w, width, spec.edge_fraction);
    spectrum[k] = std::polar(amplitude, 0.5 * spec.gdd_ps2 * w * w);
  }
  ComplexEnvelope env = inverse_transform(SpectralEnvelope(fgrid, grid.t_start(), std::move(spectrum)));
  const double norm = 1.0 / std::sqrt(env.energy());
  for (auto& z : env.samples()) z *= norm;
  return env;
}

double wavelength_bandwidth_to_frequency(double lambda0_nm, double dlambda_nm) {
  if (!(lambda0_nm > 0.0)) throw DomainError("wavelength must be positive");
  if (!(dlambda_nm >= 0.0)) throw DomainError("wavelength bandwidth must be non-negative");
  if (dlambda_nm >= lambda0_nm) throw DomainError("wavelength bandwidth must be much smaller than the wavelength");
  return kSpeedOfLightNmPerPs * dlambda_nm / (lambda0_nm * lambda0_nm);
}

double optical_frequency(double lambda_nm) {
  if (!(lambda_nm > 0.0)) throw DomainError("wavelength must be positive");
  return kSpeedOfLightNmPerPs / lambda_nm;
}

ComplexEnvelope resample(const ComplexEnvelope& env, const TimeGrid& grid) {
  const auto src_t = env.grid().times();
  std::vector<double> re(src_t.size()), im(src_t.size());
  for (std::size_t i = 0; i < src_t.size(); ++i) {
    re[i] = env.samples()[i].real();
    im[i] = env.samples()[i].imag();
  }
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.time(i);
    out[i] = {interpolate_linear(src_t, re, t), interpolate_linear(src_t, im, t)};
  }
  return ComplexEnvelope(grid, std::move(out));
}

}  // namespace slowlight

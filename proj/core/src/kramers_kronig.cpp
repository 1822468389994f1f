#include "slowlight/kramers_kronig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/sampling.hpp"

namespace slowlight {

OpticalDepthSpectrum::OpticalDepthSpectrum(FrequencyGrid grid, std::vector<double> depth,
                                           double center_wavelength_nm)
    : OpticalDepthSpectrum(grid, std::move(depth), center_wavelength_nm, 0, grid.size()) {}

OpticalDepthSpectrum::OpticalDepthSpectrum(FrequencyGrid grid, std::vector<double> depth,
                                           double center_wavelength_nm, std::size_t support_begin,
                                           std::size_t support_end)
    : grid_(grid),
      depth_(std::move(depth)),
      center_wavelength_nm_(center_wavelength_nm),
      support_begin_(support_begin),
      support_end_(support_end) {
  if (depth_.size() != grid_.size()) throw GridError("optical depth: sample count does not match grid");
  if (support_begin_ >= support_end_ || support_end_ > depth_.size()) {
    throw GridError("optical depth: support must be a non-empty range inside the grid");
  }
  if (!(center_wavelength_nm > 0.0)) throw DomainError("optical depth: centre wavelength must be positive");
  for (double d : depth_) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("optical depth must be finite and non-negative");
  }
}

double OpticalDepthSpectrum::peak() const { return *std::max_element(depth_.begin(), depth_.end()); }

OpticalDepthSpectrum ingest_absorption(std::span<const SpectralRecord> records, double center_wavelength_nm,
                                       const FrequencyGrid& grid, SpectrumQuantity quantity) {
  if (records.size() < 2) throw DomainError("absorption spectrum needs at least two records");
  const double nu_center = optical_frequency(center_wavelength_nm);

  const bool increasing = records[1].wavelength_nm > records[0].wavelength_nm;
  std::vector<double> detuning, depth;
  detuning.reserve(records.size());
  depth.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (i > 0) {
      const double step = r.wavelength_nm - records[i - 1].wavelength_nm;
      if (!(increasing ? step > 0.0 : step < 0.0)) {
        std::ostringstream msg;
        msg << "absorption spectrum: wavelengths not strictly monotonic at record " << i;
        throw DomainError(msg.str());
      }
    }
    double d = r.value;
    if (quantity == SpectrumQuantity::absorption) {
      if (!(r.value >= 0.0 && r.value < 1.0)) {
        std::ostringstream msg;
        msg << "absorption " << r.value << " at " << r.wavelength_nm << " nm outside [0, 1)";
        throw DomainError(msg.str());
      }
      d = -std::log1p(-r.value);
    } else if (!(d >= 0.0) || !std::isfinite(d)) {
      throw DomainError("optical depth records must be finite and non-negative");
    }
    detuning.push_back(optical_frequency(r.wavelength_nm) - nu_center);
    depth.push_back(d);
  }
  // ν = c/λ reverses the order of increasing wavelengths.
  if (increasing) {
    std::reverse(detuning.begin(), detuning.end());
    std::reverse(depth.begin(), depth.end());
  }

  std::vector<double> out(grid.size());
  std::size_t begin = grid.size();
  std::size_t end = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double w = grid.detuning(k);
    if (w < detuning.front() || w > detuning.back()) continue;
    out[k] = interpolate_linear(detuning, depth, w);
    begin = std::min(begin, k);
    end = k + 1;
  }
  if (begin >= end) throw GridError("absorption spectrum does not overlap the detuning grid");
  return OpticalDepthSpectrum(grid, std::move(out), center_wavelength_nm, begin, end);
}

OpticalDepthSpectrum depth_from_susceptibility(const Susceptibility& chi, double k0_per_mm, double length_mm,
                                               double center_wavelength_nm) {
  const double kl = k0_per_mm * length_mm;
  if (!(kl > 0.0)) throw DomainError("k0·L must be positive");
  std::vector<double> depth(chi.grid().size());
  for (std::size_t k = 0; k < depth.size(); ++k) depth[k] = std::max(0.0, kl * chi.values()[k].imag());
  return OpticalDepthSpectrum(chi.grid(), std::move(depth), center_wavelength_nm);
}

std::vector<double> principal_value_transform(std::span<const double> imag_part) {
  const std::size_t n = imag_part.size();
  if (n == 0) return {};
  // Odd-point rule: out[k] = (2/π)·Σ_{j−k odd} g[j]/(j − k), evaluated as a
  // linear convolution on a grid long enough that no lag wraps around.
  const std::size_t padded = 2 * n;
  std::vector<Complex> signal(padded);
  std::copy(imag_part.begin(), imag_part.end(), signal.begin());
  std::vector<Complex> kernel(padded);
  for (std::size_t q = 1; q < n; q += 2) {
    const double w = 2.0 / (std::numbers::pi * static_cast<double>(q));
    kernel[q] = -w;
    kernel[padded - q] = w;
  }
  detail::dft(signal, signal, -1);
  detail::dft(kernel, kernel, -1);
  for (std::size_t m = 0; m < padded; ++m) signal[m] *= kernel[m];
  detail::dft(signal, signal, +1);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(padded);
  for (std::size_t k = 0; k < n; ++k) out[k] = scale * signal[k].real();
  return out;
}

Susceptibility kk_real_from_imag(const OpticalDepthSpectrum& depth, double k0_per_mm, double length_mm,
                                 const KramersKronigOptions& options) {
  const double kl = k0_per_mm * length_mm;
  if (!(kl > 0.0)) throw DomainError("k0·L must be positive");
  const auto& grid = depth.grid();
  const double peak = depth.peak();
  if (peak == 0.0) return Susceptibility::zeros(grid);

  std::vector<double> d = depth.depth();
  const std::size_t first = depth.support_begin();
  const std::size_t last = depth.support_end() - 1;
  const double edge = std::max(d[first], d[last]);
  if (edge > options.edge_tolerance * peak) {
    if (!options.force_taper) {
      std::ostringstream msg;
      msg << "optical depth at the edge of the sampled range is " << edge / peak
          << " of the peak; the principal-value integral would be truncated (widen the grid or taper)";
      throw TruncationRiskError(msg.str());
    }
    const std::size_t span = last - first + 1;
    const std::size_t width = std::clamp<std::size_t>(
        static_cast<std::size_t>(options.taper_fraction * static_cast<double>(span)), 1, span / 2);
    for (std::size_t i = 0; i < width; ++i) {
      const double w = 0.5 * (1.0 - std::cos(kPi * static_cast<double>(i) / static_cast<double>(width)));
      d[first + i] *= w;
      d[last - i] *= w;
    }
  }

  std::vector<double> imag(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) imag[k] = d[k] / kl;
  const auto real = principal_value_transform(imag);
  std::vector<Complex> values(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) values[k] = {real[k], imag[k]};
  return Susceptibility(grid, std::move(values));
}

double group_delay_from_susceptibility(const Susceptibility& chi, double k0_per_mm, double length_mm,
                                       double omega_eval) {
  const auto& grid = chi.grid();
  const double h = grid.d_omega();
  if (!(omega_eval - h >= grid.min_detuning() && omega_eval + h <= grid.max_detuning())) {
    throw DomainError("group delay: evaluation detuning must be interior to the grid");
  }
  const double slope = (chi.at(omega_eval + h).real() - chi.at(omega_eval - h).real()) / (2.0 * h);
  return 0.5 * k0_per_mm * length_mm * slope;
}

}  // namespace slowlight

#include "slowlight/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/sampling.hpp"

namespace slowlight {

CorrelationCurve CorrelationCurve::normalized_to_peak() const {
  CorrelationCurve out = *this;
  const double peak = *std::max_element(intensity.begin(), intensity.end());
  if (!(peak > 0.0)) throw DomainError("correlation: cannot normalise an all-zero curve");
  for (double& v : out.intensity) v /= peak;
  out.normalized = true;
  return out;
}

CorrelationCurve cross_correlate(const ComplexEnvelope& signal, const ComplexEnvelope& reference) {
  if (!signal.grid().matches(reference.grid())) throw GridError("cross-correlation: grids differ");
  const std::size_t n = signal.grid().size();
  const double dt = signal.grid().dt();
  const auto is = signal.intensity();
  const auto ir = reference.intensity();

  // Linear correlation through a 2n-point circular one.
  const std::size_t padded = 2 * n;
  std::vector<Complex> a(padded), b(padded);
  std::copy(is.begin(), is.end(), a.begin());
  std::copy(ir.begin(), ir.end(), b.begin());
  detail::dft(a, a, -1);
  detail::dft(b, b, -1);
  for (std::size_t k = 0; k < padded; ++k) a[k] *= std::conj(b[k]);
  detail::dft(a, a, +1);  // a[m] = Σ_j is[j]·ir[j − m] (mod 2n), times 2n

  CorrelationCurve curve;
  curve.delays.resize(n);
  curve.intensity.resize(n);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t k = 0; k < n; ++k) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(k) - half;
    const std::size_t idx = static_cast<std::size_t>((m + static_cast<std::ptrdiff_t>(padded)) %
                                                     static_cast<std::ptrdiff_t>(padded));
    curve.delays[k] = static_cast<double>(m) * dt;
    curve.intensity[k] = std::max(0.0, a[idx].real() * dt / static_cast<double>(padded));
  }
  return curve;
}

double first_moment(const CorrelationCurve& curve, std::optional<MomentWindow> window) {
  if (curve.delays.size() != curve.intensity.size()) throw DomainError("correlation: length mismatch");
  double sum = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < curve.delays.size(); ++i) {
    const double tau = curve.delays[i];
    if (window && (tau < window->lower || tau > window->upper)) continue;
    sum += curve.intensity[i];
    moment += tau * curve.intensity[i];
  }
  if (!(sum > 0.0)) throw DomainError("first moment: curve integrates to zero");
  return moment / sum;
}

double first_moment_delay(const CorrelationCurve& on, const CorrelationCurve& off,
                          std::optional<MomentWindow> window) {
  return first_moment(on, window) - first_moment(off, window);
}

double fwhm(const CorrelationCurve& curve) { return full_width_half_max(curve.delays, curve.intensity); }

double fwhm(const ComplexEnvelope& env) {
  const auto t = env.grid().times();
  const auto i = env.intensity();
  return full_width_half_max(t, i);
}

double deconvolve_duration(double xcorr_fwhm_ps, double reference_fwhm_ps) {
  if (!(reference_fwhm_ps >= 0.0)) throw DomainError("reference duration must be non-negative");
  if (!(xcorr_fwhm_ps > reference_fwhm_ps)) {
    std::ostringstream msg;
    msg << "cross-correlation width " << xcorr_fwhm_ps << " ps must exceed the reference width "
        << reference_fwhm_ps << " ps";
    throw DomainError(msg.str());
  }
  return std::sqrt(xcorr_fwhm_ps * xcorr_fwhm_ps - reference_fwhm_ps * reference_fwhm_ps);
}

AbsorptionSpectrum absorption_spectrum(std::span<const double> on, std::span<const double> off, double floor) {
  if (on.size() != off.size()) throw DomainError("absorption spectrum: on/off length mismatch");
  AbsorptionSpectrum out;
  out.values.assign(on.size(), 0.0);
  out.valid.assign(on.size(), false);
  if (on.empty()) return out;
  const double threshold = floor * *std::max_element(off.begin(), off.end());
  for (std::size_t k = 0; k < on.size(); ++k) {
    if (off[k] > threshold && off[k] > 0.0) {
      out.values[k] = 1.0 - on[k] / off[k];
      out.valid[k] = true;
    }
  }
  return out;
}

LinearityDiagnostic linearity_diagnostic(std::span<const std::pair<double, double>> series) {
  if (series.size() < 3) throw DomainError("linearity diagnostic needs at least 3 points");
  double sxx = 0.0;
  double sxy = 0.0;
  double ymax = 0.0;
  for (auto [x, y] : series) {
    sxx += x * x;
    sxy += x * y;
    ymax = std::max(ymax, std::abs(y));
  }
  if (!(sxx > 0.0)) throw DomainError("linearity diagnostic needs a non-zero abscissa");
  LinearityDiagnostic out{sxy / sxx, 0.0};
  if (ymax == 0.0) return out;
  double rmax = 0.0;
  for (auto [x, y] : series) rmax = std::max(rmax, std::abs(y - out.slope * x));
  out.residual_ratio = rmax / ymax;
  return out;
}

double centroid_delay(const ComplexEnvelope& input, const ComplexEnvelope& output) {
  if (!input.grid().matches(output.grid())) throw GridError("centroid delay: grids differ");
  return output.centroid() - input.centroid();
}

double energy_loss_db(const ComplexEnvelope& input, const ComplexEnvelope& output) {
  const double out = output.energy();
  if (!(out > 0.0)) throw DomainError("loss: output carries no energy");
  return 10.0 * std::log10(input.energy() / out);
}

double peak_time(const ComplexEnvelope& env) {
  const auto in = env.intensity();
  const auto it = std::max_element(in.begin(), in.end());
  const std::size_t k = static_cast<std::size_t>(it - in.begin());
  const auto& g = env.grid();
  if (k == 0 || k + 1 == in.size()) return g.time(k);
  const double y0 = in[k - 1], y1 = in[k], y2 = in[k + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  const double shift = denom == 0.0 ? 0.0 : 0.5 * (y0 - y2) / denom;
  return g.time(k) + shift * g.dt();
}

}  // namespace slowlight

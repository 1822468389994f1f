#include "slowlight/propagate_td.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

#include "slowlight/analysis.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/sampling.hpp"

namespace slowlight {
namespace {

constexpr std::size_t kMinSteps = 16;
constexpr double kMaxStepPhase = 0.1;

// 8-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 8> kGaussNodes = {
    0.019855071751231856, 0.10166676129318664, 0.23723379504183550, 0.40828267875217510,
    0.59171732124782490,  0.76276620495816450, 0.89833323870681336, 0.98014492824876814};
constexpr std::array<double, 8> kGaussWeights = {
    0.050614268145188130, 0.11119051722668724, 0.15685332293894364, 0.18134189168918100,
    0.18134189168918100,  0.15685332293894364, 0.11119051722668724, 0.050614268145188130};

// Cubic Lagrange basis on the nodes −2, −1, 0, 1, evaluated on [0, 1].
std::array<double, 4> lagrange_basis(double x) {
  return {-(x + 1.0) * x * (x - 1.0) / 6.0, (x + 2.0) * x * (x - 1.0) / 2.0,
          -(x + 2.0) * (x + 1.0) * (x - 1.0) / 2.0, (x + 2.0) * (x + 1.0) * x / 6.0};
}

struct LineStepper {
  double detuning;     // ω_ν
  double coupling;     // s = √(k₀c/2)
  Complex decay;       // e^{−λh}
  std::array<Complex, 4> weights;  // for r_{j−2}, r_{j−1}, r_j, r_{j+1}
};

LineStepper make_stepper(const RamanLine& line, double coupling, double k0, double h) {
  const Complex lambda(line.linewidth, line.center_detuning);
  LineStepper st{line.center_detuning, std::sqrt(0.5 * k0 * coupling), std::exp(-lambda * h), {}};
  for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
    const double x = kGaussNodes[q];
    const Complex kernel = h * kGaussWeights[q] * std::exp(-lambda * h * (1.0 - x));
    const auto basis = lagrange_basis(x);
    for (std::size_t m = 0; m < 4; ++m) st.weights[m] += kernel * basis[m];
  }
  return st;
}

std::vector<Complex> control_samples(const ControlField& control, const TimeGrid& grid) {
  std::vector<Complex> u(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) u[i] = control.amplitude(i);
  return u;
}

class Integrator {
 public:
  Integrator(const RamanMedium& medium, const ControlField& control, const TimeGrid& grid)
      : grid_(grid), u_(control_samples(control, grid)) {
    for (std::size_t i = 0; i < medium.lines().size(); ++i) {
      const double c = medium.coupling(i);
      if (c > 0.0) steppers_.push_back(make_stepper(medium.lines()[i], c, medium.k0(), grid.dt()));
      active_.push_back(c > 0.0);
    }
    source_.resize(grid.size());
    coherence_.resize(grid.size());
  }

  bool idle() const noexcept { return steppers_.empty(); }

  // ∂E/∂z at the current slice; coherences are integrated along τ from zero.
  void derivative(const std::vector<Complex>& e, std::vector<Complex>& out, double& max_coherence) {
    const std::size_t n = e.size();
    std::fill(out.begin(), out.end(), Complex{});
    for (const auto& st : steppers_) {
      const Complex i_s(0.0, st.coupling);
      for (std::size_t j = 0; j < n; ++j) source_[j] = i_s * std::conj(u_[j]) * e[j];
      integrate(st, source_, coherence_);
      for (std::size_t j = 0; j < n; ++j) {
        out[j] += i_s * u_[j] * coherence_[j];
        max_coherence = std::max(max_coherence, std::abs(coherence_[j]));
      }
    }
  }

  // Coherences in the literal (non-rotating) form Q = P·e^{iω_ν τ}.
  CoherenceState coherences(const std::vector<Complex>& e) {
    CoherenceState state;
    std::size_t k = 0;
    for (bool active : active_) {
      std::vector<Complex> q(e.size());
      if (active) {
        const auto& st = steppers_[k++];
        const Complex i_s(0.0, st.coupling);
        for (std::size_t j = 0; j < e.size(); ++j) source_[j] = i_s * std::conj(u_[j]) * e[j];
        integrate(st, source_, q);
        for (std::size_t j = 0; j < e.size(); ++j) q[j] *= std::polar(1.0, st.detuning * grid_.time(j));
      }
      state.lines.push_back(std::move(q));
    }
    return state;
  }

 private:
  static void integrate(const LineStepper& st, const std::vector<Complex>& r, std::vector<Complex>& p) {
    const std::size_t n = r.size();
    auto at = [&](std::ptrdiff_t j) { return j < 0 ? Complex{} : r[static_cast<std::size_t>(j)]; };
    p[0] = Complex{};
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const auto jj = static_cast<std::ptrdiff_t>(j);
      p[j + 1] = st.decay * p[j] + st.weights[0] * at(jj - 2) + st.weights[1] * at(jj - 1) +
                 st.weights[2] * r[j] + st.weights[3] * r[j + 1];
    }
  }

  TimeGrid grid_;
  std::vector<Complex> u_;
  std::vector<LineStepper> steppers_;
  std::vector<bool> active_;
  std::vector<Complex> source_;
  std::vector<Complex> coherence_;
};

double total_step_phase_rate(const RamanMedium& medium) {
  double depth = 0.0;
  for (std::size_t i = 0; i < medium.lines().size(); ++i) {
    depth += medium.coupling(i) / medium.lines()[i].linewidth;
  }
  return 0.5 * medium.k0() * depth * medium.length_mm();
}

}  // namespace

ControlField ControlField::constant() { return ControlField(); }

ControlField ControlField::gaussian(double fwhm_ps, const TimeGrid& grid, double center_ps) {
  if (!(fwhm_ps > 0.0)) throw DomainError("control: FWHM must be positive");
  ControlField out;
  out.grid_ = grid;
  out.samples_.emplace(grid.size());
  // |u|² = exp(−4 ln2 (t/fwhm)²)
  const double rate = 2.0 * std::numbers::ln2 / (fwhm_ps * fwhm_ps);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.time(i) - center_ps;
    (*out.samples_)[i] = std::exp(-rate * t * t);
  }
  return out;
}

ControlField ControlField::flat_top(double fwhm_ps, const TimeGrid& grid, double rise_ps, double center_ps) {
  if (!(fwhm_ps > 0.0)) throw DomainError("control: FWHM must be positive");
  if (!(rise_ps >= 0.0) || rise_ps >= fwhm_ps) throw DomainError("control: rise time must lie in [0, fwhm)");
  ControlField out;
  out.grid_ = grid;
  out.samples_.emplace(grid.size());
  const double half = 0.5 * fwhm_ps;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = std::abs(grid.time(i) - center_ps);
    double intensity;
    if (rise_ps == 0.0) {
      intensity = x <= half ? 1.0 : 0.0;
    } else if (x <= half - 0.5 * rise_ps) {
      intensity = 1.0;
    } else if (x >= half + 0.5 * rise_ps) {
      intensity = 0.0;
    } else {
      intensity = 0.5 * (1.0 + std::cos(kPi * (x - half + 0.5 * rise_ps) / rise_ps));
    }
    (*out.samples_)[i] = std::sqrt(intensity);
  }
  return out;
}

ControlField ControlField::from_envelope(const ComplexEnvelope& env) {
  double peak = 0.0;
  for (const auto& z : env.samples()) peak = std::max(peak, std::abs(z));
  if (!(peak > 0.0)) throw DomainError("control: envelope is identically zero");
  ControlField out;
  out.grid_ = env.grid();
  out.samples_ = env.samples();
  for (auto& z : *out.samples_) z /= peak;
  return out;
}

double ControlField::duration_ps() const {
  if (is_constant()) return std::numeric_limits<double>::infinity();
  std::vector<double> intensity(samples_->size());
  for (std::size_t i = 0; i < intensity.size(); ++i) intensity[i] = std::norm((*samples_)[i]);
  const auto t = grid_->times();
  return full_width_half_max(t, intensity);
}

Resolution required_resolution(const RamanMedium& medium) {
  const double rate = total_step_phase_rate(medium);
  const auto by_phase = static_cast<std::size_t>(std::floor(rate / kMaxStepPhase)) + 1;
  double max_center = 0.0;
  double max_gamma = 0.0;
  for (const auto& line : medium.lines()) {
    max_center = std::max(max_center, std::abs(line.center_detuning));
    max_gamma = std::max(max_gamma, line.linewidth);
  }
  // dt ≤ 2π/(8Δ) with Δ the full spread of line centres, and Γ·dt ≤ 1 so the
  // exponential-integrator weights stay accurate.
  const double max_dt = std::min(2.0 * kPi / (8.0 * 2.0 * max_center), 1.0 / max_gamma);
  return {std::max(kMinSteps, by_phase), max_dt};
}

void validate_settings(const RamanMedium& medium, const TimeGrid& grid, const SolverSettings& settings) {
  const Resolution need = required_resolution(medium);
  const double step_phase = total_step_phase_rate(medium) / static_cast<double>(std::max<std::size_t>(settings.nz, 1));
  std::ostringstream msg;
  if (settings.nz < kMinSteps) {
    msg << "solver: nz = " << settings.nz << " is below the minimum of " << kMinSteps;
  } else if (step_phase >= kMaxStepPhase) {
    msg << "solver: per-step phase " << step_phase << " must stay below " << kMaxStepPhase << "; use nz ≥ "
        << need.required_nz;
  } else if (grid.dt() > need.max_dt_ps * (1.0 + 1e-12)) {
    msg << "solver: dt = " << grid.dt() << " ps exceeds the maximum " << need.max_dt_ps << " ps";
  } else {
    return;
  }
  throw ResolutionError(msg.str(), std::max(need.required_nz, settings.nz), need.max_dt_ps);
}

TdResult solve(const RamanMedium& medium, const ControlField& control, const ComplexEnvelope& input,
               const SolverSettings& settings) {
  const TimeGrid& grid = input.grid();
  if (!control.is_constant() && !control.grid()->matches(grid)) {
    throw GridError("solver: control envelope and signal use different time grids");
  }
  validate_settings(medium, grid, settings);

  Integrator integrator(medium, control, grid);
  TdResult result{input, {}, {}, 0.0};
  if (integrator.idle()) {
    result.final_coherences.lines.assign(medium.lines().size(), std::vector<Complex>(grid.size()));
    return result;
  }

  const std::size_t n = grid.size();
  const double dz = medium.length_mm() / static_cast<double>(settings.nz);
  std::vector<Complex> e = input.samples();
  std::vector<Complex> k1(n), half(n), k2(n);
  for (std::size_t step = 0; step < settings.nz; ++step) {
    integrator.derivative(e, k1, result.max_coherence);
    for (std::size_t j = 0; j < n; ++j) half[j] = e[j] + 0.5 * dz * k1[j];
    integrator.derivative(half, k2, result.max_coherence);
    for (std::size_t j = 0; j < n; ++j) e[j] += dz * k2[j];
  }

  result.final_coherences = integrator.coherences(e);
  result.output = ComplexEnvelope(grid, std::move(e));
  if (result.max_coherence > settings.coherence_warning) {
    std::ostringstream msg;
    msg << "coherence magnitude reached " << result.max_coherence << " (> " << settings.coherence_warning
        << "); the weak-signal assumption may not hold";
    result.warnings.push_back(msg.str());
  }
  if (!control.is_constant()) {
    const double signal_width = fwhm(input);
    const double control_width = control.duration_ps();
    if (control_width < 3.0 * signal_width) {
      std::ostringstream msg;
      msg << "control duration " << control_width << " ps is not much longer than the signal (" << signal_width
          << " ps)";
      result.warnings.push_back(msg.str());
    }
  }
  return result;
}

std::vector<ScanPoint> delay_vs_control_scan(const RamanMedium& medium, const ControlField& control,
                                             std::span<const double> intensities, const ComplexEnvelope& input,
                                             const SolverSettings& settings) {
  std::vector<RamanMedium> media;
  media.reserve(intensities.size());
  for (double intensity : intensities) media.push_back(medium.with_control_intensity(intensity));
  for (const auto& m : media) validate_settings(m, input.grid(), settings);

  std::vector<ScanPoint> out(intensities.size());
  auto run = [&](std::size_t i) {
    const TdResult r = solve(media[i], control, input, settings);
    out[i] = {intensities[i], centroid_delay(input, r.output), energy_loss_db(input, r.output)};
  };
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < media.size(); begin += workers) {
    const std::size_t end = std::min(media.size(), begin + workers);
    std::vector<std::future<void>> batch;
    for (std::size_t i = begin; i < end; ++i) batch.push_back(std::async(std::launch::async, run, i));
    for (auto& f : batch) f.get();
  }
  return out;
}

}  // namespace slowlight

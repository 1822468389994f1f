#include "slowlight/medium.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "slowlight/errors.hpp"

namespace slowlight {
namespace {

constexpr double kDbPerNeper = 10.0 / std::numbers::ln10;

bool rel_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be positive (got " << value << ')';
    throw DomainError(msg.str());
  }
}

const RamanMedium& require_symmetric(const RamanMedium& m) {
  if (!m.is_symmetric()) {
    throw AsymmetricMediumError(
        "closed-form figures of merit need equal linewidths and strengths and no extra lines");
  }
  return m;
}

}  // namespace

RamanMedium::RamanMedium(double splitting, RamanLine lower, RamanLine upper, double length_mm,
                         double k0_per_mm, double control_intensity)
    : splitting_(splitting), length_mm_(length_mm), k0_(k0_per_mm), control_intensity_(control_intensity) {
  lower.center_detuning = -0.5 * splitting;
  upper.center_detuning = 0.5 * splitting;
  lines_ = {lower, upper};
  validate();
}

RamanMedium RamanMedium::symmetric(double gamma, double splitting, double strength, double length_mm,
                                   double k0_per_mm, double control_intensity) {
  const RamanLine line{0.0, gamma, strength};
  return RamanMedium(splitting, line, line, length_mm, k0_per_mm, control_intensity);
}

RamanMedium RamanMedium::with_extra_line(RamanLine line) const {
  RamanMedium out(*this);
  out.lines_.push_back(line);
  out.validate();
  return out;
}

RamanMedium RamanMedium::with_control_intensity(double control_intensity) const {
  RamanMedium out(*this);
  out.control_intensity_ = control_intensity;
  out.validate();
  return out;
}

bool RamanMedium::is_symmetric(double rel_tol) const noexcept {
  return !has_extra_lines() && rel_equal(lower().linewidth, upper().linewidth, rel_tol) &&
         rel_equal(lower().strength, upper().strength, rel_tol);
}

void RamanMedium::validate() const {
  require_positive(splitting_, "splitting Δ");
  require_positive(length_mm_, "length L");
  require_positive(k0_, "wavevector k0");
  if (!(control_intensity_ >= 0.0) || !std::isfinite(control_intensity_)) {
    throw DomainError("control intensity must be non-negative");
  }
  for (const auto& line : lines_) {
    require_positive(line.linewidth, "linewidth Γ");
    if (!(line.strength >= 0.0) || !std::isfinite(line.strength)) {
      throw DomainError("line strength must be non-negative (absorption lines only)");
    }
    if (!std::isfinite(line.center_detuning)) throw DomainError("line centre must be finite");
  }
}

double wavevector_from_wavelength(double lambda_nm) {
  require_positive(lambda_nm, "wavelength");
  return 2.0 * kPi / (lambda_nm * 1e-6);
}

RamanMedium from_target_depth(double d0, double gamma, double splitting, double k0_per_mm,
                              double length_mm) {
  require_positive(d0, "d0");
  require_positive(gamma, "linewidth Γ");
  require_positive(k0_per_mm, "wavevector k0");
  require_positive(length_mm, "length L");
  const double strength = d0 * gamma / (k0_per_mm * length_mm);
  return RamanMedium::symmetric(gamma, splitting, strength, length_mm, k0_per_mm, 1.0);
}

Complex chi(const RamanMedium& medium, double omega) {
  constexpr Complex i{0.0, 1.0};
  Complex sum{};
  for (std::size_t v = 0; v < medium.lines().size(); ++v) {
    const auto& line = medium.lines()[v];
    sum += medium.coupling(v) / Complex(line.linewidth, -(omega - line.center_detuning));
  }
  return i * sum;
}

Susceptibility sample_chi(const RamanMedium& medium, const FrequencyGrid& grid) {
  std::vector<Complex> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = chi(medium, grid.detuning(k));
  return Susceptibility(grid, std::move(values));
}

double peak_optical_depth(const RamanMedium& medium) {
  require_symmetric(medium);
  return medium.k0() * medium.length_mm() * medium.coupling(0) / medium.lower().linewidth;
}

FiguresOfMerit figures_of_merit(double d0, double gamma, double splitting) {
  if (!(d0 >= 0.0)) throw DomainError("d0 must be non-negative");
  require_positive(gamma, "linewidth Γ");
  require_positive(splitting, "splitting Δ");
  const double g2 = gamma * gamma;
  const double q = 0.25 * splitting * splitting;
  FiguresOfMerit f;
  f.peak_optical_depth = d0;
  f.group_delay_ps = d0 * gamma * (q - g2) / ((q + g2) * (q + g2));
  f.loss_db = d0 * kDbPerNeper * 2.0 * g2 / (q + g2);
  f.delay_per_loss_ps_per_db = delay_per_loss(gamma, splitting);
  f.delay_bandwidth_product = gamma < splitting ? f.group_delay_ps * (splitting - gamma) : 0.0;
  return f;
}

double group_delay(const RamanMedium& medium) {
  const double d0 = peak_optical_depth(medium);
  return figures_of_merit(d0, medium.lower().linewidth, medium.splitting()).group_delay_ps;
}

double loss_db(const RamanMedium& medium) {
  const double d0 = peak_optical_depth(medium);
  return figures_of_merit(d0, medium.lower().linewidth, medium.splitting()).loss_db;
}

double delay_per_loss(double gamma, double splitting) {
  require_positive(gamma, "linewidth Γ");
  require_positive(splitting, "splitting Δ");
  const double q = 0.25 * splitting * splitting;
  return std::numbers::ln10 / 20.0 * (q - gamma * gamma) / (gamma * (gamma * gamma + q));
}

double delay_bandwidth_product(const RamanMedium& medium) {
  const double gamma = require_symmetric(medium).lower().linewidth;
  if (gamma >= medium.splitting()) {
    throw DomainError("delay-bandwidth product needs Γ < Δ (no transparency window otherwise)");
  }
  return group_delay(medium) * (medium.splitting() - gamma);
}

FiguresOfMerit figures_of_merit(const RamanMedium& medium) {
  const double d0 = peak_optical_depth(medium);
  auto f = figures_of_merit(d0, medium.lower().linewidth, medium.splitting());
  if (medium.lower().linewidth < medium.splitting()) f.delay_bandwidth_product = delay_bandwidth_product(medium);
  return f;
}

double depth_for_center_absorption(double absorption, double gamma, double splitting) {
  if (!(absorption >= 0.0 && absorption < 1.0)) throw DomainError("absorption must lie in [0, 1)");
  const double per_unit_depth = figures_of_merit(1.0, gamma, splitting).loss_db / kDbPerNeper;
  return -std::log1p(-absorption) / per_unit_depth;
}

double depth_for_delay_bandwidth_product(double dbp, double gamma, double splitting) {
  if (!(dbp >= 0.0)) throw DomainError("delay-bandwidth product must be non-negative");
  if (gamma >= splitting) throw DomainError("delay-bandwidth product needs Γ < Δ");
  const double per_unit_depth = figures_of_merit(1.0, gamma, splitting).delay_bandwidth_product;
  if (!(per_unit_depth > 0.0)) throw DomainError("no positive delay for Γ ≥ Δ/2");
  return dbp / per_unit_depth;
}

}  // namespace slowlight

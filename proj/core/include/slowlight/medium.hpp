#pragma once

// Two-line Raman medium and its closed-form figures of merit.
//
// Each line ν contributes i·c_ν / (Γ_ν − i(ω − ω_ν)) to χ(ω), where
// c_ν = g_ν·|E_c|² is the control-dressed coupling and ω_ν = ∓Δ/2. With this
// normalisation d₀ = k₀L·c/Γ is the on-resonance intensity optical depth of
// one line and the signal field picks up exp(i·k₀L·χ(ω)/2).

#include <cstddef>
#include <vector>

#include "slowlight/spectral.hpp"
#include "slowlight/susceptibility.hpp"

namespace slowlight {

struct RamanLine {
  double center_detuning = 0.0;  // 1/ps
  double linewidth = 1.0;        // Γ_ν, 1/ps
  double strength = 0.0;         // g_ν per unit control intensity
};

class RamanMedium {
 public:
  // Two lines at −Δ/2 (lower) and +Δ/2 (upper). The center_detuning fields of
  // `lower` and `upper` are ignored and set from `splitting`.
  RamanMedium(double splitting, RamanLine lower, RamanLine upper, double length_mm,
              double k0_per_mm, double control_intensity);

  static RamanMedium symmetric(double gamma, double splitting, double strength, double length_mm,
                               double k0_per_mm, double control_intensity = 1.0);

  // Adds a line anywhere in the spectrum, e.g. to model structure beyond the
  // doublet. Media with extra lines are rejected by the closed-form figures.
  RamanMedium with_extra_line(RamanLine line) const;
  RamanMedium with_control_intensity(double control_intensity) const;

  const std::vector<RamanLine>& lines() const noexcept { return lines_; }
  const RamanLine& lower() const noexcept { return lines_[0]; }
  const RamanLine& upper() const noexcept { return lines_[1]; }
  bool has_extra_lines() const noexcept { return lines_.size() > 2; }

  double splitting() const noexcept { return splitting_; }
  double length_mm() const noexcept { return length_mm_; }
  double k0() const noexcept { return k0_; }
  double control_intensity() const noexcept { return control_intensity_; }

  // c_ν = g_ν·|E_c|²
  double coupling(std::size_t line) const { return lines_.at(line).strength * control_intensity_; }

  // Γ₂ = Γ₃, equal strengths (relative tolerance), no extra lines.
  bool is_symmetric(double rel_tol = 1e-9) const noexcept;

 private:
  RamanMedium() = default;
  void validate() const;

  std::vector<RamanLine> lines_;
  double splitting_ = 0.0;
  double length_mm_ = 0.0;
  double k0_ = 0.0;
  double control_intensity_ = 0.0;
};

// k₀ = 2π/λ₀ in rad/mm for λ₀ in nm.
double wavevector_from_wavelength(double lambda_nm);

// Symmetric doublet at unit control intensity whose peak optical depth is d0.
RamanMedium from_target_depth(double d0, double gamma, double splitting, double k0_per_mm,
                              double length_mm);

Complex chi(const RamanMedium& medium, double omega);
Susceptibility sample_chi(const RamanMedium& medium, const FrequencyGrid& grid);

double peak_optical_depth(const RamanMedium& medium);
// τ_g = d₀·Γ(Δ²/4 − Γ²)/(Δ²/4 + Γ²)², relative to control-off transit.
double group_delay(const RamanMedium& medium);
// η = d₀·(10/ln10)·2Γ²/(Δ²/4 + Γ²), loss at the window centre.
double loss_db(const RamanMedium& medium);
// τ_g/η, independent of d₀.
double delay_per_loss(double gamma, double splitting);
// τ_g·(Δ − Γ)
double delay_bandwidth_product(const RamanMedium& medium);

struct FiguresOfMerit {
  double peak_optical_depth = 0.0;
  double group_delay_ps = 0.0;
  double loss_db = 0.0;
  double delay_per_loss_ps_per_db = 0.0;
  double delay_bandwidth_product = 0.0;
};

FiguresOfMerit figures_of_merit(const RamanMedium& medium);

// Closed-form figures for a symmetric doublet parameterised directly by d₀.
FiguresOfMerit figures_of_merit(double d0, double gamma, double splitting);

// d₀ at which the window-centre intensity absorption equals `absorption`.
double depth_for_center_absorption(double absorption, double gamma, double splitting);
// d₀ at which τ_g·(Δ − Γ) equals `dbp`.
double depth_for_delay_bandwidth_product(double dbp, double gamma, double splitting);

}  // namespace slowlight

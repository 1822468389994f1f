#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/propagate_td.hpp"
#include "slowlight/spectral.hpp"

namespace slowlight::app {

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct MediumConfig {
  double gamma_invps = 1.0;
  double delta_invps = 6.8;
  std::optional<double> d0;
  std::optional<double> g_per_intensity;
  std::optional<double> control_intensity;
  double length_mm = 1.0;
  double lambda0_nm = 765.0;
};

struct SignalConfig {
  std::string shape = "flat_top";
  std::optional<double> bandwidth_invps;
  std::optional<double> duration_ps;
  double gdd_ps2 = 0.0;
  double edge_fraction = 0.02;
};

struct ControlConfig {
  std::string shape = "constant";
  std::optional<double> fwhm_ps;
  double rise_ps = 0.2;
  double center_ps = 0.0;
  std::optional<double> intensity;
  std::vector<double> intensity_list;
};

struct GridConfig {
  std::size_t n = 16384;
  double dt_ps = 0.02;
};

struct SolverConfig {
  std::size_t nz = 256;
  std::string scheme = "midpoint";
};

struct AnalyticConfig {
  double d0_min = 0.0;
  double d0_max = 5.0;
  double d0_step = 0.1;
};

struct KkConfig {
  std::string absorption_csv;
  std::optional<double> center_nm;
  double edge_tolerance = 0.01;
  double taper_fraction = 0.05;
};

struct PropagateConfig {
  std::string domain = "fd";
  std::string chi_source = "model";
  std::string chi_csv;
};

struct XcorrConfig {
  std::string signal_csv;
  std::string off_csv;
  // Transform-limited Gaussian reference pulse.
  double reference_fwhm_ps = 0.160;
  std::optional<double> window_min_ps;
  std::optional<double> window_max_ps;
};

struct SimulationConfig {
  MediumConfig medium;
  SignalConfig signal;
  ControlConfig control;
  GridConfig grid;
  SolverConfig solver;
  AnalyticConfig analytic;
  KkConfig kk;
  PropagateConfig propagate;
  XcorrConfig xcorr;
};

// Accepts either a config document or a run summary (whose "config.*" keys
// hold the resolved config). Unknown keys and wrong types raise ConfigError
// naming the offending key. Relative paths resolve against `base_dir`.
SimulationConfig parse_config(const nlohmann::json& doc, const std::string& base_dir = ".");
SimulationConfig load_config(const std::string& path);

// Fully resolved form, with every default spelled out.
nlohmann::json to_json(const SimulationConfig& config);

// {"a": {"b": 1}} → {"a.b": 1}; arrays stay as values.
nlohmann::json flatten_dotted(const nlohmann::json& doc, const std::string& prefix = "");

// Builders; each validates the blocks it reads.
TimeGrid make_time_grid(const SimulationConfig& config);
PulseSpec make_pulse_spec(const SimulationConfig& config);
double operating_intensity(const SimulationConfig& config);
// Medium at the operating intensity.
RamanMedium make_medium(const SimulationConfig& config);
ControlField make_control(const SimulationConfig& config, const TimeGrid& grid);
SolverSettings make_solver(const SimulationConfig& config);

}  // namespace slowlight::app

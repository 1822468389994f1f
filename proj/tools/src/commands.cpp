#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "slowlight/analysis.hpp"
#include "slowlight/csv.hpp"
#include "slowlight/kramers_kronig.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/propagate_fd.hpp"
#include "slowlight/propagate_td.hpp"

namespace slowlight::app {
namespace {

using nlohmann::json;

Table read_csv_file(const std::string& path, const char* what) {
  if (path.empty()) throw ConfigError(std::string("config: '") + what + "' is required");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return read_table(in);
}

std::string render(const Table& table) {
  std::ostringstream out;
  write_table(out, table);
  return out.str();
}

CommandOutput start(const char* command, const SimulationConfig& config) {
  CommandOutput out;
  out.summary["command"] = command;
  const json flat = flatten_dotted(to_json(config), "config");
  for (const auto& [key, value] : flat.items()) out.summary[key] = value;
  out.summary["warnings"] = json::array();
  return out;
}

void put_figures(json& summary, const FiguresOfMerit& f) {
  summary["figures.peak_optical_depth"] = f.peak_optical_depth;
  summary["figures.group_delay_ps"] = f.group_delay_ps;
  summary["figures.loss_db"] = f.loss_db;
  summary["figures.delay_per_loss_ps_per_db"] = f.delay_per_loss_ps_per_db;
  summary["figures.delay_bandwidth_product"] = f.delay_bandwidth_product;
}

double relative_l2(const ComplexEnvelope& a, const ComplexEnvelope& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i) {
    num += std::norm(a.samples()[i] - b.samples()[i]);
    den += std::norm(b.samples()[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// The ingested or modelled susceptibility on the signal's detuning grid.
Susceptibility signal_chi(const SimulationConfig& config, const RamanMedium& medium, const FrequencyGrid& grid) {
  if (config.propagate.chi_source == "model") return sample_chi(medium, grid);
  const Susceptibility loaded = susceptibility_from_table(read_csv_file(config.propagate.chi_csv, "propagate.chi_csv"));
  return loaded.grid().matches(grid) ? loaded : loaded.resampled(grid);
}

void try_fwhm(json& summary, const char* key, const ComplexEnvelope& env) {
  try {
    summary[key] = fwhm(env);
  } catch (const AmbiguityError& e) {
    summary["warnings"].push_back(std::string(key) + ": " + e.what());
  }
}

// Gaussian intensity of the given FWHM sampled directly on the grid.
ComplexEnvelope gaussian_reference(double fwhm_ps, const TimeGrid& grid) {
  if (!(fwhm_ps > 0.0)) throw ConfigError("config: 'xcorr.reference_fwhm_ps' must be positive");
  if (fwhm_ps < 4.0 * grid.dt()) {
    std::ostringstream msg;
    msg << "xcorr: reference FWHM " << fwhm_ps << " ps spans fewer than 4 samples of the signal grid";
    throw GridError(msg.str());
  }
  std::vector<Complex> samples(grid.size());
  const double rate = 2.0 * std::numbers::ln2 / (fwhm_ps * fwhm_ps);
  for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = std::exp(-rate * grid.time(i) * grid.time(i));
  return ComplexEnvelope(grid, std::move(samples));
}

}  // namespace

CommandOutput run_analytic(const SimulationConfig& config) {
  const auto& a = config.analytic;
  const auto& m = config.medium;
  if (!(a.d0_min >= 0.0) || !(a.d0_max >= a.d0_min)) {
    throw ConfigError("config: analytic sweep needs 0 ≤ d0_min ≤ d0_max");
  }
  std::size_t steps = 0;
  if (a.d0_max > a.d0_min) {
    if (!(a.d0_step > 0.0)) throw ConfigError("config: 'analytic.d0_step' must be positive");
    steps = static_cast<std::size_t>(std::llround((a.d0_max - a.d0_min) / a.d0_step));
  }

  CommandOutput out = start("analytic", config);
  Table table{{"d0", "delay_ps", "loss_db", "dbp"}, {}};
  for (std::size_t i = 0; i <= steps; ++i) {
    const double d0 = i == steps ? a.d0_max : a.d0_min + static_cast<double>(i) * a.d0_step;
    const auto f = figures_of_merit(d0, m.gamma_invps, m.delta_invps);
    table.rows.push_back({d0, f.group_delay_ps, f.loss_db, f.delay_bandwidth_product});
  }
  out.files["analytic.csv"] = render(table);

  out.summary["analytic.rows"] = table.rows.size();
  out.summary["analytic.delay_per_loss_ps_per_db"] = delay_per_loss(m.gamma_invps, m.delta_invps);
  if (m.gamma_invps < m.delta_invps) {
    const double d0_unity = depth_for_delay_bandwidth_product(1.0, m.gamma_invps, m.delta_invps);
    out.summary["analytic.dbp_unity_d0"] = d0_unity;
    out.summary["analytic.dbp_unity_loss_db"] = figures_of_merit(d0_unity, m.gamma_invps, m.delta_invps).loss_db;
  }
  if (m.d0) put_figures(out.summary, figures_of_merit(*m.d0, m.gamma_invps, m.delta_invps));
  return out;
}

CommandOutput run_kk(const SimulationConfig& config, const CommandOptions& options) {
  const auto data = absorption_from_table(read_csv_file(config.kk.absorption_csv, "kk.absorption_csv"));
  const double center = config.kk.center_nm.value_or(config.medium.lambda0_nm);
  const double k0 = wavevector_from_wavelength(config.medium.lambda0_nm);
  const FrequencyGrid grid = make_time_grid(config).conjugate();

  const auto depth = ingest_absorption(data.records, center, grid, data.quantity);
  KramersKronigOptions kk_options;
  kk_options.edge_tolerance = config.kk.edge_tolerance;
  kk_options.taper_fraction = config.kk.taper_fraction;
  kk_options.force_taper = options.force_taper;
  const auto chi = kk_real_from_imag(depth, k0, config.medium.length_mm, kk_options);

  CommandOutput out = start("kk", config);
  out.files["susceptibility.csv"] = render(susceptibility_table(chi));
  out.summary["kk.peak_optical_depth"] = depth.peak();
  out.summary["kk.center_wavelength_nm"] = center;
  out.summary["kk.force_taper"] = options.force_taper;
  out.summary["kk.group_delay_ps"] = group_delay_from_susceptibility(chi, k0, config.medium.length_mm, 0.0);
  return out;
}

CommandOutput run_propagate(const SimulationConfig& config) {
  const TimeGrid grid = make_time_grid(config);
  const ComplexEnvelope input = synthesize_pulse(make_pulse_spec(config), grid);
  const FrequencyGrid fgrid = grid.conjugate();
  const bool td = config.propagate.domain == "td";
  if (td && config.propagate.chi_source != "model") {
    throw ConfigError("config: the td domain needs 'propagate.chi_source' = 'model'");
  }
  const RamanMedium medium = config.propagate.chi_source == "model"
                                 ? make_medium(config)
                                 : RamanMedium::symmetric(config.medium.gamma_invps, config.medium.delta_invps, 0.0,
                                                          config.medium.length_mm,
                                                          wavevector_from_wavelength(config.medium.lambda0_nm));
  const Susceptibility chi = signal_chi(config, medium, fgrid);
  const TransferFunction h = transfer_function(chi, medium.k0(), medium.length_mm());

  CommandOutput out = start("propagate", config);
  ComplexEnvelope output = input;
  if (td) {
    const ControlField control = make_control(config, grid);
    const TdResult result = solve(medium, control, input, make_solver(config));
    output = result.output;
    out.summary["td.max_coherence"] = result.max_coherence;
    for (const auto& w : result.warnings) out.summary["warnings"].push_back(w);
    if (control.is_constant()) {
      const ComplexEnvelope fd = propagate(input, h);
      out.summary["td_fd_l2_error"] = relative_l2(result.output, fd);
      out.summary["td_fd_delay_discrepancy_ps"] = centroid_delay(input, result.output) - centroid_delay(input, fd);
    }
  } else {
    output = propagate(input, h);
  }

  const SpectralEnvelope off = forward_transform(input);
  const SpectralEnvelope on = forward_transform(output);
  const auto absorption = absorption_spectrum(on.intensity(), off.intensity());
  Table a_table{{"detuning_invps", "absorption"}, {}};
  for (std::size_t k = 0; k < fgrid.size(); ++k) {
    if (absorption.valid[k]) a_table.rows.push_back({fgrid.detuning(k), absorption.values[k]});
  }

  out.files["input_envelope.csv"] = render(envelope_table(input));
  out.files["output_envelope.csv"] = render(envelope_table(output));
  out.files["spectrum_off.csv"] = render(spectrum_table(off));
  out.files["spectrum_on.csv"] = render(spectrum_table(on));
  out.files["absorption.csv"] = render(a_table);

  const std::size_t zero = fgrid.zero_index();
  out.summary["delay_ps"] = centroid_delay(input, output);
  out.summary["loss_db"] = energy_loss_db(input, output);
  out.summary["center_transmission"] =
      off.intensity()[zero] > 0.0 ? on.intensity()[zero] / off.intensity()[zero] : 0.0;
  out.summary["model_center_transmission"] = std::norm(h.values[zero]);
  out.summary["input_transform_limited_fwhm_ps"] = transform_limited_fwhm(make_pulse_spec(config));
  try_fwhm(out.summary, "input_fwhm_ps", input);
  try_fwhm(out.summary, "output_fwhm_ps", output);
  out.summary["peak_delay_ps"] = peak_time(output) - peak_time(input);
  if (config.propagate.chi_source == "model" && medium.is_symmetric()) put_figures(out.summary, figures_of_merit(medium));
  return out;
}

CommandOutput run_sweep(const SimulationConfig& config) {
  const auto& intensities = config.control.intensity_list;
  const TimeGrid grid = make_time_grid(config);
  const ComplexEnvelope input = synthesize_pulse(make_pulse_spec(config), grid);
  const bool td = config.propagate.domain == "td";

  std::vector<ScanPoint> points;
  if (td) {
    if (config.propagate.chi_source != "model") {
      throw ConfigError("config: the td domain needs 'propagate.chi_source' = 'model'");
    }
    const RamanMedium medium = make_medium(config);
    points = delay_vs_control_scan(medium, make_control(config, grid), intensities, input, make_solver(config));
  } else {
    const double k0 = wavevector_from_wavelength(config.medium.lambda0_nm);
    Susceptibility unit = Susceptibility::zeros(grid.conjugate());
    if (config.propagate.chi_source == "model") {
      unit = sample_chi(make_medium(config).with_control_intensity(1.0), grid.conjugate());
    } else {
      const RamanMedium unused = RamanMedium::symmetric(config.medium.gamma_invps, config.medium.delta_invps, 0.0,
                                                        config.medium.length_mm, k0);
      unit = signal_chi(config, unused, grid.conjugate());
    }
    points = fd_delay_scan(unit, intensities, input, k0, config.medium.length_mm);
  }

  CommandOutput out = start("sweep", config);
  Table table{{"control_intensity", "delay_ps", "loss_db"}, {}};
  std::vector<std::pair<double, double>> series;
  double max_delay = 0.0;
  for (const auto& p : points) {
    table.rows.push_back({p.control_intensity, p.delay_ps, p.loss_db});
    series.emplace_back(p.control_intensity, p.delay_ps);
    if (std::abs(p.delay_ps) > std::abs(max_delay)) max_delay = p.delay_ps;
  }
  out.files["sweep.csv"] = render(table);
  out.summary["sweep.points"] = points.size();
  out.summary["sweep.max_delay_ps"] = max_delay;
  if (series.size() >= 3) {
    const auto lin = linearity_diagnostic(series);
    out.summary["linearity.slope_ps_per_intensity"] = lin.slope;
    out.summary["linearity.residual_ratio"] = lin.residual_ratio;
  } else {
    out.summary["warnings"].push_back("linearity diagnostic needs at least 3 scan points");
  }
  return out;
}

CommandOutput run_xcorr(const SimulationConfig& config) {
  const auto& x = config.xcorr;
  const ComplexEnvelope signal = envelope_from_table(read_csv_file(x.signal_csv, "xcorr.signal_csv"));
  const ComplexEnvelope reference = gaussian_reference(x.reference_fwhm_ps, signal.grid());
  std::optional<MomentWindow> window;
  if (x.window_min_ps || x.window_max_ps) {
    window = MomentWindow{x.window_min_ps.value_or(-std::numeric_limits<double>::infinity()),
                          x.window_max_ps.value_or(std::numeric_limits<double>::infinity())};
  }

  CommandOutput out = start("xcorr", config);
  const CorrelationCurve on = cross_correlate(signal, reference).normalized_to_peak();
  Table table{{"delay_ps", "intensity"}, {}};
  for (std::size_t i = 0; i < on.delays.size(); ++i) table.rows.push_back({on.delays[i], on.intensity[i]});
  out.files["correlation.csv"] = render(table);

  const double width = fwhm(on);
  out.summary["xcorr.fwhm_ps"] = width;
  out.summary["xcorr.reference_fwhm_ps"] = x.reference_fwhm_ps;
  out.summary["xcorr.deconvolved_duration_ps"] = deconvolve_duration(width, x.reference_fwhm_ps);
  out.summary["xcorr.first_moment_ps"] = first_moment(on, window);

  if (!x.off_csv.empty()) {
    const ComplexEnvelope off_signal = envelope_from_table(read_csv_file(x.off_csv, "xcorr.off_csv"));
    if (!off_signal.grid().matches(signal.grid())) throw GridError("xcorr: on and off envelopes use different grids");
    const CorrelationCurve off = cross_correlate(off_signal, reference).normalized_to_peak();
    Table off_table{{"delay_ps", "intensity"}, {}};
    for (std::size_t i = 0; i < off.delays.size(); ++i) off_table.rows.push_back({off.delays[i], off.intensity[i]});
    out.files["correlation_off.csv"] = render(off_table);
    out.summary["xcorr.off_fwhm_ps"] = fwhm(off);
    out.summary["xcorr.first_moment_delay_ps"] = first_moment_delay(on, off, window);
  }
  return out;
}

void write_outputs(const CommandOutput& output, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());

  std::map<std::string, std::string> files = output.files;
  files["summary.json"] = output.summary.dump(2) + "\n";
  for (const auto& [name, contents] : files) {
    const fs::path target = fs::path(out_dir) / name;
    const fs::path temp = fs::path(out_dir) / ("." + name + ".tmp");
    {
      std::ofstream out(temp, std::ios::binary | std::ios::trunc);
      out << contents;
      out.flush();
      if (!out) throw ConfigError("cannot write '" + temp.string() + "'");
    }
    fs::rename(temp, target, ec);
    if (ec) throw ConfigError("cannot move '" + temp.string() + "' into place: " + ec.message());
  }
}

}  // namespace slowlight::app

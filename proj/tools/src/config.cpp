#include "config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace slowlight::app {
namespace {

using nlohmann::json;

// Reads one object block and remembers which keys were consumed so leftovers
// can be reported.
class Block {
 public:
  Block(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError("config: '" + path_ + "' must be an object");
  }

  // Rejects any key no reader asked for.
  void done() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError("config: unknown key '" + name(key) + "'");
    }
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  void number(const std::string& key, double& out) {
    if (auto v = find(key)) out = as_number(*v, key);
  }
  void number(const std::string& key, std::optional<double>& out) {
    if (auto v = find(key)) out = as_number(*v, key);
  }
  void count(const std::string& key, std::size_t& out) {
    if (auto v = find(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) {
        throw ConfigError("config: '" + name(key) + "' must be a non-negative integer");
      }
      out = v->get<std::size_t>();
    }
  }
  void text(const std::string& key, std::string& out) {
    if (auto v = find(key)) {
      if (!v->is_string()) throw ConfigError("config: '" + name(key) + "' must be a string");
      out = v->get<std::string>();
    }
  }
  void numbers(const std::string& key, std::vector<double>& out) {
    if (auto v = find(key)) {
      if (!v->is_array()) throw ConfigError("config: '" + name(key) + "' must be an array of numbers");
      out.clear();
      for (const auto& item : *v) out.push_back(as_number(item, key));
    }
  }
  std::optional<json> child(const std::string& key) {
    if (auto v = find(key)) return *v;
    return std::nullopt;
  }
  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }
  double as_number(const json& v, const std::string& key) const {
    if (!v.is_number()) throw ConfigError("config: '" + name(key) + "' must be a number");
    return v.get<double>();
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void one_of(const std::string& value, std::initializer_list<const char*> allowed, const std::string& key) {
  for (const char* a : allowed) {
    if (value == a) return;
  }
  std::ostringstream msg;
  msg << "config: '" << key << "' = '" << value << "' must be one of";
  for (const char* a : allowed) msg << " '" << a << "'";
  throw ConfigError(msg.str());
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  return std::filesystem::absolute(p).lexically_normal().string();
}

json unflatten_summary(const json& doc) {
  json nested = json::object();
  const std::string prefix = "config.";
  for (const auto& [key, value] : doc.items()) {
    if (key.rfind(prefix, 0) != 0) continue;
    json* node = &nested;
    std::string rest = key.substr(prefix.size());
    std::size_t dot;
    while ((dot = rest.find('.')) != std::string::npos) {
      node = &(*node)[rest.substr(0, dot)];
      rest = rest.substr(dot + 1);
    }
    (*node)[rest] = value;
  }
  return nested;
}

bool is_summary(const json& doc) {
  for (const auto& [key, value] : doc.items()) {
    if (key.rfind("config.", 0) == 0) return true;
  }
  return false;
}

void put(json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

}  // namespace

SimulationConfig parse_config(const json& input, const std::string& base_dir) {
  if (!input.is_object()) throw ConfigError("config: top level must be an object");
  const json doc = is_summary(input) ? unflatten_summary(input) : input;
  SimulationConfig c;
  Block root(doc, "");
  if (auto node = root.child("medium")) {
    Block b(*node, "medium");
    b.number("gamma_invps", c.medium.gamma_invps);
    b.number("delta_invps", c.medium.delta_invps);
    b.number("d0", c.medium.d0);
    b.number("g_per_intensity", c.medium.g_per_intensity);
    b.number("control_intensity", c.medium.control_intensity);
    b.number("length_mm", c.medium.length_mm);
    b.number("lambda0_nm", c.medium.lambda0_nm);
    b.done();
  }
  if (auto node = root.child("signal")) {
    Block b(*node, "signal");
    b.text("shape", c.signal.shape);
    b.number("bandwidth_invps", c.signal.bandwidth_invps);
    b.number("duration_ps", c.signal.duration_ps);
    b.number("gdd_ps2", c.signal.gdd_ps2);
    b.number("edge_fraction", c.signal.edge_fraction);
    b.done();
  }
  if (auto node = root.child("control")) {
    Block b(*node, "control");
    b.text("shape", c.control.shape);
    b.number("fwhm_ps", c.control.fwhm_ps);
    b.number("rise_ps", c.control.rise_ps);
    b.number("center_ps", c.control.center_ps);
    b.number("intensity", c.control.intensity);
    b.numbers("intensity_list", c.control.intensity_list);
    b.done();
  }
  if (auto node = root.child("grid")) {
    Block b(*node, "grid");
    b.count("n", c.grid.n);
    b.number("dt_ps", c.grid.dt_ps);
    b.done();
  }
  if (auto node = root.child("solver")) {
    Block b(*node, "solver");
    b.count("nz", c.solver.nz);
    b.text("scheme", c.solver.scheme);
    b.done();
  }
  if (auto node = root.child("analytic")) {
    Block b(*node, "analytic");
    b.number("d0_min", c.analytic.d0_min);
    b.number("d0_max", c.analytic.d0_max);
    b.number("d0_step", c.analytic.d0_step);
    b.done();
  }
  if (auto node = root.child("kk")) {
    Block b(*node, "kk");
    b.text("absorption_csv", c.kk.absorption_csv);
    b.number("center_nm", c.kk.center_nm);
    b.number("edge_tolerance", c.kk.edge_tolerance);
    b.number("taper_fraction", c.kk.taper_fraction);
    b.done();
  }
  if (auto node = root.child("propagate")) {
    Block b(*node, "propagate");
    b.text("domain", c.propagate.domain);
    b.text("chi_source", c.propagate.chi_source);
    b.text("chi_csv", c.propagate.chi_csv);
    b.done();
  }
  if (auto node = root.child("xcorr")) {
    Block b(*node, "xcorr");
    b.text("signal_csv", c.xcorr.signal_csv);
    b.text("off_csv", c.xcorr.off_csv);
    b.number("reference_fwhm_ps", c.xcorr.reference_fwhm_ps);
    b.number("window_min_ps", c.xcorr.window_min_ps);
    b.number("window_max_ps", c.xcorr.window_max_ps);
    b.done();
  }
  root.done();

  one_of(c.signal.shape, {"flat_top", "gaussian"}, "signal.shape");
  one_of(c.control.shape, {"constant", "gaussian", "flat_top"}, "control.shape");
  one_of(c.solver.scheme, {"midpoint"}, "solver.scheme");
  one_of(c.propagate.domain, {"fd", "td"}, "propagate.domain");
  one_of(c.propagate.chi_source, {"model", "csv"}, "propagate.chi_source");
  if (c.medium.d0 && c.medium.g_per_intensity) {
    throw ConfigError("config: give either 'medium.d0' or 'medium.g_per_intensity', not both");
  }
  if (c.medium.control_intensity && c.control.intensity) {
    throw ConfigError("config: give either 'medium.control_intensity' or 'control.intensity', not both");
  }
  if (c.signal.bandwidth_invps && c.signal.duration_ps) {
    throw ConfigError("config: give either 'signal.bandwidth_invps' or 'signal.duration_ps', not both");
  }
  c.kk.absorption_csv = resolve_path(c.kk.absorption_csv, base_dir);
  c.propagate.chi_csv = resolve_path(c.propagate.chi_csv, base_dir);
  c.xcorr.signal_csv = resolve_path(c.xcorr.signal_csv, base_dir);
  c.xcorr.off_csv = resolve_path(c.xcorr.off_csv, base_dir);
  return c;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
  const auto base = std::filesystem::path(path).parent_path().string();
  return parse_config(doc, base.empty() ? "." : base);
}

json to_json(const SimulationConfig& c) {
  json j;
  auto& m = j["medium"];
  m["gamma_invps"] = c.medium.gamma_invps;
  m["delta_invps"] = c.medium.delta_invps;
  put(m, "d0", c.medium.d0);
  put(m, "g_per_intensity", c.medium.g_per_intensity);
  put(m, "control_intensity", c.medium.control_intensity);
  m["length_mm"] = c.medium.length_mm;
  m["lambda0_nm"] = c.medium.lambda0_nm;

  auto& s = j["signal"];
  s["shape"] = c.signal.shape;
  put(s, "bandwidth_invps", c.signal.bandwidth_invps);
  put(s, "duration_ps", c.signal.duration_ps);
  s["gdd_ps2"] = c.signal.gdd_ps2;
  s["edge_fraction"] = c.signal.edge_fraction;

  auto& ctl = j["control"];
  ctl["shape"] = c.control.shape;
  put(ctl, "fwhm_ps", c.control.fwhm_ps);
  ctl["rise_ps"] = c.control.rise_ps;
  ctl["center_ps"] = c.control.center_ps;
  put(ctl, "intensity", c.control.intensity);
  ctl["intensity_list"] = c.control.intensity_list;

  j["grid"] = {{"n", c.grid.n}, {"dt_ps", c.grid.dt_ps}};
  j["solver"] = {{"nz", c.solver.nz}, {"scheme", c.solver.scheme}};
  j["analytic"] = {{"d0_min", c.analytic.d0_min}, {"d0_max", c.analytic.d0_max}, {"d0_step", c.analytic.d0_step}};

  auto& kk = j["kk"];
  kk["absorption_csv"] = c.kk.absorption_csv;
  put(kk, "center_nm", c.kk.center_nm);
  kk["edge_tolerance"] = c.kk.edge_tolerance;
  kk["taper_fraction"] = c.kk.taper_fraction;

  j["propagate"] = {{"domain", c.propagate.domain},
                    {"chi_source", c.propagate.chi_source},
                    {"chi_csv", c.propagate.chi_csv}};

  auto& x = j["xcorr"];
  x["signal_csv"] = c.xcorr.signal_csv;
  x["off_csv"] = c.xcorr.off_csv;
  x["reference_fwhm_ps"] = c.xcorr.reference_fwhm_ps;
  put(x, "window_min_ps", c.xcorr.window_min_ps);
  put(x, "window_max_ps", c.xcorr.window_max_ps);
  return j;
}

json flatten_dotted(const json& doc, const std::string& prefix) {
  json out = json::object();
  for (const auto& [key, value] : doc.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      const json inner = flatten_dotted(value, name);
      for (const auto& [k, v] : inner.items()) out[k] = v;
    } else {
      out[name] = value;
    }
  }
  return out;
}

TimeGrid make_time_grid(const SimulationConfig& c) {
  return TimeGrid::centered(c.grid.dt_ps, c.grid.n);
}

PulseSpec make_pulse_spec(const SimulationConfig& c) {
  PulseSpec spec;
  spec.shape = c.signal.shape == "gaussian" ? PulseShape::gaussian : PulseShape::flat_top_spectrum;
  if (c.signal.bandwidth_invps) {
    spec.width = Bandwidth{*c.signal.bandwidth_invps};
  } else if (c.signal.duration_ps) {
    spec.width = Duration{*c.signal.duration_ps};
  } else {
    throw ConfigError("config: signal needs 'bandwidth_invps' or 'duration_ps'");
  }
  spec.gdd_ps2 = c.signal.gdd_ps2;
  spec.edge_fraction = c.signal.edge_fraction;
  return spec;
}

double operating_intensity(const SimulationConfig& c) {
  const double intensity = c.control.intensity.value_or(c.medium.control_intensity.value_or(1.0));
  if (!(intensity >= 0.0)) throw ConfigError("config: control intensity must be non-negative");
  return intensity;
}

RamanMedium make_medium(const SimulationConfig& c) {
  const auto& m = c.medium;
  const double k0 = wavevector_from_wavelength(m.lambda0_nm);
  double g = 0.0;
  if (m.d0) {
    if (!(*m.d0 >= 0.0)) throw ConfigError("config: 'medium.d0' must be non-negative");
    if (!(m.length_mm > 0.0)) throw ConfigError("config: 'medium.length_mm' must be positive");
    g = *m.d0 * m.gamma_invps / (k0 * m.length_mm);
  } else if (m.g_per_intensity) {
    g = *m.g_per_intensity;
  } else {
    throw ConfigError("config: medium needs 'd0' or 'g_per_intensity'");
  }
  return RamanMedium::symmetric(m.gamma_invps, m.delta_invps, g, m.length_mm, k0, operating_intensity(c));
}

ControlField make_control(const SimulationConfig& c, const TimeGrid& grid) {
  if (c.control.shape == "constant") return ControlField::constant();
  if (!c.control.fwhm_ps) throw ConfigError("config: 'control.fwhm_ps' is required for shaped control");
  if (c.control.shape == "gaussian") return ControlField::gaussian(*c.control.fwhm_ps, grid, c.control.center_ps);
  return ControlField::flat_top(*c.control.fwhm_ps, grid, c.control.rise_ps, c.control.center_ps);
}

SolverSettings make_solver(const SimulationConfig& c) {
  SolverSettings s;
  s.nz = c.solver.nz;
  s.scheme = Scheme::midpoint;
  return s;
}

}  // namespace slowlight::app

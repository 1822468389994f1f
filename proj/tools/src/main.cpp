#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "slowlight/errors.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace slowlight;
  CLI::App app{"Raman slow-light simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  bool force_taper = false;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON config or a previous summary.json");
    if (needs_config) opt->required();
    opt->check(CLI::ExistingFile);
    sub->add_option("--out-dir", out_dir, "Directory for CSV outputs and summary.json");
    sub->add_flag("--force-taper", force_taper, "Taper truncated absorption spectra instead of refusing");
  };
  auto* analytic = app.add_subcommand("analytic", "Closed-form delay, loss and DBP versus d0");
  auto* kk = app.add_subcommand("kk", "Re χ from an absorption spectrum via Kramers-Kronig");
  auto* propagate = app.add_subcommand("propagate", "Propagate a signal pulse (fd or td)");
  auto* sweep = app.add_subcommand("sweep", "Delay and loss versus control intensity");
  auto* xcorr = app.add_subcommand("xcorr", "Intensity cross-correlation metrics");
  add_common(analytic, false);
  add_common(kk, true);
  add_common(propagate, true);
  add_common(sweep, true);
  add_common(xcorr, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    const app::SimulationConfig config =
        config_path.empty() ? app::parse_config(nlohmann::json::object()) : app::load_config(config_path);
    app::CommandOutput output;
    if (*analytic) {
      output = app::run_analytic(config);
    } else if (*kk) {
      output = app::run_kk(config, {force_taper});
    } else if (*propagate) {
      output = app::run_propagate(config);
    } else if (*sweep) {
      output = app::run_sweep(config);
    } else {
      output = app::run_xcorr(config);
    }
    app::write_outputs(output, out_dir);
    for (const auto& w : output.summary["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
    return 0;
  } catch (const ResolutionError& e) {
    std::cerr << "error: " << e.what() << " (required nz ≥ " << e.required_nz() << ", dt ≤ " << e.max_dt_ps()
              << " ps)\n";
    return kExitNumerical;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

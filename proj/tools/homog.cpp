// Command line front end: laminate / study / divcurl / corrector, all driven
// by one JSON config. See README.md for the schema.

#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <string>

#include "homog/driver.hpp"

namespace {

struct SubOptions {
  std::string config_path;
  std::string out_override;
  bool print_config = false;
  long seed = 0;  // reserved; every computation is deterministic
};

void attach_common(CLI::App* sub, SubOptions& opts) {
  sub->add_option("--config", opts.config_path, "path to the JSON config")->required();
  sub->add_option("--out", opts.out_override, "output directory (overrides output.directory)");
  sub->add_flag("--print-config", opts.print_config, "echo the parsed config and exit");
  sub->add_option("--seed", opts.seed, "reserved, unused");
}

int dispatch(const SubOptions& opts,
             const std::function<void(const homog::RunConfig&, const std::string&)>& body) {
  try {
    const homog::RunConfig cfg = homog::load_run_config(opts.config_path);
    if (opts.print_config) {
      std::cout << homog::print_run_config(cfg);
      return 0;
    }
    const std::string out_dir = opts.out_override.empty() ? cfg.output_dir : opts.out_override;
    body(cfg, out_dir);
    return 0;
  } catch (const homog::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == homog::Errc::config_invalid ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laminate homogenization and H-convergence studies"};
  app.require_subcommand(1);

  SubOptions laminate_opts, study_opts, divcurl_opts, corrector_opts;
  CLI::App* laminate = app.add_subcommand("laminate", "homogenized tensor only (ahom.json)");
  CLI::App* study = app.add_subcommand("study", "full convergence study (report.csv, ahom.json, summary.txt)");
  CLI::App* divcurl = app.add_subcommand("divcurl", "positive/negative div-curl control bench");
  CLI::App* corrector = app.add_subcommand("corrector", "corrector-only report");
  attach_common(laminate, laminate_opts);
  attach_common(study, study_opts);
  attach_common(divcurl, divcurl_opts);
  attach_common(corrector, corrector_opts);

  CLI11_PARSE(app, argc, argv);

  if (laminate->parsed())
    return dispatch(laminate_opts, [](const homog::RunConfig& cfg, const std::string& out) {
      homog::run_laminate(cfg, out, std::cout);
    });
  if (study->parsed())
    return dispatch(study_opts, [](const homog::RunConfig& cfg, const std::string& out) {
      homog::run_study(cfg, out, std::cout);
    });
  if (divcurl->parsed())
    return dispatch(divcurl_opts, [](const homog::RunConfig& cfg, const std::string& out) {
      homog::run_divcurl(cfg, out, std::cout);
    });
  if (corrector->parsed())
    return dispatch(corrector_opts, [](const homog::RunConfig& cfg, const std::string& out) {
      homog::run_corrector(cfg, out, std::cout);
    });
  return 1;
}

#pragma once

#include <iosfwd>
#include <string>

#include "homog/run_config.hpp"

namespace homog {

/// Subcommand bodies behind the CLI. Each writes deterministic artifacts
/// into out_dir and mirrors the summary on the console stream. Validation
/// problems raise ConfigInvalid; numerical failures leave a failure marker
/// in the partial report and rethrow.
///
/// study:     report.csv + ahom.json + summary.txt (full pipeline)
/// laminate:  ahom.json
/// divcurl:   summary.txt (positive and negative control benches)
/// corrector: report.csv + summary.txt (quotient columns left as nan)
void run_study(const RunConfig& cfg, const std::string& out_dir, std::ostream& console);
void run_laminate(const RunConfig& cfg, const std::string& out_dir, std::ostream& console);
void run_divcurl(const RunConfig& cfg, const std::string& out_dir, std::ostream& console);
void run_corrector(const RunConfig& cfg, const std::string& out_dir, std::ostream& console);

/// report.csv content for a study (fixed column order, 17 significant
/// digits). Exposed for the determinism tests.
std::string report_csv(const ConvergenceReport& report);

/// ahom.json content: homogenized matrix plus the averaged factors.
std::string ahom_json(const Mat2& a_hom, const Mat2& factor_mean, const Mat2& product_mean);

}  // namespace homog

#include "homog/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

namespace homog {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::config_invalid, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) raise(Errc::config_invalid, "short write to '" + path.string() + "'");
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) raise(Errc::config_invalid, "cannot create output directory '" + out_dir + "'");
  return dir;
}

struct CheckLine {
  char status;  // 'P', 'F', 'S'
  std::string text;
};

class Summary {
 public:
  void require(bool ok, const std::string& text) {
    lines_.push_back({ok ? 'P' : 'F', text});
    if (!ok) failed_ = true;
  }
  void skip(const std::string& text) { lines_.push_back({'S', text}); }
  void note(const std::string& text) { lines_.push_back({'N', text}); }

  bool failed() const { return failed_; }

  std::string str(const std::string& header) const {
    std::ostringstream out;
    out << header << "\n";
    for (const auto& l : lines_) {
      switch (l.status) {
        case 'P': out << "[PASS] "; break;
        case 'F': out << "[FAIL] "; break;
        case 'S': out << "[SKIP] "; break;
        default: out << "       "; break;
      }
      out << l.text << "\n";
    }
    out << "overall: " << (failed_ ? "FAIL" : "PASS") << "\n";
    return out.str();
  }

 private:
  std::vector<CheckLine> lines_;
  bool failed_ = false;
};

std::string ratios_text(const std::vector<double>& values) {
  std::ostringstream out;
  out << "ratios (";
  for (std::size_t k = 1; k < values.size(); ++k)
    out << (k > 1 ? ", " : "") << fmt6(values[k] / values[k - 1]);
  out << ")";
  return out.str();
}

/// Decay over the epsilon list: every consecutive ratio <= threshold, or the
/// whole series already sits at the degenerate floor.
void check_decay(Summary& summary, const std::string& name, const std::vector<double>& values,
                 double threshold, double degenerate_floor = 1e-9) {
  if (values.size() < 2) {
    summary.skip(name + ": needs at least two epsilon values");
    return;
  }
  bool all_floor = true;
  for (double v : values) all_floor = all_floor && v <= degenerate_floor;
  if (all_floor) {
    summary.require(true, name + ": all values <= " + fmt6(degenerate_floor) + " (degenerate)");
    return;
  }
  bool ok = true;
  for (std::size_t k = 1; k < values.size(); ++k)
    ok = ok && values[k] <= threshold * values[k - 1];
  summary.require(ok, name + ": " + ratios_text(values) + " <= " + fmt6(threshold));
}

std::string matrix_json(const Mat2& m) {
  std::ostringstream out;
  out << "[[" << fmt17(m(0, 0)) << ", " << fmt17(m(0, 1)) << "], [" << fmt17(m(1, 0)) << ", "
      << fmt17(m(1, 1)) << "]]";
  return out.str();
}

std::string eps_text(const std::vector<double>& eps) {
  std::ostringstream out;
  out << "[";
  for (std::size_t k = 0; k < eps.size(); ++k) out << (k ? ", " : "") << fmt6(eps[k]);
  out << "]";
  return out.str();
}

std::vector<double> column(const ConvergenceReport& r, double StudyRow::* member) {
  std::vector<double> out;
  for (const auto& row : r.rows) out.push_back(row.*member);
  return out;
}

Summary study_summary(const ConvergenceReport& report, bool quotient_checks) {
  Summary s;
  check_decay(s, "l2_u_err decay", column(report, &StudyRow::l2_u_err), 0.7);
  check_decay(s, "weak_E_err decay", column(report, &StudyRow::weak_E_err), 0.7);
  check_decay(s, "weak_D_err decay", column(report, &StudyRow::weak_D_err), 0.7);
  if (quotient_checks) {
    check_decay(s, "weak_M_err decay", column(report, &StudyRow::weak_M_err), 0.65);
    check_decay(s, "weak_P_err decay", column(report, &StudyRow::weak_P_err), 0.65);
    check_decay(s, "divcurl_err decay", column(report, &StudyRow::divcurl_err), 0.7);
    double worst_identity = 0.0;
    for (const auto& row : report.rows)
      worst_identity = std::max(worst_identity, row.quotient_identity_max);
    s.require(worst_identity <= 1e-13,
              "quotient identity: max " + fmt6(worst_identity) + " <= 1e-13");
  }
  if (!report.rows.empty()) {
    const StudyRow& last = report.rows.back();
    const bool corr_e_ok = last.corr_E_err <= 0.5 * last.naive_E_err || last.naive_E_err <= 1e-9;
    const bool corr_d_ok = last.corr_D_err <= 0.5 * last.naive_D_err || last.naive_D_err <= 1e-9;
    s.require(corr_e_ok, "corrected E error " + fmt6(last.corr_E_err) + " <= 0.5 * naive " +
                             fmt6(last.naive_E_err) + " at eps=" + fmt6(last.epsilon));
    s.require(corr_d_ok, "corrected D error " + fmt6(last.corr_D_err) + " <= 0.5 * naive " +
                             fmt6(last.naive_D_err) + " at eps=" + fmt6(last.epsilon));
    const double base = std::max(report.rows.front().corrector_grad_max,
                                 report.rows.front().corrector_flux_max);
    double worst = base;
    for (const auto& row : report.rows)
      worst = std::max({worst, row.corrector_grad_max, row.corrector_flux_max});
    s.require(worst <= 1.05 * base, "corrector bounds stable: max " + fmt6(worst) +
                                        " <= 1.05 * " + fmt6(base));
  }
  double worst_resid = 0.0;
  for (const auto& row : report.rows) worst_resid = std::max(worst_resid, row.hminus1_divD);
  s.require(worst_resid <= 1e-6,
            "flux divergence H^-1 proxy: max " + fmt6(worst_resid) + " <= 1e-06");
  return s;
}

}  // namespace

std::string report_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "epsilon,l2_u_err,weak_E_err,weak_D_err,weak_M_err,weak_P_err,divcurl_err,"
         "corr_E_err,corr_D_err,naive_E_err,naive_D_err,hminus1_divD\n";
  for (const auto& r : report.rows) {
    out << fmt17(r.epsilon) << ',' << fmt17(r.l2_u_err) << ',' << fmt17(r.weak_E_err) << ','
        << fmt17(r.weak_D_err) << ',' << fmt17(r.weak_M_err) << ',' << fmt17(r.weak_P_err) << ','
        << fmt17(r.divcurl_err) << ',' << fmt17(r.corr_E_err) << ',' << fmt17(r.corr_D_err) << ','
        << fmt17(r.naive_E_err) << ',' << fmt17(r.naive_D_err) << ',' << fmt17(r.hminus1_divD)
        << '\n';
  }
  return out.str();
}

std::string ahom_json(const Mat2& a_hom, const Mat2& factor_mean, const Mat2& product_mean) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"a_hom\": " << matrix_json(a_hom) << ",\n";
  out << "  \"factor_mean\": " << matrix_json(factor_mean) << ",\n";
  out << "  \"product_mean\": " << matrix_json(product_mean) << "\n";
  out << "}\n";
  return out.str();
}

void run_laminate(const RunConfig& cfg, const std::string& out_dir, std::ostream& console) {
  const auto dir = prepare_out_dir(out_dir);
  const HomogenizedLaminate hom = homogenized_laminate(cfg.profile);
  write_file(dir / "ahom.json", ahom_json(hom.a_hom, hom.factor_mean, hom.product_mean));
  console << "a_hom = " << matrix_json(hom.a_hom) << "\n";
}

namespace {

void run_study_like(const RunConfig& cfg, const std::string& out_dir, std::ostream& console,
                    bool quotient_checks) {
  const auto dir = prepare_out_dir(out_dir);
  const HomogenizedLaminate hom = homogenized_laminate(cfg.profile);
  write_file(dir / "ahom.json", ahom_json(hom.a_hom, hom.factor_mean, hom.product_mean));

  const std::string header = std::string(quotient_checks ? "study" : "corrector") +
                             ": eps=" + eps_text(cfg.epsilons) +
                             " n_cells=" + std::to_string(cfg.n_cells);
  ConvergenceReport report;
  try {
    report = hconvergence_study(cfg.study_config(quotient_checks));
  } catch (const Error& e) {
    if (e.code() == Errc::config_invalid || e.code() == Errc::under_resolved) throw;
    write_file(dir / "report.csv", report_csv(report) + "# failure: " + e.what() + "\n");
    Summary s;
    s.require(false, std::string("aborted: ") + e.what());
    const std::string text = s.str(header);
    write_file(dir / "summary.txt", text);
    console << text;
    throw;
  }

  write_file(dir / "report.csv", report_csv(report));
  const Summary s = study_summary(report, quotient_checks);
  const std::string text = s.str(header);
  write_file(dir / "summary.txt", text);
  console << text;
}

}  // namespace

void run_study(const RunConfig& cfg, const std::string& out_dir, std::ostream& console) {
  run_study_like(cfg, out_dir, console, true);
}

void run_corrector(const RunConfig& cfg, const std::string& out_dir, std::ostream& console) {
  run_study_like(cfg, out_dir, console, false);
}

void run_divcurl(const RunConfig& cfg, const std::string& out_dir, std::ostream& console) {
  const auto dir = prepare_out_dir(out_dir);
  const Grid grid(cfg.n_cells);
  if (grid.h() > cfg.epsilons.back() / 4.0)
    raise(Errc::config_invalid,
          "config key 'epsilons': grid.n_cells does not resolve the smallest epsilon");
  const TestFunctionFamily family =
      TestFunctionFamily::tensor_poly_plus_sines(cfg.polynomial_degree);

  // Positive control: divergence-free against curl-free oscillations with
  // separated directions; the pairing decays with epsilon.
  std::vector<std::pair<double, VectorField>> pos_f, pos_g, neg;
  for (double eps : cfg.epsilons) {
    pos_f.emplace_back(eps, VectorField::sample(grid, [eps](double, double y) {
                         return Vec2(std::sin(y / eps), 0.0);
                       }));
    pos_g.emplace_back(eps, VectorField::sample(grid, [eps](double x, double) {
                         return Vec2(std::sin(x / eps), 0.0);
                       }));
    // Negative control: both factors oscillate in the same direction and the
    // curl hypothesis fails; the pairing settles at the mean of sin^2.
    neg.emplace_back(eps, VectorField::sample(grid, [eps](double x, double) {
                       return Vec2(0.0, std::sin(x / eps));
                     }));
  }
  const VectorField zero = VectorField::constant(grid, Vec2::Zero());
  const PairingErrorTable positive = divcurl_check(pos_f, pos_g, zero, zero, family);
  const PairingErrorTable negative = divcurl_check(neg, neg, zero, zero, family);

  Summary s;
  for (std::size_t k = 0; k < positive.epsilons.size(); ++k)
    s.note("eps=" + fmt6(positive.epsilons[k]) +
           ": positive max err " + fmt6(positive.max_error[k]) + ", negative pairing (phi=1) " +
           fmt6(negative.errors[k][0]));
  check_decay(s, "positive control decay", positive.max_error, 0.65);
  if (!negative.errors.empty()) {
    const double tail = negative.errors.back()[0];
    s.require(std::abs(tail - 0.5) <= 0.02,
              "negative control pairing " + fmt6(tail) + " within 0.5 +- 0.02");
  }

  const std::string text =
      s.str("divcurl: eps=" + eps_text(cfg.epsilons) + " n_cells=" + std::to_string(cfg.n_cells));
  write_file(dir / "summary.txt", text);
  console << text;
}

}  // namespace homog

// Acceptance suite: every criterion prints exactly one [PASS]/[FAIL] line;
// the exit code is the number of failures.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "homog/driver.hpp"
#include "homog/elliptic.hpp"
#include "homog/hconv.hpp"
#include "oracles.hpp"

using namespace homog;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool ratios_below(const std::vector<double>& v, double threshold, std::string* text,
                  bool strictly_decreasing = false) {
  bool ok = v.size() >= 2;
  std::string t = "ratios";
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double r = v[k] / v[k - 1];
    ok = ok && r <= threshold && (!strictly_decreasing || v[k] < v[k - 1]);
    t += " " + fmt(r);
  }
  *text += t + " <= " + fmt(threshold);
  return ok;
}

PeriodicProfile isotropic_two_layer() {
  return PeriodicProfile::piecewise({{0.5, Mat2::Identity()}, {0.5, 4.0 * Mat2::Identity()}});
}

MatrixField random_stratified_spd(const Grid& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Mat2> per_column(g.n());
  for (auto& m : per_column) {
    Mat2 r;
    r << u(rng), u(rng), u(rng), u(rng);
    m = r.transpose() * r + 0.4 * Mat2::Identity();
  }
  MatrixField a(g, FieldRole::coefficient);
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix) a.at(ix, iy) = per_column[ix];
  return a;
}

double max_field_diff(const MatrixField& x, const MatrixField& y) {
  double worst = 0.0;
  for (std::size_t c = 0; c < x.values().size(); ++c)
    worst = std::max(worst, (x.values()[c] - y.values()[c]).cwiseAbs().maxCoeff());
  return worst;
}

// --- criteria ---------------------------------------------------------------

void criterion_laminate_oracle() {
  bool ok = true;
  std::string detail;

  const HomogenizedLaminate diag = homogenized_laminate(isotropic_two_layer());
  Mat2 expected;
  expected << 1.6, 0, 0, 2.5;
  const double closed_err = (diag.a_hom - expected).cwiseAbs().maxCoeff();
  ok = ok && closed_err <= 1e-12;

  const double q =
      test_oracles::effective_conductivity_1d([](double t) { return t < 0.5 ? 1.0 : 4.0; });
  const double a22 = test_oracles::period_mean([](double t) { return t < 0.5 ? 1.0 : 4.0; });
  const double oracle_err =
      std::max(std::abs(diag.a_hom(0, 0) - q), std::abs(diag.a_hom(1, 1) - a22));
  ok = ok && oracle_err <= 1e-10;

  Mat2 b1, b2, off_expected;
  b1 << 2, 1, 1, 3;
  b2 << 4, 0, 0, 1;
  off_expected << 8.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 23.0 / 12.0;
  const HomogenizedLaminate off =
      homogenized_laminate(PeriodicProfile::piecewise({{0.5, b1}, {0.5, b2}}));
  const double off_err = (off.a_hom - off_expected).cwiseAbs().maxCoeff();
  ok = ok && off_err <= 1e-12;

  detail = "closed-form err " + fmt(closed_err) + " <= 1e-12, cell-problem oracle err " +
           fmt(oracle_err) + " <= 1e-10, off-diagonal err " + fmt(off_err) + " <= 1e-12";
  report("laminate-oracle", ok, detail);
}

void criterion_quotient_exactness() {
  std::mt19937 rng(20240817);
  Grid g(16);
  double worst_product = 0.0, worst_roundtrip = 0.0, worst_gauge = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixField a = random_stratified_spd(g, rng);
    const QuotientPair qp = stratified_quotient(a);
    worst_product = std::max(worst_product, max_field_diff(multiply(qp.factor, a), qp.product));
    worst_roundtrip = std::max(worst_roundtrip, max_field_diff(reconstruct_coefficient(qp), a));
  }
  {
    const MatrixField a = random_stratified_spd(g, rng);
    const QuotientPair qp = stratified_quotient(a);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int trial = 0; trial < 10; ++trial) {
      const bool constant = trial < 5;
      const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng);
      const MatrixField r = MatrixField::sample(g, [&](double x, double y) {
        Mat2 m;
        const double sx = constant ? 0.0 : x;
        const double sy = constant ? 0.0 : y;
        m << 1.2 + c0 * sx, 0.2 * c1 * sy, 0.2 * c2 * sx, 1.1 + c3 * sy;
        return m;
      });
      const QuotientPair t = gauge_transform(qp, GaugeField(r));
      worst_gauge = std::max(worst_gauge, max_field_diff(reconstruct_coefficient(t), a));
    }
  }
  const bool ok = worst_product <= 1e-13 && worst_roundtrip <= 1e-13 && worst_gauge <= 1e-12;
  report("quotient-exactness", ok,
         "100 fields: |factor*A - product| " + fmt(worst_product) +
             " <= 1e-13, round trip " + fmt(worst_roundtrip) + " <= 1e-13, gauge invariance " +
             fmt(worst_gauge) + " <= 1e-12");
}

ConvergenceReport study_zero_affine_256() {
  StudyConfig cfg;
  cfg.profile = isotropic_two_layer();
  cfg.epsilons = {0.25, 0.125, 0.0625};
  cfg.n_cells = 256;
  return hconvergence_study(cfg);
}

ConvergenceReport study_manufactured_256() {
  StudyConfig cfg;
  cfg.profile = isotropic_two_layer();
  cfg.epsilons = {0.25, 0.125, 0.0625};
  cfg.n_cells = 256;
  cfg.source = StudySource::manufactured_sine;
  return hconvergence_study(cfg);
}

void criterion_bvp_weak_convergence(const ConvergenceReport& rep) {
  std::vector<double> m_errs, p_errs;
  for (const auto& r : rep.rows) {
    m_errs.push_back(r.weak_M_err);
    p_errs.push_back(r.weak_P_err);
  }
  std::string detail = "factor->I ";
  bool ok = ratios_below(m_errs, 0.65, &detail);
  detail += ", product->a_hom ";
  ok = ratios_below(p_errs, 0.65, &detail) && ok;
  report("bvp-weak-convergence", ok, detail);
}

void criterion_study_decay(const ConvergenceReport& rep) {
  std::vector<double> u_errs, e_errs, d_errs;
  for (const auto& r : rep.rows) {
    u_errs.push_back(r.l2_u_err);
    e_errs.push_back(r.weak_E_err);
    d_errs.push_back(r.weak_D_err);
  }
  std::string detail = "u ";
  bool ok = ratios_below(u_errs, 0.7, &detail, true);
  detail += ", E ";
  ok = ratios_below(e_errs, 0.7, &detail, true) && ok;
  detail += ", D ";
  ok = ratios_below(d_errs, 0.7, &detail, true) && ok;

  StudyConfig degenerate;
  Mat2 a;
  a << 2, 1, 1, 3;
  degenerate.profile = PeriodicProfile::piecewise({{1.0, a}});
  degenerate.epsilons = {0.25, 0.125};
  degenerate.n_cells = 64;
  const ConvergenceReport deg = hconvergence_study(degenerate);
  double worst = 0.0;
  for (const auto& r : deg.rows)
    worst = std::max({worst, r.l2_u_err, r.weak_E_err, r.weak_D_err, r.weak_M_err, r.weak_P_err,
                      r.divcurl_err, r.corr_E_err, r.corr_D_err, r.naive_E_err, r.naive_D_err,
                      r.hminus1_divD});
  ok = ok && worst <= 1e-9;
  detail += ", constant-profile max err " + fmt(worst) + " <= 1e-9";
  report("hconvergence-study", ok, detail);
}

void criterion_divcurl(const ConvergenceReport& study_a, const ConvergenceReport& study_b) {
  Grid g(256);
  const TestFunctionFamily fam = TestFunctionFamily::tensor_poly_plus_sines(3);
  std::vector<std::pair<double, VectorField>> fs, gs, neg;
  for (double eps : {1.0 / 6, 1.0 / 12, 1.0 / 24}) {
    fs.emplace_back(eps, VectorField::sample(
                             g, [eps](double, double y) { return Vec2(std::sin(y / eps), 0.0); }));
    gs.emplace_back(eps, VectorField::sample(
                             g, [eps](double x, double) { return Vec2(std::sin(x / eps), 0.0); }));
    neg.emplace_back(eps, VectorField::sample(
                              g, [eps](double x, double) { return Vec2(0.0, std::sin(x / eps)); }));
  }
  const VectorField zero = VectorField::constant(g, Vec2::Zero());
  const PairingErrorTable pos = divcurl_check(fs, gs, zero, zero, fam);
  const PairingErrorTable negt = divcurl_check(neg, neg, zero, zero, fam);

  std::string detail = "positive ";
  bool ok = ratios_below(pos.max_error, 0.65, &detail);
  const double tail = negt.errors.back()[0];
  ok = ok && std::abs(tail - 0.5) <= 0.02;
  detail += ", negative pairing " + fmt(tail) + " in 0.5 +- 0.02";

  double worst_identity = 0.0;
  for (const auto& r : study_a.rows) worst_identity = std::max(worst_identity, r.quotient_identity_max);
  for (const auto& r : study_b.rows) worst_identity = std::max(worst_identity, r.quotient_identity_max);
  ok = ok && worst_identity <= 1e-13;
  detail += ", identity " + fmt(worst_identity) + " <= 1e-13";
  report("divcurl-bench", ok, detail);
}

void criterion_correctors(const ConvergenceReport& rep) {
  const StudyRow& last = rep.rows.back();
  bool ok = last.epsilon == 0.0625;
  ok = ok && last.corr_E_err <= 0.5 * last.naive_E_err;
  ok = ok && last.corr_D_err <= 0.5 * last.naive_D_err;
  const double base =
      std::max(rep.rows.front().corrector_grad_max, rep.rows.front().corrector_flux_max);
  double worst_stat = base;
  for (const auto& r : rep.rows)
    worst_stat = std::max({worst_stat, r.corrector_grad_max, r.corrector_flux_max});
  ok = ok && worst_stat <= 1.05 * base;
  report("correctors", ok,
         "E " + fmt(last.corr_E_err) + " <= 0.5*" + fmt(last.naive_E_err) + ", D " +
             fmt(last.corr_D_err) + " <= 0.5*" + fmt(last.naive_D_err) + ", bounds " +
             fmt(worst_stat) + " <= 1.05*" + fmt(base));
}

double manufactured_l2_error(int n) {
  Grid g(n);
  const ScalarField f = ScalarField::sample_cells(g, [](double x, double y) {
    return 2.0 * kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y);
  });
  const SolveReport rep = solve_dirichlet(
      {MatrixField::constant(g, Mat2::Identity()), f, ScalarField(g, Sampling::nodes)});
  const ScalarField uc = cell_values(rep.u);
  double s = 0.0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const auto c = g.cell_center(ix, iy);
      const double d = uc.at_cell(ix, iy) - std::sin(kPi * c[0]) * std::sin(kPi * c[1]);
      s += d * d;
    }
  return std::sqrt(s) * g.h();
}

void criterion_solver_soundness() {
  const double e16 = manufactured_l2_error(16);
  const double e32 = manufactured_l2_error(32);
  const double e64 = manufactured_l2_error(64);
  const double order1 = std::log2(e16 / e32);
  const double order2 = std::log2(e32 / e64);
  bool ok = order1 >= 1.9 && order2 >= 1.9;

  Grid g(32);
  Mat2 a;
  a << 3, 1, 1, 2;
  const ScalarField lift =
      ScalarField::sample_nodes(g, [](double x, double y) { return 2.0 * x - y; });
  const SolveReport affine = solve_dirichlet(
      {MatrixField::constant(g, a), ScalarField(g, Sampling::cells), lift});
  double affine_err = 0.0;
  for (int iy = 0; iy <= g.n(); ++iy)
    for (int ix = 0; ix <= g.n(); ++ix) {
      const auto p = g.node_pos(ix, iy);
      affine_err = std::max(affine_err,
                            std::abs(affine.u.at_node(ix, iy) - (2.0 * p[0] - p[1])));
    }
  ok = ok && affine_err <= 1e-12;

  Grid gs(64);
  const MatrixField strat = sample_oscillating(
      PeriodicProfile::piecewise({{0.5, Mat2::Identity()}, {0.5, (Mat2() << 4, 0, 0, 1).finished()}}),
      1.0, gs);
  auto exact = [](double x) { return x < 0.5 ? 1.6 * x : 0.8 + 0.4 * (x - 0.5); };
  const SolveReport srep = solve_dirichlet(
      {strat, ScalarField(gs, Sampling::cells),
       ScalarField::sample_nodes(gs, [&](double x, double) { return exact(x); })});
  double strat_err = 0.0;
  for (int iy = 0; iy <= gs.n(); ++iy)
    for (int ix = 0; ix <= gs.n(); ++ix)
      strat_err =
          std::max(strat_err, std::abs(srep.u.at_node(ix, iy) - exact(gs.node_pos(ix, iy)[0])));
  ok = ok && strat_err <= 1e-3;

  report("solver-soundness", ok,
         "orders " + fmt(order1) + ", " + fmt(order2) + " >= 1.9, affine " + fmt(affine_err) +
             " <= 1e-12, stratified " + fmt(strat_err) + " <= 1e-3");
}

void criterion_determinism() {
  const char* config_text = R"({
    "grid": {"n_cells": 64},
    "profile": {"layers": [
      {"fraction": 0.5, "matrix": [1, 0, 0, 1]},
      {"fraction": 0.5, "matrix": [4, 0, 0, 4]}
    ]},
    "epsilons": [0.25, 0.125]
  })";
  const RunConfig cfg = parse_run_config(config_text);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  std::ostringstream console;
  run_study(cfg, "acceptance_det_a", console);
  run_study(cfg, "acceptance_det_b", console);
  const bool ok =
      slurp("acceptance_det_a/report.csv") == slurp("acceptance_det_b/report.csv") &&
      slurp("acceptance_det_a/ahom.json") == slurp("acceptance_det_b/ahom.json") &&
      slurp("acceptance_det_a/summary.txt") == slurp("acceptance_det_b/summary.txt");
  std::filesystem::remove_all("acceptance_det_a");
  std::filesystem::remove_all("acceptance_det_b");
  report("determinism", ok, ok ? "repeated study runs byte-identical" : "outputs differ");
}

}  // namespace

int main() {
  criterion_laminate_oracle();
  criterion_quotient_exactness();
  const ConvergenceReport zero_affine = study_zero_affine_256();
  criterion_bvp_weak_convergence(zero_affine);
  criterion_study_decay(zero_affine);
  const ConvergenceReport manufactured = study_manufactured_256();
  criterion_divcurl(zero_affine, manufactured);
  criterion_correctors(manufactured);
  criterion_solver_soundness();
  criterion_determinism();
  if (g_failures > 0) std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}

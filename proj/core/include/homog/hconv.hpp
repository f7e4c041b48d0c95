#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homog/correctors.hpp"
#include "homog/oscillation.hpp"
#include "homog/quotient.hpp"

namespace homog {

enum class StudySource { zero, manufactured_sine };
enum class StudyLift { x1, x1_plus_x2 };

struct StudyConfig {
  PeriodicProfile profile = PeriodicProfile::piecewise({{1.0, Mat2::Identity()}});
  std::vector<double> epsilons;  // reciprocals of integers, strictly decreasing
  int n_cells = 256;
  StudySource source = StudySource::zero;
  StudyLift lift = StudyLift::x1;
  int test_degree = 3;
  Rect subdomain{0.25, 0.25, 0.75, 0.75};
  double solver_tol = 1e-10;
  bool quotient_checks = true;  // corrector-only runs skip the bvp quotient
};

struct StudyRow {
  double epsilon = 0.0;
  double l2_u_err = 0.0;
  double weak_E_err = 0.0;
  double weak_D_err = 0.0;
  double weak_M_err = 0.0;
  double weak_P_err = 0.0;
  double divcurl_err = 0.0;
  double corr_E_err = 0.0;
  double corr_D_err = 0.0;
  double naive_E_err = 0.0;
  double naive_D_err = 0.0;
  double hminus1_divD = 0.0;
  // diagnostics beyond the report columns
  double quotient_identity_max = 0.0;  // max cell |factor*D - product*E|
  double grad_consistency_max = 0.0;   // E really is the discrete gradient
  double corrector_pairing = 0.0;      // signed local div-curl pairing
  double corrector_grad_max = 0.0;     // L-inf stats of the correctors
  double corrector_flux_max = 0.0;
  int solver_iterations = 0;
  double solver_residual = 0.0;
};

struct ConvergenceReport {
  Mat2 a_hom = Mat2::Identity();
  Mat2 factor_mean = Mat2::Identity();
  Mat2 product_mean = Mat2::Identity();
  std::vector<StudyRow> rows;
};

/// The auxiliary-problem construction of a quotient pair for a_eps with a
/// prescribed limit coefficient: for each coordinate solve
///   div(t(a_eps) grad u_i) = div(t(a_target) e_i),  u_i - x_i = 0 on the
/// boundary, take the factor rows as the discrete gradients of u_i and the
/// product as factor * a_eps. With a_eps == a_target the pair is exactly
/// (I, a_target).
QuotientPair quotient_from_bvp(const MatrixField& a_eps, const Mat2& a_target, double tol = 1e-10,
                               int maxiter = 0);

/// Runs the convergence study: one fine mesh, one (source, lift) pair, the
/// homogenized reference solve, and per-epsilon forward solves, quotient
/// construction, correctors and weak-error measurements. Per-epsilon work
/// runs concurrently up to the HOMOG_THREADS cap; the report is assembled
/// in list order.
ConvergenceReport hconvergence_study(const StudyConfig& cfg);

struct PairingErrorTable {
  std::vector<double> epsilons;
  std::vector<std::string> tests;
  std::vector<std::vector<double>> errors;  // [eps][test]
  std::vector<double> max_error;            // per eps
};

/// Normalized pairing errors |∫ phi (f_eps . g_eps) - ∫ phi (f . g)| / ||phi||
/// for every family member and every epsilon.
PairingErrorTable divcurl_check(const std::vector<std::pair<double, VectorField>>& f_sequence,
                                const std::vector<std::pair<double, VectorField>>& g_sequence,
                                const VectorField& f_limit, const VectorField& g_limit,
                                const TestFunctionFamily& family);

/// max over cells of |factor * flux - product * gradient|: the algebraic
/// identity every quotient pair satisfies when flux = A gradient.
double quotient_identity_max(const QuotientPair& q, const VectorField& gradient,
                             const VectorField& flux);

}  // namespace homog

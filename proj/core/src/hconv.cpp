#include "homog/hconv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "homog/elliptic.hpp"
#include "homog/parallel.hpp"

namespace homog {

namespace {

void validate_epsilons(const std::vector<double>& eps) {
  if (eps.empty()) raise(Errc::config_invalid, "epsilons: list must not be empty");
  double prev = std::numeric_limits<double>::infinity();
  for (double e : eps) {
    if (!(e > 0.0) || e > 1.0)
      raise(Errc::config_invalid, "epsilons: values must lie in (0, 1]");
    const double k = std::round(1.0 / e);
    if (k < 1.0 || std::abs(e * k - 1.0) > 1e-12)
      raise(Errc::config_invalid, "epsilons: values must be reciprocals of integers");
    if (!(e < prev))
      raise(Errc::config_invalid, "epsilons: list must be strictly decreasing");
    prev = e;
  }
}

ScalarField make_lift(const Grid& g, StudyLift lift) {
  switch (lift) {
    case StudyLift::x1:
      return ScalarField::sample_nodes(g, [](double x, double) { return x; });
    case StudyLift::x1_plus_x2:
      return ScalarField::sample_nodes(g, [](double x, double y) { return x + y; });
  }
  raise(Errc::config_invalid, "unknown lift");
}

SourceTerm make_source(const Grid& g, StudySource source) {
  switch (source) {
    case StudySource::zero:
      return ScalarField(g, Sampling::cells);
    case StudySource::manufactured_sine: {
      const double pi = std::numbers::pi;
      return ScalarField::sample_cells(g, [pi](double x, double y) {
        return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y);
      });
    }
  }
  raise(Errc::config_invalid, "unknown source");
}

double max_pairing_error(const ScalarField& f, const ScalarField& g, const FamilyTable& table) {
  const auto errs = pairing_errors(f, g, table);
  return *std::max_element(errs.begin(), errs.end());
}

ScalarField dot_field(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid(), "dot_field: grids differ");
  ScalarField out(a.grid(), Sampling::cells);
  for (std::size_t c = 0; c < out.values().size(); ++c)
    out.values()[c] = a.values()[c].dot(b.values()[c]);
  return out;
}

}  // namespace

QuotientPair quotient_from_bvp(const MatrixField& a_eps, const Mat2& a_target, double tol,
                               int maxiter) {
  const Grid& g = a_eps.grid();
  check_ellipticity(a_eps);
  const MatrixField coeff = transpose(a_eps);
  const Mat2 target_t = a_target.transpose();

  MatrixField factor(g, FieldRole::grad_factor);
  for (int i = 0; i < 2; ++i) {
    ScalarField lift = ScalarField::sample_nodes(
        g, [i](double x, double y) { return i == 0 ? x : y; });
    // -div(t(a_eps) grad u) = div(-t(a_target) e_i), assembled weakly.
    WeakDivSource src{VectorField::constant(g, Vec2(-target_t.col(i)))};
    const SolveReport rep = solve_dirichlet({coeff, src, std::move(lift)}, tol, maxiter);
    const VectorField grad = gradient_at_cells(rep.u);
    for (std::size_t c = 0; c < factor.values().size(); ++c)
      factor.values()[c].row(i) = grad.values()[c].transpose();
  }

  MatrixField product = multiply(factor, a_eps);
  product.set_role(FieldRole::flux_factor);
  return {std::move(factor), std::move(product), QuotientSource::bvp};
}

double quotient_identity_max(const QuotientPair& q, const VectorField& gradient,
                             const VectorField& flux) {
  require_same_grid(q.factor.grid(), gradient.grid(), "quotient_identity_max: grids differ");
  require_same_grid(q.factor.grid(), flux.grid(), "quotient_identity_max: grids differ");
  double worst = 0.0;
  for (std::size_t c = 0; c < flux.values().size(); ++c) {
    const Vec2 lhs = q.factor.values()[c] * flux.values()[c];
    const Vec2 rhs = q.product.values()[c] * gradient.values()[c];
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

PairingErrorTable divcurl_check(const std::vector<std::pair<double, VectorField>>& f_sequence,
                                const std::vector<std::pair<double, VectorField>>& g_sequence,
                                const VectorField& f_limit, const VectorField& g_limit,
                                const TestFunctionFamily& family) {
  if (f_sequence.size() != g_sequence.size())
    raise(Errc::config_invalid, "divcurl_check: sequences must have equal length");
  const FamilyTable table(family, f_limit.grid());
  const ScalarField limit_product = dot_field(f_limit, g_limit);

  PairingErrorTable out;
  for (std::size_t k = 0; k < table.size(); ++k) out.tests.push_back(table.name(k));
  for (std::size_t s = 0; s < f_sequence.size(); ++s) {
    if (f_sequence[s].first != g_sequence[s].first)
      raise(Errc::config_invalid, "divcurl_check: epsilon lists differ");
    out.epsilons.push_back(f_sequence[s].first);
    const ScalarField product = dot_field(f_sequence[s].second, g_sequence[s].second);
    auto errs = pairing_errors(product, limit_product, table);
    out.max_error.push_back(*std::max_element(errs.begin(), errs.end()));
    out.errors.push_back(std::move(errs));
  }
  return out;
}

ConvergenceReport hconvergence_study(const StudyConfig& cfg) {
  validate_epsilons(cfg.epsilons);
  const Grid grid(cfg.n_cells);
  const double eps_min = cfg.epsilons.back();
  if (grid.h() > eps_min * cfg.profile.min_fraction() / 4.0)
    raise(Errc::under_resolved, "grid does not resolve the smallest epsilon");
  if (!cfg.subdomain.strictly_inside(grid))
    raise(Errc::subdomain_not_interior, "subdomain must be strictly interior");

  const HomogenizedLaminate hom = homogenized_laminate(cfg.profile);
  const TestFunctionFamily family = TestFunctionFamily::tensor_poly_plus_sines(cfg.test_degree);
  const FamilyTable table(family, grid);

  const ScalarField lift = make_lift(grid, cfg.lift);
  const SourceTerm source = make_source(grid, cfg.source);

  const MatrixField a_hom_field = MatrixField::constant(grid, hom.a_hom, FieldRole::coefficient);
  const SolveReport hom_rep = solve_dirichlet({a_hom_field, source, lift}, cfg.solver_tol);
  const ScalarField u_hom_cells = cell_values(hom_rep.u);
  const VectorField grad_limit = gradient_at_cells(hom_rep.u);
  const VectorField flux_limit = flux(a_hom_field, hom_rep.u);

  ConvergenceReport report;
  report.a_hom = hom.a_hom;
  report.factor_mean = hom.factor_mean;
  report.product_mean = hom.product_mean;
  report.rows.resize(cfg.epsilons.size());

  parallel_for_indexed(cfg.epsilons.size(), [&](std::size_t k) {
    StudyRow row;
    row.epsilon = cfg.epsilons[k];
    const MatrixField a_eps = sample_oscillating(cfg.profile, row.epsilon, grid);
    const EllipticProblem forward{a_eps, source, lift};
    const SolveReport rep = solve_dirichlet(forward, cfg.solver_tol);
    row.solver_iterations = rep.iterations;
    row.solver_residual = rep.residual;

    const VectorField grad_eps = gradient_at_cells(rep.u);
    const VectorField flux_eps = flux(a_eps, rep.u);

    ScalarField u_diff = cell_values(rep.u);
    for (std::size_t c = 0; c < u_diff.values().size(); ++c)
      u_diff.values()[c] -= u_hom_cells.values()[c];
    row.l2_u_err = l2_norm(u_diff);

    for (int i = 0; i < 2; ++i) {
      row.weak_E_err = std::max(
          row.weak_E_err, max_pairing_error(grad_eps.component(i), grad_limit.component(i), table));
      row.weak_D_err = std::max(
          row.weak_D_err, max_pairing_error(flux_eps.component(i), flux_limit.component(i), table));
    }

    if (cfg.quotient_checks) {
      const QuotientPair qp = quotient_from_bvp(a_eps, hom.a_hom, cfg.solver_tol);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double id_ij = (i == j) ? 1.0 : 0.0;
          const double a_ij = hom.a_hom(i, j);
          row.weak_M_err = std::max(
              row.weak_M_err,
              max_pairing_error(
                  qp.factor.entry(i, j),
                  ScalarField::sample_cells(grid, [&](double, double) { return id_ij; }), table));
          row.weak_P_err = std::max(
              row.weak_P_err,
              max_pairing_error(
                  qp.product.entry(i, j),
                  ScalarField::sample_cells(grid, [&](double, double) { return a_ij; }), table));
        }

      // Div-curl mechanism: rows of factor*flux_eps converge to the limit
      // flux (the factor limit is I under the bvp normalization), and agree
      // cellwise with rows of product*grad_eps.
      row.quotient_identity_max = quotient_identity_max(qp, grad_eps, flux_eps);
      for (int i = 0; i < 2; ++i) {
        ScalarField row_product(grid, Sampling::cells);
        for (std::size_t c = 0; c < row_product.values().size(); ++c)
          row_product.values()[c] = qp.factor.values()[c].row(i).dot(flux_eps.values()[c]);
        row.divcurl_err = std::max(row.divcurl_err,
                                   max_pairing_error(row_product, flux_limit.component(i), table));
      }
    } else {
      const double not_computed = std::numeric_limits<double>::quiet_NaN();
      row.weak_M_err = not_computed;
      row.weak_P_err = not_computed;
      row.divcurl_err = not_computed;
      row.quotient_identity_max = not_computed;
    }

    {
      const VectorField recomputed = gradient_at_cells(rep.u);
      for (std::size_t c = 0; c < recomputed.values().size(); ++c)
        row.grad_consistency_max =
            std::max(row.grad_consistency_max,
                     (grad_eps.values()[c] - recomputed.values()[c]).cwiseAbs().maxCoeff());
    }

    const CorrectorPair corr = build_correctors(a_eps, hom.a_hom, cfg.solver_tol);
    const LocalErrorRecord local =
        corrector_error(corr, grad_eps, flux_eps, grad_limit, flux_limit, cfg.subdomain);
    row.corr_E_err = local.corrected_grad_err;
    row.corr_D_err = local.corrected_flux_err;
    row.naive_E_err = local.naive_grad_err;
    row.naive_D_err = local.naive_flux_err;
    row.corrector_pairing = local.pairing;
    row.corrector_grad_max = corr.grad_max_abs;
    row.corrector_flux_max = corr.flux_max_abs;

    row.hminus1_divD = weak_residual_hminus1(forward, rep.u, cfg.solver_tol);

    report.rows[k] = row;
  });

  return report;
}

}  // namespace homog

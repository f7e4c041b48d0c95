#include "homog/elliptic.hpp"
#include "homog/fields.hpp"

#include <cmath>

namespace homog {

double hminus1_estimate(const ScalarField& g, double tol) {
  if (g.sampling() != Sampling::cells)
    raise(Errc::grid_mismatch, "hminus1_estimate: cell sampling expected");
  if (!g.all_finite()) raise(Errc::not_coercive, "hminus1_estimate: non-finite data");
  if (g.max_abs() == 0.0) return 0.0;

  EllipticProblem poisson{MatrixField::constant(g.grid(), Mat2::Identity()), g,
                          ScalarField(g.grid(), Sampling::nodes)};
  const SolveReport report = solve_dirichlet(poisson, tol);
  return std::sqrt(report.energy);
}

}  // namespace homog

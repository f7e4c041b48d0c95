#include "homog/correctors.hpp"

#include <cmath>

#include "homog/hconv.hpp"

namespace homog {

CorrectorPair build_correctors(const MatrixField& a_eps, const Mat2& a_hom, double tol,
                               int maxiter) {
  const QuotientPair transposed =
      quotient_from_bvp(transpose(a_eps), a_hom.transpose(), tol, maxiter);
  CorrectorPair pair{transpose(transposed.factor), transpose(transposed.product), 0.0, 0.0};
  pair.grad_corrector.set_role(FieldRole::grad_corrector);
  pair.flux_corrector.set_role(FieldRole::flux_corrector);
  pair.grad_max_abs = pair.grad_corrector.max_abs();
  pair.flux_max_abs = pair.flux_corrector.max_abs();
  return pair;
}

LocalErrorRecord corrector_error(const CorrectorPair& pair, const VectorField& grad_eps,
                                 const VectorField& flux_eps, const VectorField& grad_limit,
                                 const VectorField& flux_limit, const Rect& subdomain) {
  const Grid& g = grad_eps.grid();
  require_same_grid(flux_eps.grid(), g, "corrector_error: grids differ");
  require_same_grid(grad_limit.grid(), g, "corrector_error: grids differ");
  require_same_grid(flux_limit.grid(), g, "corrector_error: grids differ");
  require_same_grid(pair.grad_corrector.grid(), g, "corrector_error: grids differ");
  if (!subdomain.strictly_inside(g))
    raise(Errc::subdomain_not_interior, "local norms need a strictly interior subdomain");

  LocalErrorRecord rec;
  rec.subdomain = subdomain;
  const double cell_area = g.h() * g.h();
  double corr_e = 0.0, corr_d = 0.0, naive_e = 0.0, naive_d = 0.0, pairing = 0.0;
  std::array<double, 4> terms{};
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix) {
      const auto p = g.cell_center(ix, iy);
      if (!subdomain.contains(p[0], p[1])) continue;
      const std::int64_t c = g.cell_index(ix, iy);
      const Vec2 e_eps = grad_eps.values()[c];
      const Vec2 d_eps = flux_eps.values()[c];
      const Vec2 ne = pair.grad_corrector.values()[c] * grad_limit.values()[c];
      const Vec2 qe = pair.flux_corrector.values()[c] * grad_limit.values()[c];
      corr_e += (e_eps - ne).squaredNorm();
      corr_d += (d_eps - qe).squaredNorm();
      naive_e += (e_eps - grad_limit.values()[c]).squaredNorm();
      naive_d += (d_eps - flux_limit.values()[c]).squaredNorm();
      pairing += (d_eps - qe).dot(e_eps - ne);
      terms[0] += d_eps.dot(e_eps);
      terms[1] += d_eps.dot(ne);
      terms[2] += qe.dot(e_eps);
      terms[3] += qe.dot(ne);
    }
  rec.corrected_grad_err = std::sqrt(corr_e * cell_area);
  rec.corrected_flux_err = std::sqrt(corr_d * cell_area);
  rec.naive_grad_err = std::sqrt(naive_e * cell_area);
  rec.naive_flux_err = std::sqrt(naive_d * cell_area);
  rec.pairing = pairing * cell_area;
  for (auto& t : terms) t *= cell_area;
  rec.pairing_terms = terms;
  return rec;
}

}  // namespace homog

#include "homog/quotient.hpp"

#include <algorithm>
#include <cmath>

namespace homog {

GaugeField::GaugeField(MatrixField R) : R_(std::move(R)) {
  invert(R_);  // throws SingularCell if any cell degenerates
  const Grid& g = R_.grid();
  const double h = g.h();
  double slope = 0.0;
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix) {
      if (ix + 1 < g.n())
        slope = std::max(slope, (R_.at(ix + 1, iy) - R_.at(ix, iy)).cwiseAbs().maxCoeff() / h);
      if (iy + 1 < g.n())
        slope = std::max(slope, (R_.at(ix, iy + 1) - R_.at(ix, iy)).cwiseAbs().maxCoeff() / h);
    }
  lipschitz_ = slope;
}

QuotientPair stratified_quotient(const MatrixField& A) {
  const Grid& g = A.grid();
  const double strat_tol = 1e-12;
  const double pivot_guard = 1e-14 * std::max(1.0, A.max_abs());

  for (int ix = 0; ix < g.n(); ++ix)
    for (int iy = 1; iy < g.n(); ++iy)
      if ((A.at(ix, iy) - A.at(ix, 0)).cwiseAbs().maxCoeff() > strat_tol)
        raise(Errc::not_stratified,
              "coefficient varies along x_1 at column " + std::to_string(ix));

  MatrixField factor(g, FieldRole::grad_factor);
  MatrixField product(g, FieldRole::flux_factor);
  for (std::size_t c = 0; c < A.values().size(); ++c) {
    const Mat2& a = A.values()[c];
    const double pivot = a(0, 0);
    if (!(std::abs(pivot) > pivot_guard))
      raise(Errc::degenerate_pivot, "A_00 is below the pivot guard");
    Mat2 m, p;
    m << 1.0 / pivot, 0.0, -a(1, 0) / pivot, 1.0;
    p << 1.0, a(0, 1) / pivot, 0.0, a(1, 1) - a(1, 0) * a(0, 1) / pivot;
    factor.values()[c] = m;
    product.values()[c] = p;
  }
  return {std::move(factor), std::move(product), QuotientSource::stratified};
}

MatrixField reconstruct_coefficient(const QuotientPair& q) {
  MatrixField out = multiply(invert(q.factor), q.product);
  out.set_role(FieldRole::coefficient);
  return out;
}

QuotientResiduals quotient_residuals(const QuotientPair& q, double tol) {
  const CurlTensorField curl_factor = curl(q.factor);
  const VectorField div_product = divergence(q.product);
  QuotientResiduals r;
  r.curl_factor_max = curl_factor.max_abs();
  r.div_product_max = div_product.max_abs();
  for (int i = 0; i < 2; ++i) {
    r.curl_factor_hminus1 =
        std::max(r.curl_factor_hminus1, hminus1_estimate(curl_factor.row_component(i), tol));
    r.div_product_hminus1 =
        std::max(r.div_product_hminus1, hminus1_estimate(div_product.component(i), tol));
  }
  return r;
}

QuotientPair gauge_transform(const QuotientPair& q, const GaugeField& gauge) {
  QuotientPair out{multiply(gauge.matrix(), q.factor), multiply(gauge.matrix(), q.product),
                   QuotientSource::gauge_transformed};
  out.factor.set_role(FieldRole::grad_factor);
  out.product.set_role(FieldRole::flux_factor);
  return out;
}

}  // namespace homog

#pragma once

#include "homog/fields.hpp"

namespace homog {

enum class QuotientSource { stratified, bvp, gauge_transformed };

/// Factorization factor * A = product of a coefficient field. The factor
/// plays the curl-compact role, the product the divergence-compact role.
struct QuotientPair {
  MatrixField factor;
  MatrixField product;
  QuotientSource source = QuotientSource::stratified;
};

/// Invertible matrix field with a recorded entrywise Lipschitz bound
/// (max finite-difference slope over neighboring cells).
class GaugeField {
 public:
  explicit GaugeField(MatrixField R);

  const MatrixField& matrix() const { return R_; }
  double lipschitz_bound() const { return lipschitz_; }

 private:
  MatrixField R_;
  double lipschitz_ = 0.0;
};

/// Closed-form factor/product pair for a coefficient depending only on x_0:
/// factor rows (1/A00, 0), (-A10/A00, 1); product rows (1, A01/A00),
/// (0, A11 - A10 A01 / A00). Throws NotStratified when the field varies
/// along x_1, DegeneratePivot when A00 degenerates.
QuotientPair stratified_quotient(const MatrixField& A);

/// factor^-1 * product, cellwise.
MatrixField reconstruct_coefficient(const QuotientPair& q);

struct QuotientResiduals {
  double curl_factor_max = 0.0;
  double div_product_max = 0.0;
  double curl_factor_hminus1 = 0.0;
  double div_product_hminus1 = 0.0;
};

/// Discrete max-norm residuals of curl(factor) and div(product) plus their
/// H^-1 proxies.
QuotientResiduals quotient_residuals(const QuotientPair& q, double tol = 1e-10);

/// Left-multiplies both members by the gauge: (R factor, R product). The
/// represented coefficient factor^-1 product is unchanged.
QuotientPair gauge_transform(const QuotientPair& q, const GaugeField& gauge);

}  // namespace homog

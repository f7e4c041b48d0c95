#include "homog/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace homog {

namespace {

double lambda_min_sym(const Mat2& A) {
  // Smallest eigenvalue of the symmetric part, in closed form.
  const double a = A(0, 0);
  const double d = A(1, 1);
  const double b = 0.5 * (A(0, 1) + A(1, 0));
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  return mean - rad;
}

bool singular(const Mat2& A, double* det_out = nullptr) {
  const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  if (det_out) *det_out = det;
  const double scale = A.cwiseAbs().maxCoeff();
  return !(std::abs(det) > 16.0 * std::numeric_limits<double>::epsilon() * scale * scale) ||
         !std::isfinite(det);
}

Mat2 inverse_checked(const Mat2& A, const char* where) {
  double det = 0.0;
  if (singular(A, &det)) raise(Errc::singular_cell, where);
  Mat2 inv;
  inv << A(1, 1), -A(0, 1), -A(1, 0), A(0, 0);
  return inv / det;
}

// d/dx_axis of a cell-sampled quantity: second-order central differences on
// interior cells, first-order one-sided at the boundary. Both variants are
// exact for affine entry functions.
template <typename Getter>
double cell_derivative(const Grid& g, const Getter& value, int ix, int iy, int axis) {
  const int n = g.n();
  const double h = g.h();
  const int i = (axis == 0) ? ix : iy;
  auto shifted = [&](int di) {
    return (axis == 0) ? value(ix + di, iy) : value(ix, iy + di);
  };
  if (i == 0) return (shifted(1) - shifted(0)) / h;
  if (i == n - 1) return (shifted(0) - shifted(-1)) / h;
  return (shifted(1) - shifted(-1)) / (2.0 * h);
}

void require_cells(const ScalarField& f, const char* where) {
  if (f.sampling() != Sampling::cells) raise(Errc::grid_mismatch, where);
}

}  // namespace

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

ScalarField VectorField::component(int i) const {
  ScalarField out(grid_, Sampling::cells);
  for (std::size_t c = 0; c < values_.size(); ++c) out.values()[c] = values_[c][i];
  return out;
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

bool VectorField::all_finite() const {
  for (const auto& v : values_)
    if (!v.allFinite()) return false;
  return true;
}

ScalarField MatrixField::entry(int i, int j) const {
  ScalarField out(grid_, Sampling::cells);
  for (std::size_t c = 0; c < values_.size(); ++c) out.values()[c] = values_[c](i, j);
  return out;
}

double MatrixField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

bool MatrixField::all_finite() const {
  for (const auto& v : values_)
    if (!v.allFinite()) return false;
  return true;
}

ScalarField CurlTensorField::row_component(int i) const {
  ScalarField out(grid_, Sampling::cells);
  for (std::size_t c = 0; c < comp_.size(); ++c) out.values()[c] = comp_[c][i];
  return out;
}

double CurlTensorField::max_abs() const {
  double m = 0.0;
  for (const auto& v : comp_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

EllipticityBounds check_ellipticity(const Mat2& A) {
  double alpha = lambda_min_sym(A);
  const Mat2 inv = inverse_checked(A, "check_ellipticity: singular matrix");
  double inv_alpha = lambda_min_sym(inv);
  if (!(alpha > 0.0)) raise(Errc::not_coercive, "coercivity constant is not positive");
  return {alpha, 1.0 / inv_alpha};
}

EllipticityBounds check_ellipticity(const MatrixField& A) {
  double alpha = std::numeric_limits<double>::infinity();
  double inv_alpha = std::numeric_limits<double>::infinity();
  for (const auto& cell : A.values()) {
    alpha = std::min(alpha, lambda_min_sym(cell));
    const Mat2 inv = inverse_checked(cell, "check_ellipticity: singular cell");
    inv_alpha = std::min(inv_alpha, lambda_min_sym(inv));
  }
  if (!(alpha > 0.0)) raise(Errc::not_coercive, "coercivity constant is not positive");
  return {alpha, 1.0 / inv_alpha};
}

MatrixField multiply(const MatrixField& X, const MatrixField& Y) {
  require_same_grid(X.grid(), Y.grid(), "multiply: fields on different grids");
  MatrixField out(X.grid());
  for (std::size_t c = 0; c < out.values().size(); ++c)
    out.values()[c] = X.values()[c] * Y.values()[c];
  return out;
}

MatrixField invert(const MatrixField& X) {
  MatrixField out(X.grid());
  for (std::size_t c = 0; c < out.values().size(); ++c)
    out.values()[c] = inverse_checked(X.values()[c], "invert: singular cell");
  return out;
}

MatrixField transpose(const MatrixField& X) {
  MatrixField out(X.grid());
  for (std::size_t c = 0; c < out.values().size(); ++c)
    out.values()[c] = X.values()[c].transpose();
  return out;
}

VectorField divergence(const MatrixField& P) {
  const Grid& g = P.grid();
  if (g.n() < 3) raise(Errc::grid_too_coarse, "divergence needs at least 3 cells per side");
  VectorField out(g);
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix) {
      Vec2 d = Vec2::Zero();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          d[i] += cell_derivative(
              g, [&](int cx, int cy) { return P.at(cx, cy)(i, j); }, ix, iy, j);
      out.at(ix, iy) = d;
    }
  return out;
}

ScalarField divergence(const VectorField& D) {
  const Grid& g = D.grid();
  if (g.n() < 3) raise(Errc::grid_too_coarse, "divergence needs at least 3 cells per side");
  ScalarField out(g, Sampling::cells);
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix) {
      double d = 0.0;
      for (int j = 0; j < 2; ++j)
        d += cell_derivative(
            g, [&](int cx, int cy) { return D.at(cx, cy)[j]; }, ix, iy, j);
      out.at_cell(ix, iy) = d;
    }
  return out;
}

CurlTensorField curl(const MatrixField& M) {
  const Grid& g = M.grid();
  if (g.n() < 3) raise(Errc::grid_too_coarse, "curl needs at least 3 cells per side");
  CurlTensorField out(g);
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix)
      for (int i = 0; i < 2; ++i) {
        // (curl M)_{i,0,1} = dM_i0/dx_1 - dM_i1/dx_0
        const double d0 = cell_derivative(
            g, [&](int cx, int cy) { return M.at(cx, cy)(i, 0); }, ix, iy, 1);
        const double d1 = cell_derivative(
            g, [&](int cx, int cy) { return M.at(cx, cy)(i, 1); }, ix, iy, 0);
        out.independent(ix, iy, i) = d0 - d1;
      }
  return out;
}

ScalarField curl(const VectorField& E) {
  const Grid& g = E.grid();
  if (g.n() < 3) raise(Errc::grid_too_coarse, "curl needs at least 3 cells per side");
  ScalarField out(g, Sampling::cells);
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix) {
      const double d0 = cell_derivative(
          g, [&](int cx, int cy) { return E.at(cx, cy)[0]; }, ix, iy, 1);
      const double d1 = cell_derivative(
          g, [&](int cx, int cy) { return E.at(cx, cy)[1]; }, ix, iy, 0);
      out.at_cell(ix, iy) = d0 - d1;
    }
  return out;
}

double l2_norm(const ScalarField& f) {
  require_cells(f, "l2_norm: cell sampling expected");
  const double h = f.grid().h();
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * h * h);
}

}  // namespace homog

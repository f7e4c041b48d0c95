#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "homog/grid.hpp"

namespace homog {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// Where scalar samples live. Solver unknowns sit on nodes, derived
/// quantities (gradients, fluxes, residuals) on cell centers.
enum class Sampling { cells, nodes };

/// Bookkeeping tag describing what a matrix field holds.
enum class FieldRole { coefficient, grad_factor, flux_factor, grad_corrector, flux_corrector, other };

struct EllipticityBounds {
  double alpha = 0.0;
  double beta = 0.0;
};

class ScalarField {
 public:
  ScalarField(Grid grid, Sampling sampling)
      : grid_(grid), sampling_(sampling),
        values_(sampling == Sampling::cells ? grid.num_cells() : grid.num_nodes(), 0.0) {}

  static ScalarField sample_cells(const Grid& g, const std::function<double(double, double)>& f) {
    ScalarField s(g, Sampling::cells);
    for (int iy = 0; iy < g.n(); ++iy)
      for (int ix = 0; ix < g.n(); ++ix) {
        const auto p = g.cell_center(ix, iy);
        s.values_[g.cell_index(ix, iy)] = f(p[0], p[1]);
      }
    return s;
  }
  static ScalarField sample_nodes(const Grid& g, const std::function<double(double, double)>& f) {
    ScalarField s(g, Sampling::nodes);
    for (int iy = 0; iy <= g.n(); ++iy)
      for (int ix = 0; ix <= g.n(); ++ix) {
        const auto p = g.node_pos(ix, iy);
        s.values_[g.node_index(ix, iy)] = f(p[0], p[1]);
      }
    return s;
  }

  const Grid& grid() const { return grid_; }
  Sampling sampling() const { return sampling_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double& at_cell(int ix, int iy) { return values_[grid_.cell_index(ix, iy)]; }
  double at_cell(int ix, int iy) const { return values_[grid_.cell_index(ix, iy)]; }
  double& at_node(int ix, int iy) { return values_[grid_.node_index(ix, iy)]; }
  double at_node(int ix, int iy) const { return values_[grid_.node_index(ix, iy)]; }

  double max_abs() const;
  bool all_finite() const;

 private:
  Grid grid_;
  Sampling sampling_;
  std::vector<double> values_;
};

class VectorField {
 public:
  explicit VectorField(Grid grid) : grid_(grid), values_(grid.num_cells(), Vec2::Zero()) {}

  static VectorField sample(const Grid& g, const std::function<Vec2(double, double)>& f) {
    VectorField v(g);
    for (int iy = 0; iy < g.n(); ++iy)
      for (int ix = 0; ix < g.n(); ++ix) {
        const auto p = g.cell_center(ix, iy);
        v.values_[g.cell_index(ix, iy)] = f(p[0], p[1]);
      }
    return v;
  }
  static VectorField constant(const Grid& g, const Vec2& v) {
    VectorField out(g);
    for (auto& e : out.values_) e = v;
    return out;
  }

  const Grid& grid() const { return grid_; }
  const std::vector<Vec2>& values() const { return values_; }
  std::vector<Vec2>& values() { return values_; }
  Vec2& at(int ix, int iy) { return values_[grid_.cell_index(ix, iy)]; }
  const Vec2& at(int ix, int iy) const { return values_[grid_.cell_index(ix, iy)]; }

  double max_abs() const;
  bool all_finite() const;

  /// One component as a cell scalar field.
  ScalarField component(int i) const;

 private:
  Grid grid_;
  std::vector<Vec2> values_;
};

class MatrixField {
 public:
  explicit MatrixField(Grid grid, FieldRole role = FieldRole::other)
      : grid_(grid), role_(role), values_(grid.num_cells(), Mat2::Zero()) {}

  static MatrixField sample(const Grid& g, const std::function<Mat2(double, double)>& f,
                            FieldRole role = FieldRole::other) {
    MatrixField m(g, role);
    for (int iy = 0; iy < g.n(); ++iy)
      for (int ix = 0; ix < g.n(); ++ix) {
        const auto p = g.cell_center(ix, iy);
        m.values_[g.cell_index(ix, iy)] = f(p[0], p[1]);
      }
    return m;
  }
  static MatrixField constant(const Grid& g, const Mat2& m, FieldRole role = FieldRole::other) {
    MatrixField out(g, role);
    for (auto& e : out.values_) e = m;
    return out;
  }

  const Grid& grid() const { return grid_; }
  FieldRole role() const { return role_; }
  void set_role(FieldRole r) { role_ = r; }
  const std::vector<Mat2>& values() const { return values_; }
  std::vector<Mat2>& values() { return values_; }
  Mat2& at(int ix, int iy) { return values_[grid_.cell_index(ix, iy)]; }
  const Mat2& at(int ix, int iy) const { return values_[grid_.cell_index(ix, iy)]; }

  double max_abs() const;
  bool all_finite() const;

  /// Entry (i,j) as a cell scalar field.
  ScalarField entry(int i, int j) const;

 private:
  Grid grid_;
  FieldRole role_;
  std::vector<Mat2> values_;
};

/// curl of a matrix field: rank-3 tensor, antisymmetric in the last two
/// indices. In 2-D the only independent component per row i is (i,0,1);
/// the accessor reconstructs the full tensor from it.
class CurlTensorField {
 public:
  explicit CurlTensorField(Grid grid) : grid_(grid), comp_(grid.num_cells(), Vec2::Zero()) {}

  const Grid& grid() const { return grid_; }

  /// (curl M)_{i01} at a cell.
  double& independent(int ix, int iy, int i) { return comp_[grid_.cell_index(ix, iy)][i]; }
  double independent(int ix, int iy, int i) const { return comp_[grid_.cell_index(ix, iy)][i]; }

  /// Full tensor entry (i,j,k); zero for j == k, sign-flipped for (1,0).
  double entry(int ix, int iy, int i, int j, int k) const {
    if (j == k) return 0.0;
    const double v = comp_[grid_.cell_index(ix, iy)][i];
    return (j == 0 && k == 1) ? v : -v;
  }

  /// Row i of the independent component as a cell scalar field.
  ScalarField row_component(int i) const;

  double max_abs() const;

 private:
  Grid grid_;
  std::vector<Vec2> comp_;
};

// --- ellipticity -----------------------------------------------------------

/// Largest alpha and smallest beta with (A xi, xi) >= alpha |xi|^2 and
/// (A^-1 xi, xi) >= beta^-1 |xi|^2 cellwise. Throws SingularCell /
/// NotCoercive when A falls outside the admissible class.
EllipticityBounds check_ellipticity(const MatrixField& A);

/// Same bounds for a single constant matrix.
EllipticityBounds check_ellipticity(const Mat2& A);

// --- cellwise algebra -------------------------------------------------------

MatrixField multiply(const MatrixField& X, const MatrixField& Y);
MatrixField invert(const MatrixField& X);
MatrixField transpose(const MatrixField& X);

// --- discrete differential operators ---------------------------------------

/// (div P)_i = sum_j dP_ij/dx_j at cell centers. Central differences on
/// interior cells, one-sided at the boundary; exact for affine entries.
VectorField divergence(const MatrixField& P);

/// div of a cell vector field, same stencils.
ScalarField divergence(const VectorField& D);

/// (curl M)_ijk = dM_ij/dx_k - dM_ik/dx_j, same stencils.
CurlTensorField curl(const MatrixField& M);

/// 2-D scalar curl of a vector field: dE_0/dx_1 - dE_1/dx_0.
ScalarField curl(const VectorField& E);

// --- discrete H^-1 proxy ----------------------------------------------------

/// ||grad w||_L2 where -Lap w = g, w = 0 on the boundary. g lives on cells.
/// Implemented with the elliptic solver at coefficient I.
double hminus1_estimate(const ScalarField& g, double tol = 1e-10);

// --- quadrature helpers -----------------------------------------------------

/// Midpoint-rule L2 norm of a cell scalar field.
double l2_norm(const ScalarField& f);

}  // namespace homog

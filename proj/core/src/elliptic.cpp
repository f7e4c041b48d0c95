#include "homog/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace homog {

namespace {

// Reference P1 gradients for the two triangles of a cell, scaled by 1/h.
// Lower triangle: (n00, n10, n11); upper: (n00, n11, n01).
struct ElementGeometry {
  std::array<Vec2, 3> grad_lower;
  std::array<Vec2, 3> grad_upper;
  double area;
};

ElementGeometry element_geometry(double h) {
  ElementGeometry e;
  e.grad_lower = {Vec2(-1.0 / h, 0.0), Vec2(1.0 / h, -1.0 / h), Vec2(0.0, 1.0 / h)};
  e.grad_upper = {Vec2(0.0, -1.0 / h), Vec2(1.0 / h, 0.0), Vec2(-1.0 / h, 1.0 / h)};
  e.area = 0.5 * h * h;
  return e;
}

bool coefficient_symmetric(const MatrixField& A) {
  const double scale = std::max(1.0, A.max_abs());
  for (const auto& m : A.values())
    if (std::abs(m(0, 1) - m(1, 0)) > 1e-14 * scale) return false;
  return true;
}

void require_nodal(const ScalarField& f, const char* where) {
  if (f.sampling() != Sampling::nodes) raise(Errc::grid_mismatch, where);
}

// Visits each triangle: callback(node_ids[3], grads[3], cell_index).
template <typename F>
void for_each_triangle(const Grid& g, const ElementGeometry& geo, F&& f) {
  const int n = g.n();
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const std::int64_t c = g.cell_index(ix, iy);
      const std::array<std::int64_t, 3> lower = {g.node_index(ix, iy), g.node_index(ix + 1, iy),
                                                 g.node_index(ix + 1, iy + 1)};
      const std::array<std::int64_t, 3> upper = {g.node_index(ix, iy),
                                                 g.node_index(ix + 1, iy + 1),
                                                 g.node_index(ix, iy + 1)};
      f(lower, geo.grad_lower, c);
      f(upper, geo.grad_upper, c);
    }
}

Eigen::VectorXd load_vector(const EllipticProblem& p, const std::vector<std::int64_t>& interior_index) {
  const Grid& g = p.coefficient.grid();
  const ElementGeometry geo = element_geometry(g.h());
  const std::int64_t n_interior =
      std::count_if(interior_index.begin(), interior_index.end(), [](auto v) { return v >= 0; });
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_interior);

  if (const auto* scalar = std::get_if<ScalarField>(&p.source)) {
    if (scalar->sampling() != Sampling::cells)
      raise(Errc::grid_mismatch, "scalar source must be cell-sampled");
    require_same_grid(scalar->grid(), g, "source grid");
    for_each_triangle(g, geo, [&](const auto& nodes, const auto&, std::int64_t c) {
      const double load = scalar->values()[c] * geo.area / 3.0;
      for (int a = 0; a < 3; ++a) {
        const std::int64_t row = interior_index[nodes[a]];
        if (row >= 0) rhs[row] += load;
      }
    });
  } else {
    const auto& q = std::get<WeakDivSource>(p.source).row;
    require_same_grid(q.grid(), g, "source grid");
    for_each_triangle(g, geo, [&](const auto& nodes, const auto& grads, std::int64_t c) {
      const Vec2 qc = q.values()[c];
      for (int a = 0; a < 3; ++a) {
        const std::int64_t row = interior_index[nodes[a]];
        if (row >= 0) rhs[row] -= geo.area * qc.dot(grads[a]);
      }
    });
  }
  return rhs;
}

}  // namespace

AssembledSystem assemble(const EllipticProblem& p) {
  const Grid& g = p.coefficient.grid();
  require_nodal(p.lift, "lift must be nodal");
  require_same_grid(p.lift.grid(), g, "lift grid");
  check_ellipticity(p.coefficient);  // throws NotCoercive / SingularCell

  AssembledSystem sys{g, {}, {}, {}, {}, coefficient_symmetric(p.coefficient)};
  sys.interior_index.assign(g.num_nodes(), -1);
  for (int iy = 0; iy <= g.n(); ++iy)
    for (int ix = 0; ix <= g.n(); ++ix)
      if (!g.boundary_node(ix, iy)) {
        sys.interior_index[g.node_index(ix, iy)] = std::int64_t(sys.interior_nodes.size());
        sys.interior_nodes.push_back(g.node_index(ix, iy));
      }

  const ElementGeometry geo = element_geometry(g.h());
  sys.rhs = load_vector(p, sys.interior_index);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(std::size_t(18) * g.num_cells());
  for_each_triangle(g, geo, [&](const auto& nodes, const auto& grads, std::int64_t c) {
    const Mat2& A = p.coefficient.values()[c];
    for (int a = 0; a < 3; ++a) {
      const std::int64_t row = sys.interior_index[nodes[a]];
      if (row < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const double k = geo.area * grads[a].dot(A * grads[b]);
        const std::int64_t col = sys.interior_index[nodes[b]];
        if (col >= 0)
          triplets.emplace_back(int(row), int(col), k);
        else
          sys.rhs[row] -= k * p.lift.values()[nodes[b]];
      }
    }
  });

  sys.matrix.resize(int(sys.interior_nodes.size()), int(sys.interior_nodes.size()));
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

namespace {

// Jacobi-preconditioned CG. Returns iterations; final x in-place.
template <typename MatVec>
int pcg(const MatVec& apply, const Eigen::VectorXd& b, const Eigen::VectorXd& inv_diag,
        Eigen::VectorXd& x, double tol, int maxiter, double* rel_residual) {
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero();
    *rel_residual = 0.0;
    return 0;
  }
  Eigen::VectorXd r = b - apply(x);
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rho = r.dot(z);
  int it = 0;
  while (r.norm() > tol * bnorm && it < maxiter) {
    const Eigen::VectorXd w = apply(p);
    const double alpha = rho / p.dot(w);
    x += alpha * p;
    r -= alpha * w;
    z = inv_diag.cwiseProduct(r);
    const double rho_next = r.dot(z);
    p = z + (rho_next / rho) * p;
    rho = rho_next;
    ++it;
  }
  *rel_residual = r.norm() / bnorm;
  return it;
}

}  // namespace

SolveReport solve_dirichlet(const EllipticProblem& p, double tol, int maxiter) {
  const Grid& g = p.coefficient.grid();
  AssembledSystem sys = assemble(p);
  if (maxiter <= 0) maxiter = 20 * g.n();

  const auto& K = sys.matrix;
  // Initial guess: the lift extended to the interior. Affine solutions of
  // constant-coefficient problems then start at the exact answer.
  Eigen::VectorXd x(K.rows());
  for (std::size_t k = 0; k < sys.interior_nodes.size(); ++k)
    x[Eigen::Index(k)] = p.lift.values()[sys.interior_nodes[k]];
  double rel = 0.0;
  int iters = 0;

  if (sys.symmetric) {
    Eigen::VectorXd inv_diag(K.rows());
    for (int j = 0; j < K.rows(); ++j) inv_diag[j] = 1.0 / K.coeff(j, j);
    iters = pcg([&](const Eigen::VectorXd& v) { return (K * v).eval(); }, sys.rhs, inv_diag, x,
                tol, maxiter, &rel);
  } else {
    // Normal equations K^T K x = K^T b with the same CG kernel. The stopping
    // test stays on the residual of the original system.
    Eigen::VectorXd col_sq(K.cols());
    for (int j = 0; j < K.outerSize(); ++j) {
      double s = 0.0;
      for (Eigen::SparseMatrix<double>::InnerIterator it(K, j); it; ++it) s += it.value() * it.value();
      col_sq[j] = 1.0 / s;
    }
    const double bnorm = sys.rhs.norm();
    if (bnorm == 0.0) x.setZero();
    if (bnorm > 0.0) {
      Eigen::VectorXd r = sys.rhs - K * x;
      Eigen::VectorXd z = K.transpose() * r;
      Eigen::VectorXd y = col_sq.cwiseProduct(z);
      Eigen::VectorXd q = y;
      double rho = z.dot(y);
      while (r.norm() > tol * bnorm && iters < maxiter) {
        const Eigen::VectorXd w = K * q;
        const double alpha = rho / w.squaredNorm();
        x += alpha * q;
        r -= alpha * w;
        z = K.transpose() * r;
        y = col_sq.cwiseProduct(z);
        const double rho_next = z.dot(y);
        q = y + (rho_next / rho) * q;
        rho = rho_next;
        ++iters;
      }
      rel = r.norm() / bnorm;
    }
  }

  if (rel > tol)
    raise(Errc::solver_divergence,
          "no convergence in " + std::to_string(maxiter) + " iterations, residual " +
              std::to_string(rel));

  SolveReport report{ScalarField(g, Sampling::nodes), iters, rel, 0.0};
  report.u = p.lift;
  for (std::size_t k = 0; k < sys.interior_nodes.size(); ++k)
    report.u.values()[sys.interior_nodes[k]] = x[Eigen::Index(k)];
  report.energy = energy_product(p.coefficient, report.u);
  return report;
}

VectorField gradient_at_cells(const ScalarField& u) {
  require_nodal(u, "gradient_at_cells: nodal field expected");
  const Grid& g = u.grid();
  const double h = g.h();
  VectorField out(g);
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix) {
      const double u00 = u.at_node(ix, iy);
      const double u10 = u.at_node(ix + 1, iy);
      const double u01 = u.at_node(ix, iy + 1);
      const double u11 = u.at_node(ix + 1, iy + 1);
      out.at(ix, iy) = Vec2((u10 - u00 + u11 - u01) / (2.0 * h), (u01 - u00 + u11 - u10) / (2.0 * h));
    }
  return out;
}

VectorField flux(const MatrixField& A, const ScalarField& u) {
  require_same_grid(A.grid(), u.grid(), "flux: grids differ");
  VectorField grad = gradient_at_cells(u);
  VectorField out(A.grid());
  for (std::size_t c = 0; c < out.values().size(); ++c)
    out.values()[c] = A.values()[c] * grad.values()[c];
  return out;
}

ScalarField cell_values(const ScalarField& u) {
  require_nodal(u, "cell_values: nodal field expected");
  const Grid& g = u.grid();
  ScalarField out(g, Sampling::cells);
  for (int iy = 0; iy < g.n(); ++iy)
    for (int ix = 0; ix < g.n(); ++ix)
      out.at_cell(ix, iy) = 0.5 * (u.at_node(ix, iy) + u.at_node(ix + 1, iy + 1));
  return out;
}

double energy_product(const MatrixField& A, const ScalarField& v) {
  require_same_grid(A.grid(), v.grid(), "energy_product: grids differ");
  require_nodal(v, "energy_product: nodal field expected");
  const Grid& g = A.grid();
  const ElementGeometry geo = element_geometry(g.h());
  double total = 0.0;
  for_each_triangle(g, geo, [&](const auto& nodes, const auto& grads, std::int64_t c) {
    Vec2 grad_v = Vec2::Zero();
    for (int a = 0; a < 3; ++a) grad_v += v.values()[nodes[a]] * grads[a];
    total += geo.area * grad_v.dot(A.values()[c] * grad_v);
  });
  return total;
}

double weak_residual_hminus1(const EllipticProblem& p, const ScalarField& u, double tol) {
  const Grid& g = p.coefficient.grid();
  require_nodal(u, "weak_residual_hminus1: nodal field expected");
  require_same_grid(u.grid(), g, "weak_residual_hminus1: grids differ");

  const ElementGeometry geo = element_geometry(g.h());
  std::vector<std::int64_t> interior_index(g.num_nodes(), -1);
  std::vector<std::int64_t> interior_nodes;
  for (int iy = 0; iy <= g.n(); ++iy)
    for (int ix = 0; ix <= g.n(); ++ix)
      if (!g.boundary_node(ix, iy)) {
        interior_index[g.node_index(ix, iy)] = std::int64_t(interior_nodes.size());
        interior_nodes.push_back(g.node_index(ix, iy));
      }

  Eigen::VectorXd r = load_vector(p, interior_index);
  for_each_triangle(g, geo, [&](const auto& nodes, const auto& grads, std::int64_t c) {
    Vec2 grad_u = Vec2::Zero();
    for (int a = 0; a < 3; ++a) grad_u += u.values()[nodes[a]] * grads[a];
    const Vec2 d = p.coefficient.values()[c] * grad_u;
    for (int a = 0; a < 3; ++a) {
      const std::int64_t row = interior_index[nodes[a]];
      if (row >= 0) r[row] -= geo.area * d.dot(grads[a]);
    }
  });

  if (r.norm() == 0.0) return 0.0;

  // Riesz lift: K0 w = r with coefficient I, then ||grad w|| = sqrt(r.w).
  EllipticProblem identity_problem{MatrixField::constant(g, Mat2::Identity()),
                                   ScalarField(g, Sampling::cells), ScalarField(g, Sampling::nodes)};
  AssembledSystem sys = assemble(identity_problem);
  sys.rhs = r;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(sys.matrix.rows());
  Eigen::VectorXd inv_diag(sys.matrix.rows());
  for (int j = 0; j < sys.matrix.rows(); ++j) inv_diag[j] = 1.0 / sys.matrix.coeff(j, j);
  double rel = 0.0;
  const int iters = pcg([&](const Eigen::VectorXd& v) { return (sys.matrix * v).eval(); }, sys.rhs,
                        inv_diag, w, tol, 40 * g.n(), &rel);
  if (rel > tol)
    raise(Errc::solver_divergence, "Riesz lift did not converge in " + std::to_string(iters) + " iterations");
  const double sq = r.dot(w);
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

}  // namespace homog

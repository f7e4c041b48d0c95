#pragma once

#include <Eigen/Sparse>
#include <variant>
#include <vector>

#include "homog/fields.hpp"

namespace homog {

/// Source given as the weak divergence of a vector field q: the load is
/// assembled as -integral (q, grad phi) per element, never by
/// differentiating q.
struct WeakDivSource {
  VectorField row;
};

/// Right-hand side of -div(A grad u) = f.
using SourceTerm = std::variant<ScalarField, WeakDivSource>;

/// -div(A grad u) = f with u = lift on the boundary. The coefficient is a
/// cell matrix field; both triangles of a cell see the cell value.
struct EllipticProblem {
  MatrixField coefficient;
  SourceTerm source;
  ScalarField lift;  // nodal
};

struct AssembledSystem {
  Grid grid;
  Eigen::SparseMatrix<double> matrix;           // interior x interior
  Eigen::VectorXd rhs;                          // load + lift contribution
  std::vector<std::int64_t> interior_nodes;     // node ids, row order
  std::vector<std::int64_t> interior_index;     // node id -> row or -1
  bool symmetric = true;
};

/// Piecewise-linear elements on the uniform triangulation of the square
/// (every cell split along the same diagonal, two triangles per cell).
/// Dirichlet nodes are eliminated; assembly order is fixed.
AssembledSystem assemble(const EllipticProblem& problem);

struct SolveReport {
  ScalarField u;       // nodal solution including boundary values
  int iterations = 0;
  double residual = 0.0;  // relative algebraic residual
  double energy = 0.0;    // integral (A grad u, grad u)
};

/// Diagonally preconditioned conjugate gradients; nonsymmetric coefficients
/// go through the normal equations with the same kernel. Throws
/// SolverDivergence when maxiter (default 20*N) is reached.
SolveReport solve_dirichlet(const EllipticProblem& problem, double tol = 1e-10, int maxiter = 0);

/// Exact gradient of the piecewise-linear interpolant, averaged over the
/// two triangles of each cell.
VectorField gradient_at_cells(const ScalarField& u_nodes);

/// D = A grad u at cell centers.
VectorField flux(const MatrixField& A, const ScalarField& u_nodes);

/// P1 interpolant evaluated at cell centers (the centers lie on the shared
/// diagonal, so the value is the mean of the two diagonal nodes).
ScalarField cell_values(const ScalarField& u_nodes);

/// Energy of a nodal field: integral (A grad v, grad v), per-triangle exact.
double energy_product(const MatrixField& A, const ScalarField& v_nodes);

/// Discrete H^-1 norm of the residual functional
///   phi -> F(phi) - integral (A grad u, grad phi)
/// over interior basis functions, measured through the Riesz lift with
/// coefficient I on the same mesh. For a converged solve this is at the
/// level of the solver tolerance; for the flux D = A grad u it expresses
/// how far div D + f is from zero in H^-1.
double weak_residual_hminus1(const EllipticProblem& problem, const ScalarField& u_nodes,
                             double tol = 1e-10);

}  // namespace homog

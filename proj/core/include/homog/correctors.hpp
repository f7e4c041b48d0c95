#pragma once

#include <array>

#include "homog/elliptic.hpp"
#include "homog/fields.hpp"

namespace homog {

/// Axis-aligned rectangle, used for local-norm subdomains.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
  bool strictly_inside(const Grid& g) const {
    const auto o = g.origin();
    return x0 < x1 && y0 < y1 && x0 > o[0] && y0 > o[1] && x1 < o[0] + g.side() &&
           y1 < o[1] + g.side();
  }
};

/// Corrector matrices normalized so that their weak limits are I and the
/// homogenized coefficient: grad_corrector * E approximates the oscillating
/// gradient, flux_corrector * E the oscillating flux.
struct CorrectorPair {
  MatrixField grad_corrector;
  MatrixField flux_corrector;
  double grad_max_abs = 0.0;  // L-inf stats per epsilon, recorded for the
  double flux_max_abs = 0.0;  // uniform-boundedness check
};

/// Applies the quotient construction to the transposed coefficient and
/// transposes the outputs. Satisfies flux_corrector = a_eps * grad_corrector
/// cellwise.
CorrectorPair build_correctors(const MatrixField& a_eps, const Mat2& a_hom, double tol = 1e-10,
                               int maxiter = 0);

struct LocalErrorRecord {
  Rect subdomain;
  double corrected_grad_err = 0.0;  // ||E_eps - N E|| on the subdomain
  double corrected_flux_err = 0.0;  // ||D_eps - Q E||
  double naive_grad_err = 0.0;      // ||E_eps - E||
  double naive_flux_err = 0.0;      // ||D_eps - D||
  double pairing = 0.0;             // ∫ (D_eps - Q E, E_eps - N E) over the subdomain
  std::array<double, 4> pairing_terms{};  // (D_eps,E_eps), (D_eps,NE), (QE,E_eps), (QE,NE)
};

/// Local L2 errors of the corrected and naive approximations plus the
/// div-curl pairing and its four-term expansion, midpoint quadrature over
/// cells inside the subdomain.
LocalErrorRecord corrector_error(const CorrectorPair& pair, const VectorField& grad_eps,
                                 const VectorField& flux_eps, const VectorField& grad_limit,
                                 const VectorField& flux_limit, const Rect& subdomain);

}  // namespace homog

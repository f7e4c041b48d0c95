#pragma once

#include <stdexcept>
#include <string>

namespace homog {

enum class Errc {
  singular_cell,
  not_coercive,
  grid_mismatch,
  grid_too_coarse,
  not_stratified,
  degenerate_pivot,
  under_resolved,
  quadrature_failure,
  solver_divergence,
  subdomain_not_interior,
  config_invalid,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::singular_cell: return "SingularCell";
    case Errc::not_coercive: return "NotCoercive";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::grid_too_coarse: return "GridTooCoarse";
    case Errc::not_stratified: return "NotStratified";
    case Errc::degenerate_pivot: return "DegeneratePivot";
    case Errc::under_resolved: return "UnderResolved";
    case Errc::quadrature_failure: return "QuadratureFailure";
    case Errc::solver_divergence: return "SolverDivergence";
    case Errc::subdomain_not_interior: return "SubdomainNotInterior";
    case Errc::config_invalid: return "ConfigInvalid";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace homog

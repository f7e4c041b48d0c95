#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "homog/fields.hpp"

namespace homog {

struct Layer {
  double fraction = 0.0;
  Mat2 matrix = Mat2::Identity();
};

/// Trigonometric polynomial of the period variable t in [0,1):
/// c0 + sum_m cos_amp[m] cos(2 pi (m+1) t) + sin_amp[m] sin(2 pi (m+1) t).
struct TrigEntry {
  double constant = 0.0;
  std::vector<double> cos_amp;
  std::vector<double> sin_amp;

  double eval(double t) const;
};

/// One period of a laminate: ordered layers with fractions summing to one,
/// or entrywise trigonometric polynomials. Pure function of t; sampling is
/// deterministic.
class PeriodicProfile {
 public:
  static PeriodicProfile piecewise(std::vector<Layer> layers);
  static PeriodicProfile smooth(std::array<std::array<TrigEntry, 2>, 2> entries);

  Mat2 at(double t) const;  // t reduced mod 1

  bool is_piecewise() const { return piecewise_; }
  const std::vector<Layer>& layers() const { return layers_; }
  const std::array<std::array<TrigEntry, 2>, 2>& smooth_entries() const { return entries_; }
  double min_fraction() const { return min_fraction_; }
  EllipticityBounds bounds() const { return bounds_; }

 private:
  PeriodicProfile() = default;
  bool piecewise_ = true;
  std::vector<Layer> layers_;
  std::vector<double> upper_;  // cumulative layer boundaries
  std::array<std::array<TrigEntry, 2>, 2> entries_{};
  double min_fraction_ = 1.0;
  EllipticityBounds bounds_{};
};

/// A_eps(x) = A_per(frac(x_0 / eps)) sampled at cell centers; exactly
/// constant along x_1. Throws UnderResolved unless h <= eps * theta_min / 4.
MatrixField sample_oscillating(const PeriodicProfile& profile, double eps, const Grid& grid);

/// Period mean of g(A_per(t)): exact layer sum for piecewise profiles,
/// 4096-point midpoint quadrature for smooth ones.
double period_average(const PeriodicProfile& profile, const std::function<double(const Mat2&)>& g);

/// Closed-form homogenized tensor of a laminate: period averages of the
/// stratified factor/product entries, then a_hom = factor_mean^-1 *
/// product_mean.
struct HomogenizedLaminate {
  Mat2 a_hom;
  Mat2 factor_mean;
  Mat2 product_mean;
};
HomogenizedLaminate homogenized_laminate(const PeriodicProfile& profile);

// --- weak convergence against a fixed test family ---------------------------

/// Fixed ordered family on the unit square: tensor-product monomials
/// x^p y^q up to a degree cap plus sin(pi x), sin(pi y),
/// sin(pi x) sin(pi y); exact L2 norms attached.
class TestFunctionFamily {
 public:
  static TestFunctionFamily tensor_poly_plus_sines(int max_degree = 3);

  std::size_t size() const { return items_.size(); }
  double eval(std::size_t k, double x, double y) const;
  double l2_norm(std::size_t k) const { return items_[k].norm; }
  const std::string& name(std::size_t k) const { return items_[k].name; }

 private:
  enum class Kind { monomial, sin_x, sin_y, sin_xy };
  struct Item {
    Kind kind;
    int p = 0, q = 0;
    double norm = 1.0;
    std::string name;
  };
  std::vector<Item> items_;
};

/// Family sampled at the cell centers of one grid (unit square only).
class FamilyTable {
 public:
  FamilyTable(const TestFunctionFamily& family, const Grid& grid);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values(std::size_t k) const { return values_[k]; }
  double norm(std::size_t k) const { return norms_[k]; }
  const std::string& name(std::size_t k) const { return names_[k]; }
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  std::vector<std::vector<double>> values_;
  std::vector<double> norms_;
  std::vector<std::string> names_;
};

/// |integral phi_k (f - g)| / ||phi_k|| for every member, midpoint rule.
std::vector<double> pairing_errors(const ScalarField& f, const ScalarField& g,
                                   const FamilyTable& table);

struct WeakErrorTable {
  std::vector<double> epsilons;
  std::vector<std::string> components;
  std::vector<std::vector<double>> errors;  // [eps][component]: max over family
  std::vector<double> max_error;            // per eps: max over components
};

WeakErrorTable weak_pairing_errors(const std::vector<std::pair<double, MatrixField>>& sequence,
                                   const MatrixField& limit, const TestFunctionFamily& family);
WeakErrorTable weak_pairing_errors(const std::vector<std::pair<double, VectorField>>& sequence,
                                   const VectorField& limit, const TestFunctionFamily& family);
WeakErrorTable weak_pairing_errors(const std::vector<std::pair<double, ScalarField>>& sequence,
                                   const ScalarField& limit, const TestFunctionFamily& family);

}  // namespace homog

#include "homog/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace homog {

namespace {

constexpr int kSmoothQuadraturePoints = 4096;
constexpr double kPi = std::numbers::pi;

double reduce_mod1(double t) {
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;  // guard against floor rounding at whole numbers
  return r;
}

}  // namespace

double TrigEntry::eval(double t) const {
  double v = constant;
  for (std::size_t m = 0; m < cos_amp.size(); ++m)
    v += cos_amp[m] * std::cos(2.0 * kPi * double(m + 1) * t);
  for (std::size_t m = 0; m < sin_amp.size(); ++m)
    v += sin_amp[m] * std::sin(2.0 * kPi * double(m + 1) * t);
  return v;
}

PeriodicProfile PeriodicProfile::piecewise(std::vector<Layer> layers) {
  if (layers.empty()) raise(Errc::config_invalid, "profile needs at least one layer");
  double sum = 0.0;
  for (const auto& l : layers) {
    if (!(l.fraction > 0.0)) raise(Errc::config_invalid, "layer fractions must be positive");
    sum += l.fraction;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    raise(Errc::config_invalid, "layer fractions must sum to 1");

  PeriodicProfile p;
  p.piecewise_ = true;
  p.layers_ = std::move(layers);
  double acc = 0.0;
  double alpha = std::numeric_limits<double>::infinity();
  double beta = 0.0;
  p.min_fraction_ = 1.0;
  for (const auto& l : p.layers_) {
    acc += l.fraction;
    p.upper_.push_back(acc);
    p.min_fraction_ = std::min(p.min_fraction_, l.fraction);
    const EllipticityBounds b = check_ellipticity(l.matrix);
    alpha = std::min(alpha, b.alpha);
    beta = std::max(beta, b.beta);
  }
  p.upper_.back() = 1.0;
  p.bounds_ = {alpha, beta};
  return p;
}

PeriodicProfile PeriodicProfile::smooth(std::array<std::array<TrigEntry, 2>, 2> entries) {
  PeriodicProfile p;
  p.piecewise_ = false;
  p.entries_ = std::move(entries);
  p.min_fraction_ = 1.0;
  double alpha = std::numeric_limits<double>::infinity();
  double beta = 0.0;
  for (int k = 0; k < kSmoothQuadraturePoints; ++k) {
    const double t = (k + 0.5) / kSmoothQuadraturePoints;
    const EllipticityBounds b = check_ellipticity(p.at(t));
    alpha = std::min(alpha, b.alpha);
    beta = std::max(beta, b.beta);
  }
  p.bounds_ = {alpha, beta};
  return p;
}

Mat2 PeriodicProfile::at(double t) const {
  const double r = reduce_mod1(t);
  if (piecewise_) {
    const auto it = std::upper_bound(upper_.begin(), upper_.end(), r);
    const std::size_t k = std::min<std::size_t>(it - upper_.begin(), layers_.size() - 1);
    return layers_[k].matrix;
  }
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = entries_[i][j].eval(r);
  return m;
}

MatrixField sample_oscillating(const PeriodicProfile& profile, double eps, const Grid& grid) {
  if (!(eps > 0.0) || eps > 1.0) raise(Errc::config_invalid, "eps must lie in (0, 1]");
  if (grid.h() > eps * profile.min_fraction() / 4.0)
    raise(Errc::under_resolved, "grid does not resolve the microstructure: need h <= eps*theta_min/4");

  MatrixField out(grid, FieldRole::coefficient);
  for (int ix = 0; ix < grid.n(); ++ix) {
    const double x = grid.cell_center(ix, 0)[0];
    const Mat2 value = profile.at(x / eps);
    for (int iy = 0; iy < grid.n(); ++iy) out.at(ix, iy) = value;
  }
  return out;
}

double period_average(const PeriodicProfile& profile, const std::function<double(const Mat2&)>& g) {
  double mean = 0.0;
  if (profile.is_piecewise()) {
    for (const auto& l : profile.layers()) mean += l.fraction * g(l.matrix);
  } else {
    for (int k = 0; k < kSmoothQuadraturePoints; ++k)
      mean += g(profile.at((k + 0.5) / kSmoothQuadraturePoints));
    mean /= kSmoothQuadraturePoints;
  }
  if (!std::isfinite(mean)) raise(Errc::quadrature_failure, "period average is not finite");
  return mean;
}

HomogenizedLaminate homogenized_laminate(const PeriodicProfile& profile) {
  HomogenizedLaminate h;
  h.factor_mean << period_average(profile, [](const Mat2& a) { return 1.0 / a(0, 0); }), 0.0,
      period_average(profile, [](const Mat2& a) { return -a(1, 0) / a(0, 0); }), 1.0;
  h.product_mean << 1.0, period_average(profile, [](const Mat2& a) { return a(0, 1) / a(0, 0); }),
      0.0,
      period_average(profile,
                     [](const Mat2& a) { return a(1, 1) - a(1, 0) * a(0, 1) / a(0, 0); });
  const double det = h.factor_mean(0, 0);  // lower-triangular with unit (1,1) entry
  if (!(std::abs(det) > 0.0)) raise(Errc::singular_cell, "averaged factor is singular");
  Mat2 inv;
  inv << 1.0 / det, 0.0, -h.factor_mean(1, 0) / det, 1.0;
  h.a_hom = inv * h.product_mean;
  check_ellipticity(h.a_hom);
  return h;
}

// --- test family -------------------------------------------------------------

TestFunctionFamily TestFunctionFamily::tensor_poly_plus_sines(int max_degree) {
  if (max_degree < 0 || max_degree > 6)
    raise(Errc::config_invalid, "test family degree out of range [0, 6]");
  TestFunctionFamily fam;
  for (int p = 0; p <= max_degree; ++p)
    for (int q = 0; q <= max_degree; ++q) {
      Item it;
      it.kind = Kind::monomial;
      it.p = p;
      it.q = q;
      it.norm = 1.0 / std::sqrt(double(2 * p + 1) * double(2 * q + 1));
      it.name = "x^" + std::to_string(p) + "*y^" + std::to_string(q);
      fam.items_.push_back(std::move(it));
    }
  fam.items_.push_back({Kind::sin_x, 0, 0, std::sqrt(0.5), "sin(pi*x)"});
  fam.items_.push_back({Kind::sin_y, 0, 0, std::sqrt(0.5), "sin(pi*y)"});
  fam.items_.push_back({Kind::sin_xy, 0, 0, 0.5, "sin(pi*x)*sin(pi*y)"});
  return fam;
}

double TestFunctionFamily::eval(std::size_t k, double x, double y) const {
  const Item& it = items_[k];
  switch (it.kind) {
    case Kind::monomial: {
      double v = 1.0;
      for (int i = 0; i < it.p; ++i) v *= x;
      for (int i = 0; i < it.q; ++i) v *= y;
      return v;
    }
    case Kind::sin_x: return std::sin(kPi * x);
    case Kind::sin_y: return std::sin(kPi * y);
    case Kind::sin_xy: return std::sin(kPi * x) * std::sin(kPi * y);
  }
  return 0.0;
}

FamilyTable::FamilyTable(const TestFunctionFamily& family, const Grid& grid) : grid_(grid) {
  if (!grid.is_unit_square())
    raise(Errc::grid_mismatch, "test family is defined on the unit square");
  values_.resize(family.size());
  norms_.resize(family.size());
  names_.resize(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    values_[k].resize(std::size_t(grid.num_cells()));
    for (int iy = 0; iy < grid.n(); ++iy)
      for (int ix = 0; ix < grid.n(); ++ix) {
        const auto p = grid.cell_center(ix, iy);
        values_[k][std::size_t(grid.cell_index(ix, iy))] = family.eval(k, p[0], p[1]);
      }
    norms_[k] = family.l2_norm(k);
    names_[k] = family.name(k);
  }
}

std::vector<double> pairing_errors(const ScalarField& f, const ScalarField& g,
                                   const FamilyTable& table) {
  require_same_grid(f.grid(), table.grid(), "pairing_errors: grid mismatch");
  require_same_grid(g.grid(), table.grid(), "pairing_errors: grid mismatch");
  const double cell_area = table.grid().h() * table.grid().h();
  std::vector<double> out(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& phi = table.values(k);
    double s = 0.0;
    for (std::size_t c = 0; c < phi.size(); ++c) s += phi[c] * (f.values()[c] - g.values()[c]);
    out[k] = std::abs(s) * cell_area / table.norm(k);
  }
  return out;
}

namespace {

template <typename Field, typename ComponentLister>
WeakErrorTable weak_errors_impl(const std::vector<std::pair<double, Field>>& sequence,
                                const Field& limit, const TestFunctionFamily& family,
                                const ComponentLister& components) {
  WeakErrorTable table;
  if (sequence.empty()) return table;
  const FamilyTable tab(family, limit.grid());
  for (const auto& [name, get] : components(limit)) table.components.push_back(name);
  for (const auto& [eps, field] : sequence) {
    require_same_grid(field.grid(), limit.grid(), "weak_pairing_errors: grid mismatch");
    table.epsilons.push_back(eps);
    std::vector<double> row;
    double worst = 0.0;
    for (const auto& [name, get] : components(limit)) {
      const auto errs = pairing_errors(get(field), get(limit), tab);
      const double e = *std::max_element(errs.begin(), errs.end());
      row.push_back(e);
      worst = std::max(worst, e);
    }
    table.errors.push_back(std::move(row));
    table.max_error.push_back(worst);
  }
  return table;
}

}  // namespace

WeakErrorTable weak_pairing_errors(const std::vector<std::pair<double, MatrixField>>& sequence,
                                   const MatrixField& limit, const TestFunctionFamily& family) {
  using Getter = std::function<ScalarField(const MatrixField&)>;
  auto components = [](const MatrixField&) {
    std::vector<std::pair<std::string, Getter>> list;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        list.emplace_back(std::to_string(i) + std::to_string(j),
                          [i, j](const MatrixField& m) { return m.entry(i, j); });
    return list;
  };
  return weak_errors_impl(sequence, limit, family, components);
}

WeakErrorTable weak_pairing_errors(const std::vector<std::pair<double, VectorField>>& sequence,
                                   const VectorField& limit, const TestFunctionFamily& family) {
  using Getter = std::function<ScalarField(const VectorField&)>;
  auto components = [](const VectorField&) {
    std::vector<std::pair<std::string, Getter>> list;
    for (int i = 0; i < 2; ++i)
      list.emplace_back(std::to_string(i), [i](const VectorField& v) { return v.component(i); });
    return list;
  };
  return weak_errors_impl(sequence, limit, family, components);
}

WeakErrorTable weak_pairing_errors(const std::vector<std::pair<double, ScalarField>>& sequence,
                                   const ScalarField& limit, const TestFunctionFamily& family) {
  using Getter = std::function<ScalarField(const ScalarField&)>;
  auto components = [](const ScalarField&) {
    std::vector<std::pair<std::string, Getter>> list;
    list.emplace_back("value", [](const ScalarField& s) { return s; });
    return list;
  };
  return weak_errors_impl(sequence, limit, family, components);
}

}  // namespace homog

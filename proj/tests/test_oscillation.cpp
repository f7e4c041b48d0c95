#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "homog/oscillation.hpp"
#include "homog/quotient.hpp"
#include "oracles.hpp"

using namespace homog;

namespace {

constexpr double kPi = std::numbers::pi;

PeriodicProfile two_layer(const Mat2& a, const Mat2& b) {
  return PeriodicProfile::piecewise({{0.5, a}, {0.5, b}});
}

}  // namespace

TEST_SUITE_BEGIN("oscillation");

TEST_CASE("profile validation") {
  CHECK_THROWS_WITH_AS(PeriodicProfile::piecewise({}), doctest::Contains("ConfigInvalid"), Error);
  CHECK_THROWS_WITH_AS(PeriodicProfile::piecewise({{0.7, Mat2::Identity()}}),
                       doctest::Contains("ConfigInvalid"), Error);
  Mat2 bad;
  bad << -1, 0, 0, 1;
  CHECK_THROWS_WITH_AS(PeriodicProfile::piecewise({{1.0, bad}}),
                       doctest::Contains("NotCoercive"), Error);
  const PeriodicProfile p = two_layer(Mat2::Identity(), 4.0 * Mat2::Identity());
  CHECK(p.bounds().alpha == doctest::Approx(1.0));
  CHECK(p.bounds().beta == doctest::Approx(4.0));
  CHECK(p.min_fraction() == 0.5);
}

TEST_CASE("sampling an oscillating coefficient") {
  SUBCASE("single layer gives a constant field") {
    Grid g(16);
    Mat2 a;
    a << 2, 1, 1, 3;
    const MatrixField f = sample_oscillating(PeriodicProfile::piecewise({{1.0, a}}), 0.5, g);
    for (const auto& m : f.values()) CHECK((m - a).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("two equal layers alternate in bands of width eps/2") {
    Grid g(64);
    const PeriodicProfile p = two_layer(Mat2::Identity(), 4.0 * Mat2::Identity());
    const MatrixField f = sample_oscillating(p, 0.25, g);
    for (int ix = 0; ix < 64; ++ix) {
      const double x = g.cell_center(ix, 0)[0];
      const double expected = std::fmod(x * 4.0, 1.0) < 0.5 ? 1.0 : 4.0;
      CHECK(f.at(ix, 7)(0, 0) == expected);
      CHECK(f.at(ix, 7)(1, 1) == expected);
    }
  }
  SUBCASE("smooth profile matches the unrolled definition pointwise") {
    Grid g(64);
    std::array<std::array<TrigEntry, 2>, 2> entries;
    entries[0][0] = {2.0, {}, {1.0}};
    entries[1][1] = {1.5, {}, {}};
    const PeriodicProfile p = PeriodicProfile::smooth(entries);
    const MatrixField f = sample_oscillating(p, 0.125, g);
    for (int ix = 0; ix < 64; ++ix) {
      const double x = g.cell_center(ix, 0)[0];
      const double t = x * 8.0 - std::floor(x * 8.0);
      CHECK(std::abs(f.at(ix, 3)(0, 0) - (2.0 + std::sin(2.0 * kPi * t))) <= 1e-15);
    }
  }
  SUBCASE("stratification is exact along the second coordinate") {
    Grid g(32);
    const MatrixField f = sample_oscillating(two_layer(Mat2::Identity(), 2.0 * Mat2::Identity()),
                                             0.25, g);
    for (int ix = 0; ix < 32; ++ix)
      for (int iy = 1; iy < 32; ++iy)
        CHECK((f.at(ix, iy) - f.at(ix, 0)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("under-resolved grids are rejected") {
    Grid g(32);
    CHECK_THROWS_WITH_AS(
        sample_oscillating(two_layer(Mat2::Identity(), 2.0 * Mat2::Identity()), 1.0 / 16, g),
        doctest::Contains("UnderResolved"), Error);
  }
}

TEST_CASE("period averages") {
  const PeriodicProfile p = two_layer(Mat2::Identity(), 4.0 * Mat2::Identity());
  CHECK(period_average(p, [](const Mat2&) { return 5.0; }) == 5.0);
  CHECK(period_average(p, [](const Mat2& a) { return 1.0 / a(0, 0); }) ==
        0.625);
  CHECK(period_average(p, [](const Mat2& a) { return a(1, 1); }) ==
        2.5);

  // smooth profile: mean of 1/(2 + sin(2 pi t)) is 1/sqrt(3) in closed form
  std::array<std::array<TrigEntry, 2>, 2> entries;
  entries[0][0] = {2.0, {}, {1.0}};
  entries[1][1] = {1.0, {}, {}};
  const PeriodicProfile smooth = PeriodicProfile::smooth(entries);
  CHECK(period_average(smooth, [](const Mat2& a) { return 1.0 / a(0, 0); }) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("homogenized laminate closed forms and oracles") {
  SUBCASE("single layer returns the layer") {
    Mat2 a;
    a << 2, 1, 1, 3;
    const HomogenizedLaminate h = homogenized_laminate(PeriodicProfile::piecewise({{1.0, a}}));
    CHECK((h.a_hom - a).cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("two equal isotropic layers: harmonic and arithmetic means") {
    const HomogenizedLaminate h =
        homogenized_laminate(two_layer(Mat2::Identity(), 4.0 * Mat2::Identity()));
    Mat2 expected;
    expected << 1.6, 0, 0, 2.5;
    CHECK((h.a_hom - expected).cwiseAbs().maxCoeff() <= 1e-12);

    const double q = test_oracles::effective_conductivity_1d(
        [](double t) { return t < 0.5 ? 1.0 : 4.0; });
    CHECK(h.a_hom(0, 0) == doctest::Approx(q).epsilon(1e-10));
    const double mean = test_oracles::period_mean([](double t) { return t < 0.5 ? 1.0 : 4.0; });
    CHECK(h.a_hom(1, 1) == doctest::Approx(mean).epsilon(1e-10));
  }
  SUBCASE("off-diagonal layers") {
    Mat2 b1, b2, expected;
    b1 << 2, 1, 1, 3;
    b2 << 4, 0, 0, 1;
    expected << 8.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 23.0 / 12.0;
    const HomogenizedLaminate h = homogenized_laminate(two_layer(b1, b2));
    CHECK((h.a_hom - expected).cwiseAbs().maxCoeff() <= 1e-12);
    Mat2 fm, pm;
    fm << 0.375, 0, -0.25, 1;
    pm << 1, 0.25, 0, 1.75;
    CHECK((h.factor_mean - fm).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((h.product_mean - pm).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("splitting a layer changes nothing") {
    Mat2 b1, b2;
    b1 << 2, 1, 1, 3;
    b2 << 4, 0, 0, 1;
    const HomogenizedLaminate h1 = homogenized_laminate(two_layer(b1, b2));
    const HomogenizedLaminate h2 =
        homogenized_laminate(PeriodicProfile::piecewise({{0.25, b1}, {0.25, b1}, {0.5, b2}}));
    CHECK((h1.a_hom - h2.a_hom).cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("random symmetric two-layer profiles stay symmetric and inside the bounds") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      Mat2 r1, r2;
      r1 << u(rng), u(rng), u(rng), u(rng);
      r2 << u(rng), u(rng), u(rng), u(rng);
      const Mat2 a1 = r1.transpose() * r1 + 0.4 * Mat2::Identity();
      const Mat2 a2 = r2.transpose() * r2 + 0.4 * Mat2::Identity();
      const PeriodicProfile p = two_layer(a1, a2);
      const HomogenizedLaminate h = homogenized_laminate(p);
      CHECK(std::abs(h.a_hom(0, 1) - h.a_hom(1, 0)) <= 1e-12);
      const EllipticityBounds hb = check_ellipticity(h.a_hom);
      CHECK(hb.alpha >= p.bounds().alpha - 1e-10);
      CHECK(hb.beta <= p.bounds().beta + 1e-10);
    }
  }
}

TEST_CASE("test function family") {
  const TestFunctionFamily fam = TestFunctionFamily::tensor_poly_plus_sines(3);
  CHECK(fam.size() == 19);
  CHECK(fam.name(0) == "x^0*y^0");
  CHECK(fam.l2_norm(0) == doctest::Approx(1.0));
  // ||x^2 y^3|| = 1/sqrt(5*7)
  bool found = false;
  for (std::size_t k = 0; k < fam.size(); ++k)
    if (fam.name(k) == "x^2*y^3") {
      found = true;
      CHECK(fam.l2_norm(k) == doctest::Approx(1.0 / std::sqrt(35.0)).epsilon(1e-14));
      CHECK(fam.eval(k, 0.5, 2.0) == doctest::Approx(0.25 * 8.0));
    }
  CHECK(found);
  CHECK(fam.l2_norm(18) == doctest::Approx(0.5));
}

TEST_CASE("weak pairing errors") {
  Grid g(64);
  const TestFunctionFamily fam = TestFunctionFamily::tensor_poly_plus_sines(3);
  SUBCASE("constant sequence equal to its limit") {
    Mat2 a;
    a << 2, 1, 1, 3;
    const MatrixField limit = MatrixField::constant(g, a);
    const WeakErrorTable t =
        weak_pairing_errors({{0.5, limit}, {0.25, limit}}, limit, fam);
    for (double e : t.max_error) CHECK(e == 0.0);
  }
  SUBCASE("oscillating scalar against the constant test function") {
    const FamilyTable table(fam, g);
    const ScalarField zero(g, Sampling::cells);
    for (double eps : {0.25, 0.125}) {
      const ScalarField s =
          ScalarField::sample_cells(g, [eps](double x, double) { return std::sin(x / eps); });
      const auto errs = pairing_errors(s, zero, table);
      // |integral sin(x/eps)| <= 2 eps, plus midpoint quadrature slack
      CHECK(errs[0] <= 2.0 * eps + 1e-3);
    }
  }
  SUBCASE("grid mismatch is rejected") {
    const ScalarField a(g, Sampling::cells);
    const ScalarField b(Grid(32), Sampling::cells);
    CHECK_THROWS_WITH_AS(weak_pairing_errors({{0.5, a}}, b, fam),
                         doctest::Contains("GridMismatch"), Error);
  }
  SUBCASE("family requires the unit square") {
    CHECK_THROWS_WITH_AS(FamilyTable(fam, Grid(16, 2.0)), doctest::Contains("GridMismatch"),
                         Error);
  }
}

TEST_CASE("sampled factor entries converge weakly to the averaged factor at rate eps") {
  Grid g(256);
  Mat2 b1, b2;
  b1 << 2, 1, 1, 3;
  b2 << 4, 0, 0, 1;
  const PeriodicProfile profile = two_layer(b1, b2);
  const HomogenizedLaminate hom = homogenized_laminate(profile);
  const TestFunctionFamily fam = TestFunctionFamily::tensor_poly_plus_sines(3);
  std::vector<std::pair<double, MatrixField>> seq;
  for (double eps : {0.125, 0.0625, 0.03125})
    seq.emplace_back(eps, stratified_quotient(sample_oscillating(profile, eps, g)).factor);
  const WeakErrorTable t =
      weak_pairing_errors(seq, MatrixField::constant(g, hom.factor_mean), fam);
  for (std::size_t k = 1; k < t.max_error.size(); ++k) {
    const double factor = t.max_error[k] / t.max_error[k - 1];
    CHECK(factor >= 0.35);
    CHECK(factor <= 0.65);
  }
}

TEST_SUITE_END();

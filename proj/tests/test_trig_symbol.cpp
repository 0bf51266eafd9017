#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "indexlab/json_io.hpp"
#include "indexlab/trig_symbol.hpp"

using namespace indexlab;

namespace {
constexpr double kPi = std::numbers::pi;

TrigSymbol random_symbol(int l, int degree, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  TrigSymbol s(l, degree);
  for (int k = -degree; k <= degree; ++k) {
    Mat c(l, l);
    for (int i = 0; i < l * l; ++i) c(i) = Cplx(g(rng), g(rng));
    s.set_coeff(k, c);
  }
  return s;
}
}  // namespace

TEST_CASE("evaluate: direct substitutions") {
  CHECK((TrigSymbol::identity(3).evaluate(1.3) - Mat::Identity(3, 3)).norm() == 0.0);

  const TrigSymbol e1 = TrigSymbol::monomial(1);
  CHECK(std::abs(e1.evaluate(kPi)(0, 0) - Cplx(-1.0, 0.0)) < 1e-15);

  const TrigSymbol two_plus = TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1);
  CHECK(std::abs(two_plus.evaluate(0.0)(0, 0) - Cplx(3.0, 0.0)) < 1e-15);
}

TEST_CASE("fourier round trip at degree 64") {
  for (unsigned seed : {1u, 2u}) {
    const TrigSymbol s = random_symbol(2, 64, seed);
    const int n = 2 * s.degree() + 1;
    double worst = 0.0, scale = 0.0;
    for (int k = -s.degree(); k <= s.degree(); ++k) {
      Mat acc = Mat::Zero(2, 2);
      for (int j = 0; j < n; ++j) {
        acc += s.evaluate(2.0 * kPi * j / n) * std::exp(Cplx(0.0, -k * 2.0 * kPi * j / n));
      }
      acc /= static_cast<double>(n);
      worst = std::max(worst, (acc - s.coeff(k)).cwiseAbs().maxCoeff());
      scale = std::max(scale, s.coeff(k).cwiseAbs().maxCoeff());
    }
    CHECK(worst / scale < 1e-12);
  }
}

TEST_CASE("invert: unitary monomial is exact") {
  const TrigSymbol psi = invert(TrigSymbol::monomial(1), 1);
  CHECK(psi.degree() == 1);
  CHECK(std::abs(psi.coeff(-1)(0, 0) - Cplx(1.0)) < 1e-14);
  CHECK(psi.coeff(1).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(psi.tail_tol() < 1e-13);

  CHECK(invert(TrigSymbol::identity(2), 0).coeff(0).isApprox(Mat::Identity(2, 2), 1e-14));
}

TEST_CASE("invert: geometric series oracle for 1/(2 + e^{i theta})") {
  // 1/(2+z) = sum_k (-1)^k z^k / 2^{k+1} on |z| = 1
  const TrigSymbol phi = TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1);
  const int target = 32;
  const TrigSymbol psi = invert(phi, target, 1e-8);
  for (int k = 0; k <= 6; ++k) {
    const double expected = (k % 2 == 0 ? 1.0 : -1.0) / std::pow(2.0, k + 1);
    CHECK(std::abs(psi.coeff(k)(0, 0) - Cplx(expected)) < 1e-9);
  }
  for (int k = 1; k <= 6; ++k) CHECK(psi.coeff(-k).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(psi.tail_tol() < 1e-8);

  // two-sided inverse on the verification grid
  const int points = verification_grid_points(psi.degree());
  double worst = 0.0;
  for (int j = 0; j < points; ++j) {
    const double theta = 2.0 * kPi * j / points;
    worst = std::max(worst, (phi.evaluate(theta) * psi.evaluate(theta) - Mat::Identity(1, 1)).norm());
    worst = std::max(worst, (psi.evaluate(theta) * phi.evaluate(theta) - Mat::Identity(1, 1)).norm());
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("invert: error paths") {
  // det(1 + e^{i theta}) vanishes at theta = pi
  CHECK_THROWS_AS(invert(TrigSymbol::monomial(0, 1.0) + TrigSymbol::monomial(1), 16),
                  NotInvertible);
  // geometric tail 2^{-4} cannot meet 1e-10 at degree 3
  CHECK_THROWS_AS(invert(TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1), 3, 1e-10),
                  DegreeTooSmall);
}

TEST_CASE("winding of det") {
  CHECK(winding_number(TrigSymbol::monomial(1)) == 1);
  CHECK(winding_number(TrigSymbol::diag(TrigSymbol::monomial(1), TrigSymbol::monomial(1))) == 2);
  CHECK(winding_number(TrigSymbol::monomial(0, 3.0) + TrigSymbol::monomial(1)) == 0);

  const WindingResult res = winding_of_det(TrigSymbol::monomial(1), 256);
  CHECK(res.winding == 1);
  CHECK(res.defect < 1e-12);

  CHECK_THROWS_AS(winding_of_det(TrigSymbol::monomial(3), 8), QuadratureUnstable);
}

TEST_CASE("winding additivity") {
  const TrigSymbol a = TrigSymbol::monomial(0, 3.0) + TrigSymbol::monomial(1);
  const TrigSymbol b = TrigSymbol::monomial(-2, 3.0) + TrigSymbol::monomial(-1);
  CHECK(winding_number(a * b) == winding_number(a) + winding_number(b));
  const TrigSymbol c = TrigSymbol::monomial(2);
  CHECK(winding_number(a * c) == winding_number(a) + 2);
}

TEST_CASE("homotopy interpolation and margin") {
  const TrigSymbol phi = TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1);
  const TrigSymbol psi = TrigSymbol::monomial(0, 2.1) + TrigSymbol::monomial(1);

  CHECK(homotopy_interpolate(phi, psi, 0.0) == phi);
  CHECK(homotopy_interpolate(phi, psi, 1.0) == psi);

  const HomotopyMargin margin = homotopy_margin(phi, psi);
  CHECK(margin.separation == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(margin.allowance == doctest::Approx(1.0).epsilon(1e-10));

  const TrigSymbol mid = homotopy_interpolate(phi, psi, 0.5);
  CHECK(std::abs(mid.coeff(0)(0, 0) - Cplx(2.05)) < 1e-14);
  CHECK(mid.invertibility_floor().has_value());
  CHECK(*mid.invertibility_floor() > 0.0);

  CHECK_THROWS_AS(homotopy_interpolate(TrigSymbol::monomial(1), TrigSymbol::monomial(1, -1.0), 0.5),
                  MarginViolated);
}

TEST_CASE("winding constant along margin-certified homotopy") {
  const TrigSymbol phi = TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1);
  const TrigSymbol psi = TrigSymbol::monomial(0, 2.1) + TrigSymbol::monomial(1);
  const int base = winding_number(phi);
  for (int i = 0; i <= 10; ++i) {
    CHECK(winding_number(homotopy_interpolate(phi, psi, 0.1 * i)) == base);
  }
}

TEST_CASE("symbol json round trip") {
  const TrigSymbol s = random_symbol(2, 3, 7u);
  const TrigSymbol back = symbol_from_json(symbol_to_json(s));
  CHECK(back.size() == s.size());
  CHECK(back.degree() == s.degree());
  for (int k = -3; k <= 3; ++k) {
    CHECK((back.coeff(k) - s.coeff(k)).cwiseAbs().maxCoeff() < 1e-15);
  }

  Json dup = symbol_to_json(s);
  dup["coeffs"].push_back(dup["coeffs"].back());
  CHECK_THROWS_AS(symbol_from_json(dup), ConfigError);
}

// trig_symbol.hpp — matrix-valued trigonometric polynomials on the circle.
//
// A TrigSymbol is phi(theta) = sum_{|k| <= d} c_k e^{i k theta} with c_k in
// C^{l x l}. These are the computational stand-ins for the invertible
// bounded-gradient symbols restricted to the hypersurface: every continuous
// invertible symbol is homotopic to one, and the finite bandwidth makes all
// commutators with Hardy projections exactly finite rank.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "indexlab/errors.hpp"

namespace indexlab {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

class TrigSymbol {
 public:
  // Zero symbol of matrix size l and bandwidth `degree`.
  TrigSymbol(int l, int degree);

  static TrigSymbol constant(const Mat& value);
  static TrigSymbol identity(int l);
  // l = 1 monomial  c * e^{i k theta}.
  static TrigSymbol monomial(int k, Cplx c = 1.0);

  int size() const { return l_; }
  int degree() const { return degree_; }

  // Fourier coefficient c_k; zero matrix outside [-d, d].
  const Mat& coeff(int k) const;
  void set_coeff(int k, const Mat& value);

  Mat evaluate(double theta) const;

  TrigSymbol operator+(const TrigSymbol& rhs) const;
  TrigSymbol operator-(const TrigSymbol& rhs) const;
  TrigSymbol operator*(const TrigSymbol& rhs) const;  // pointwise product (coefficient convolution)
  TrigSymbol scaled(Cplx factor) const;

  // phi(theta)^H as a symbol: coefficient k picks up the adjoint of c_{-k}.
  TrigSymbol adjoint() const;
  // d(phi)/d(theta): coefficient k becomes i k c_k.
  TrigSymbol derivative() const;
  // Symbol with outermost all-zero coefficients removed.
  TrigSymbol trimmed(double tol = 0.0) const;
  // diag(a, b) block symbol.
  static TrigSymbol diag(const TrigSymbol& a, const TrigSymbol& b);

  // min over a `points`-grid of the smallest singular value of phi(theta).
  double min_singular_value(int points) const;
  // sup over a `points`-grid of the operator norm of phi(theta).
  double sup_norm(int points) const;

  // Declared truncation residual for symbols produced by inversion (0 = exact).
  double tail_tol() const { return tail_tol_; }
  void set_tail_tol(double t) { tail_tol_ = t; }

  // Invertibility certificate: recorded singular-value floor, when certified.
  std::optional<double> invertibility_floor() const { return inv_floor_; }
  void certify_invertible(double floor);

  bool operator==(const TrigSymbol& rhs) const;

 private:
  int l_;
  int degree_;
  std::vector<Mat> coeffs_;  // index k + degree_
  double tail_tol_ = 0.0;
  std::optional<double> inv_floor_;
};

// Default grids and tolerances (headroom over double accumulation downstream).
inline constexpr double kDefaultTol = 1e-10;
inline int verification_grid_points(int degree) { return 8 * (degree + 1); }

// Throws NotInvertible unless the singular-value floor on a 4(d+1)-point grid
// exceeds tol; returns the floor.
double require_invertible(const TrigSymbol& phi, double tol = kDefaultTol);

// Pointwise inverse, truncated to `target_degree`, residual measured on a
// doubled grid. Throws NotInvertible / DegreeTooSmall.
TrigSymbol invert(const TrigSymbol& phi, int target_degree, double tol = kDefaultTol);

// Smallest truncation degree meeting tol, escalating up to max_degree.
TrigSymbol invert_adaptive(const TrigSymbol& phi, double tol = kDefaultTol, int max_degree = 64);

struct WindingResult {
  int winding = 0;
  double defect = 0.0;    // |raw/2pi - nearest integer| before rounding
  double max_step = 0.0;  // largest single-step argument increment
  int quad_points = 0;
};

// (1/2pi i) \oint d log det phi by argument accumulation.
// Throws NotInvertible, QuadratureUnstable (step > pi/2).
WindingResult winding_of_det(const TrigSymbol& phi, int quad_points);
int winding_number(const TrigSymbol& phi);  // convenience, default sampling

// t psi + (1-t) phi, admissible because sup|psi-phi| < 1/sup|phi^{-1}|.
// Throws MarginViolated when the margin fails on the verification grid.
TrigSymbol homotopy_interpolate(const TrigSymbol& phi, const TrigSymbol& psi, double t);

struct HomotopyMargin {
  double separation;  // sup_theta ||psi - phi||
  double allowance;   // 1 / sup_theta ||phi^{-1}||
  bool ok() const { return separation < allowance; }
};
HomotopyMargin homotopy_margin(const TrigSymbol& phi, const TrigSymbol& psi);

}  // namespace indexlab

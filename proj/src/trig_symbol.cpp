#include "indexlab/trig_symbol.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace indexlab {

namespace {
constexpr double kPi = std::numbers::pi;

Mat zero_mat(int l) { return Mat::Zero(l, l); }
}  // namespace

TrigSymbol::TrigSymbol(int l, int degree) : l_(l), degree_(degree) {
  if (l < 1) throw Error("TrigSymbol: matrix size must be positive");
  if (degree < 0) throw Error("TrigSymbol: degree must be non-negative");
  coeffs_.assign(2 * degree + 1, zero_mat(l));
}

TrigSymbol TrigSymbol::constant(const Mat& value) {
  if (value.rows() != value.cols()) throw Error("TrigSymbol: constant block must be square");
  TrigSymbol s(static_cast<int>(value.rows()), 0);
  s.coeffs_[0] = value;
  return s;
}

TrigSymbol TrigSymbol::identity(int l) { return constant(Mat::Identity(l, l)); }

TrigSymbol TrigSymbol::monomial(int k, Cplx c) {
  TrigSymbol s(1, std::abs(k));
  Mat m(1, 1);
  m(0, 0) = c;
  s.set_coeff(k, m);
  return s;
}

const Mat& TrigSymbol::coeff(int k) const {
  static thread_local Mat zero;
  if (std::abs(k) > degree_) {
    zero = zero_mat(l_);
    return zero;
  }
  return coeffs_[k + degree_];
}

void TrigSymbol::set_coeff(int k, const Mat& value) {
  if (std::abs(k) > degree_) throw Error("TrigSymbol::set_coeff: mode outside [-d, d]");
  if (value.rows() != l_ || value.cols() != l_) throw Error("TrigSymbol::set_coeff: block size mismatch");
  coeffs_[k + degree_] = value;
}

Mat TrigSymbol::evaluate(double theta) const {
  Mat out = zero_mat(l_);
  for (int k = -degree_; k <= degree_; ++k) {
    out += coeffs_[k + degree_] * std::exp(Cplx(0.0, k * theta));
  }
  return out;
}

TrigSymbol TrigSymbol::operator+(const TrigSymbol& rhs) const {
  if (l_ != rhs.l_) throw Error("TrigSymbol: size mismatch in +");
  TrigSymbol out(l_, std::max(degree_, rhs.degree_));
  for (int k = -out.degree_; k <= out.degree_; ++k) out.set_coeff(k, coeff(k) + rhs.coeff(k));
  return out.trimmed();
}

TrigSymbol TrigSymbol::operator-(const TrigSymbol& rhs) const {
  return *this + rhs.scaled(-1.0);
}

TrigSymbol TrigSymbol::operator*(const TrigSymbol& rhs) const {
  if (l_ != rhs.l_) throw Error("TrigSymbol: size mismatch in *");
  TrigSymbol out(l_, degree_ + rhs.degree_);
  for (int k = -degree_; k <= degree_; ++k) {
    for (int m = -rhs.degree_; m <= rhs.degree_; ++m) {
      out.coeffs_[k + m + out.degree_] += coeffs_[k + degree_] * rhs.coeffs_[m + rhs.degree_];
    }
  }
  return out.trimmed();
}

TrigSymbol TrigSymbol::scaled(Cplx factor) const {
  TrigSymbol out = *this;
  for (auto& c : out.coeffs_) c *= factor;
  return out;
}

TrigSymbol TrigSymbol::adjoint() const {
  TrigSymbol out(l_, degree_);
  for (int k = -degree_; k <= degree_; ++k) out.set_coeff(k, coeff(-k).adjoint());
  out.tail_tol_ = tail_tol_;
  return out;
}

TrigSymbol TrigSymbol::derivative() const {
  TrigSymbol out(l_, degree_);
  for (int k = -degree_; k <= degree_; ++k) out.set_coeff(k, Cplx(0.0, k) * coeff(k));
  return out.trimmed();
}

TrigSymbol TrigSymbol::trimmed(double tol) const {
  int d = degree_;
  auto is_zero = [&](int k) {
    return coeffs_[k + degree_].cwiseAbs().maxCoeff() <= tol;
  };
  while (d > 0 && is_zero(d) && is_zero(-d)) --d;
  if (d == degree_) return *this;
  TrigSymbol out(l_, d);
  for (int k = -d; k <= d; ++k) out.set_coeff(k, coeff(k));
  out.tail_tol_ = tail_tol_;
  out.inv_floor_ = inv_floor_;
  return out;
}

TrigSymbol TrigSymbol::diag(const TrigSymbol& a, const TrigSymbol& b) {
  const int l = a.size() + b.size();
  TrigSymbol out(l, std::max(a.degree(), b.degree()));
  for (int k = -out.degree(); k <= out.degree(); ++k) {
    Mat block = Mat::Zero(l, l);
    block.topLeftCorner(a.size(), a.size()) = a.coeff(k);
    block.bottomRightCorner(b.size(), b.size()) = b.coeff(k);
    out.set_coeff(k, block);
  }
  return out.trimmed();
}

double TrigSymbol::min_singular_value(int points) const {
  double floor = std::numeric_limits<double>::infinity();
  for (int j = 0; j < points; ++j) {
    const double theta = 2.0 * kPi * j / points;
    Eigen::JacobiSVD<Mat> svd(evaluate(theta));
    floor = std::min(floor, svd.singularValues().minCoeff());
  }
  return floor;
}

double TrigSymbol::sup_norm(int points) const {
  double sup = 0.0;
  for (int j = 0; j < points; ++j) {
    const double theta = 2.0 * kPi * j / points;
    Eigen::JacobiSVD<Mat> svd(evaluate(theta));
    sup = std::max(sup, svd.singularValues().maxCoeff());
  }
  return sup;
}

void TrigSymbol::certify_invertible(double floor) {
  if (!(floor > 0.0)) throw Error("TrigSymbol: invertibility certificate requires a positive floor");
  inv_floor_ = floor;
}

bool TrigSymbol::operator==(const TrigSymbol& rhs) const {
  if (l_ != rhs.l_) return false;
  const int d = std::max(degree_, rhs.degree_);
  for (int k = -d; k <= d; ++k) {
    if ((coeff(k) - rhs.coeff(k)).cwiseAbs().maxCoeff() != 0.0) return false;
  }
  return true;
}

double require_invertible(const TrigSymbol& phi, double tol) {
  const int points = 4 * (phi.degree() + 1);
  const double floor = phi.min_singular_value(points);
  if (!(floor > tol)) {
    throw NotInvertible("symbol singular-value floor " + std::to_string(floor) +
                        " is not above tol " + std::to_string(tol));
  }
  return floor;
}

TrigSymbol invert(const TrigSymbol& phi, int target_degree, double tol) {
  if (target_degree < 0) throw Error("invert: target_degree must be non-negative");
  require_invertible(phi, tol);

  // Pointwise inversion on an oversampled grid, then discrete Fourier analysis.
  const int n = 4 * std::max(phi.degree(), target_degree) + 1;
  std::vector<Mat> inv_samples(n);
  for (int j = 0; j < n; ++j) {
    inv_samples[j] = phi.evaluate(2.0 * kPi * j / n).inverse();
  }
  TrigSymbol psi(phi.size(), target_degree);
  for (int k = -target_degree; k <= target_degree; ++k) {
    Mat c = Mat::Zero(phi.size(), phi.size());
    for (int j = 0; j < n; ++j) {
      c += inv_samples[j] * std::exp(Cplx(0.0, -k * 2.0 * kPi * j / n));
    }
    psi.set_coeff(k, c / static_cast<double>(n));
  }

  // Residual on a doubled grid, both sides.
  const int m = 2 * n;
  double residual = 0.0;
  const Mat id = Mat::Identity(phi.size(), phi.size());
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * kPi * j / m;
    const Mat p = phi.evaluate(theta), q = psi.evaluate(theta);
    residual = std::max(residual, (p * q - id).norm());
    residual = std::max(residual, (q * p - id).norm());
  }
  if (residual > tol) {
    throw DegreeTooSmall("inverse residual " + std::to_string(residual) +
                         " exceeds tol at target_degree " + std::to_string(target_degree));
  }
  TrigSymbol out = psi.trimmed(1e-300);
  out.set_tail_tol(residual);
  return out;
}

TrigSymbol invert_adaptive(const TrigSymbol& phi, double tol, int max_degree) {
  for (int degree = phi.degree(); degree < max_degree; degree = std::max(2 * degree, degree + 8)) {
    try {
      return invert(phi, degree, tol);
    } catch (const DegreeTooSmall&) {
    }
  }
  return invert(phi, max_degree, tol);
}

WindingResult winding_of_det(const TrigSymbol& phi, int quad_points) {
  require_invertible(phi);
  if (quad_points < 4) throw Error("winding_of_det: need at least 4 quadrature points");

  WindingResult res;
  res.quad_points = quad_points;
  double total = 0.0;
  Cplx prev = phi.evaluate(0.0).determinant();
  for (int j = 1; j <= quad_points; ++j) {
    const double theta = 2.0 * kPi * j / quad_points;
    const Cplx cur = phi.evaluate(theta).determinant();
    const double step = std::arg(cur / prev);
    if (std::abs(step) > kPi / 2.0) {
      throw QuadratureUnstable("argument step " + std::to_string(step) +
                               " exceeds pi/2; increase quad_points");
    }
    res.max_step = std::max(res.max_step, std::abs(step));
    total += step;
    prev = cur;
  }
  const double raw = total / (2.0 * kPi);
  res.winding = static_cast<int>(std::lround(raw));
  res.defect = std::abs(raw - res.winding);
  if (res.defect >= 0.1) {
    throw QuadratureUnstable("pre-rounding defect " + std::to_string(res.defect) + " >= 0.1");
  }
  return res;
}

int winding_number(const TrigSymbol& phi) {
  const int points = std::max(256, 32 * (phi.degree() + 1));
  return winding_of_det(phi, points).winding;
}

HomotopyMargin homotopy_margin(const TrigSymbol& phi, const TrigSymbol& psi) {
  const int d = std::max(phi.degree(), psi.degree());
  const int points = verification_grid_points(d);
  double sep = 0.0, inv_sup = 0.0;
  for (int j = 0; j < points; ++j) {
    const double theta = 2.0 * kPi * j / points;
    Eigen::JacobiSVD<Mat> diff(psi.evaluate(theta) - phi.evaluate(theta));
    sep = std::max(sep, diff.singularValues().maxCoeff());
    Eigen::JacobiSVD<Mat> base(phi.evaluate(theta));
    inv_sup = std::max(inv_sup, 1.0 / base.singularValues().minCoeff());
  }
  return HomotopyMargin{sep, 1.0 / inv_sup};
}

TrigSymbol homotopy_interpolate(const TrigSymbol& phi, const TrigSymbol& psi, double t) {
  if (phi.size() != psi.size()) throw Error("homotopy_interpolate: size mismatch");
  if (t < 0.0 || t > 1.0) throw Error("homotopy_interpolate: t outside [0,1]");
  const HomotopyMargin margin = homotopy_margin(phi, psi);
  if (!margin.ok()) {
    throw MarginViolated("||psi - phi|| = " + std::to_string(margin.separation) +
                         " is not below 1/||phi^{-1}|| = " + std::to_string(margin.allowance));
  }
  TrigSymbol out = psi.scaled(t) + phi.scaled(1.0 - t);
  const int points = verification_grid_points(out.degree());
  const double floor = out.min_singular_value(points);
  out.certify_invertible(floor);
  return out;
}

}  // namespace indexlab

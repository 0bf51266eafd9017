#include "indexlab/labeled_matrix.hpp"

#include "indexlab/svd_utils.hpp"

namespace indexlab {

LabeledMatrix::LabeledMatrix(Basis rows, Basis cols, Mat m)
    : rows_(std::move(rows)), cols_(std::move(cols)), m_(std::move(m)) {
  if (static_cast<int>(rows_.size()) != m_.rows() || static_cast<int>(cols_.size()) != m_.cols()) {
    throw Error("LabeledMatrix: label count does not match matrix shape");
  }
}

LabeledMatrix LabeledMatrix::zero(const Basis& rows, const Basis& cols) {
  return LabeledMatrix(rows, cols, Mat::Zero(rows.size(), cols.size()));
}

LabeledMatrix LabeledMatrix::identity(const Basis& basis) {
  return LabeledMatrix(basis, basis, Mat::Identity(basis.size(), basis.size()));
}

LabeledMatrix LabeledMatrix::operator*(const LabeledMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw BasisMismatch("LabeledMatrix: product bases differ");
  return LabeledMatrix(rows_, rhs.cols_, gemm(m_, rhs.m_));
}

LabeledMatrix LabeledMatrix::operator+(const LabeledMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw BasisMismatch("LabeledMatrix: sum bases differ");
  return LabeledMatrix(rows_, cols_, m_ + rhs.m_);
}

LabeledMatrix LabeledMatrix::operator-(const LabeledMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw BasisMismatch("LabeledMatrix: difference bases differ");
  return LabeledMatrix(rows_, cols_, m_ - rhs.m_);
}

LabeledMatrix LabeledMatrix::adjoint() const {
  return LabeledMatrix(cols_, rows_, m_.adjoint());
}

Cplx LabeledMatrix::trace() const {
  if (!square()) throw BasisMismatch("LabeledMatrix: trace of non-square operator");
  return m_.trace();
}

LabeledMatrix LabeledMatrix::submatrix(const std::function<bool(const BasisLabel&)>& row_keep,
                                       const std::function<bool(const BasisLabel&)>& col_keep) const {
  std::vector<int> ri, ci;
  Basis rb, cb;
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    if (row_keep(rows_[i])) {
      ri.push_back(i);
      rb.push_back(rows_[i]);
    }
  }
  for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
    if (col_keep(cols_[j])) {
      ci.push_back(j);
      cb.push_back(cols_[j]);
    }
  }
  Mat out(ri.size(), ci.size());
  for (size_t a = 0; a < ri.size(); ++a) {
    for (size_t b = 0; b < ci.size(); ++b) out(a, b) = m_(ri[a], ci[b]);
  }
  return LabeledMatrix(std::move(rb), std::move(cb), std::move(out));
}

GradingOp::GradingOp(Basis basis, std::vector<int> signs, Role role)
    : basis_(std::move(basis)), signs_(std::move(signs)), role_(role) {
  if (basis_.size() != signs_.size()) throw Error("GradingOp: sign count mismatch");
  for (int s : signs_) {
    if (s != 1 && s != -1) throw Error("GradingOp: signs must be +-1");
  }
}

GradingOp GradingOp::from_predicate(const Basis& basis,
                                    const std::function<bool(const BasisLabel&)>& pred, Role role) {
  std::vector<int> signs(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) signs[i] = pred(basis[i]) ? 1 : -1;
  return GradingOp(basis, std::move(signs), role);
}

LabeledMatrix GradingOp::matrix() const {
  Mat m = Mat::Zero(basis_.size(), basis_.size());
  for (size_t i = 0; i < basis_.size(); ++i) m(i, i) = signs_[i];
  return LabeledMatrix(basis_, basis_, std::move(m));
}

LabeledMatrix GradingOp::projection() const {
  Mat m = Mat::Zero(basis_.size(), basis_.size());
  for (size_t i = 0; i < basis_.size(); ++i) m(i, i) = signs_[i] > 0 ? 1.0 : 0.0;
  return LabeledMatrix(basis_, basis_, std::move(m));
}

LabeledMatrix GradingOp::commutator(const LabeledMatrix& a) const {
  if (a.rows() != basis_ || a.cols() != basis_) {
    throw BasisMismatch("GradingOp: commutator operand lives on a different basis");
  }
  Mat out = a.mat();
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) {
      out(i, j) *= static_cast<double>(signs_[i] - signs_[j]);
    }
  }
  return LabeledMatrix(basis_, basis_, std::move(out));
}

}  // namespace indexlab

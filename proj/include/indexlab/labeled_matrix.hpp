// labeled_matrix.hpp — dense complex matrices whose rows/columns carry basis labels.
//
// Every operator in the laboratory lives on an explicit labeled basis: circle
// mode k, line mode n, matrix component, spinor sign. Products and traces are
// refused across mismatched bases, which is what keeps finite-section
// bookkeeping honest.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "indexlab/errors.hpp"
#include "indexlab/trig_symbol.hpp"

namespace indexlab {

struct BasisLabel {
  int n = 0;     // line mode (a_n) or t-cell
  int k = 0;     // circle mode or theta-cell
  int comp = 0;  // matrix component in C^l
  int spin = 0;  // spinor summand (grid module), 0 otherwise
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

using Basis = std::vector<BasisLabel>;

class LabeledMatrix {
 public:
  LabeledMatrix() = default;
  LabeledMatrix(Basis rows, Basis cols, Mat m);
  static LabeledMatrix zero(const Basis& rows, const Basis& cols);
  static LabeledMatrix identity(const Basis& basis);

  const Basis& rows() const { return rows_; }
  const Basis& cols() const { return cols_; }
  const Mat& mat() const { return m_; }
  Mat& mat() { return m_; }
  bool square() const { return rows_ == cols_; }

  LabeledMatrix operator*(const LabeledMatrix& rhs) const;
  LabeledMatrix operator+(const LabeledMatrix& rhs) const;
  LabeledMatrix operator-(const LabeledMatrix& rhs) const;
  LabeledMatrix adjoint() const;

  Cplx trace() const;

  // Restriction to the labels selected by the predicates (rows, cols).
  LabeledMatrix submatrix(const std::function<bool(const BasisLabel&)>& row_keep,
                          const std::function<bool(const BasisLabel&)>& col_keep) const;

 private:
  Basis rows_, cols_;
  Mat m_;
};

// Diagonal +-1 operator over a labeled basis: Lambda = 2 Pi - 1, epsilon, F.
class GradingOp {
 public:
  enum class Role { PartitionGrading, BundleGrading, SpectralSign };

  GradingOp(Basis basis, std::vector<int> signs, Role role);
  // Signs from a predicate: +1 where pred holds, -1 otherwise.
  static GradingOp from_predicate(const Basis& basis,
                                  const std::function<bool(const BasisLabel&)>& pred, Role role);

  const Basis& basis() const { return basis_; }
  const std::vector<int>& signs() const { return signs_; }
  Role role() const { return role_; }

  // As a labeled diagonal matrix.
  LabeledMatrix matrix() const;
  // Projection (1 + Lambda)/2 as a labeled diagonal matrix.
  LabeledMatrix projection() const;

  // [Lambda, A]; entry (i,j) scales by (s_i - s_j); exact and finite rank for banded A.
  LabeledMatrix commutator(const LabeledMatrix& a) const;

 private:
  Basis basis_;
  std::vector<int> signs_;
  Role role_;
};

}  // namespace indexlab

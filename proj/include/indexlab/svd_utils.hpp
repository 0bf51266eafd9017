// svd_utils.hpp — singular value helpers shared by every index extractor.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "indexlab/trig_symbol.hpp"

namespace indexlab {

// All singular values, descending. Dispatches to LAPACK zgesdd above a size
// threshold, Jacobi below (small sections dominate the escalation ladders).
Eigen::VectorXd singular_values(const Mat& a);

// Dense product through BLAS zgemm above a size threshold (Eigen's own
// kernel below it). Bitwise deterministic for a fixed thread count.
Mat gemm(const Mat& a, const Mat& b);

struct SvdTriplets {
  Eigen::VectorXd sigma;  // descending
  Mat u;                  // thin left vectors
  Mat v;                  // thin right vectors
};
SvdTriplets singular_triplets(const Mat& a);

// Hermitian eigendecomposition (ascending eigenvalues) via zheevd.
struct HermitianEigen {
  Eigen::VectorXd values;
  Mat vectors;
};
HermitianEigen hermitian_eigen(const Mat& a);

struct KernelCount {
  int dim = 0;
  // smallest retained / largest discarded singular value; huge when nothing
  // was discarded (clamped at 1e300 so reports stay JSON-encodable).
  double gap = 1e300;
};

// Count singular values below rel_tau * sigma_max.
KernelCount count_kernel(const Eigen::VectorXd& sigma_desc, double rel_tau);

}  // namespace indexlab

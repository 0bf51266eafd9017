#include "indexlab/svd_utils.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <complex>
#include <mutex>

#include <cblas.h>
#include <lapacke.h>

namespace indexlab {

namespace {
constexpr int kLapackCutoff = 96;  // Jacobi below, zgesdd above

// One decomposition at a time; BLAS backends are not uniformly re-entrant.
std::mutex lapack_mutex;

using LapackCplx = lapack_complex_double;

Eigen::VectorXd lapack_singular_values(const Mat& a, Mat* u, Mat* v) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  Mat work = a;  // zgesdd destroys its input
  Eigen::VectorXd sigma(k);
  Mat uu, vt;
  char jobz = 'N';
  if (u || v) {
    jobz = 'S';
    uu.resize(m, k);
    vt.resize(k, n);
  }
  std::lock_guard<std::mutex> lock(lapack_mutex);
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, jobz, m, n, reinterpret_cast<LapackCplx*>(work.data()), m, sigma.data(),
      reinterpret_cast<LapackCplx*>(jobz == 'S' ? uu.data() : nullptr), jobz == 'S' ? m : 1,
      reinterpret_cast<LapackCplx*>(jobz == 'S' ? vt.data() : nullptr), jobz == 'S' ? k : 1);
  if (info != 0) throw EigenFailure("zgesdd failed with info " + std::to_string(info));
  if (u) *u = std::move(uu);
  if (v) *v = vt.adjoint();
  return sigma;
}
}  // namespace

Eigen::VectorXd singular_values(const Mat& a) {
  if (std::max(a.rows(), a.cols()) < kLapackCutoff) {
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues();
  }
  return lapack_singular_values(a, nullptr, nullptr);
}

Mat gemm(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw Error("gemm: inner dimensions differ");
  if (std::max({a.rows(), a.cols(), b.cols()}) < kLapackCutoff) return a * b;
  Mat c(a.rows(), b.cols());
  const Cplx one(1.0, 0.0), zero(0.0, 0.0);
  cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()),
              static_cast<int>(b.cols()), static_cast<int>(a.cols()), &one, a.data(),
              static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()), &zero, c.data(),
              static_cast<int>(c.rows()));
  return c;
}

SvdTriplets singular_triplets(const Mat& a) {
  SvdTriplets out;
  if (std::max(a.rows(), a.cols()) < kLapackCutoff) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.sigma = svd.singularValues();
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    return out;
  }
  out.sigma = lapack_singular_values(a, &out.u, &out.v);
  return out;
}

HermitianEigen hermitian_eigen(const Mat& a) {
  if (a.rows() != a.cols()) throw EigenFailure("hermitian_eigen: non-square input");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  HermitianEigen out;
  out.vectors = a;
  out.values.resize(n);
  std::lock_guard<std::mutex> lock(lapack_mutex);
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                     reinterpret_cast<LapackCplx*>(out.vectors.data()), n, out.values.data());
  if (info != 0) throw EigenFailure("zheevd failed with info " + std::to_string(info));
  return out;
}

KernelCount count_kernel(const Eigen::VectorXd& sigma_desc, double rel_tau) {
  KernelCount out;
  if (sigma_desc.size() == 0) return out;
  const double tau = rel_tau * sigma_desc(0);
  double largest_discarded = 0.0;
  double smallest_retained = sigma_desc(0);
  for (int i = 0; i < sigma_desc.size(); ++i) {
    const double s = sigma_desc(i);
    if (s < tau) {
      ++out.dim;
      largest_discarded = std::max(largest_discarded, s);
    } else {
      smallest_retained = std::min(smallest_retained, s);
    }
  }
  // The threshold itself floors the denominator: a retained singular value
  // hovering just above tau (a slowly decaying near-kernel direction not yet
  // resolved at this truncation) must read as a small gap, not as converged.
  out.gap = std::min(1e300, smallest_retained / std::max(largest_discarded, tau));
  return out;
}

}  // namespace indexlab

// line_hilbert.hpp — the real-line side: the Hilbert-transform eigenbasis
//
//     a_n(t) = (t - i)^n / (t + i)^{n+1},          H a_n = a_n (n < 0),
//     {a_n / sqrt(pi)} orthonormal in L^2(R),      H a_n = -a_n (n >= 0),
//
// quadrature verification of the Gram identities, an FFT Hilbert transform
// whose sign is locked by those eigenrelations, and the Cayley shift
// (t - i)/(t + i) : a_n -> a_{n+1} used by the cylinder module.
//
// Convention lock: the transform is realized as a +-sgn(xi) frequency
// multiplier. The assignment reproducing the eigenrelations is -sgn(xi) under
// F[f](xi) = int e^{-i t xi} f(t) dt; it is selected empirically at every
// call, never trusted, so any future convention drift trips the lock.

#pragma once

#include <complex>
#include <vector>

#include "indexlab/labeled_matrix.hpp"
#include "indexlab/trig_symbol.hpp"

namespace indexlab {

struct LineBasisSpec {
  int n_min = 0;
  int n_max = 0;  // retained modes a_n, n in [n_min, n_max]
  // normalization constant is fixed: 1/sqrt(pi)
};

// a_n(t), evaluated via the unit-modulus Cayley factor (stable for large |n|).
Cplx eval_a_n(int n, double t);

// Gram matrix <a_m, a_n> over [-T, T] by composite midpoint quadrature plus
// the analytic tail of the common 1/(1+t^2) envelope (2 arctan(1/T) per
// entry; the remaining tail is O(k^2 / T^3)). Diagonal -> pi, rest -> 0.
// Throws QuadratureBudgetExceeded when T < 1e3 or points < 1e4.
Mat gram_quadrature(const LineBasisSpec& spec, double T, long points);

struct LineGrid {
  double half_width = 0.0;  // grid covers [-T, T)
  int len = 0;              // power of two
  double step() const { return 2.0 * half_width / len; }
  double point(int j) const { return -half_width + j * step(); }
};

// Discrete Hilbert transform on a symmetric power-of-two grid. The +-sgn(xi)
// multiplier sign is chosen by the eigenrelation lock at the call's own grid;
// throws ConventionLockFailure when neither sign passes at 1e-3.
std::vector<Cplx> hilbert_apply_fft(const LineGrid& grid, const std::vector<Cplx>& samples);

// Relative L2 eigenrelation residual for a_n on the grid, measured away from
// the multiplier discontinuity: frequency bins |xi| <= kSpectralCutWindow are
// excluded (the sharp [-T, T] window leaks O(1/sqrt(T)) of a_n's spectral
// mass across xi = 0, and no +-1 assignment on those bins can be right).
inline constexpr double kSpectralCutWindow = 0.5;
double hilbert_eigenrelation_error(const LineGrid& grid, int n);

// Same metric for || H^2 f - f || on arbitrary samples.
double hilbert_involution_error(const LineGrid& grid, const std::vector<Cplx>& samples);

// The windowed relative-residual metric itself, for callers comparing their
// own transforms against expected samples.
double hilbert_windowed_error(const LineGrid& grid, const std::vector<Cplx>& got,
                              const std::vector<Cplx>& want);

struct CayleyShift {
  LabeledMatrix matrix;   // a_n -> a_{n+1} on the retained window
  int truncated_row = 0;  // top mode whose image a_{n_max+1} fell off the window
};

// Multiplication by (t - i)/(t + i) on span{a_n}. Exact ones on the
// sub-diagonal; the inverse factor (t + i)/(t - i) is the down-shift.
CayleyShift cayley_shift_matrix(const LineBasisSpec& spec);
CayleyShift cayley_shift_inverse_matrix(const LineBasisSpec& spec);

}  // namespace indexlab

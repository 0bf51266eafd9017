// cylinder.hpp — the model computation on R x S^1 in the a_n (x) e_k basis.
//
// After the s = 1 endpoint of the homotopy and the Fourier identification,
// the operator under study is
//
//   T_phi = (-it + F)^{-1} phi (-it + F)
//         = [ id (x) P phi P            c(t)   (x) P phi (1-P) ]
//           [ c(t)^{-1} (x) (1-P) phi P   id (x) (1-P) phi (1-P) ],
//
// where F = 2P - 1 on circle modes, c(t) = (t - i)/(t + i) acts on the line
// as the Cayley up-shift a_n -> a_{n+1}, and its inverse as the down-shift.
// The compression by P-hat (line modes n >= 0) splits as X0 + X1 with
// X0 = C{a_0} (x) H_+ carrying exactly the circle Toeplitz section and X1
// invertible; the index of the compression is extracted by the same exact
// rectangular-section policy as on the circle.

#pragma once

#include <functional>
#include <vector>

#include "indexlab/circle_toeplitz.hpp"
#include "indexlab/labeled_matrix.hpp"
#include "indexlab/trig_symbol.hpp"

namespace indexlab {

struct CylinderTruncation {
  int n_min = -1;  // must stay <= -1: at least one negative line mode retained
  int n_max = 8;
  int k_max = 8;
  int margin = 4;  // extra modes kept beyond the reporting window; >= symbol degree
};

struct CylinderOperator {
  TrigSymbol symbol;
  CylinderTruncation trunc;
  LabeledMatrix matrix;  // basis (n, k, comp); block tridiagonal in n
};

// Assembles T_phi on the two-sided truncation. Throws TruncationTooSmall when
// the margin is below the symbol degree or the truncation misses the n = -1/0
// modes.
CylinderOperator build_T_phi(const TrigSymbol& phi, const CylinderTruncation& trunc);

// Stabilized index of P-hat T_phi P-hat (line modes n >= 0), escalating n and
// k truncations together. Same report/threshold semantics as the circle side.
IndexReport compress_index(const TrigSymbol& phi, const TruncationPolicy& policy = {});

struct BlockSplitReport {
  double cross_block_norm = 0.0;   // largest X0 <-> X1 coupling in the compression
  double toeplitz_mismatch = 0.0;  // max |X0 block - circle Toeplitz section|
  double x1_identity_residual = 0.0;  // max |(P T_psi P)(P T_phi P) - 1| on X1
  double inverse_tail = 0.0;          // tail tolerance of the computed phi^{-1}
  bool pass(double cross_tol = 1e-10, double toeplitz_tol = 1e-12,
            double x1_tol = 1e-8) const {
    return cross_block_norm < cross_tol && toeplitz_mismatch <= toeplitz_tol &&
           x1_identity_residual <= x1_tol;
  }
};

// Numerical witness of the direct-sum decomposition. `inverse_degree` is the
// truncation degree used for phi^{-1}. Throws SplitViolated when a cross
// block exceeds its tolerance.
BlockSplitReport block_split_check(const TrigSymbol& phi, int k_max, int n_max,
                                   int inverse_degree = 40);

// Fourier-fiber of D_s at line frequency xi and circle mode k:
//   [[0, -i xi + m], [i xi + m, 0]],  m = (1-s) k + s sgn(k),  sgn(0) = +1.
Mat fiber_D_s(double xi, int k, double s);

struct SweepGrid {
  std::vector<double> xi;
  std::vector<int> k;
  std::vector<double> s;
};
SweepGrid default_sweep_grid();  // xi in [-50, 50] (201 pts), |k| <= 30, s in {0, .1, ..., 1}

struct FiberSweepReport {
  double min_singular_minus_s = 0.0;  // min over grid of (sigma_min(D_s) - s)
  double max_resolvent_norm = 0.0;    // max over grid of ||(D_s + (1-s) eps)^{-1}||
  long points = 0;
};

// Checks sigma_min(D_s fiber) >= s and ||(D_s + (1-s) eps)^{-1}|| <= 4 over
// the grid. Throws BoundViolated if either fails beyond slack.
FiberSweepReport fiber_bound_sweep(const SweepGrid& grid, double gap_slack = 1e-12,
                                   double resolvent_slack = 1e-10);

struct ContinuityReport {
  std::vector<double> s_samples;
  std::vector<double> step_norms;  // sup over fibers of ||u_{phi,s_i} - u_{phi,s_{i+1}}||
  double modulus_C = 0.0;          // max step_norm / |delta s|
  double endpoint_mismatch = 0.0;  // s = 1 fiber vs the T_phi block assembly
};

// Builds u_{phi,s} fiberwise over a xi-grid and measures the continuity
// modulus; also cross-checks the s = 1 endpoint against the a_n-basis
// assembly evaluated at the fiber's Cayley factor.
ContinuityReport homotopy_continuity_sweep(const TrigSymbol& phi,
                                           const std::vector<double>& s_samples, int k_window,
                                           const std::vector<double>& xi_grid);

struct ScalarBoundReport {
  std::string family;
  long points = 0;
  double worst_ratio = 0.0;  // max |value| / bound over the grid
  double witness_x = 0.0;
  bool pass = false;
};

// The Lemma sup-bounds (f_s, g_s <= 2; mu, nu against their envelopes) and
// the homotopy-calculus bounds (|g_t| <= 1, |h_t| <= 1, f_t <= 1/t).
std::vector<ScalarBoundReport> verify_scalar_bounds();

// Locality surrogate: singular values of [P-hat, T_phi] beyond the leading
// r = 2 l degree must vanish (the commutator is exactly finite rank).
struct LocalityReport {
  int expected_rank = 0;
  double first_discarded = 0.0;  // (r+1)-th singular value
  bool pass = false;
};
LocalityReport hardy_commutator_locality(const TrigSymbol& phi, const CylinderTruncation& trunc);

}  // namespace indexlab

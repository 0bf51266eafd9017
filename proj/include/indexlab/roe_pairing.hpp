// roe_pairing.hpp — the pairing side of the theorem on labeled-matrix windows.
//
//   zeta(A, B)   = 1/4 Tr(Lambda [Lambda, A][Lambda, B])      (Roe cocycle)
//   <[u], zeta>  = (1/8 pi i) sum_{i,j} zeta((u^-1)_{ji}, u_{ij})
//   ind(Pi u Pi) = Tr(Pi - Pi u^-1 Pi u Pi) - Tr(Pi - Pi u Pi u^-1 Pi)
//
// All operators here are finite windows of banded infinite operators, exact
// away from the window edge. The commutators with Lambda are supported near
// the partition cut, so every trace below stabilizes exactly once the window
// margin exceeds the band width; no limit is taken.

#pragma once

#include "indexlab/labeled_matrix.hpp"
#include "indexlab/svd_utils.hpp"

namespace indexlab {

struct CocycleValue {
  Cplx value;
  int rank_a = 0;  // rank of [Lambda, A]  (stabilization diagnostic)
  int rank_b = 0;  // rank of [Lambda, B]
};

CocycleValue roe_cocycle(const LabeledMatrix& a, const LabeledMatrix& b, const GradingOp& lambda);

struct PairingReport {
  Cplx zeta_sum;          // sum_{i,j} zeta((u^-1)_{ji}, u_{ij})
  double blockwise_gap;   // |blockwise sum - full-space trace| (both are computed)
  int rank_a = 0, rank_b = 0;
  // The 1/(8 pi i) factor is kept symbolic; value() applies it on demand so
  // reports can display exact rational multiples of 1/(8 pi i).
  Cplx value() const;
};

// Propagation widths of a windowed operator pair in the basis labels: n_band
// bounds |dn| for both u and u_inv, k_u / k_inv bound |dk| for each factor.
// They determine which window-edge region is excluded from checks that form
// products (truncated products are only exact in the interior).
struct BandWidths {
  int n_band = 1;
  int k_u = 0;
  int k_inv = 0;
};

// Connes pairing of [u] with the Roe cocycle. `l` is the matrix-component
// count (labels carry comp in [0, l)).
// Throws NotInverse when ||u u_inv - 1|| > 1e-8 on the window interior.
PairingReport connes_pairing(const LabeledMatrix& u, const LabeledMatrix& u_inv,
                             const GradingOp& lambda, int l, const BandWidths& bands);

struct IndexReportLite {
  int ker_dim = 0;
  int coker_dim = 0;
  double sigma_gap = 0.0;
};

struct TraceIdentityReport {
  int index_lhs = 0;       // stabilized SVD index of Pi u Pi (exact rectangular sections)
  double trace_rhs = 0.0;  // the trace difference, computed via the commutator identity
  bool agree = false;
  double defect = 0.0;        // |trace_rhs - nearest integer|
  double identity_residual = 0.0;  // max-norm check of Pi - Pi u^-1 Pi u Pi = -Pi[Pi,u^-1][Pi,u]Pi
  IndexReportLite lhs_detail;
};

// Both routes to ind(Pi u Pi) on a window of an infinite banded operator.
TraceIdentityReport index_trace_identity(const LabeledMatrix& u, const LabeledMatrix& u_inv,
                                         const GradingOp& pi_grading, const BandWidths& bands);

// Two-sided shift window: e_n -> e_{n+power} on modes n in [n_min, n_max].
LabeledMatrix two_sided_shift(int n_min, int n_max, int power);
// Lambda = sign(n >= 0) over the same window.
GradingOp mode_sign_grading(int n_min, int n_max);

}  // namespace indexlab

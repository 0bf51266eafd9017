// circle_toeplitz.hpp — the hypersurface side: D_N = -i d/dtheta on S^1,
// the non-negative spectral projection P, finite sections of T_phi = P M_phi P,
// and the stabilized Fredholm-index extractor that serves as the brute-force
// oracle for the rest of the laboratory.
//
// Kernel and cokernel dimensions come from *exact* rectangular sections: with
// domain modes 0..k_in and range modes 0..k_in+d the section reproduces
// T_phi v with zero truncation error for every v in the domain, so every
// sub-threshold singular value is a genuine near-kernel direction and the
// boundary artifacts of square sections never enter.

#pragma once

#include <vector>

#include "indexlab/labeled_matrix.hpp"
#include "indexlab/svd_utils.hpp"
#include "indexlab/trig_symbol.hpp"

namespace indexlab {

struct DiracMode {
  int k;
  double lambda;
};

// Spectrum {(k, k) : |k| <= k_max}; P retains k >= 0 (zero mode included).
std::vector<DiracMode> dirac_circle_spectrum(int k_max);

struct ToeplitzSection {
  TrigSymbol symbol;
  int k_max = 0;
  LabeledMatrix matrix;  // square, block (j,k) = phihat(j-k), j,k in [0, k_max]
};

// Throws TruncationTooSmall when k_max < phi.degree().
ToeplitzSection toeplitz_section(const TrigSymbol& phi, int k_max);

// Exact rectangular section: rows are modes 0..k_in+degree, columns 0..k_in.
LabeledMatrix toeplitz_rect_section(const TrigSymbol& phi, int k_in);

struct IndexReport {
  int index = 0;
  int ker_dim = 0;
  int coker_dim = 0;
  double sigma_gap = 0.0;
  std::vector<int> truncations;
  bool converged = false;
};

struct TruncationPolicy {
  int start = 0;          // 0 = degree + 8
  int max_attempts = 4;   // escalation doubles the truncation
  double rel_tau = 1e-8;  // kernel threshold, relative to sigma_max
  double gap_floor = 1e3; // convergence needs at least this singular-value gap
};

// Stabilized index of T_phi. Throws NotInvertible; returns converged=false
// (never a silent lie) when the ladder is exhausted.
IndexReport fredholm_index(const TrigSymbol& phi, const TruncationPolicy& policy = {});

struct TheoremCheck {
  bool ok = false;
  IndexReport analytic;   // SVD side
  WindingResult winding;  // topological side
};

// ind(T_phi) == -winding(det phi); the sign is pinned by the shift oracle.
TheoremCheck index_theorem_check(const TrigSymbol& phi);

// [P, M_phi] on the two-sided mode space |k| <= k_max (rank <= 2 l degree).
LabeledMatrix hardy_commutator(const TrigSymbol& phi, int k_max);

}  // namespace indexlab

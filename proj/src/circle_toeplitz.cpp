#include "indexlab/circle_toeplitz.hpp"

#include <algorithm>

namespace indexlab {

namespace {

Basis circle_basis(int k_lo, int k_hi, int l) {
  Basis b;
  b.reserve((k_hi - k_lo + 1) * l);
  for (int k = k_lo; k <= k_hi; ++k) {
    for (int c = 0; c < l; ++c) b.push_back(BasisLabel{0, k, c, 0});
  }
  return b;
}

// Block entry (j, k) = phihat(j - k) over the given mode windows.
Mat mode_multiplication(const TrigSymbol& phi, int row_lo, int row_hi, int col_lo, int col_hi) {
  const int l = phi.size();
  const int nr = (row_hi - row_lo + 1) * l;
  const int nc = (col_hi - col_lo + 1) * l;
  Mat m = Mat::Zero(nr, nc);
  for (int j = row_lo; j <= row_hi; ++j) {
    for (int k = std::max(col_lo, j - phi.degree()); k <= std::min(col_hi, j + phi.degree()); ++k) {
      m.block((j - row_lo) * l, (k - col_lo) * l, l, l) = phi.coeff(j - k);
    }
  }
  return m;
}

}  // namespace

std::vector<DiracMode> dirac_circle_spectrum(int k_max) {
  if (k_max < 0) throw Error("dirac_circle_spectrum: k_max must be >= 0");
  std::vector<DiracMode> modes;
  modes.reserve(2 * k_max + 1);
  for (int k = -k_max; k <= k_max; ++k) modes.push_back({k, static_cast<double>(k)});
  return modes;
}

ToeplitzSection toeplitz_section(const TrigSymbol& phi, int k_max) {
  if (k_max < phi.degree()) {
    throw TruncationTooSmall("toeplitz_section: k_max " + std::to_string(k_max) +
                             " below symbol degree " + std::to_string(phi.degree()));
  }
  Basis b = circle_basis(0, k_max, phi.size());
  return ToeplitzSection{phi, k_max,
                         LabeledMatrix(b, b, mode_multiplication(phi, 0, k_max, 0, k_max))};
}

LabeledMatrix toeplitz_rect_section(const TrigSymbol& phi, int k_in) {
  if (k_in < phi.degree()) {
    throw TruncationTooSmall("toeplitz_rect_section: k_in below symbol degree");
  }
  const int k_out = k_in + phi.degree();
  return LabeledMatrix(circle_basis(0, k_out, phi.size()), circle_basis(0, k_in, phi.size()),
                       mode_multiplication(phi, 0, k_out, 0, k_in));
}

IndexReport fredholm_index(const TrigSymbol& phi, const TruncationPolicy& policy) {
  require_invertible(phi);
  const TrigSymbol phi_star = phi.adjoint();

  IndexReport report;
  int k_in = policy.start > 0 ? policy.start : phi.degree() + 8;
  int prev_ker = -1, prev_coker = -1;
  for (int attempt = 0; attempt < policy.max_attempts; ++attempt, k_in *= 2) {
    report.truncations.push_back(k_in);
    const KernelCount ker =
        count_kernel(singular_values(toeplitz_rect_section(phi, k_in).mat()), policy.rel_tau);
    const KernelCount coker =
        count_kernel(singular_values(toeplitz_rect_section(phi_star, k_in).mat()), policy.rel_tau);
    report.ker_dim = ker.dim;
    report.coker_dim = coker.dim;
    report.index = ker.dim - coker.dim;
    report.sigma_gap = std::min(ker.gap, coker.gap);
    const bool agreed = ker.dim == prev_ker && coker.dim == prev_coker;
    if (agreed && report.sigma_gap >= policy.gap_floor) {
      report.converged = true;
      return report;
    }
    prev_ker = ker.dim;
    prev_coker = coker.dim;
  }
  report.converged = false;
  return report;
}

TheoremCheck index_theorem_check(const TrigSymbol& phi) {
  TheoremCheck out;
  out.analytic = fredholm_index(phi);
  const int points = std::max(256, 32 * (phi.degree() + 1));
  out.winding = winding_of_det(phi, points);
  out.ok = out.analytic.converged && out.analytic.index == -out.winding.winding;
  return out;
}

LabeledMatrix hardy_commutator(const TrigSymbol& phi, int k_max) {
  const int l = phi.size();
  Basis b = circle_basis(-k_max, k_max, l);
  Mat m = mode_multiplication(phi, -k_max, k_max, -k_max, k_max);
  // [P, M_phi]_(j,k) = (1_{j>=0} - 1_{k>=0}) phihat(j-k)
  for (int j = -k_max; j <= k_max; ++j) {
    for (int k = -k_max; k <= k_max; ++k) {
      const double w = (j >= 0 ? 1.0 : 0.0) - (k >= 0 ? 1.0 : 0.0);
      m.block((j + k_max) * l, (k + k_max) * l, l, l) *= w;
    }
  }
  return LabeledMatrix(b, b, std::move(m));
}

}  // namespace indexlab

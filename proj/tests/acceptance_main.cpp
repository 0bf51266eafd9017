// acceptance_main.cpp — end-to-end acceptance suite. One line per criterion,
// every tolerance pinned in code; exit 0 only if all criteria pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "indexlab/circle_toeplitz.hpp"
#include "indexlab/corpus.hpp"
#include "indexlab/cylinder.hpp"
#include "indexlab/grid_model.hpp"
#include "indexlab/line_hilbert.hpp"
#include "indexlab/roe_pairing.hpp"

using namespace indexlab;
namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, args...);
  return std::string(buf);
}

// 1. Toeplitz index theorem on the circle, plus homotopy stability of the pair.
void criterion_1() {
  bool ok = true;
  double worst_time = 0.0;
  std::string detail;
  for (const auto& entry : symbol_corpus()) {
    const auto t0 = std::chrono::steady_clock::now();
    const IndexReport rep = fredholm_index(entry.symbol);
    const int winding = winding_of_det(entry.symbol, 512).winding;
    const double dt = seconds_since(t0);
    worst_time = std::max(worst_time, dt);
    const bool good = rep.converged && rep.truncations.back() <= 64 && rep.index == -winding &&
                      dt < 1.0;
    if (!good) {
      ok = false;
      detail += entry.id + " ";
    }
  }
  const auto [phi, psi] = homotopy_pair();
  const int base = fredholm_index(phi).index;
  for (int i = 0; i <= 10; ++i) {
    if (fredholm_index(homotopy_interpolate(phi, psi, 0.1 * i)).index != base) {
      ok = false;
      detail += "homotopy-pair ";
    }
  }
  report(1, ok, "circle Toeplitz index == -winding for the corpus",
         detail.empty() ? fmt("8 symbols + 11 homotopy samples, slowest %.3fs", worst_time)
                        : detail);
}

// 2. Cylinder compression reproduces the circle index.
void criterion_2() {
  bool ok = true;
  double worst_time = 0.0;
  std::string detail;
  for (const auto& entry : symbol_corpus()) {
    const auto t0 = std::chrono::steady_clock::now();
    const IndexReport cyl = compress_index(entry.symbol);
    const IndexReport circ = fredholm_index(entry.symbol);
    const double dt = seconds_since(t0);
    worst_time = std::max(worst_time, dt);
    const bool good = cyl.converged && cyl.index == circ.index && cyl.truncations.back() <= 64 &&
                      dt < 10.0;
    if (!good) {
      ok = false;
      detail += entry.id + " ";
    }
  }
  report(2, ok, "cylinder compression index == circle index",
         detail.empty() ? fmt("8 symbols, slowest %.3fs", worst_time) : detail);
}

// 3. Pairing normalization: zeta_sum (= 8 pi i <u, zeta>) == -index, exactly.
void criterion_3() {
  bool ok = true;
  std::string detail;
  double worst_defect = 0.0;
  for (const auto& entry : symbol_corpus()) {
    const TrigSymbol& phi = entry.symbol;
    const TrigSymbol phi_inv = invert_adaptive(phi, 1e-9);
    const int k_window = phi.degree() + phi_inv.degree() + 8;
    const CylinderTruncation trunc{-4, 4, k_window,
                                   std::max(phi.degree(), phi_inv.degree()) + 4};
    const CylinderOperator u = build_T_phi(phi, trunc);
    const CylinderOperator u_inv = build_T_phi(phi_inv, trunc);
    const GradingOp lambda_hat = GradingOp::from_predicate(
        u.matrix.rows(), [](const BasisLabel& b) { return b.n >= 0; },
        GradingOp::Role::PartitionGrading);
    const PairingReport pairing =
        connes_pairing(u.matrix, u_inv.matrix, lambda_hat, phi.size(),
                       BandWidths{1, phi.degree(), phi_inv.degree()});
    const IndexReport cyl = compress_index(phi);
    const double defect = std::abs(pairing.zeta_sum - Cplx(-cyl.index));
    worst_defect = std::max(worst_defect, defect);
    const bool good = defect < 1e-6 && pairing.blockwise_gap < 1e-10;
    if (!good) {
      ok = false;
      detail += entry.id + fmt("(defect %.2e) ", defect);
    }
  }
  report(3, ok, "8 pi i <[u], zeta> == -ind(P T_phi P) across the corpus",
         detail.empty() ? fmt("worst defect %.2e", worst_defect) : detail);
}

// 4. Trace identity on the shift, its square, and T_{e^{i theta}}.
void criterion_4() {
  bool ok = true;
  std::string detail;

  const GradingOp sign64 = mode_sign_grading(-32, 31);
  const TraceIdentityReport s =
      index_trace_identity(two_sided_shift(-32, 31, 1), two_sided_shift(-32, 31, -1), sign64,
                           BandWidths{1, 0, 0});
  const TraceIdentityReport s2 =
      index_trace_identity(two_sided_shift(-32, 31, 2), two_sided_shift(-32, 31, -2), sign64,
                           BandWidths{2, 0, 0});
  if (!(s.agree && s.index_lhs == -1 && s.defect < 1e-8)) {
    ok = false;
    detail += "shift ";
  }
  if (!(s2.agree && s2.index_lhs == -2 && s2.defect < 1e-8)) {
    ok = false;
    detail += "shift^2 ";
  }

  const CylinderTruncation trunc{-9, 9, 9, 5};
  const CylinderOperator t_shift = build_T_phi(TrigSymbol::monomial(1), trunc);
  const CylinderOperator t_shift_inv = build_T_phi(TrigSymbol::monomial(-1), trunc);
  const GradingOp p_hat = GradingOp::from_predicate(
      t_shift.matrix.rows(), [](const BasisLabel& b) { return b.n >= 0; },
      GradingOp::Role::PartitionGrading);
  const TraceIdentityReport t =
      index_trace_identity(t_shift.matrix, t_shift_inv.matrix, p_hat, BandWidths{1, 1, 1});
  if (!(t.agree && t.index_lhs == -1 && t.defect < 1e-8)) {
    ok = false;
    detail += fmt("T_phi (lhs %d rhs %.2e) ", t.index_lhs, t.trace_rhs);
  }
  report(4, ok, "trace identity ind(Pi u Pi) == Tr difference",
         detail.empty()
             ? fmt("defects %.1e / %.1e / %.1e", s.defect, s2.defect, t.defect)
             : detail);
}

// 5. Scalar bound families at >= 2e5 points, zero violations.
void criterion_5() {
  const auto reports = verify_scalar_bounds();
  long points = 0;
  bool ok = true;
  std::string detail;
  for (const auto& r : reports) {
    points += r.points;
    if (!r.pass) {
      ok = false;
      detail += r.family + fmt("(ratio %.3f at x=%.4f) ", r.worst_ratio, r.witness_x);
    }
  }
  if (points < 200000) {
    ok = false;
    detail += fmt("only %ld points ", points);
  }
  report(5, ok, "Lemma sup-bounds and homotopy-calculus bounds",
         detail.empty() ? fmt("%ld evaluation points, all within bounds", points) : detail);
}

// 6. Operator bounds on the fiber sweep grid.
void criterion_6() {
  try {
    const FiberSweepReport sweep = fiber_bound_sweep(default_sweep_grid(), 1e-12, 1e-10);
    report(6, true, "fiber gap sigma_min >= s and resolvent bound <= 4",
           fmt("%ld fibers, worst gap defect %.1e, max resolvent %.6f", sweep.points,
               std::max(0.0, -sweep.min_singular_minus_s), sweep.max_resolvent_norm));
  } catch (const BoundViolated& e) {
    report(6, false, "fiber gap / resolvent bound", e.what());
  }
}

// 7. Homotopy endpoints and continuity modulus (needs the grid calculus).
void criterion_7(const GridCalculus& calc) {
  std::vector<double> coarse, fine;
  for (int i = 0; i <= 10; ++i) coarse.push_back(0.1 * i);
  for (int i = 0; i <= 20; ++i) fine.push_back(0.05 * i);
  const std::vector<double> xi = {-30.0, -10.0, -3.0, -1.0, -0.3, 0.0, 0.3, 1.0, 3.0, 10.0, 30.0};

  const ContinuityReport c11 =
      homotopy_continuity_sweep(TrigSymbol::monomial(1), coarse, 8, xi);
  const ContinuityReport c21 = homotopy_continuity_sweep(TrigSymbol::monomial(1), fine, 8, xi);

  const bool modulus_ok = std::isfinite(c11.modulus_C) && c11.modulus_C > 0.0 &&
                          c21.modulus_C <= 1.5 * c11.modulus_C &&
                          c11.endpoint_mismatch < 1e-10;

  // endpoint indices: s = 0 lives on the grid as the corollary form, s = 1 in
  // the a_n basis as the compressed T_phi
  const GridIndexReport grid_end = index_class_grid(calc, TrigSymbol::monomial(1));
  const IndexReport an_end = compress_index(TrigSymbol::monomial(1));
  const bool endpoints_ok = grid_end.corollary_index == an_end.index;

  report(7, modulus_ok && endpoints_ok, "homotopy endpoints agree, linear continuity modulus",
         fmt("C(11)=%.3f C(21)=%.3f endpoint mismatch %.1e, s=0 index %d vs s=1 index %d",
             c11.modulus_C, c21.modulus_C, c11.endpoint_mismatch, grid_end.corollary_index,
             an_end.index));
}

// 8. Block decomposition across the corpus.
void criterion_8() {
  bool ok = true;
  std::string detail;
  double worst_x1 = 0.0, worst_t = 0.0;
  for (const auto& entry : symbol_corpus()) {
    try {
      const BlockSplitReport rep = block_split_check(entry.symbol, 10, 8, 40);
      worst_x1 = std::max(worst_x1, rep.x1_identity_residual);
      worst_t = std::max(worst_t, rep.toeplitz_mismatch);
      if (!rep.pass(1e-10, 1e-12, 1e-8)) {
        ok = false;
        detail += entry.id + fmt("(X0 %.1e X1 %.1e) ", rep.toeplitz_mismatch,
                                 rep.x1_identity_residual);
      }
    } catch (const Error& e) {
      ok = false;
      detail += entry.id + "(" + e.what() + ") ";
    }
  }
  report(8, ok, "X0 block == Toeplitz section, X1 inverse composition == 1",
         detail.empty() ? fmt("worst X0 %.1e, worst X1 %.1e", worst_t, worst_x1) : detail);
}

// 9. Hilbert basis: Gram identities and FFT eigenrelations.
void criterion_9() {
  const Mat gram = gram_quadrature(LineBasisSpec{-8, 8}, 1e4, 1 << 20);
  double diag_err = 0.0, off_err = 0.0;
  for (int a = 0; a < gram.rows(); ++a) {
    for (int b = 0; b < gram.cols(); ++b) {
      if (a == b) {
        diag_err = std::max(diag_err, std::abs(gram(a, b) - std::numbers::pi));
      } else {
        off_err = std::max(off_err, std::abs(gram(a, b)));
      }
    }
  }
  const LineGrid grid{2048.0, 1 << 16};
  double eigen_err = 0.0;
  for (int n = -8; n <= 8; ++n) {
    eigen_err = std::max(eigen_err, hilbert_eigenrelation_error(grid, n));
  }
  const bool ok = diag_err < 1e-6 && off_err < 1e-6 && eigen_err < 1e-3;
  report(9, ok, "Gram diag == pi, off-diag == 0, eigenrelations on the FFT grid",
         fmt("diag %.2e, offdiag %.2e, eigenrelation %.2e", diag_err, off_err, eigen_err));
}

// 10. Grid validation and cobordism invariance.
void criterion_10(const GridCalculus& calc) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (int wind : {0, 1, 2}) {
    const TrigSymbol phi = wind == 0 ? TrigSymbol::identity(1) : TrigSymbol::monomial(wind);
    const GridIndexReport rep = index_class_grid(calc, phi);
    if (!rep.matches_oracle) {
      ok = false;
      detail += fmt("wind %d: got %d want %d ", wind, rep.report.index, -rep.oracle_winding);
    }
  }
  for (int shift : {-4, 4}) {
    const CobordismReport rep = cobordism_shift_test(calc, TrigSymbol::monomial(1), shift);
    if (!rep.agree) {
      ok = false;
      detail += fmt("cobordism shift %d ", shift);
    }
  }
  const double dt = seconds_since(t0);
  if (dt > 120.0) {
    ok = false;
    detail += fmt("runtime %.1fs ", dt);
  }
  report(10, ok, "grid index matches oracle; cut shifts agree",
         detail.empty() ? fmt("3 symbols + 2 shifts in %.1fs (evidence-grade)", dt) : detail);
}

}  // namespace

int main() {
  std::printf("acceptance suite: partitioned-cylinder index laboratory\n");
  const auto t0 = std::chrono::steady_clock::now();

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();

  // criteria 7 and 10 share one spectral decomposition of the 64 x 16 grid
  const CylinderGrid grid{16.0, 64, 16, BoundaryCondition::Dirichlet, 32,
                          ThetaDerivative::Fourier};
  const GridCalculus calc = prepare_grid_calculus(build_dirac_grid(grid), ChoppingSpec{});
  criterion_7(calc);
  criterion_8();
  criterion_9();
  criterion_10(calc);

  std::printf("%s: %d criterion(s) failed, total %.1fs\n", failures == 0 ? "OK" : "FAILED",
              failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}

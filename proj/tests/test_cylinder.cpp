#include <cmath>

#include "doctest.h"
#include "indexlab/corpus.hpp"
#include "indexlab/cylinder.hpp"

using namespace indexlab;

TEST_CASE("build_T_phi structure") {
  const CylinderTruncation trunc{-4, 4, 6, 4};

  // constant symbol: identity operator, off-diagonal Hardy blocks vanish
  const CylinderOperator id_op = build_T_phi(TrigSymbol::identity(1), trunc);
  CHECK(id_op.matrix.mat().isApprox(Mat::Identity(id_op.matrix.mat().rows(),
                                                  id_op.matrix.mat().cols())));

  // e^{i theta}: the only Hardy-crossing coefficient sits at circle modes -1 -> 0,
  // carried by the up-shift in n; block tridiagonality holds structurally
  const CylinderOperator shift_op = build_T_phi(TrigSymbol::monomial(1), trunc);
  const Basis& basis = shift_op.matrix.rows();
  int up_shift_entries = 0;
  for (size_t r = 0; r < basis.size(); ++r) {
    for (size_t c = 0; c < basis.size(); ++c) {
      const Cplx v = shift_op.matrix.mat()(r, c);
      if (v == Cplx(0.0)) continue;
      const int dn = basis[r].n - basis[c].n;
      CHECK(std::abs(dn) <= 1);
      CHECK(basis[r].k - basis[c].k == 1);
      if (dn == 1) {
        CHECK(basis[c].k == -1);
        CHECK(basis[r].k == 0);
        ++up_shift_entries;
      }
      if (dn == -1) CHECK(basis[c].k >= 0);
      if (dn == 0) CHECK((basis[c].k >= 0) == (basis[r].k >= 0));
    }
  }
  // one up-shift entry per retained n with n+1 also retained
  CHECK(up_shift_entries == trunc.n_max - trunc.n_min);

  CHECK_THROWS_AS(build_T_phi(TrigSymbol::monomial(2), CylinderTruncation{-4, 4, 6, 1}),
                  TruncationTooSmall);
}

TEST_CASE("compressed index equals the circle index") {
  CHECK(compress_index(TrigSymbol::identity(2)).index == 0);

  const IndexReport shift = compress_index(TrigSymbol::monomial(1));
  CHECK(shift.index == -1);
  CHECK(shift.converged);
  CHECK(shift.sigma_gap >= 1e3);

  const IndexReport plus2 = compress_index(corpus_symbol("em2_times_3pe").symbol);
  CHECK(plus2.index == 2);
  CHECK(plus2.converged);

  for (const auto& entry : symbol_corpus()) {
    CAPTURE(entry.id);
    CHECK(compress_index(entry.symbol).index == -entry.winding);
  }
}

TEST_CASE("block split against the toeplitz section") {
  const BlockSplitReport shift = block_split_check(TrigSymbol::monomial(1), 8, 6);
  CHECK(shift.cross_block_norm < 1e-10);
  CHECK(shift.toeplitz_mismatch == 0.0);

  const BlockSplitReport triv = block_split_check(TrigSymbol::identity(1), 8, 6);
  CHECK(triv.x1_identity_residual < 1e-14);

  const BlockSplitReport two = block_split_check(corpus_symbol("two_plus_e").symbol, 8, 6, 40);
  CHECK(two.pass());
  CHECK(two.x1_identity_residual < 1e-8);
  CHECK(two.inverse_tail < 1e-8);
}

TEST_CASE("fiber D_s values and bounds") {
  const Mat f1 = fiber_D_s(0.0, 0, 1.0);
  CHECK(f1(0, 1) == Cplx(1.0));
  CHECK(f1(1, 0) == Cplx(1.0));
  CHECK(f1(0, 0) == Cplx(0.0));

  CHECK(fiber_D_s(0.0, 0, 0.0).cwiseAbs().maxCoeff() == 0.0);

  SweepGrid small;
  small.xi = {-5.0, -1.0, 0.0, 0.5, 5.0};
  small.k = {-3, -1, 0, 1, 3};
  small.s = {0.0, 0.3, 0.7, 1.0};
  const FiberSweepReport sweep = fiber_bound_sweep(small);
  CHECK(sweep.min_singular_minus_s >= -1e-12);
  CHECK(sweep.max_resolvent_norm <= 4.0 + 1e-10);

  // s = 0, xi = 0, k = 0: D + eps = eps, inverse norm 1
  const Mat m0 = fiber_D_s(0.0, 0, 0.0);
  CHECK((m0 + Mat::Identity(2, 2)).cwiseAbs().maxCoeff() > 0.0);  // eps shifts the corner entries
}

TEST_CASE("homotopy continuity sweep") {
  std::vector<double> s_samples;
  for (int i = 0; i <= 10; ++i) s_samples.push_back(0.1 * i);
  const std::vector<double> xi = {-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0};

  const ContinuityReport trivial =
      homotopy_continuity_sweep(TrigSymbol::identity(1), s_samples, 6, xi);
  CHECK(trivial.modulus_C == 0.0);
  CHECK(trivial.endpoint_mismatch < 1e-14);

  const ContinuityReport shift = homotopy_continuity_sweep(TrigSymbol::monomial(1), s_samples, 8, xi);
  CHECK(shift.modulus_C > 0.0);
  CHECK(shift.modulus_C < 1e2);
  CHECK(shift.endpoint_mismatch < 1e-12);
  for (double step : shift.step_norms) CHECK(step <= shift.modulus_C * 0.1 + 1e-12);
}

TEST_CASE("scalar bound families") {
  const auto reports = verify_scalar_bounds();
  REQUIRE(reports.size() == 7);
  long total = 0;
  for (const auto& r : reports) {
    CAPTURE(r.family);
    CHECK(r.pass);
    total += r.points;
  }
  CHECK(total >= 200000);

  // f_0 peaks at 1/2 against the bound 2; mu_{0,0} saturates its envelope
  for (const auto& r : reports) {
    if (r.family == "f_s") CHECK(r.worst_ratio >= 0.25 - 1e-9);
    if (r.family == "mu_lambda_s") CHECK(r.worst_ratio == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("hardy commutator locality in the cylinder basis") {
  const LocalityReport shift =
      hardy_commutator_locality(TrigSymbol::monomial(1), CylinderTruncation{-4, 4, 6, 2});
  CHECK(shift.expected_rank == 2);
  CHECK(shift.pass);

  const LocalityReport mix =
      hardy_commutator_locality(corpus_symbol("diag_mix").symbol, CylinderTruncation{-4, 4, 6, 2});
  CHECK(mix.expected_rank == 4);
  CHECK(mix.pass);
}

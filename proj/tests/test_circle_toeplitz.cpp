#include <cmath>

#include "doctest.h"
#include "indexlab/circle_toeplitz.hpp"
#include "indexlab/corpus.hpp"
#include "indexlab/svd_utils.hpp"

using namespace indexlab;

TEST_CASE("circle dirac spectrum and hardy rank") {
  const auto single = dirac_circle_spectrum(0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].k == 0);
  CHECK(single[0].lambda == 0.0);

  const auto modes = dirac_circle_spectrum(2);
  REQUIRE(modes.size() == 5);
  for (const auto& m : modes) CHECK(m.lambda == static_cast<double>(m.k));

  // P retains k >= 0, zero mode included
  int rank = 0;
  for (const auto& m : modes) rank += m.k >= 0 ? 1 : 0;
  CHECK(rank == 2 + 1);
}

TEST_CASE("toeplitz sections") {
  const ToeplitzSection shift = toeplitz_section(TrigSymbol::monomial(1), 4);
  const Mat& m = shift.matrix.mat();
  REQUIRE(m.rows() == 5);
  for (int j = 0; j < 5; ++j) {
    for (int k = 0; k < 5; ++k) {
      CHECK(m(j, k) == (j == k + 1 ? Cplx(1.0) : Cplx(0.0)));
    }
  }

  CHECK(toeplitz_section(TrigSymbol::identity(2), 3).matrix.mat().isApprox(Mat::Identity(8, 8)));

  const Mat t2 = toeplitz_section(TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1), 2)
                     .matrix.mat();
  Mat expect(3, 3);
  expect << 2, 0, 0, 1, 2, 0, 0, 1, 2;
  CHECK((t2 - expect).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(toeplitz_section(TrigSymbol::monomial(2), 1), TruncationTooSmall);
}

TEST_CASE("fredholm index oracle values") {
  CHECK(fredholm_index(TrigSymbol::identity(1)).index == 0);

  const IndexReport shift = fredholm_index(TrigSymbol::monomial(1));
  CHECK(shift.index == -1);
  CHECK(shift.ker_dim == 0);
  CHECK(shift.coker_dim == 1);
  CHECK(shift.converged);
  CHECK(shift.sigma_gap >= 1e3);

  const IndexReport down3 = fredholm_index(TrigSymbol::monomial(-3));
  CHECK(down3.index == 3);
  CHECK(down3.ker_dim == 3);
  CHECK(down3.coker_dim == 0);

  CHECK(fredholm_index(corpus_symbol("diag_mix").symbol).index == -1);
  CHECK_THROWS_AS(fredholm_index(TrigSymbol::monomial(0, 1.0) + TrigSymbol::monomial(1)),
                  NotInvertible);
}

TEST_CASE("index stable under truncation growth") {
  const TrigSymbol phi = corpus_symbol("em2_times_3pe").symbol;
  const IndexReport first = fredholm_index(phi);
  REQUIRE(first.converged);
  TruncationPolicy doubled;
  doubled.start = 2 * first.truncations.back();
  const IndexReport second = fredholm_index(phi, doubled);
  CHECK(second.index == first.index);
  CHECK(second.ker_dim == first.ker_dim);
  CHECK(second.coker_dim == first.coker_dim);
}

TEST_CASE("index theorem check across the corpus") {
  for (const auto& entry : symbol_corpus()) {
    const TheoremCheck check = index_theorem_check(entry.symbol);
    CAPTURE(entry.id);
    CHECK(check.ok);
    CHECK(check.winding.winding == entry.winding);
    CHECK(check.analytic.index == -entry.winding);
  }
  // (2 + e^{i theta}) e^{-2i theta}: winding -2, index +2
  const TrigSymbol prod =
      (TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1)) * TrigSymbol::monomial(-2);
  const TheoremCheck check = index_theorem_check(prod);
  CHECK(check.ok);
  CHECK(check.analytic.index == 2);
}

TEST_CASE("index is multiplicative over symbol products") {
  const TrigSymbol a = corpus_symbol("two_plus_e").symbol;
  const TrigSymbol b = TrigSymbol::monomial(-2);
  const TrigSymbol c = corpus_symbol("em2_times_3pe").symbol;
  CHECK(fredholm_index(a * b).index == fredholm_index(a).index + fredholm_index(b).index);
  CHECK(fredholm_index(a * c).index == fredholm_index(a).index + fredholm_index(c).index);
  CHECK(fredholm_index(b * c).index == fredholm_index(b).index + fredholm_index(c).index);
}

TEST_CASE("index constant along margin-certified homotopy") {
  const TrigSymbol phi = TrigSymbol::monomial(0, 2.0) + TrigSymbol::monomial(1);
  const TrigSymbol psi = TrigSymbol::monomial(0, 2.1) + TrigSymbol::monomial(1);
  const int base = fredholm_index(phi).index;
  for (int i = 0; i <= 10; ++i) {
    CHECK(fredholm_index(homotopy_interpolate(phi, psi, 0.1 * i)).index == base);
  }
}

TEST_CASE("hardy commutator has rank at most 2 l degree") {
  for (const auto& entry : {corpus_symbol("em2_times_3pe"), corpus_symbol("diag_mix")}) {
    const LabeledMatrix comm = hardy_commutator(entry.symbol, 12);
    const Eigen::VectorXd sv = singular_values(comm.mat());
    const int bound = 2 * entry.symbol.size() * entry.symbol.degree();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-12 * sv(0) ? 1 : 0;
    CAPTURE(entry.id);
    CHECK(rank <= bound);
  }
}

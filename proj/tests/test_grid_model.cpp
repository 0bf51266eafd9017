#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "indexlab/grid_model.hpp"
#include "indexlab/svd_utils.hpp"

using namespace indexlab;

namespace {
// small grid keeps the dense eigendecompositions cheap in unit tests
const CylinderGrid kSmall{8.0, 32, 8, BoundaryCondition::Dirichlet, 16, ThetaDerivative::Fourier};
}  // namespace

TEST_CASE("grid dirac operator: exact structure") {
  const DiracGrid dirac = build_dirac_grid(kSmall);
  const Mat& d = dirac.D.mat();
  CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  const Mat eps = dirac.eps.matrix().mat();
  CHECK((eps * d + d * eps).cwiseAbs().maxCoeff() == 0.0);

  // spectrum symmetric about zero
  const HermitianEigen eig = hermitian_eigen(d);
  const int n = static_cast<int>(eig.values.size());
  for (int i = 0; i < n; ++i) {
    CHECK(eig.values(i) == doctest::Approx(-eig.values(n - 1 - i)).epsilon(1e-10));
  }

  CHECK_THROWS_AS(build_dirac_grid(CylinderGrid{4.0, 6, 8, BoundaryCondition::Dirichlet, 3,
                                                ThetaDerivative::Fourier}),
                  GridTooSmall);
}

TEST_CASE("chopping calculus identities") {
  const DiracGrid dirac = build_dirac_grid(kSmall);
  const ChoppingCalculus chop = chopping_calculus(dirac, ChoppingSpec{});

  CHECK(chop.pythagoras_residual < 1e-10);
  CHECK(chop.isometry_residual < 1e-8);
  CHECK(chop.chi0_solve_residual < 1e-8);

  // ||chi0(D)|| <= 1
  CHECK(singular_values(chop.chi_D.mat())(0) <= 1.0 + 1e-12);
}

TEST_CASE("grid index class matches the winding oracle") {
  const DiracGrid dirac = build_dirac_grid(kSmall);
  const GridCalculus calc = prepare_grid_calculus(dirac, ChoppingSpec{});

  const GridIndexReport flat = index_class_grid(calc, TrigSymbol::identity(1));
  CHECK(flat.report.index == 0);
  CHECK(flat.multiplicity == 0);
  CHECK(flat.matches_oracle);

  const GridIndexReport shift = index_class_grid(calc, TrigSymbol::monomial(1));
  CHECK(shift.circle_index == -1);
  CHECK(shift.multiplicity == 1);
  CHECK(shift.report.index == -1);
  CHECK(shift.matches_oracle);
  CHECK_FALSE(shift.boundary_flag);

  const GridIndexReport down = index_class_grid(calc, TrigSymbol::monomial(-1));
  CHECK(down.report.index == 1);
  CHECK(down.matches_oracle);
}

TEST_CASE("cobordism invariance under cut shifts") {
  const DiracGrid dirac = build_dirac_grid(kSmall);
  const GridCalculus calc = prepare_grid_calculus(dirac, ChoppingSpec{});

  const CobordismReport zero = cobordism_shift_test(calc, TrigSymbol::monomial(1), 0);
  CHECK(zero.agree);

  const CobordismReport moved = cobordism_shift_test(calc, TrigSymbol::monomial(1), 2);
  CHECK(moved.agree);
  CHECK(moved.index_before == -1);

  const CobordismReport flat = cobordism_shift_test(calc, TrigSymbol::identity(1), 3);
  CHECK(flat.agree);
  CHECK(flat.index_before == 0);
}

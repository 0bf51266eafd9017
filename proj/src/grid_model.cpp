#include "indexlab/grid_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace indexlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGapAccept = 1.3;   // sub-gap structure exists
constexpr double kGapConverged = 3.0;

struct GridShape {
  int n_t, n_th, l;
  int sites() const { return n_t * n_th; }
  int dim() const { return 2 * sites() * l; }
  // spin-major, then t, then theta, then component
  int at(int spin, int it, int ith, int c) const {
    return ((spin * n_t + it) * n_th + ith) * l + c;
  }
};

Basis grid_basis(const GridShape& s) {
  Basis b(s.dim());
  for (int spin = 0; spin < 2; ++spin) {
    for (int it = 0; it < s.n_t; ++it) {
      for (int ith = 0; ith < s.n_th; ++ith) {
        for (int c = 0; c < s.l; ++c) b[s.at(spin, it, ith, c)] = BasisLabel{it, ith, c, spin};
      }
    }
  }
  return b;
}

// Antisymmetric centered difference d/dt.
Eigen::MatrixXd t_derivative(const CylinderGrid& g) {
  const double h = 2.0 * g.L / g.n_t;
  Eigen::MatrixXd dt = Eigen::MatrixXd::Zero(g.n_t, g.n_t);
  for (int i = 0; i < g.n_t; ++i) {
    const int up = i + 1, dn = i - 1;
    if (up < g.n_t) dt(i, up) = 1.0 / (2.0 * h);
    if (dn >= 0) dt(i, dn) = -1.0 / (2.0 * h);
    if (g.bc == BoundaryCondition::Periodic) {
      if (up == g.n_t) dt(i, 0) = 1.0 / (2.0 * h);
      if (dn == -1) dt(i, g.n_t - 1) = -1.0 / (2.0 * h);
    }
  }
  return dt;
}

// Exact Fourier Dirac matrix on the theta circle: modes -floor(n/2) .. ceil(n/2)-1.
Mat theta_dirac(const CylinderGrid& g) {
  const int n = g.n_theta;
  Mat dn = Mat::Zero(n, n);
  if (g.dn_kind == ThetaDerivative::CenteredDifference) {
    const double h = 2.0 * kPi / n;
    for (int j = 0; j < n; ++j) {
      dn(j, (j + 1) % n) = Cplx(0.0, -1.0) / (2.0 * h);
      dn(j, (j + n - 1) % n) = Cplx(0.0, 1.0) / (2.0 * h);
    }
    return dn;
  }
  for (int j = 0; j < n; ++j) {
    for (int jp = 0; jp < n; ++jp) {
      Cplx acc = 0.0;
      for (int m = -(n / 2); m < (n + 1) / 2; ++m) {
        acc += static_cast<double>(m) * std::exp(Cplx(0.0, m * 2.0 * kPi * (j - jp) / n));
      }
      dn(j, jp) = acc / static_cast<double>(n);
    }
  }
  return dn;
}

void check_cut(const CylinderGrid& g, int cut) {
  if (cut < g.n_t / 4 || cut > g.n_t - g.n_t / 4) {
    throw GridTooSmall("cut index " + std::to_string(cut) +
                       " must keep at least n_t/4 cells on each side");
  }
}

struct GapScan {
  int multiplicity = 0;
  double ratio = 0.0;         // best sub-gap ratio found
  double threshold = 0.0;     // singular values below are counted
};

// Largest relative jump in the lowest singular values; no jump, no modes.
GapScan scan_gap(const Eigen::VectorXd& sigma_desc, int look = 8) {
  GapScan out;
  const int n = static_cast<int>(sigma_desc.size());
  const int m = std::min(look, n - 1);
  std::vector<double> asc(m + 1);
  for (int i = 0; i <= m; ++i) asc[i] = sigma_desc(n - 1 - i);
  for (int i = 0; i + 1 <= m; ++i) {
    const double lo = std::max(asc[i], 1e-300);
    const double r = asc[i + 1] / lo;
    if (r > out.ratio) {
      out.ratio = r;
      out.multiplicity = i + 1;
      out.threshold = std::sqrt(asc[i] * asc[i + 1]);
    }
  }
  if (out.ratio < kGapAccept) {
    out.multiplicity = 0;
    out.threshold = 0.0;
  }
  return out;
}

// Hypersurface Toeplitz index computed from the grid's own D_N matrix and the
// sampled symbol, by exact rectangular sections in its mode space.
int grid_circle_toeplitz_index(const CylinderGrid& g, const TrigSymbol& phi) {
  const int n = g.n_theta, l = phi.size();
  const HermitianEigen modes = hermitian_eigen(theta_dirac(g));
  const int top_mode = static_cast<int>(std::lround(modes.values(n - 1)));
  if (top_mode - phi.degree() < 1) {
    throw GridTooSmall("n_theta too small to section the hypersurface Toeplitz operator");
  }
  // multiplication by the sampled symbol, in the D_N eigenbasis
  Mat m_pos = Mat::Zero(n * l, n * l);
  for (int j = 0; j < n; ++j) {
    m_pos.block(j * l, j * l, l, l) = phi.evaluate(2.0 * kPi * j / n);
  }
  Mat w = Mat::Zero(n * l, n * l);  // eigenvectors (x) identity on components
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < l; ++c) w(a * l + c, b * l + c) = modes.vectors(a, b);
    }
  }
  const Mat t_modes = w.adjoint() * m_pos * w;

  auto mode_rows = [&](double lo, double hi) {
    std::vector<int> idx;
    for (int a = 0; a < n; ++a) {
      if (modes.values(a) >= lo - 0.25 && modes.values(a) <= hi + 0.25) {
        for (int c = 0; c < l; ++c) idx.push_back(a * l + c);
      }
    }
    return idx;
  };
  auto section = [&](const Mat& op) {
    const std::vector<int> rows = mode_rows(0, top_mode);
    const std::vector<int> cols = mode_rows(0, top_mode - phi.degree());
    Mat s(rows.size(), cols.size());
    for (size_t a = 0; a < rows.size(); ++a) {
      for (size_t b = 0; b < cols.size(); ++b) s(a, b) = op(rows[a], cols[b]);
    }
    return s;
  };
  const int ker = count_kernel(singular_values(section(t_modes)), 1e-8).dim;
  const int coker = count_kernel(singular_values(section(t_modes.adjoint())), 1e-8).dim;
  return ker - coker;
}

}  // namespace

DiracGrid build_dirac_grid(const CylinderGrid& grid, int l) {
  if (grid.n_t < 8 || grid.n_theta < 8) throw GridTooSmall("need n_t, n_theta >= 8");
  check_cut(grid, grid.cut_index);
  const GridShape shape{grid.n_t, grid.n_theta, l};
  const Eigen::MatrixXd dt = t_derivative(grid);
  const Mat dn = theta_dirac(grid);

  Mat d = Mat::Zero(shape.dim(), shape.dim());
  // spin0 row block: (-d/dt + D_N) acting on spin1; spin1 row block: (d/dt + D_N) on spin0
  for (int it = 0; it < grid.n_t; ++it) {
    for (int jt = 0; jt < grid.n_t; ++jt) {
      const double dt_ij = dt(it, jt);
      for (int ith = 0; ith < grid.n_theta; ++ith) {
        for (int jth = 0; jth < grid.n_theta; ++jth) {
          Cplx a = 0.0;
          if (ith == jth) a += -dt_ij;
          if (it == jt) a += dn(ith, jth);
          if (a != Cplx(0.0)) {
            for (int c = 0; c < l; ++c) {
              d(shape.at(0, it, ith, c), shape.at(1, jt, jth, c)) = a;
            }
          }
          Cplx b = 0.0;
          if (ith == jth) b += dt_ij;
          if (it == jt) b += dn(ith, jth);
          if (b != Cplx(0.0)) {
            for (int c = 0; c < l; ++c) {
              d(shape.at(1, it, ith, c), shape.at(0, jt, jth, c)) = b;
            }
          }
        }
      }
    }
  }
  Basis basis = grid_basis(shape);
  GradingOp eps = GradingOp::from_predicate(
      basis, [](const BasisLabel& b) { return b.spin == 0; }, GradingOp::Role::BundleGrading);
  return DiracGrid{grid, l, LabeledMatrix(basis, basis, std::move(d)), std::move(eps)};
}

ChoppingCalculus chopping_calculus(const DiracGrid& dirac, const ChoppingSpec& spec,
                                   unsigned rng_seed) {
  if (spec.kind != "rational_chi0") throw Error("chopping_calculus: unknown chopping kind");
  const Mat& d = dirac.D.mat();
  if ((d - d.adjoint()).cwiseAbs().maxCoeff() != 0.0) {
    throw EigenFailure("grid Dirac operator is not exactly Hermitian");
  }
  const HermitianEigen eig = hermitian_eigen(d);
  const int n = static_cast<int>(d.rows());

  Eigen::VectorXd chi(n), eta(n);
  for (int i = 0; i < n; ++i) {
    const double x = eig.values(i);
    chi(i) = x / std::sqrt(1.0 + x * x);
    eta(i) = std::sqrt(1.0 - chi(i) * chi(i));
  }
  const Mat vh = eig.vectors.adjoint();
  const Mat chi_d = gemm(eig.vectors * chi.asDiagonal(), vh);
  const Mat eta_d = gemm(eig.vectors * eta.asDiagonal(), vh);
  Mat d_chi = eta_d;
  for (int i = 0; i < d_chi.rows(); ++i) d_chi.row(i) *= dirac.eps.signs()[i];
  d_chi += chi_d;

  ChoppingCalculus out{LabeledMatrix(dirac.D.rows(), dirac.D.cols(), chi_d),
                       LabeledMatrix(dirac.D.rows(), dirac.D.cols(), eta_d),
                       LabeledMatrix(dirac.D.rows(), dirac.D.cols(), d_chi), 0.0, 0.0, 0.0};
  out.pythagoras_residual =
      (gemm(chi_d, chi_d) + gemm(eta_d, eta_d) - Mat::Identity(n, n)).cwiseAbs().maxCoeff();

  std::mt19937 rng(rng_seed);
  std::normal_distribution<double> gauss;
  for (int probe = 0; probe < 8; ++probe) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = Cplx(gauss(rng), gauss(rng));
    out.isometry_residual =
        std::max(out.isometry_residual, std::abs((d_chi * v).norm() / v.norm() - 1.0));
  }

  // chi0(D) against D (1 + D^2)^{-1/2} through an independent square root + solve
  const Mat s = Mat::Identity(n, n) + gemm(d, d);
  const HermitianEigen seig = hermitian_eigen(s);
  Eigen::VectorXd root(n);
  for (int i = 0; i < n; ++i) root(i) = std::sqrt(std::max(seig.values(i), 0.0));
  const Mat sqrt_s = gemm(seig.vectors * root.asDiagonal(), seig.vectors.adjoint());
  const Mat solve_route = sqrt_s.partialPivLu().solve(d);
  out.chi0_solve_residual = (solve_route - chi_d).cwiseAbs().maxCoeff();
  return out;
}

GridCalculus prepare_grid_calculus(const DiracGrid& dirac, const ChoppingSpec& spec) {
  if (spec.kind != "rational_chi0") throw Error("prepare_grid_calculus: unknown chopping kind");
  const Mat& d = dirac.D.mat();
  const int n = static_cast<int>(d.rows());
  const HermitianEigen eig = hermitian_eigen(d);

  Eigen::VectorXd chi(n), eta(n), g(n), h(n);
  for (int i = 0; i < n; ++i) {
    const double x = eig.values(i);
    chi(i) = x / std::sqrt(1.0 + x * x);
    eta(i) = std::sqrt(1.0 - chi(i) * chi(i));
    g(i) = x / (1.0 + x * x);
    h(i) = 1.0 / (1.0 + x * x);
  }
  const Mat eps = dirac.eps.matrix().mat();
  const Mat vh = eig.vectors.adjoint();
  Mat d_chi = gemm(eig.vectors * eta.asDiagonal(), vh);
  for (int i = 0; i < d_chi.rows(); ++i) d_chi.row(i) *= dirac.eps.signs()[i];
  d_chi += gemm(eig.vectors * chi.asDiagonal(), vh);
  Mat d_pe_inv = gemm(eig.vectors * h.asDiagonal(), vh);
  for (int i = 0; i < d_pe_inv.rows(); ++i) d_pe_inv.row(i) *= dirac.eps.signs()[i];
  d_pe_inv += gemm(eig.vectors * g.asDiagonal(), vh);
  GridCalculus calc{dirac, spec, std::move(d_chi), d + eps, std::move(d_pe_inv)};
  const double cond_residual =
      (gemm(calc.d_plus_eps, calc.d_plus_eps_inv) - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (cond_residual > 1e-8) {
    throw IllConditioned("(D + eps)^{-1} residual " + std::to_string(cond_residual));
  }
  // D_chi is a self-adjoint unitary; its square certifies every exact inverse
  // u_{chi,phi}^{-1} = D_chi diag(phi^{-1}, 1) D_chi used downstream.
  const double involution_residual =
      (gemm(calc.d_chi, calc.d_chi) - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (involution_residual > 1e-8) {
    throw EigenFailure("D_chi^2 - 1 residual " + std::to_string(involution_residual));
  }
  return calc;
}

namespace {

// diag(phi, 1) . X without materializing the block-diagonal factor: phi acts
// on the S^+ rows sitewise, the S^- rows pass through.
Mat apply_diag_phi_left(const DiracGrid& dirac, const TrigSymbol& phi, const Mat& x) {
  const GridShape shape{dirac.grid.n_t, dirac.grid.n_theta, dirac.l};
  Mat out = x;
  std::vector<Mat> blocks(dirac.grid.n_theta);
  for (int ith = 0; ith < dirac.grid.n_theta; ++ith) {
    blocks[ith] = phi.evaluate(2.0 * kPi * ith / dirac.grid.n_theta);
  }
  for (int it = 0; it < dirac.grid.n_t; ++it) {
    for (int ith = 0; ith < dirac.grid.n_theta; ++ith) {
      const int base = shape.at(0, it, ith, 0);
      out.middleRows(base, dirac.l) = blocks[ith] * x.middleRows(base, dirac.l);
    }
  }
  return out;
}

struct CompressionExtract {
  GapScan gap;
  bool wall_localized = false;
};

CompressionExtract extract_multiplicity(const Mat& u, const DiracGrid& dirac, int cut) {
  const GridShape shape{dirac.grid.n_t, dirac.grid.n_theta, dirac.l};
  std::vector<int> keep;
  std::vector<int> tcell;
  const Basis& basis = dirac.D.rows();
  for (int i = 0; i < shape.dim(); ++i) {
    if (basis[i].n >= cut) {
      keep.push_back(i);
      tcell.push_back(basis[i].n);
    }
  }
  Mat a(keep.size(), keep.size());
  for (size_t r = 0; r < keep.size(); ++r) {
    for (size_t c = 0; c < keep.size(); ++c) a(r, c) = u(keep[r], keep[c]);
  }
  const SvdTriplets svd = singular_triplets(a);
  CompressionExtract out;
  out.gap = scan_gap(svd.sigma);
  const double mid = 0.5 * (cut + dirac.grid.n_t);
  const int total = static_cast<int>(svd.sigma.size());
  for (int j = 0; j < out.gap.multiplicity; ++j) {
    const int col = total - 1 - j;  // smallest singular values sit at the end
    double cut_mass = 0.0, wall_mass = 0.0;
    for (size_t r = 0; r < keep.size(); ++r) {
      const double mr = std::norm(svd.v(r, col)) + std::norm(svd.u(r, col));
      (tcell[r] < mid ? cut_mass : wall_mass) += mr;
    }
    if (wall_mass > cut_mass) out.wall_localized = true;
  }
  return out;
}

// Dense operators for one symbol; reused across partition cuts.
struct SymbolOperators {
  Mat u;   // D_chi diag(phi, 1) D_chi
  Mat u2;  // (D + eps)^{-1} diag(phi, 1) (D + eps)
  int circle_index = 0;
  int oracle_winding = 0;
};

SymbolOperators build_symbol_operators(const GridCalculus& calc, const TrigSymbol& phi) {
  require_invertible(phi);
  if (phi.size() != calc.dirac.l) {
    throw BasisMismatch("index_class_grid: symbol size differs from the grid's component count");
  }
  SymbolOperators ops;
  ops.u = gemm(calc.d_chi, apply_diag_phi_left(calc.dirac, phi, calc.d_chi));
  ops.u2 = gemm(calc.d_plus_eps_inv, apply_diag_phi_left(calc.dirac, phi, calc.d_plus_eps));
  ops.circle_index = grid_circle_toeplitz_index(calc.dirac.grid, phi);
  ops.oracle_winding = winding_number(phi);
  return ops;
}

GridIndexReport grid_index_at_cut(const GridCalculus& calc, const SymbolOperators& ops, int cut) {
  check_cut(calc.dirac.grid, cut);
  GridIndexReport out;
  out.circle_index = ops.circle_index;
  const int sign = ops.circle_index > 0 ? 1 : (ops.circle_index < 0 ? -1 : 0);

  const CompressionExtract main = extract_multiplicity(ops.u, calc.dirac, cut);
  out.multiplicity = main.gap.multiplicity;
  out.gap_ratio = main.gap.ratio;
  out.boundary_flag = main.wall_localized;

  const CompressionExtract coro = extract_multiplicity(ops.u2, calc.dirac, cut);
  out.corollary_multiplicity = coro.gap.multiplicity;
  out.corollary_gap = coro.gap.ratio;
  out.corollary_resolved = coro.gap.multiplicity == std::abs(ops.circle_index);
  out.corollary_index = sign * out.corollary_multiplicity;

  IndexReport& rep = out.report;
  rep.index = sign * out.multiplicity;
  rep.ker_dim = rep.index > 0 ? out.multiplicity : 0;
  rep.coker_dim = rep.index < 0 ? out.multiplicity : 0;
  rep.sigma_gap = out.gap_ratio;
  rep.truncations = {calc.dirac.grid.n_t, calc.dirac.grid.n_theta};
  rep.converged = (out.multiplicity == std::abs(ops.circle_index)) &&
                  (out.multiplicity == 0 || out.gap_ratio >= kGapConverged) &&
                  !out.boundary_flag;

  out.oracle_winding = ops.oracle_winding;
  out.matches_oracle = rep.index == -out.oracle_winding;
  return out;
}

}  // namespace

GridIndexReport index_class_grid(const GridCalculus& calc, const TrigSymbol& phi) {
  return grid_index_at_cut(calc, build_symbol_operators(calc, phi), calc.dirac.grid.cut_index);
}

GridIndexReport index_class_grid_at_cut(const GridCalculus& calc, const TrigSymbol& phi,
                                        int cut_index) {
  return grid_index_at_cut(calc, build_symbol_operators(calc, phi), cut_index);
}

CobordismReport cobordism_shift_test(const GridCalculus& calc, const TrigSymbol& phi, int shift) {
  const SymbolOperators ops = build_symbol_operators(calc, phi);
  const GridIndexReport before = grid_index_at_cut(calc, ops, calc.dirac.grid.cut_index);
  const GridIndexReport after = grid_index_at_cut(calc, ops, calc.dirac.grid.cut_index + shift);
  return CobordismReport{before.report.index, after.report.index,
                         before.report.index == after.report.index};
}

}  // namespace indexlab

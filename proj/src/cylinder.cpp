#include "indexlab/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace indexlab {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_of_mode(int k) { return k >= 0 ? 1 : -1; }

struct ModeWindow {
  int n_lo, n_hi, k_lo, k_hi, l;
};

Basis cylinder_basis(const ModeWindow& w) {
  Basis b;
  b.reserve((w.n_hi - w.n_lo + 1) * (w.k_hi - w.k_lo + 1) * w.l);
  for (int n = w.n_lo; n <= w.n_hi; ++n) {
    for (int k = w.k_lo; k <= w.k_hi; ++k) {
      for (int c = 0; c < w.l; ++c) b.push_back(BasisLabel{n, k, c, 0});
    }
  }
  return b;
}

// T_phi entry rule on the a_n (x) e_k basis: circle blocks are phihat(k'-k),
// the line factor is delta_{n',n} within a Hardy sector and the Cayley
// up/down shift across it.
int line_target(int n, int k_from, int k_to) {
  if (k_from >= 0 && k_to < 0) return n - 1;  // (1-P) phi P side, down-shift
  if (k_from < 0 && k_to >= 0) return n + 1;  // P phi (1-P) side, up-shift
  return n;
}

LabeledMatrix assemble_T_phi(const TrigSymbol& phi, const ModeWindow& rows,
                             const ModeWindow& cols) {
  const int l = phi.size();
  Basis rb = cylinder_basis(rows), cb = cylinder_basis(cols);
  Mat m = Mat::Zero(rb.size(), cb.size());
  const int row_k_span = rows.k_hi - rows.k_lo + 1;
  auto row_at = [&](int n, int k) {
    return ((n - rows.n_lo) * row_k_span + (k - rows.k_lo)) * l;
  };
  int col = 0;
  for (int n = cols.n_lo; n <= cols.n_hi; ++n) {
    for (int k = cols.k_lo; k <= cols.k_hi; ++k, col += l) {
      for (int kp = std::max(rows.k_lo, k - phi.degree());
           kp <= std::min(rows.k_hi, k + phi.degree()); ++kp) {
        const int np = line_target(n, k, kp);
        if (np < rows.n_lo || np > rows.n_hi) continue;
        m.block(row_at(np, kp), col, l, l) = phi.coeff(kp - k);
      }
    }
  }
  return LabeledMatrix(std::move(rb), std::move(cb), std::move(m));
}

// Exact rectangular section of P-hat T_phi P-hat: domain (n in [0, n_in],
// |k| <= k_in), range (n in [0, n_in + 1], |k| <= k_in + d). Images of domain
// vectors are reproduced with zero truncation error; the missing n = -1 row
// is the P-hat cut itself, not an artifact.
LabeledMatrix compressed_rect_section(const TrigSymbol& phi, int n_in, int k_in) {
  const int d = phi.degree();
  return assemble_T_phi(phi, ModeWindow{0, n_in + 1, -(k_in + d), k_in + d, phi.size()},
                        ModeWindow{0, n_in, -k_in, k_in, phi.size()});
}

Mat mode_block(const TrigSymbol& phi, int k_window) {
  const int l = phi.size();
  const int span = 2 * k_window + 1;
  Mat m = Mat::Zero(span * l, span * l);
  for (int k = -k_window; k <= k_window; ++k) {
    for (int kp = std::max(-k_window, k - phi.degree());
         kp <= std::min(k_window, k + phi.degree()); ++kp) {
      m.block((kp + k_window) * l, (k + k_window) * l, l, l) = phi.coeff(kp - k);
    }
  }
  return m;
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

}  // namespace

CylinderOperator build_T_phi(const TrigSymbol& phi, const CylinderTruncation& trunc) {
  if (trunc.margin < phi.degree()) {
    throw TruncationTooSmall("build_T_phi: margin below symbol degree");
  }
  if (trunc.n_min > -1 || trunc.n_max < 0 || trunc.k_max < phi.degree()) {
    throw TruncationTooSmall("build_T_phi: window must cover n in {-1, 0} and k up to the degree");
  }
  const ModeWindow w{trunc.n_min, trunc.n_max, -trunc.k_max, trunc.k_max, phi.size()};
  return CylinderOperator{phi, trunc, assemble_T_phi(phi, w, w)};
}

IndexReport compress_index(const TrigSymbol& phi, const TruncationPolicy& policy) {
  require_invertible(phi);
  const TrigSymbol phi_star = phi.adjoint();

  IndexReport report;
  int cap = policy.start > 0 ? policy.start : phi.degree() + 8;
  int prev_ker = -1, prev_coker = -1;
  for (int attempt = 0; attempt < policy.max_attempts; ++attempt, cap *= 2) {
    report.truncations.push_back(cap);
    // The escalation drives the circle truncation; the line truncation stays
    // at degree + 8. By the block decomposition, kernel and cokernel vectors
    // of the compression are carried entirely by the a_0 fiber, so extra line
    // modes add bulk spectrum without changing any count (block_split_check
    // verifies the decomposition independently).
    const int n_in = std::min(cap, phi.degree() + 8);
    const KernelCount ker = count_kernel(
        singular_values(compressed_rect_section(phi, n_in, cap).mat()), policy.rel_tau);
    const KernelCount coker = count_kernel(
        singular_values(compressed_rect_section(phi_star, n_in, cap).mat()), policy.rel_tau);
    report.ker_dim = ker.dim;
    report.coker_dim = coker.dim;
    report.index = ker.dim - coker.dim;
    report.sigma_gap = std::min(ker.gap, coker.gap);
    if (ker.dim == prev_ker && coker.dim == prev_coker && report.sigma_gap >= policy.gap_floor) {
      report.converged = true;
      return report;
    }
    prev_ker = ker.dim;
    prev_coker = coker.dim;
  }
  report.converged = false;
  return report;
}

BlockSplitReport block_split_check(const TrigSymbol& phi, int k_max, int n_max,
                                   int inverse_degree) {
  require_invertible(phi);
  BlockSplitReport report;

  const auto in_x0 = [](const BasisLabel& b) { return b.n == 0 && b.k >= 0; };

  // Compression on the reporting window; all entries are exact.
  const ModeWindow w{0, n_max, -k_max, k_max, phi.size()};
  const LabeledMatrix comp = assemble_T_phi(phi, w, w);
  const auto in_x1 = [&](const BasisLabel& b) { return !in_x0(b); };
  const double c01 = op_norm(comp.submatrix(in_x0, in_x1).mat());
  const double c10 = op_norm(comp.submatrix(in_x1, in_x0).mat());
  report.cross_block_norm = std::max(c01, c10);
  if (report.cross_block_norm >= 1e-10) {
    throw SplitViolated("X0/X1 coupling block norm " + std::to_string(report.cross_block_norm));
  }

  // X0 block against the circle Toeplitz section, entrywise.
  const LabeledMatrix x0 = comp.submatrix(in_x0, in_x0);
  const Mat toeplitz = toeplitz_section(phi, k_max).matrix.mat();
  report.toeplitz_mismatch = (x0.mat() - toeplitz).cwiseAbs().maxCoeff();

  // X1 inverse composition: (P T_psi P)(P T_phi P) = 1 on X1, up to the
  // inverse's truncation tail. Products are formed on an enlarged window so
  // every reported entry is exact.
  const TrigSymbol psi = invert(phi, inverse_degree, 1e-8);
  report.inverse_tail = psi.tail_tol();
  const int k_big = k_max + phi.degree() + psi.degree();
  const ModeWindow big{0, n_max + 2, -k_big, k_big, phi.size()};
  const LabeledMatrix product =
      assemble_T_phi(psi, big, big) * assemble_T_phi(phi, big, big);
  const auto x1_report = [&](const BasisLabel& b) {
    return b.n <= n_max && std::abs(b.k) <= k_max && !in_x0(b);
  };
  const LabeledMatrix q = product.submatrix(x1_report, x1_report);
  report.x1_identity_residual =
      (q.mat() - Mat::Identity(q.mat().rows(), q.mat().cols())).cwiseAbs().maxCoeff();
  return report;
}

Mat fiber_D_s(double xi, int k, double s) {
  const double m = (1.0 - s) * k + s * sign_of_mode(k);
  Mat out(2, 2);
  out(0, 0) = 0.0;
  out(0, 1) = Cplx(m, -xi);  // -i xi + m
  out(1, 0) = Cplx(m, xi);   //  i xi + m
  out(1, 1) = 0.0;
  return out;
}

SweepGrid default_sweep_grid() {
  SweepGrid g;
  for (int i = 0; i <= 200; ++i) g.xi.push_back(-50.0 + 0.5 * i);
  for (int k = -30; k <= 30; ++k) g.k.push_back(k);
  for (int i = 0; i <= 10; ++i) g.s.push_back(0.1 * i);
  return g;
}

FiberSweepReport fiber_bound_sweep(const SweepGrid& grid, double gap_slack,
                                   double resolvent_slack) {
  FiberSweepReport report;
  report.min_singular_minus_s = std::numeric_limits<double>::infinity();
  Mat eps(2, 2);
  eps << 1, 0, 0, -1;
  for (double s : grid.s) {
    for (int k : grid.k) {
      for (double xi : grid.xi) {
        const double m = (1.0 - s) * k + s * sign_of_mode(k);
        // both singular values of the fiber equal sqrt(xi^2 + m^2)
        const double sigma = std::hypot(xi, m);
        report.min_singular_minus_s = std::min(report.min_singular_minus_s, sigma - s);
        const Mat mat = fiber_D_s(xi, k, s) + (1.0 - s) * eps;
        const Eigen::JacobiSVD<Mat> svd(mat);
        const double smin = svd.singularValues().minCoeff();
        if (smin <= 0.0) throw IllConditioned("fiber D_s + (1-s)eps is singular");
        report.max_resolvent_norm = std::max(report.max_resolvent_norm, 1.0 / smin);
        ++report.points;
      }
    }
  }
  if (report.min_singular_minus_s < -gap_slack) {
    throw BoundViolated("fiber gap sigma_min >= s violated by " +
                        std::to_string(-report.min_singular_minus_s));
  }
  if (report.max_resolvent_norm > 4.0 + resolvent_slack) {
    throw BoundViolated("resolvent bound ||(D_s + (1-s)eps)^{-1}|| <= 4 violated: " +
                        std::to_string(report.max_resolvent_norm));
  }
  return report;
}

namespace {

// u_{phi,s} on one xi-fiber, as a 2x2 block matrix over circle modes:
//   u = diag(1, phi) + (D_s + (1-s) eps)^{-1} V_s
//   V_s = [ (1-s)(phi - 1)   -(1-s) c_N(grad phi) + s [phi, F] ]
//         [ 0                 (1-s)(phi - 1)                   ]
// with c_N(grad phi) = -i phi' on the chosen Clifford convention.
Mat fiber_u_phi_s(const TrigSymbol& phi, int k_window, double xi, double s) {
  const int l = phi.size();
  const int span = (2 * k_window + 1) * l;
  const Mat phi_m = mode_block(phi, k_window);
  const Mat id = Mat::Identity(span, span);

  // commutator [phi, F] and -i phi' in mode space
  Mat comm_f = Mat::Zero(span, span);
  Mat grad_cl = Mat::Zero(span, span);
  for (int k = -k_window; k <= k_window; ++k) {
    for (int kp = std::max(-k_window, k - phi.degree());
         kp <= std::min(k_window, k + phi.degree()); ++kp) {
      const Mat& c = phi.coeff(kp - k);
      comm_f.block((kp + k_window) * l, (k + k_window) * l, l, l) =
          c * static_cast<double>(sign_of_mode(k) - sign_of_mode(kp));
      // c_N(grad phi) = -i phi' has mode entries (kp - k) phihat(kp - k)
      grad_cl.block((kp + k_window) * l, (k + k_window) * l, l, l) =
          c * static_cast<double>(kp - k);
    }
  }

  Mat u = Mat::Zero(2 * span, 2 * span);
  u.topLeftCorner(span, span) = id;
  u.bottomRightCorner(span, span) = phi_m;

  Mat v = Mat::Zero(2 * span, 2 * span);
  v.topLeftCorner(span, span) = (1.0 - s) * (phi_m - id);
  v.bottomRightCorner(span, span) = (1.0 - s) * (phi_m - id);
  v.topRightCorner(span, span) = -(1.0 - s) * grad_cl + s * comm_f;

  // (D_s + (1-s) eps)^{-1} is 2x2 per circle mode
  Mat r = Mat::Zero(2 * span, 2 * span);
  for (int k = -k_window; k <= k_window; ++k) {
    const double m = (1.0 - s) * k + s * sign_of_mode(k);
    const double det = -(1.0 - s) * (1.0 - s) - (m * m + xi * xi);
    // inverse of [[a, b], [c, -a]] is [[-a, -b], [-c, a]] / det
    const Cplx a(1.0 - s, 0.0), b(m, -xi), c(m, xi);
    for (int comp = 0; comp < l; ++comp) {
      const int i0 = (k + k_window) * l + comp;
      const int i1 = span + i0;
      r(i0, i0) = -a / det;
      r(i0, i1) = -b / det;
      r(i1, i0) = -c / det;
      r(i1, i1) = a / det;
    }
  }
  return u + r * v;
}

// The s = 1 endpoint in the same fiber, assembled independently from the
// T_phi block structure with the Cayley factor evaluated at the fiber.
Mat fiber_T_phi(const TrigSymbol& phi, int k_window, double xi) {
  const int l = phi.size();
  const int span = (2 * k_window + 1) * l;
  const Cplx cayley = Cplx(xi, -1.0) / Cplx(xi, 1.0);
  Mat out = Mat::Zero(span, span);
  for (int k = -k_window; k <= k_window; ++k) {
    for (int kp = std::max(-k_window, k - phi.degree());
         kp <= std::min(k_window, k + phi.degree()); ++kp) {
      Cplx factor = 1.0;
      if (k < 0 && kp >= 0) factor = cayley;
      if (k >= 0 && kp < 0) factor = 1.0 / cayley;
      out.block((kp + k_window) * l, (k + k_window) * l, l, l) = factor * phi.coeff(kp - k);
    }
  }
  return out;
}

}  // namespace

ContinuityReport homotopy_continuity_sweep(const TrigSymbol& phi,
                                           const std::vector<double>& s_samples, int k_window,
                                           const std::vector<double>& xi_grid) {
  require_invertible(phi);
  if (s_samples.size() < 2) throw Error("homotopy_continuity_sweep: need at least two s samples");
  if (k_window < phi.degree()) throw TruncationTooSmall("homotopy_continuity_sweep: k window");

  ContinuityReport report;
  report.s_samples = s_samples;
  const int l = phi.size();
  const int span = (2 * k_window + 1) * l;

  for (size_t i = 0; i + 1 < s_samples.size(); ++i) {
    double worst = 0.0;
    for (double xi : xi_grid) {
      const Mat a = fiber_u_phi_s(phi, k_window, xi, s_samples[i]);
      const Mat b = fiber_u_phi_s(phi, k_window, xi, s_samples[i + 1]);
      worst = std::max(worst, op_norm(a - b));
    }
    report.step_norms.push_back(worst);
    const double ds = std::abs(s_samples[i + 1] - s_samples[i]);
    if (ds > 0) report.modulus_C = std::max(report.modulus_C, worst / ds);
  }

  // Endpoint identification: the lower-right block of u_{phi,1} must equal
  // the fiberized T_phi on interior modes (|k| <= k_window - degree).
  const int d = phi.degree();
  for (double xi : xi_grid) {
    const Mat u1 = fiber_u_phi_s(phi, k_window, xi, 1.0);
    const Mat t = fiber_T_phi(phi, k_window, xi);
    const Mat lower_right = u1.bottomRightCorner(span, span);
    double mismatch = 0.0;
    for (int k = -(k_window - d); k <= k_window - d; ++k) {
      for (int kp = -(k_window - d); kp <= k_window - d; ++kp) {
        const Mat delta = lower_right.block((kp + k_window) * l, (k + k_window) * l, l, l) -
                          t.block((kp + k_window) * l, (k + k_window) * l, l, l);
        mismatch = std::max(mismatch, delta.cwiseAbs().maxCoeff());
      }
    }
    // upper-left must be the identity, off-diagonal blocks zero
    mismatch = std::max(mismatch, (u1.topLeftCorner(span, span) - Mat::Identity(span, span))
                                      .cwiseAbs()
                                      .maxCoeff());
    mismatch = std::max(mismatch, u1.topRightCorner(span, span).cwiseAbs().maxCoeff());
    mismatch = std::max(mismatch, u1.bottomLeftCorner(span, span).cwiseAbs().maxCoeff());
    report.endpoint_mismatch = std::max(report.endpoint_mismatch, mismatch);
  }
  return report;
}

std::vector<ScalarBoundReport> verify_scalar_bounds() {
  std::vector<ScalarBoundReport> out;
  const double x_lo = -100.0, x_hi = 100.0, dx = 1e-3;
  const long nx = static_cast<long>((x_hi - x_lo) / dx) + 1;
  const std::vector<double> lambdas = {0.0, 0.5, -0.5, 1.0, -1.0, 5.0, -5.0, 50.0, -50.0};

  auto run = [&](const std::string& name, auto&& value_and_bound) {
    ScalarBoundReport r;
    r.family = name;
    for (long i = 0; i < nx; ++i) {
      const double x = x_lo + i * dx;
      auto [count, worst, witness] = value_and_bound(x);
      r.points += count;
      if (worst > r.worst_ratio) {
        r.worst_ratio = worst;
        r.witness_x = witness;
      }
    }
    r.pass = r.worst_ratio <= 1.0 + 1e-12;
    out.push_back(r);
  };

  // Lemma bounds: f_s, g_s on |x| >= s, both bounded by 2.
  run("f_s", [&](double x) {
    long count = 0;
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double s = 0.05 * i;
      if (std::abs(x) < s) continue;
      const double denom = x * x + (1.0 - s) * (1.0 - s);
      if (denom == 0.0) continue;  // s = 1, x = 0 excluded with |x| >= s anyway
      worst = std::max(worst, std::abs(x / denom) / 2.0);
      ++count;
    }
    return std::tuple{count, worst, x};
  });
  run("g_s", [&](double x) {
    long count = 0;
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double s = 0.05 * i;
      if (std::abs(x) < s) continue;
      const double denom = x * x + (1.0 - s) * (1.0 - s);
      if (denom == 0.0) continue;
      worst = std::max(worst, (1.0 / denom) / 2.0);
      ++count;
    }
    return std::tuple{count, worst, x};
  });
  // mu and nu against their lambda-dependent envelopes, s in [0, 1).
  run("mu_lambda_s", [&](double x) {
    long count = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double s = 0.05 * i;
      for (double lam : lambdas) {
        const double shifted = (1.0 - s) * lam + s * (lam >= 0 ? 1.0 : -1.0);
        const double val = 1.0 / (x * x + shifted * shifted + (1.0 - s) * (1.0 - s));
        const double bound = 1.0 / ((1.0 - s) * (1.0 - s) * (lam * lam + 1.0));
        worst = std::max(worst, std::abs(val) / bound);
        ++count;
      }
    }
    return std::tuple{count, worst, x};
  });
  run("nu_lambda_s", [&](double x) {
    long count = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double s = 0.05 * i;
      for (double lam : lambdas) {
        const double shifted = (1.0 - s) * lam + s * (lam >= 0 ? 1.0 : -1.0);
        const double val = x / (x * x + shifted * shifted + (1.0 - s) * (1.0 - s));
        const double bound = 1.0 / (2.0 * (1.0 - s) * std::sqrt(lam * lam + 1.0));
        worst = std::max(worst, std::abs(val) / bound);
        ++count;
      }
    }
    return std::tuple{count, worst, x};
  });
  // Homotopy-calculus bounds: |g_t| <= 1 and |h_t| <= 1 on all of R.
  run("g_t", [&](double x) {
    long count = 0;
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double t = 0.05 * i;
      const double ft_den = t + (1.0 - t) / std::sqrt(1.0 + x * x);
      const double val = x / ((1.0 + x * x) * ft_den);
      worst = std::max(worst, std::abs(val));
      ++count;
    }
    return std::tuple{count, worst, x};
  });
  run("h_t", [&](double x) {
    long count = 0;
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double t = 0.05 * i;
      const double ft_den = t + (1.0 - t) / std::sqrt(1.0 + x * x);
      const double val = 1.0 / ((1.0 + x * x) * ft_den);
      worst = std::max(worst, std::abs(val));
      ++count;
    }
    return std::tuple{count, worst, x};
  });
  // f_t itself is only bounded by 1/t (t > 0); recorded as a sanity family.
  run("f_t", [&](double x) {
    long count = 0;
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double t = 0.05 * i;
      const double val = 1.0 / (t + (1.0 - t) / std::sqrt(1.0 + x * x));
      worst = std::max(worst, val / (1.0 / t));
      ++count;
    }
    return std::tuple{count, worst, x};
  });
  return out;
}

LocalityReport hardy_commutator_locality(const TrigSymbol& phi, const CylinderTruncation& trunc) {
  const CylinderOperator op = build_T_phi(phi, trunc);
  const GradingOp p_hat = GradingOp::from_predicate(
      op.matrix.rows(), [](const BasisLabel& b) { return b.n >= 0; },
      GradingOp::Role::PartitionGrading);
  // [P-hat, T] = [Lambda-hat, T] / 2
  const Mat comm = 0.5 * p_hat.commutator(op.matrix).mat();
  const Eigen::VectorXd sv = singular_values(comm);
  LocalityReport report;
  report.expected_rank = 2 * phi.size() * phi.degree();
  report.first_discarded = sv.size() > report.expected_rank ? sv(report.expected_rank) : 0.0;
  report.pass = report.first_discarded < 1e-10;
  return report;
}

}  // namespace indexlab

#include "indexlab/line_hilbert.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace indexlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex fftw_plan_mutex;  // plan creation is not thread-safe

void fft_inplace(std::vector<Cplx>& data, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                            reinterpret_cast<fftw_complex*>(data.data()),
                            reinterpret_cast<fftw_complex*>(data.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
  if (sign == FFTW_BACKWARD) {
    const double scale = 1.0 / data.size();
    for (auto& z : data) z *= scale;
  }
}

// Angular frequency of FFT bin j for grid step dt.
double bin_xi(int j, int n, double dt) {
  const int half = n / 2;
  const int k = j < half ? j : j - n;
  return 2.0 * kPi * k / (n * dt);
}

std::vector<Cplx> apply_multiplier(const LineGrid& grid, const std::vector<Cplx>& samples,
                                   double sign) {
  std::vector<Cplx> work = samples;
  fft_inplace(work, FFTW_FORWARD);
  const double dt = grid.step();
  const int n = grid.len;
  for (int j = 0; j < n; ++j) {
    const double xi = bin_xi(j, n, dt);
    const double m = xi > 0 ? sign : (xi < 0 ? -sign : 0.0);
    work[j] *= m;
  }
  fft_inplace(work, FFTW_BACKWARD);
  return work;
}

void check_grid(const LineGrid& grid, size_t n_samples) {
  if (grid.len < 8 || (grid.len & (grid.len - 1)) != 0) {
    throw Error("LineGrid: length must be a power of two (>= 8)");
  }
  if (n_samples != static_cast<size_t>(grid.len)) {
    throw Error("hilbert_apply_fft: sample count does not match grid");
  }
}

std::vector<Cplx> sample_a_n(const LineGrid& grid, int n) {
  std::vector<Cplx> out(grid.len);
  for (int j = 0; j < grid.len; ++j) out[j] = eval_a_n(n, grid.point(j));
  return out;
}

// Relative L2 norm of (got - want) with bins |xi| <= kSpectralCutWindow dropped.
double windowed_residual(const LineGrid& grid, const std::vector<Cplx>& got,
                         const std::vector<Cplx>& want) {
  std::vector<Cplx> diff(grid.len);
  double ref = 0.0;
  for (int j = 0; j < grid.len; ++j) {
    diff[j] = got[j] - want[j];
    ref += std::norm(want[j]);
  }
  fft_inplace(diff, FFTW_FORWARD);
  const double dt = grid.step();
  double acc = 0.0;
  for (int j = 0; j < grid.len; ++j) {
    if (std::abs(bin_xi(j, grid.len, dt)) <= kSpectralCutWindow) continue;
    acc += std::norm(diff[j]);
  }
  // Parseval: FFT is unitary up to sqrt(len)
  return std::sqrt(acc / grid.len) / std::sqrt(ref);
}

// Lock the multiplier sign on this grid: the paper's eigenrelations demand
// H a_{-1} = a_{-1} and H a_0 = -a_0.
double locked_sign(const LineGrid& grid) {
  const std::vector<Cplx> am1 = sample_a_n(grid, -1);
  const std::vector<Cplx> a0 = sample_a_n(grid, 0);
  auto neg = [](std::vector<Cplx> v) {
    for (auto& z : v) z = -z;
    return v;
  };
  for (double sign : {-1.0, +1.0}) {
    const double e1 = windowed_residual(grid, apply_multiplier(grid, am1, sign), am1);
    const double e2 = windowed_residual(grid, apply_multiplier(grid, a0, sign), neg(a0));
    if (e1 < 1e-3 && e2 < 1e-3) return sign;
  }
  throw ConventionLockFailure("no +-sgn(xi) assignment reproduces the a_n eigenrelations; grid unusable");
}

}  // namespace

Cplx eval_a_n(int n, double t) {
  const Cplx denom(t, 1.0);
  const Cplx cayley = Cplx(t, -1.0) / denom;  // modulus exactly 1
  Cplx power = 1.0;
  const int steps = std::abs(n);
  for (int i = 0; i < steps; ++i) power *= (n >= 0 ? cayley : 1.0 / cayley);
  return power / denom;
}

Mat gram_quadrature(const LineBasisSpec& spec, double T, long points) {
  if (T < 1e3 || points < 10000) {
    throw QuadratureBudgetExceeded("gram_quadrature: need T >= 1e3 and points >= 1e4");
  }
  if (spec.n_min > spec.n_max) throw Error("LineBasisSpec: empty mode window");
  const int n_modes = spec.n_max - spec.n_min + 1;
  const double h = 2.0 * T / points;

  // stream over midpoint nodes; one rank-one update per node
  Mat gram = Mat::Zero(n_modes, n_modes);
  Eigen::VectorXcd at_node(n_modes);
  for (long j = 0; j < points; ++j) {
    const double t = -T + (j + 0.5) * h;
    const Cplx denom(t, 1.0);
    const Cplx cayley = Cplx(t, -1.0) / denom;
    // a_{n_min} first, then climb by the unit-modulus factor
    at_node(0) = eval_a_n(spec.n_min, t);
    for (int m = 1; m < n_modes; ++m) at_node(m) = at_node(m - 1) * cayley;
    gram.noalias() += at_node.conjugate() * at_node.transpose();
  }
  gram *= h;
  // analytic tail of the common 1/(1+t^2) envelope; the remainder after this
  // correction is O((m-n)^2 / T^3)
  gram.array() += 2.0 * std::atan(1.0 / T);
  return gram;
}

std::vector<Cplx> hilbert_apply_fft(const LineGrid& grid, const std::vector<Cplx>& samples) {
  check_grid(grid, samples.size());
  return apply_multiplier(grid, samples, locked_sign(grid));
}

double hilbert_eigenrelation_error(const LineGrid& grid, int n) {
  check_grid(grid, static_cast<size_t>(grid.len));
  const std::vector<Cplx> a = sample_a_n(grid, n);
  std::vector<Cplx> want = a;
  if (n >= 0) {
    for (auto& z : want) z = -z;
  }
  return windowed_residual(grid, hilbert_apply_fft(grid, a), want);
}

double hilbert_involution_error(const LineGrid& grid, const std::vector<Cplx>& samples) {
  check_grid(grid, samples.size());
  const auto twice = hilbert_apply_fft(grid, hilbert_apply_fft(grid, samples));
  return windowed_residual(grid, twice, samples);
}

double hilbert_windowed_error(const LineGrid& grid, const std::vector<Cplx>& got,
                              const std::vector<Cplx>& want) {
  check_grid(grid, got.size());
  if (got.size() != want.size()) throw Error("hilbert_windowed_error: length mismatch");
  return windowed_residual(grid, got, want);
}

namespace {
CayleyShift shift_by(const LineBasisSpec& spec, int delta) {
  Basis basis;
  for (int n = spec.n_min; n <= spec.n_max; ++n) basis.push_back(BasisLabel{n, 0, 0, 0});
  const int dim = static_cast<int>(basis.size());
  Mat m = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int target = basis[i].n + delta;
    if (target >= spec.n_min && target <= spec.n_max) m(target - spec.n_min, i) = 1.0;
  }
  return CayleyShift{LabeledMatrix(basis, basis, std::move(m)),
                     delta > 0 ? spec.n_max : spec.n_min};
}
}  // namespace

CayleyShift cayley_shift_matrix(const LineBasisSpec& spec) { return shift_by(spec, +1); }

CayleyShift cayley_shift_inverse_matrix(const LineBasisSpec& spec) { return shift_by(spec, -1); }

}  // namespace indexlab

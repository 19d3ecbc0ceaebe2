#include "qes/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unsupported/Eigen/FFT>

namespace qes {

namespace {

using cd = std::complex<double>;
using cld = std::complex<long double>;

constexpr cd kI(0, 1);

bool half_integer(double N) {
  const double twice = 2 * N;
  return twice >= 1 && twice == std::floor(twice) && twice < 1e6;
}

struct Chain {
  std::vector<cld> x;            // X_first .. X_n_max
  std::vector<long double> mag;  // the same recurrence on absolute values
};

// X_{n+1} = 2(E - 4n^2) X_n + zeta^2 [4N^2 - 2N - n(n-1)] X_{n-1}.
Chain chain(const HamiltonianParams& p, Parity family, cd E, int n_max) {
  const int f = first_index(family);
  const cld e(E.real(), E.imag());
  const long double z2 = static_cast<long double>(p.zeta) * p.zeta;
  const long double N = p.N;
  Chain c;
  c.x.push_back(1);
  c.mag.push_back(1);
  if (n_max <= f) return c;
  c.x.push_back(family == Parity::Even ? e : 2.0L * (e - 4.0L));
  c.mag.push_back(family == Parity::Even ? std::abs(e) : 2 * (std::abs(e) + 4));
  for (int n = f + 1; n < n_max; ++n) {
    const std::size_t k = static_cast<std::size_t>(n - f);
    const long double b = z2 * (4 * N * N - 2 * N - static_cast<long double>(n) * (n - 1));
    const long double d = 4.0L * n * n;
    c.x.push_back(2.0L * (e - d) * c.x[k] + b * c.x[k - 1]);
    c.mag.push_back(2 * (std::abs(e) + d) * c.mag[k] + std::fabs(b) * c.mag[k - 1]);
  }
  return c;
}

cd to_cd(cld z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// Frequency of FFT bin j on a grid of size g; the Nyquist bin is dropped.
int wavenumber(int j, int g) { return j < g / 2 ? j : (j == g / 2 ? 0 : j - g); }

}  // namespace

std::vector<double> uniform_grid(int size) {
  std::vector<double> t(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) t[static_cast<std::size_t>(j)] = 2 * std::numbers::pi * j / size;
  return t;
}

std::vector<cd> ansatz_coefficients(const HamiltonianParams& p, Parity family, cd E, int n_max) {
  if (p.zeta == 0) throw std::invalid_argument("the Ansatz needs zeta != 0 (use the rescaled limit coefficients)");
  if (p.N == 0) throw std::invalid_argument("the Ansatz needs N != 0");
  const int f = first_index(family);
  const Chain c = chain(p, family, E, n_max);
  std::vector<cd> out;
  long double denom = 1;  // zeta^n N (1+2N)_{n-1}; the n = 0 term is P_0 itself
  cld phase = 1;
  for (int n = f; n <= n_max; ++n) {
    if (n >= 1) {
      denom *= n == 1 ? p.zeta * static_cast<long double>(p.N) : p.zeta * (2.0L * p.N + n - 1);
      phase *= cld(0, 1);
    }
    if (denom == 0) throw std::invalid_argument("Ansatz denominator vanishes at this N");
    out.push_back(to_cd(phase * c.x[static_cast<std::size_t>(n - f)] / denom));
  }
  return out;
}

WaveSample eval_psi(const HamiltonianParams& p, Parity family, cd E, int n_extra, int grid) {
  if (n_extra < 0) throw std::invalid_argument("n_extra must be nonnegative");
  const int f = first_index(family);
  const bool qes = half_integer(p.N);
  const int cut = qes ? static_cast<int>(2 * p.N) : 0;  // index of the critical member
  const int n_max = std::max(f, cut + n_extra);
  if (grid % 4 != 0 || grid < 4 * n_max) throw std::invalid_argument("grid must be a multiple of 4 and at least 4 n_max");

  WaveSample s;
  s.family = family;
  s.E = E;
  s.coeffs = ansatz_coefficients(p, family, E, n_max);
  s.n_max = n_max;
  if (qes && cut > f) {
    const Chain c = chain(p, family, E, n_max);
    const auto k = static_cast<std::size_t>(cut - f);
    if (std::abs(c.x[k]) <= 1e-10L * c.mag[k]) {
      long double rest = 0;
      for (std::size_t n = k; n < c.x.size(); ++n) rest = std::max(rest, std::abs(c.x[n]) / c.mag[n]);
      s.truncated = true;
      s.tail = static_cast<double>(rest);
      s.coeffs.resize(k);
      s.n_max = cut - 1;
    }
  }

  s.theta = uniform_grid(grid);
  s.values.resize(grid);
  for (int j = 0; j < grid; ++j) {
    const double t = s.theta[static_cast<std::size_t>(j)];
    cd sum = 0;
    for (int n = f; n <= s.n_max; ++n) {
      const double h = family == Parity::Even ? std::cos(2 * n * t) : std::sin(2 * n * t);
      sum += s.coeffs[static_cast<std::size_t>(n - f)] * h;
    }
    s.values(j) = std::exp(kI * (p.zeta / 4) * std::cos(2 * t)) * sum;
  }
  return s;
}

WaveSample sample_of(Eigen::VectorXcd values, cd E) {
  WaveSample s;
  s.E = E;
  s.theta = uniform_grid(static_cast<int>(values.size()));
  s.values = std::move(values);
  return s;
}

WaveSample apply_H(const HamiltonianParams& p, const WaveSample& s) {
  const int g = s.size();
  if (g < 8 || g % 2 != 0) throw std::invalid_argument("apply_H: grid must be even and at least 8");
  Eigen::FFT<double> fft;
  std::vector<cd> in(s.values.data(), s.values.data() + g), spec, d1(static_cast<std::size_t>(g)), d2(d1);
  fft.fwd(spec, in);

  double top = 0, high = 0;
  for (int j = 0; j < g; ++j) {
    const double a = std::abs(spec[static_cast<std::size_t>(j)]);
    top = std::max(top, a);
    if (std::abs(j < g / 2 ? j : j - g) > g / 3) high = std::max(high, a);
  }
  if (high > 1e-12 * top) throw AliasingError("apply_H: spectrum reaches past a third of the grid; refine it");

  // Differentiation multiplies the rounding floor of every bin by k^2, so
  // bins past g/3 and bins at that floor are dropped first.
  const double floor = 64 * std::numeric_limits<double>::epsilon() * top;
  for (int j = 0; j < g; ++j) {
    const double k = wavenumber(j, g);
    if (std::abs(k) > g / 3 || std::abs(spec[static_cast<std::size_t>(j)]) < floor) spec[static_cast<std::size_t>(j)] = 0;
    d1[static_cast<std::size_t>(j)] = kI * k * spec[static_cast<std::size_t>(j)];
    d2[static_cast<std::size_t>(j)] = -k * k * spec[static_cast<std::size_t>(j)];
  }
  std::vector<cd> t1, t2;
  fft.inv(t1, d1);
  fft.inv(t2, d2);

  WaveSample out = s;
  for (int j = 0; j < g; ++j) {
    const double t = s.theta[static_cast<std::size_t>(j)];
    const auto u = static_cast<std::size_t>(j);
    out.values(j) = -t2[u] - kI * (p.zeta / 2) * std::sin(2 * t) * t1[u] - 2.0 * kI * p.zeta * p.N * std::cos(2 * t) * s.values(j);
  }
  return out;
}

double residual(const HamiltonianParams& p, const WaveSample& s) {
  const WaveSample h = apply_H(p, s);
  return (h.values - s.E * s.values).cwiseAbs().maxCoeff() / s.values.cwiseAbs().maxCoeff();
}

FourierOperator fourier_matrix(const HamiltonianParams& p, int K, Parity sector) {
  if (K < 2) throw std::invalid_argument("fourier_matrix: K must be at least 2");
  const int f = first_index(sector);
  const double z = p.zeta, N = p.N;
  FourierOperator op{sector, K, Eigen::MatrixXcd::Zero(K, K)};
  for (int r = 0; r < K; ++r) {
    const int n = f + r;
    op.matrix(r, r) = 4.0 * n * n;
    if (r + 1 < K) {
      // <n| H |n+1> and <n+1| H |n>
      op.matrix(r, r + 1) = kI * (z / 2) * (n + 1 - 2 * N);
      op.matrix(r + 1, r) = -kI * (z / 2) * (n + 2 * N);
    }
  }
  if (sector == Parity::Even) {
    op.matrix(0, 1) *= std::numbers::sqrt2;
    op.matrix(1, 0) *= std::numbers::sqrt2;
  }
  return op;
}

FourierOperator mathieu_matrix(double g, int K, Parity sector) {
  if (K < 2) throw std::invalid_argument("mathieu_matrix: K must be at least 2");
  const int f = first_index(sector);
  FourierOperator op{sector, K, Eigen::MatrixXcd::Zero(K, K)};
  for (int r = 0; r < K; ++r) {
    op.matrix(r, r) = 4.0 * (f + r) * (f + r);
    if (r + 1 < K) op.matrix(r, r + 1) = op.matrix(r + 1, r) = -kI * g;
  }
  if (sector == Parity::Even) {
    op.matrix(0, 1) *= std::numbers::sqrt2;
    op.matrix(1, 0) *= std::numbers::sqrt2;
  }
  return op;
}

double adjoint_deviation(const HamiltonianParams& p, int K, Parity sector) {
  const Eigen::MatrixXcd a = fourier_matrix(p, K, sector).matrix.adjoint();
  const Eigen::MatrixXcd b = fourier_matrix({p.zeta, 0.5 - p.N}, K, sector).matrix;
  return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_deviation(const FourierOperator& op) {
  return (op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff();
}

double pt3_check(const FourierOperator& op) {
  // cos 2n(pi/2 - t) = (-1)^n cos 2nt, sin 2n(pi/2 - t) = (-1)^{n+1} sin 2nt
  const int f = first_index(op.sector);
  Eigen::VectorXd d(op.K);
  for (int r = 0; r < op.K; ++r) d(r) = ((f + r) % 2 == 0) == (op.sector == Parity::Even) ? 1 : -1;
  const Eigen::MatrixXcd conj = d.asDiagonal() * op.matrix.conjugate() * d.asDiagonal();
  return (conj - op.matrix).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd pt3_apply(const WaveSample& s) {
  const int g = s.size();
  if (g % 4 != 0) throw std::invalid_argument("pt3: grid size must be a multiple of 4");
  Eigen::VectorXcd out(g);
  for (int j = 0; j < g; ++j) out(j) = std::conj(s.values(((g / 4 - j) % g + g) % g));
  return out;
}

double pt3_check(const WaveSample& a, const WaveSample& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pt3_check: grid sizes differ");
  const Eigen::VectorXcd v = pt3_apply(a);
  const cd c = b.values.dot(v) / b.values.squaredNorm();
  return (v - c * b.values).norm() / v.norm();
}

double sector_eigen_distance(const HamiltonianParams& p, int K, Parity sector, const std::vector<cd>& targets) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(fourier_matrix(p, K, sector).matrix, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("sector_eigen_distance: eigenvalue iteration failed");
  double worst = 0;
  for (const cd& t : targets) worst = std::max(worst, (es.eigenvalues().array() - t).abs().minCoeff());
  return worst;
}

}  // namespace qes

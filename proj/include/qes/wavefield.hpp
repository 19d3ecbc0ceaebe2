#pragma once

// Quasi-exact eigenfunctions on the circle and the Hamiltonian
//
//   H = -d^2/dtheta^2 - (i zeta/2) sin(2 theta) d/dtheta - 2 i zeta N cos(2 theta)
//
// applied to them spectrally, plus its matrix on the even-harmonic sectors.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qes/recurrence.hpp"

namespace qes {

class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HamiltonianParams {
  double zeta = 0;
  double N = 0;
};

struct WaveSample {
  Parity family = Parity::Even;
  std::complex<double> E;
  int n_max = 0;                             // highest harmonic kept
  std::vector<double> theta;                 // uniform on [0, 2 pi)
  Eigen::VectorXcd values;                   // psi on the grid
  std::vector<std::complex<double>> coeffs;  // of cos(2n theta) / sin(2n theta), index n - first
  bool truncated = false;                    // cut at 2N - 1 because E sits on the critical chain
  double tail = 0;                           // past the cut: max |X_n(E)| over its rounding scale

  int size() const { return static_cast<int>(values.size()); }
};

std::vector<double> uniform_grid(int size);

/// Ansatz coefficients i^n X_n(E) / (zeta^n N (1+2N)_{n-1}) for n >= 1 and
/// X_0 = 1 for the cosine family, X = P or Q, up to index n_max.
std::vector<std::complex<double>> ansatz_coefficients(const HamiltonianParams& p, Parity family,
                                                      std::complex<double> E, int n_max);

/// psi = exp(i zeta cos(2 theta) / 4) sum_n c_n cos(2n theta) (or sin).  For
/// half-integer N the coefficients are computed up to 2N + n_extra; when those
/// past 2N - 1 vanish to rounding (E a root of the critical polynomial) the
/// series is cut there and the rest is reported in `tail`.  Otherwise all
/// n_max = 2N + n_extra (or n_extra for other N) harmonics are kept.  Rejects
/// zeta = 0, grids smaller than 4 n_max and grids not divisible by 4.
WaveSample eval_psi(const HamiltonianParams& p, Parity family, std::complex<double> E, int n_extra = 8,
                    int grid = 512);

/// A sample holding arbitrary grid values, for apply_H on test functions.
WaveSample sample_of(Eigen::VectorXcd values, std::complex<double> E = 0);

/// H psi by FFT differentiation and pointwise products.  Throws AliasingError
/// when the spectrum above a third of the grid is not negligible; those bins
/// and bins at the rounding floor are zeroed before differentiating.
WaveSample apply_H(const HamiltonianParams& p, const WaveSample& s);

/// max |H psi - E psi| / max |psi|.
double residual(const HamiltonianParams& p, const WaveSample& s);

struct FourierOperator {
  Parity sector;
  int K;
  Eigen::MatrixXcd matrix;  // on 1, sqrt2 cos(2 theta), ... or sqrt2 sin(2 theta), ...
};

/// H on the first K harmonics of a sector, orthonormal basis for the mean
/// over the circle.
FourierOperator fourier_matrix(const HamiltonianParams& p, int K, Parity sector);

/// -d^2 - 2 i g cos(2 theta) in the same basis (the zeta = g/N, N -> oo limit).
FourierOperator mathieu_matrix(double g, int K, Parity sector);

/// max |M(N)^dagger - M(1/2 - N)| entrywise.
double adjoint_deviation(const HamiltonianParams& p, int K, Parity sector);

/// max |M - M^dagger|.
double hermiticity_deviation(const FourierOperator& op);

/// theta -> pi/2 - theta with complex conjugation acts on the sector basis as
/// diag(+-1) composed with conjugation; returns max |D conj(M) D - M|.
double pt3_check(const FourierOperator& op);

/// (PT3 psi)(theta) = conj(psi(pi/2 - theta)) on the grid.
Eigen::VectorXcd pt3_apply(const WaveSample& s);

/// How far PT3 a is from a multiple of b, relative to |PT3 a|:
/// min_c |PT3 a - c b| / |PT3 a| (2-norms on the grid).  With b = a this is
/// the unbroken-phase test.
double pt3_check(const WaveSample& a, const WaveSample& b);
inline double pt3_check(const WaveSample& s) { return pt3_check(s, s); }

/// Eigenvalues of fourier_matrix nearest to each target, and the largest
/// distance among them.
double sector_eigen_distance(const HamiltonianParams& p, int K, Parity sector,
                             const std::vector<std::complex<double>>& targets);

}  // namespace qes

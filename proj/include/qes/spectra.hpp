#pragma once

// Quasi-exact energy levels, exceptional points and the closed-form level
// formulas for small N.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qes/realroots.hpp"
#include "qes/recurrence.hpp"

namespace qes {

/// Roots of sum_k c[k] x^k (c.back() != 0) as eigenvalues of the companion
/// matrix.
template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> companion_roots(
    const Eigen::Matrix<Real, Eigen::Dynamic, 1>& c) {
  using Vec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
  const Eigen::Index n = c.size() - 1;
  if (n < 1 || c(n) == Real(0)) throw std::invalid_argument("companion_roots: need degree >= 1");
  if (n == 1) return Vec::Constant(1, std::complex<Real>(-c(0) / c(1)));
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  m.diagonal(-1).setOnes();
  m.col(n - 1) = -c.head(n) / c(n);
  Eigen::EigenSolver<decltype(m)> es(m, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("companion_roots: eigenvalue iteration failed");
  return es.eigenvalues();
}

/// The critical polynomial at a fixed zeta, as a polynomial in E.
RatPoly specialize(const SpectralProblem& problem, const Rat& zeta);

enum class RootKind { Real, ComplexPair };

struct EnergyLevels {
  Rat zeta;
  double precision = 0;
  std::vector<std::complex<double>> roots;  // sorted by (Re, Im)
  std::vector<RootKind> kinds;
  std::vector<double> residuals;  // |p(E)| / sum_k |a_k||E|^k
  std::vector<bool> certified;    // real roots bracketed by a rational sign change

  int real_count() const;
};

/// Every root of the critical polynomial at zeta.  Throws
/// std::invalid_argument for a constant polynomial.
EnergyLevels energies(const SpectralProblem& problem, const Rat& zeta, double precision = 1e-10);

/// Normalized discriminant of the critical polynomial as a polynomial in zeta.
RatPoly critical_discriminant(Parity parity, const Rat& N);

struct ExceptionalPoint {
  Rat N;
  Parity parity;
  RootInterval zeta0;
  double zeta0_times_N = 0;
};

/// Positive real zeros of the discriminant, refined to `width`.  Empty for
/// linear critical polynomials.
std::vector<ExceptionalPoint> exceptional_points(const Rat& N, Parity parity, const Rat& width = Rat(1, 100000000));

enum class ClosedForm { E1c, E2c, E3c, E2s, E3s, E4s };

std::string_view closed_form_name(ClosedForm level);
ClosedForm closed_form_from_name(std::string_view name);

/// Raised when a closed form sits on a branch cut or a removable singularity,
/// where the principal-branch evaluation is not meaningful.
class BranchAmbiguity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ClosedFormResult {
  std::vector<std::complex<double>> formula;
  std::vector<std::complex<double>> roots;
  double deviation = 0;  // Hausdorff distance between the two sets
};

/// Evaluates the closed-form levels with principal branches and compares
/// with energies().
ClosedFormResult closed_form_check(ClosedForm level, const Rat& zeta);

double hausdorff_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b);

}  // namespace qes

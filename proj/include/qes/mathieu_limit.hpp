#pragma once

// The double-scaling limit N -> oo, zeta -> 0 with g = N zeta fixed: truncated
// Mathieu matrices Xi (sine sector, indices 1..l) and Theta (cosine sector,
// indices 0..l-1), their characteristic polynomials and critical couplings.

#include <string_view>
#include <vector>

#include "qes/realroots.hpp"
#include "qes/recurrence.hpp"

namespace qes {

enum class MathieuKind { Xi, Theta };

std::string_view kind_name(MathieuKind k);  // "xi" / "theta"
MathieuKind kind_from_name(std::string_view name);

struct TruncatedOperator {
  MathieuKind kind;
  int ell;
  PolyMatrix entries;  // polynomials in g

  /// Mode index carried by row 0.
  int first_index() const { return kind == MathieuKind::Theta ? 0 : 1; }
};

/// 4i^2 on the diagonal, 1/2 above, -2g^2 below.  In Theta the (0,1) entry
/// is 1, which is what P_1 = E P_0 requires.
TruncatedOperator build(MathieuKind kind, int ell);

/// Off-diagonals rescaled by (2g, 1/(2g)): super-diagonal multiplied by 2g,
/// sub-diagonal divided by 2g.  With `broken` only the super-diagonal is
/// rescaled.
TruncatedOperator build_rescaled(MathieuKind kind, int ell, bool broken = false);

/// det(M - E I) by the three-term recurrence D_k = (d_k - E) D_{k-1} - a_k b_k D_{k-2}.
MultiPoly charpoly(const TruncatedOperator& op);

/// det(M - E I) by fraction-free elimination; independent of the recurrence.
MultiPoly charpoly_bareiss(const TruncatedOperator& op);

/// Discriminant in E of the characteristic polynomial, as a polynomial in g.
RatPoly coupling_discriminant(MathieuKind kind, int ell);

struct CriticalCoupling {
  MathieuKind kind;
  int ell;
  int index;  // 0 = smallest positive zero
  RootInterval g0;
  bool converged = false;  // |g0(ell) - g0(ell+1)| < tolerance

  double value() const { return g0.approx(); }
};

/// Positive real zeros of the discriminant at level ell, with convergence
/// judged against level ell + 1.
std::vector<CriticalCoupling> critical_couplings(MathieuKind kind, int ell, double tolerance = 1e-5);

struct ConvergedCoupling {
  int ell = 0;  // level where the requested zero moved by less than the tolerance
  double g0 = 0;
  bool converged = false;
  std::vector<double> history;  // zero `index` at levels 2, 3, ...
};

/// Raises ell from 2 until zero `index` is stable to `tolerance`, capped at
/// `max_ell` (at most 24).
ConvergedCoupling converge_coupling(MathieuKind kind, int index, double tolerance = 1e-5, int max_ell = 24);

/// Characteristic polynomials of the original and rescaled matrices agree
/// identically in (E, g) for both kinds.  `broken` runs the control.
bool similarity_invariance_check(int ell, bool broken = false);

enum class LimitForm {
  Matrix,        // vector (P_0, P_1, ...) or (Q_1, Q_2, ...) against the rows of Theta / Xi
  AnsatzScaled,  // P_n / (zeta^n N (1+2N)_{n-1}) against the rescaled rows (g, -g)
  Literal,       // sub-diagonal -2g, and P_{n+1} inside the Q relation
};

/// Largest relative deviation, over rows 0..n_max-1, between the finite-N
/// family at zeta = g/N and the limit relation of the chosen form.  Exact
/// rational arithmetic; the norm is the max absolute coefficient in E.
double recurrence_limit_check(Parity family, int n_max, const Rat& N, const Rat& g, LimitForm form = LimitForm::Matrix);

}  // namespace qes

#pragma once

// Bender-Dunne polynomial families generated from the three-term recurrence
//
//   P_{n+1} = 2(E - 4n^2) P_n + zeta^2 [4N^2 - 2N - n(n-1)] P_{n-1}
//
// with seeds P_0 = 1, P_1 = E (cosine family) and Q_1 = 1, Q_2 = 2(E - 4)
// (sine family).

#include <optional>
#include <string_view>
#include <vector>

#include "qes/exactpoly.hpp"

namespace qes {

enum class Parity { Even, Odd };  // "c" (cosine) and "s" (sine)

std::string_view parity_tag(Parity p);
Parity parity_from_tag(std::string_view tag);

/// First index of a family: 0 for P, 1 for Q.
inline int first_index(Parity p) { return p == Parity::Even ? 0 : 1; }

/// Recurrence coefficient zeta^2 [4N^2 - 2N - n(n-1)], symbolic in N.
MultiPoly recurrence_coefficient(int n);
/// Same at a fixed N.
MultiPoly recurrence_coefficient(int n, const Rat& N);

/// 2(E - 4n^2).
MultiPoly diagonal_factor(int n);

class PolyFamily {
 public:
  PolyFamily(Parity parity, std::vector<MultiPoly> members, std::optional<Rat> fixed_N);

  Parity parity() const { return parity_; }
  bool symbolic_N() const { return !fixed_N_.has_value(); }
  const std::optional<Rat>& fixed_N() const { return fixed_N_; }
  int first() const { return first_index(parity_); }
  int last() const { return first() + static_cast<int>(members_.size()) - 1; }

  /// Member n (P_n or Q_n); throws std::out_of_range outside [first, last].
  const MultiPoly& at(int n) const;
  const std::vector<MultiPoly>& members() const { return members_; }

  /// Re-checks the defining recurrence exactly for every member.
  bool satisfies_recurrence() const;

 private:
  Parity parity_;
  std::vector<MultiPoly> members_;  // members_[k] is index first() + k
  std::optional<Rat> fixed_N_;
};

/// Iterates the recurrence up to index n_max.  With N unset the result is
/// symbolic in (E, zeta, N); otherwise in (E, zeta).
PolyFamily generate(Parity parity, int n_max, const std::optional<Rat>& N = std::nullopt);

/// True when 2N is a positive integer.
bool is_half_integer(const Rat& N);

/// P_{2N} or Q_{2N} at fixed half-integer N, as a polynomial in E with
/// zeta-polynomial coefficients.
struct SpectralProblem {
  Rat N;
  Parity parity;
  UniPolyView poly;

  int degree() const { return poly.degree(); }
};

SpectralProblem critical_polynomial(Parity parity, const Rat& N);

struct FactorCheck {
  MultiPoly quotient;  // R_n
  bool exact = false;
};

/// Divides member 2N+n by member 2N at fixed half-integer N.
FactorCheck factor_check(Parity parity, const Rat& N, int n);

/// The factor sequence R_0 = 1, R_1 = 2(E - 32N^2), ... obtained by restarting
/// the recurrence at index 2N, symbolic in (E, zeta, N).
std::vector<MultiPoly> factor_sequence(int n_max);

}  // namespace qes

#pragma once

// Dense univariate polynomials over Q with certified real-root isolation
// (square-free decomposition + Sturm sequences + bisection).

#include <vector>

#include "qes/exactpoly.hpp"

namespace qes {

/// Dense univariate polynomial over Q, index = degree, no trailing zeros.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);
  /// Requires a polynomial in at most the single variable `v`.
  static RatPoly from_multi(const MultiPoly& p, Var v);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int k) const { return (k < 0 || k > degree()) ? Rat(0) : c_[static_cast<std::size_t>(k)]; }
  const Rat& leading() const { return c_.back(); }

  Rat operator()(const Rat& x) const;
  /// Sign of p(x), exact.
  int sign_at(const Rat& x) const;
  double eval_double(double x) const;

  RatPoly derivative() const;
  RatPoly monic() const;
  /// Positive multiple with integer coefficients of unit content.
  RatPoly primitive() const;
  /// True when every odd-degree coefficient vanishes.
  bool is_even() const;
  /// q(t) with p(x) = q(x^2); requires is_even().
  RatPoly even_part_in_square() const;

  MultiPoly to_multi(Var v) const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rat> c_;
};

struct DivMod {
  RatPoly quotient;
  RatPoly remainder;
};

DivMod divmod(const RatPoly& a, const RatPoly& b);
RatPoly gcd(const RatPoly& a, const RatPoly& b);

/// Yun decomposition: factors[i] is square-free and carries multiplicity i+1.
std::vector<RatPoly> squarefree_decomposition(const RatPoly& p);
RatPoly squarefree_part(const RatPoly& p);

/// Sturm chain of a square-free polynomial, each member scaled to a positive
/// primitive multiple.
std::vector<RatPoly> sturm_sequence(const RatPoly& p);

/// Number of sign variations of the chain at x (zeros skipped).
int sign_variations(const std::vector<RatPoly>& chain, const Rat& x);

/// Distinct real roots in the half-open interval (a, b].
int count_real_roots(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b);

/// Upper bound on the modulus of every root (Fujiwara), a power of two >= 2.
Rat root_bound(const RatPoly& p);

struct RootInterval {
  Rat lo;
  Rat hi;
  int multiplicity = 1;

  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / 2; }
  double approx() const { return midpoint().get_d(); }
};

/// Disjoint isolating intervals for the distinct real roots of p in
/// increasing order.  An interval either has lo == hi (exact rational root)
/// or brackets a sign change of the square-free part of p.
std::vector<RootInterval> isolate_real_roots(const RatPoly& p);

/// Bisects a sign-change bracket down to `width`.  Throws
/// std::invalid_argument if p does not change sign on the interval.
RootInterval refine_root(const RatPoly& p, const RootInterval& interval, const Rat& width);

/// Positive real roots of p, refined to the requested width.  Even
/// polynomials are handled through t = x^2 (roots in t mapped back with
/// rational square-root bounds).
std::vector<RootInterval> positive_real_roots(const RatPoly& p, const Rat& width);

/// Rational bounds lo <= sqrt(x) <= hi with hi - lo tiny relative to sqrt(x).
RootInterval sqrt_bounds(const Rat& x);

}  // namespace qes

#pragma once

// Exact sparse multivariate polynomials over the rationals.
//
// Every symbolic object in the library (energies E, coupling zeta, model
// parameter N, double-scaling coupling g) lives in this ring.  Values are
// immutable once built; all operations are pure.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qes {

using Rat = mpq_class;
using Int = mpz_class;

/// Indeterminates, in the global canonical order (E, zeta, N, g).
enum class Var : std::uint8_t { E = 0, Zeta = 1, N = 2, G = 3 };

inline constexpr std::size_t kNumVars = 4;

std::string_view var_name(Var v);
Var var_from_name(std::string_view name);

using Exponents = std::array<std::uint32_t, kNumVars>;

/// Graded lexicographic order: total degree first, then lex with E > zeta > N > g.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Declared variable set, a bitmask over Var.
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr explicit VarSet(std::uint8_t bits) : bits_(bits) {}
  VarSet(std::initializer_list<Var> vars);

  bool contains(Var v) const { return (bits_ >> static_cast<int>(v)) & 1u; }
  VarSet with(Var v) const { return VarSet(bits_ | (1u << static_cast<int>(v))); }
  VarSet without(Var v) const { return VarSet(bits_ & ~(1u << static_cast<int>(v))); }
  VarSet operator|(VarSet o) const { return VarSet(bits_ | o.bits_); }
  std::vector<Var> list() const;
  std::uint8_t bits() const { return bits_; }
  bool operator==(const VarSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rat, GrlexLess>;

  MultiPoly() = default;
  MultiPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c) : MultiPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  MultiPoly(int c) : MultiPoly(Rat(c)) {}   // NOLINT(google-explicit-constructor)

  static MultiPoly variable(Var v);
  static MultiPoly monomial(const Rat& c, const Exponents& e);
  /// Builds from raw terms, dropping zeros.
  static MultiPoly from_terms(TermMap terms, VarSet vars = {});

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; throws if the polynomial is not constant.
  Rat constant_value() const;

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  VarSet vars() const { return vars_; }
  MultiPoly with_vars(VarSet vars) const;

  int degree(Var v) const;  // -1 for the zero polynomial
  int total_degree() const;
  /// Greatest term in graded-lex order.
  const std::pair<const Exponents, Rat>& leading_term() const;
  Rat coefficient(const Exponents& e) const;

  MultiPoly derivative(Var v) const;
  MultiPoly pow(unsigned k) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rat& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;

  /// Structural equality of the term maps (the declared variable sets are not compared).
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  TermMap terms_;
  VarSet vars_;
};

/// Partial evaluation; bound variables are removed from the declared set.
MultiPoly eval(const MultiPoly& p, const std::map<Var, Rat>& bindings);

/// Substitutes a polynomial for a variable.
MultiPoly substitute(const MultiPoly& p, Var v, const MultiPoly& value);

/// Exact quotient a / b.  Throws std::domain_error if b does not divide a.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);

/// Multivariate division in graded-lex order; returns {quotient, remainder}.
std::pair<MultiPoly, MultiPoly> divide(const MultiPoly& a, const MultiPoly& b);

/// Scales to integer coefficients with unit content and a positive graded-lex
/// leading coefficient.  Zero maps to zero.
MultiPoly primitive_normalized(const MultiPoly& p);

/// Parses expressions like "2*E^2 - 8*E + 2*z^2*N*(2*N-1)".  Accepts the
/// variable names E, z/zeta, N, g, integers, '/', '+', '-', '*', '^' and
/// parentheses.  Juxtaposition is not multiplication.
MultiPoly parse_poly(std::string_view text);

/// Parses an exact rational such as "3/2", "-7" or "0.125".
Rat parse_rat(std::string_view text);

std::string rat_to_string(const Rat& r);

// ---------------------------------------------------------------------------

/// A MultiPoly viewed as a univariate polynomial in one main variable with
/// coefficients in the remaining variables (index = degree).
class UniPolyView {
 public:
  UniPolyView() = default;
  UniPolyView(Var main, std::vector<MultiPoly> coeffs);
  static UniPolyView from(const MultiPoly& p, Var main);

  Var main_var() const { return main_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<MultiPoly>& coeffs() const { return coeffs_; }
  const MultiPoly& coeff(int k) const;
  const MultiPoly& leading() const { return coeffs_.back(); }

  MultiPoly to_multi() const;
  UniPolyView derivative() const;

 private:
  Var main_ = Var::E;
  std::vector<MultiPoly> coeffs_;  // no trailing zeros
};

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
UniPolyView pseudo_remainder(const UniPolyView& a, const UniPolyView& b);

/// Resultant in the Sylvester-determinant convention,
/// res(a, b) = det Syl(a, b) with the rows of a first, so that
/// res(x - s, x - t) = s - t.  Computed with the subresultant PRS.
MultiPoly resultant(const UniPolyView& a, const UniPolyView& b);

/// Discriminant (-1)^(n(n-1)/2) res(p, p') / lc(p), primitive-normalized.
MultiPoly discriminant(const UniPolyView& p);

/// Same as discriminant() without the final normalization.
MultiPoly discriminant_raw(const UniPolyView& p);

// ---------------------------------------------------------------------------

/// Dense square matrix of MultiPoly entries.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  MultiPoly& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const MultiPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<MultiPoly> data_;
};

/// Fraction-free (Bareiss) determinant with row pivoting.
MultiPoly determinant(const PolyMatrix& m);

}  // namespace qes

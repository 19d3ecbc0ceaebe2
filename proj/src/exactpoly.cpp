#include "qes/exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <utility>

namespace qes {

namespace {

constexpr std::array<std::string_view, kNumVars> kVarNames = {"E", "z", "N", "g"};

std::uint32_t total(const Exponents& e) { return e[0] + e[1] + e[2] + e[3]; }

Exponents add_exps(const Exponents& a, const Exponents& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

bool divides(const Exponents& d, const Exponents& e) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (d[i] > e[i]) return false;
  return true;
}

Exponents sub_exps(const Exponents& e, const Exponents& d) {
  return {e[0] - d[0], e[1] - d[1], e[2] - d[2], e[3] - d[3]};
}

VarSet support(const Exponents& e) {
  std::uint8_t bits = 0;
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (e[i] != 0) bits |= static_cast<std::uint8_t>(1u << i);
  return VarSet(bits);
}

void accumulate(MultiPoly::TermMap& terms, const Exponents& e, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

}  // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

Var var_from_name(std::string_view name) {
  if (name == "E") return Var::E;
  if (name == "z" || name == "zeta") return Var::Zeta;
  if (name == "N") return Var::N;
  if (name == "g") return Var::G;
  throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const auto ta = total(a), tb = total(b);
  if (ta != tb) return ta < tb;
  return a < b;
}

VarSet::VarSet(std::initializer_list<Var> vars) {
  for (Var v : vars) bits_ |= static_cast<std::uint8_t>(1u << static_cast<int>(v));
}

std::vector<Var> VarSet::list() const {
  std::vector<Var> out;
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (contains(static_cast<Var>(i))) out.push_back(static_cast<Var>(i));
  return out;
}

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly::MultiPoly(const Rat& c) {
  if (sgn(c) != 0) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::variable(Var v) {
  Exponents e{};
  e[static_cast<std::size_t>(v)] = 1;
  return monomial(1, e);
}

MultiPoly MultiPoly::monomial(const Rat& c, const Exponents& e) {
  MultiPoly p;
  if (sgn(c) != 0) p.terms_.emplace(e, c);
  p.vars_ = support(e);
  return p;
}

MultiPoly MultiPoly::from_terms(TermMap terms, VarSet vars) {
  MultiPoly p;
  for (auto it = terms.begin(); it != terms.end();) {
    if (sgn(it->second) == 0) {
      it = terms.erase(it);
    } else {
      vars = vars | support(it->first);
      ++it;
    }
  }
  p.terms_ = std::move(terms);
  p.vars_ = vars;
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

Rat MultiPoly::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rat(0) : terms_.begin()->second;
}

MultiPoly MultiPoly::with_vars(VarSet vars) const {
  MultiPoly p = *this;
  p.vars_ = p.vars_ | vars;
  return p;
}

int MultiPoly::degree(Var v) const {
  if (terms_.empty()) return -1;
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(v)]);
  return static_cast<int>(d);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total(terms_.rbegin()->first));
}

const std::pair<const Exponents, Rat>& MultiPoly::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

Rat MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

MultiPoly MultiPoly::derivative(Var v) const {
  const auto k = static_cast<std::size_t>(v);
  TermMap out;
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents d = e;
    --d[k];
    accumulate(out, d, c * e[k]);
  }
  return from_terms(std::move(out), vars_);
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (k != 0) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k != 0) base *= base;
  }
  return result.with_vars(vars_);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) accumulate(terms_, e, c);
  vars_ = vars_ | o.vars_;
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) accumulate(terms_, e, -c);
  vars_ = vars_ | o.vars_;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly::TermMap out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) accumulate(out, add_exps(ea, eb), ca * cb);
  return MultiPoly::from_terms(std::move(out), a.vars_ | b.vars_);
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& [e, v] : p.terms_) v = -v;
  return p;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool is_one = (total(e) == 0) ? false : (mag == 1);
    bool need_star = false;
    if (!is_one) {
      os << rat_to_string(mag);
      need_star = true;
    }
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << kVarNames[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Free functions

MultiPoly eval(const MultiPoly& p, const std::map<Var, Rat>& bindings) {
  MultiPoly::TermMap out;
  VarSet vars = p.vars();
  for (const auto& [v, value] : bindings) vars = vars.without(v);
  for (const auto& [e, c] : p.terms()) {
    Rat coeff = c;
    Exponents rest = e;
    for (const auto& [v, value] : bindings) {
      const auto k = static_cast<std::size_t>(v);
      if (rest[k] == 0) continue;
      Rat power;
      mpz_pow_ui(power.get_num_mpz_t(), value.get_num_mpz_t(), rest[k]);
      mpz_pow_ui(power.get_den_mpz_t(), value.get_den_mpz_t(), rest[k]);
      power.canonicalize();
      coeff *= power;
      rest[k] = 0;
    }
    accumulate(out, rest, coeff);
  }
  return MultiPoly::from_terms(std::move(out), vars);
}

MultiPoly substitute(const MultiPoly& p, Var v, const MultiPoly& value) {
  const auto k = static_cast<std::size_t>(v);
  std::map<std::uint32_t, MultiPoly> by_power;
  for (const auto& [e, c] : p.terms()) {
    Exponents rest = e;
    rest[k] = 0;
    by_power[e[k]] += MultiPoly::monomial(c, rest);
  }
  MultiPoly out;
  for (const auto& [d, coeff] : by_power) out += coeff * value.pow(d);
  return out.with_vars(p.vars().without(v) | value.vars());
}

std::pair<MultiPoly, MultiPoly> divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  const auto& [lead_e, lead_c] = b.leading_term();
  MultiPoly::TermMap quotient;
  MultiPoly::TermMap remainder;
  MultiPoly work = a;
  while (!work.is_zero()) {
    const auto [e, c] = work.leading_term();
    if (divides(lead_e, e)) {
      const Exponents qe = sub_exps(e, lead_e);
      const Rat qc = c / lead_c;
      accumulate(quotient, qe, qc);
      work -= MultiPoly::monomial(qc, qe) * b;
    } else {
      accumulate(remainder, e, c);
      work -= MultiPoly::monomial(c, e);
    }
  }
  const VarSet vars = a.vars() | b.vars();
  return {MultiPoly::from_terms(std::move(quotient), vars),
          MultiPoly::from_terms(std::move(remainder), vars)};
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (b.is_constant()) return a * MultiPoly(Rat(1 / b.constant_value()));
  auto [q, r] = divide(a, b);
  if (!r.is_zero())
    throw std::domain_error("inexact division: (" + a.to_string() + ") / (" + b.to_string() + ")");
  return q;
}

MultiPoly primitive_normalized(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Int lcm_den = 1;
  for (const auto& [e, c] : p.terms()) lcm_den = lcm(lcm_den, Int(c.get_den()));
  Int g = 0;
  for (const auto& [e, c] : p.terms()) g = gcd(g, Int(c.get_num() * (lcm_den / c.get_den())));
  Rat scale = Rat(lcm_den) / Rat(g);
  if (sgn(p.leading_term().second) < 0) scale = -scale;
  scale.canonicalize();
  return p * scale;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return std::invalid_argument("invalid rational '" + s + "'"); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  auto parse_int = [&](std::string_view t) {
    std::size_t i = 0;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) throw bad();
    for (std::size_t j = i; j < t.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(t[j]))) throw bad();
    std::string digits(t);
    if (digits[0] == '+') digits.erase(0, 1);
    return Int(digits, 10);
  };
  if (slash != std::string::npos) {
    Int num = parse_int(std::string_view(s).substr(0, slash));
    Int den = parse_int(std::string_view(s).substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  // Decimal with optional exponent.
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '-' || s[i] == '+') negative = s[i++] == '-';
  std::string mantissa;
  int frac_digits = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa.push_back(ch);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw bad();
    ++i;
    std::string_view rest = std::string_view(s).substr(i);
    exponent = parse_int(rest).get_si();
    if (std::abs(exponent) > 4096) throw bad();
  }
  Rat r{Int(mantissa, 10)};
  const long shift = exponent - frac_digits;
  Int ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(shift)));
  if (shift >= 0) {
    r *= ten_pow;
  } else {
    r /= ten_pow;
  }
  r.canonicalize();
  return negative ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_poly: " + what + " at position " + std::to_string(pos_) +
                                " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        acc = divide_exact(acc, unary());
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      return base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  MultiPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return MultiPoly(parse_rat(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return MultiPoly::variable(var_from_name(text_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Univariate view

UniPolyView::UniPolyView(Var main, std::vector<MultiPoly> coeffs) : main_(main), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  for (const auto& c : coeffs_)
    if (c.degree(main_) > 0) throw std::invalid_argument("coefficient depends on the main variable");
}

UniPolyView UniPolyView::from(const MultiPoly& p, Var main) {
  const auto k = static_cast<std::size_t>(main);
  const int deg = p.degree(main);
  std::vector<MultiPoly> coeffs(static_cast<std::size_t>(std::max(deg + 1, 0)));
  std::vector<MultiPoly::TermMap> parts(coeffs.size());
  for (const auto& [e, c] : p.terms()) {
    Exponents rest = e;
    rest[k] = 0;
    parts[e[k]].emplace(rest, c);
  }
  const VarSet rest_vars = p.vars().without(main);
  for (std::size_t d = 0; d < parts.size(); ++d)
    coeffs[d] = MultiPoly::from_terms(std::move(parts[d]), rest_vars);
  return UniPolyView(main, std::move(coeffs));
}

const MultiPoly& UniPolyView::coeff(int k) const {
  static const MultiPoly zero;
  if (k < 0 || k > degree()) return zero;
  return coeffs_[static_cast<std::size_t>(k)];
}

MultiPoly UniPolyView::to_multi() const {
  MultiPoly out;
  const MultiPoly x = MultiPoly::variable(main_);
  MultiPoly xp(1);
  for (const auto& c : coeffs_) {
    out += c * xp;
    xp *= x;
  }
  return out;
}

UniPolyView UniPolyView::derivative() const {
  std::vector<MultiPoly> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Rat(static_cast<long>(k)));
  return UniPolyView(main_, std::move(d));
}

namespace {

UniPolyView scale(const UniPolyView& p, const MultiPoly& s) {
  std::vector<MultiPoly> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(x * s);
  return UniPolyView(p.main_var(), std::move(c));
}

UniPolyView divide_coeffs(const UniPolyView& p, const MultiPoly& s) {
  std::vector<MultiPoly> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(divide_exact(x, s));
  return UniPolyView(p.main_var(), std::move(c));
}

}  // namespace

UniPolyView pseudo_remainder(const UniPolyView& a, const UniPolyView& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  const int db = b.degree();
  std::vector<MultiPoly> r = a.coeffs();
  int e = a.degree() - db + 1;
  if (e <= 0) return a;
  const MultiPoly& lb = b.leading();
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    const int dr = static_cast<int>(r.size()) - 1;
    const MultiPoly lr = r.back();
    const int shift = dr - db;
    std::vector<MultiPoly> next(static_cast<std::size_t>(dr));
    for (int k = 0; k < dr; ++k) {
      MultiPoly v = r[static_cast<std::size_t>(k)] * lb;
      const int bk = k - shift;
      if (bk >= 0) v -= lr * b.coeff(bk);
      next[static_cast<std::size_t>(k)] = std::move(v);
    }
    while (!next.empty() && next.back().is_zero()) next.pop_back();
    r = std::move(next);
    --e;
  }
  UniPolyView rem(a.main_var(), std::move(r));
  if (e > 0) rem = scale(rem, lb.pow(static_cast<unsigned>(e)));
  return rem;
}

MultiPoly resultant(const UniPolyView& a, const UniPolyView& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
  if (a.main_var() != b.main_var()) throw std::invalid_argument("resultant: main variables differ");
  if (a.degree() == 0) return a.leading().pow(static_cast<unsigned>(b.degree()));
  if (b.degree() == 0) return b.leading().pow(static_cast<unsigned>(a.degree()));

  UniPolyView A = a, B = b;
  int sign = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() % 2 == 1) && (B.degree() % 2 == 1)) sign = -sign;
  }
  MultiPoly g(1), h(1);
  while (true) {
    const int delta = A.degree() - B.degree();
    if ((A.degree() % 2 == 1) && (B.degree() % 2 == 1)) sign = -sign;
    UniPolyView R = pseudo_remainder(A, B);
    A = B;
    B = divide_coeffs(R, g * h.pow(static_cast<unsigned>(delta)));
    g = A.leading();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = divide_exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
    if (B.is_zero()) return MultiPoly();
    if (B.degree() == 0) break;
  }
  const int da = A.degree();
  MultiPoly lb_pow = B.leading().pow(static_cast<unsigned>(da));
  MultiPoly result = da == 1 ? lb_pow : divide_exact(lb_pow, h.pow(static_cast<unsigned>(da - 1)));
  return sign > 0 ? result : -result;
}

MultiPoly discriminant_raw(const UniPolyView& p) {
  if (p.degree() < 2) throw std::invalid_argument("discriminant requires degree >= 2");
  const long n = p.degree();
  MultiPoly r = divide_exact(resultant(p, p.derivative()), p.leading());
  return ((n * (n - 1) / 2) % 2 == 0) ? r : -r;
}

MultiPoly discriminant(const UniPolyView& p) { return primitive_normalized(discriminant_raw(p)); }

// ---------------------------------------------------------------------------

MultiPoly determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly(1);
  PolyMatrix a = m;
  int sign = 1;
  MultiPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a(r, k).is_zero()) ++r;
      if (r == n) return MultiPoly();
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = divide_exact(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      a(i, k) = MultiPoly();
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

}  // namespace qes

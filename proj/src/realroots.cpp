#include "qes/realroots.hpp"

#include <algorithm>
#include <cmath>

namespace qes {

RatPoly::RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

RatPoly RatPoly::from_multi(const MultiPoly& p, Var v) {
  const auto k = static_cast<std::size_t>(v);
  std::vector<Rat> c(static_cast<std::size_t>(std::max(p.degree(v) + 1, 0)));
  for (const auto& [e, coeff] : p.terms()) {
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (i != k && e[i] != 0)
        throw std::invalid_argument("RatPoly::from_multi: polynomial is not univariate: " + p.to_string());
    c[e[k]] = coeff;
  }
  return RatPoly(std::move(c));
}

MultiPoly RatPoly::to_multi(Var v) const {
  MultiPoly::TermMap terms;
  for (std::size_t d = 0; d < c_.size(); ++d) {
    if (sgn(c_[d]) == 0) continue;
    Exponents e{};
    e[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(d);
    terms.emplace(e, c_[d]);
  }
  return MultiPoly::from_terms(std::move(terms), VarSet{v});
}

Rat RatPoly::operator()(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int RatPoly::sign_at(const Rat& x) const {
  // den^d * p(num/den) in integers has the sign of p(x).
  if (c_.empty()) return 0;
  const Int& num = x.get_num();
  const Int& den = x.get_den();
  Int acc = 0;
  Int den_pow = 1;
  // Horner on the homogenised form; the coefficients may be rational so we
  // clear denominators first.
  Int lcm_den = 1;
  for (const auto& c : c_) lcm_den = lcm(lcm_den, Int(c.get_den()));
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Int ck = c_[k].get_num() * (lcm_den / c_[k].get_den());
    acc = acc * num + ck * den_pow;
    den_pow *= den;
  }
  return sgn(acc);
}

double RatPoly::eval_double(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RatPoly RatPoly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
  if (c_.empty()) return *this;
  std::vector<Rat> m = c_;
  const Rat lc = c_.back();
  for (auto& x : m) x /= lc;
  return RatPoly(std::move(m));
}

RatPoly RatPoly::primitive() const {
  if (c_.empty()) return *this;
  Int lcm_den = 1;
  for (const auto& c : c_) lcm_den = lcm(lcm_den, Int(c.get_den()));
  Int g = 0;
  for (const auto& c : c_) g = gcd(g, Int(c.get_num() * (lcm_den / c.get_den())));
  Rat s(lcm_den, g);
  s.canonicalize();
  std::vector<Rat> out = c_;
  for (auto& x : out) {
    x *= s;
  }
  return RatPoly(std::move(out));
}

bool RatPoly::is_even() const {
  for (std::size_t k = 1; k < c_.size(); k += 2)
    if (sgn(c_[k]) != 0) return false;
  return true;
}

RatPoly RatPoly::even_part_in_square() const {
  if (!is_even()) throw std::domain_error("polynomial is not even");
  std::vector<Rat> q;
  for (std::size_t k = 0; k < c_.size(); k += 2) q.push_back(c_[k]);
  return RatPoly(std::move(q));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
  return RatPoly(std::move(c));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(std::move(c));
}

DivMod divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {RatPoly(), a};
  std::vector<Rat> q(static_cast<std::size_t>(da - db + 1));
  const Rat& lb = b.leading();
  for (int k = da; k >= db; --k) {
    const Rat f = r[static_cast<std::size_t>(k)] / lb;
    q[static_cast<std::size_t>(k - db)] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a.primitive();
  RatPoly y = b.primitive();
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).remainder.primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

namespace {
bool known_squarefree(const RatPoly& p);
}  // namespace

std::vector<RatPoly> squarefree_decomposition(const RatPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("square-free decomposition of zero");
  std::vector<RatPoly> factors;
  if (p.degree() == 0) return factors;
  const RatPoly f = p.monic();
  if (known_squarefree(f)) return {f};
  const RatPoly df = f.derivative();
  RatPoly a = gcd(f, df);
  RatPoly b = divmod(f, a).quotient;
  RatPoly c = divmod(df, a).quotient;
  RatPoly d = c - b.derivative();
  while (b.degree() > 0) {
    RatPoly a_i = gcd(b, d);
    factors.push_back(a_i);
    b = divmod(b, a_i).quotient;
    c = divmod(d, a_i).quotient;
    d = c - b.derivative();
  }
  while (!factors.empty() && factors.back().degree() == 0) factors.pop_back();
  return factors;
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() <= 0) return p;
  if (known_squarefree(p)) return p.primitive();
  return divmod(p, gcd(p, p.derivative())).quotient.primitive();
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p.primitive());
  RatPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d.primitive());
  while (true) {
    RatPoly r = divmod(chain[chain.size() - 2], chain.back()).remainder;
    if (r.is_zero()) break;
    // -r scaled by a positive constant keeps the Sturm property.
    chain.push_back((RatPoly() - r).primitive());
  }
  return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int count_real_roots(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

Rat root_bound(const RatPoly& p) {
  // Fujiwara: |root| <= 2 max_k |a_{n-k} / a_n|^{1/k}, with each term bounded
  // through bit lengths.
  if (p.degree() < 1) return Rat(1);
  const int n = p.degree();
  long e = 0;
  for (int k = 1; k <= n; ++k) {
    const Rat& c = p.coeff(n - k);
    if (sgn(c) == 0) continue;
    Rat q = c / p.leading();
    const long bits = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2)) -
                      static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2)) + 1;
    const long ek = bits <= 0 ? -((-bits) / k) : (bits + k - 1) / k;
    e = std::max(e, ek);
  }
  return Rat(Int(1) << static_cast<mp_bitcnt_t>(e + 1));
}

namespace {

using IntPoly = std::vector<Int>;  // ascending coefficients

IntPoly integer_coeffs(const RatPoly& p) {
  IntPoly a;
  const RatPoly prim = p.primitive();
  for (const auto& c : prim.coeffs()) a.push_back(c.get_num());
  return a;
}

// Modular shortcut: if gcd(p, p') is constant modulo a prime not dividing
// the leading coefficient, the discriminant is nonzero and p is square-free.
bool squarefree_mod_prime(const IntPoly& a, std::uint64_t q) {
  using u128 = unsigned __int128;
  const std::size_t n = a.size() - 1;
  if (n >= q || mpz_fdiv_ui(a.back().get_mpz_t(), q) == 0) return false;
  auto mulmod = [q](std::uint64_t x, std::uint64_t y) { return static_cast<std::uint64_t>(u128(x) * y % q); };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod(b, b))
      if (e & 1) r = mulmod(r, b);
    return r;
  };
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  std::vector<std::uint64_t> f, g;
  for (const auto& c : a) f.push_back(mpz_fdiv_ui(c.get_mpz_t(), q));
  for (std::size_t k = 1; k <= n; ++k) g.push_back(mulmod(f[k], k % q));
  trim(g);
  while (!g.empty()) {
    const std::uint64_t inv = powmod(g.back(), q - 2);
    while (f.size() >= g.size()) {
      const std::uint64_t m = mulmod(f.back(), inv);
      const std::size_t shift = f.size() - g.size();
      for (std::size_t j = 0; j < g.size(); ++j) f[shift + j] = (f[shift + j] + q - mulmod(m, g[j])) % q;
      trim(f);
      if (f.empty()) break;
    }
    std::swap(f, g);
  }
  return f.size() == 1;
}

bool known_squarefree(const RatPoly& p) {
  if (p.degree() <= 1) return true;
  const IntPoly a = integer_coeffs(p);
  for (std::uint64_t q : {4294967291ULL, 4294967279ULL, 4294967231ULL})
    if (squarefree_mod_prime(a, q)) return true;
  return false;
}

int variations(const IntPoly& a) {
  int v = 0, last = 0;
  for (const auto& c : a) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// a(x) -> a(x + 1)
IntPoly taylor_shift1(IntPoly a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) a[j] += a[j + 1];
  return a;
}

// Descartes bound for the roots of a in (0, 1).
int descartes_01(const IntPoly& a) {
  IntPoly r(a.rbegin(), a.rend());
  return variations(taylor_shift1(std::move(r)));
}

// 2^n a(x/2)
IntPoly halve(const IntPoly& a) {
  const std::size_t n = a.size() - 1;
  IntPoly b(a.size());
  for (std::size_t i = 0; i <= n; ++i) b[i] = a[i] << static_cast<mp_bitcnt_t>(n - i);
  return b;
}

// Sign of a(num / 2^k).
int sign_at_dyadic(const IntPoly& a, const Int& num, unsigned k) {
  Int acc = 0, den_pow = 1;
  const Int den = Int(1) << k;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = acc * num + a[i] * den_pow;
    den_pow *= den;
  }
  return sgn(acc);
}

// Exact division by (x - 1) of a polynomial vanishing at 1.
IntPoly deflate_at_one(const IntPoly& a) {
  IntPoly q(a.size() - 1);
  Int carry = 0;
  for (std::size_t i = a.size(); i-- > 1;) {
    carry += a[i];
    q[i - 1] = carry;
  }
  return q;
}

// Strictly inside (0, 1), a point between the endpoint and the single root
// of h; h(0) and h(1) are nonzero.
Rat inner_point(const IntPoly& h, bool from_left) {
  const int s_end = from_left ? sgn(h.front()) : sign_at_dyadic(h, Int(1), 0);
  for (unsigned j = 1;; ++j) {
    const Int num = from_left ? Int(1) : (Int(1) << j) - 1;
    if (sign_at_dyadic(h, num, j) == s_end) {
      Rat x(num, Int(1) << j);
      x.canonicalize();
      return x;
    }
  }
}

// Roots of the square-free s in (0, oo) by Descartes bisection of s(B x) on
// (0, 1).  Interval endpoints are never roots of s.
std::vector<RootInterval> positive_isolation(const RatPoly& s) {
  std::vector<RootInterval> out;
  IntPoly a = integer_coeffs(s);
  const bool zero_root = sgn(a.front()) == 0;
  while (sgn(a.front()) == 0) a.erase(a.begin());
  if (a.size() < 2) return out;
  const Rat bound = root_bound(RatPoly([&] {
    std::vector<Rat> c;
    for (const auto& x : a) c.emplace_back(x);
    return c;
  }()));
  const Int B = bound.get_num();  // a power of two
  Int bp = 1;
  for (auto& c : a) {
    c *= bp;
    bp *= B;
  }

  struct Node {
    IntPoly h;
    Int c;       // interval (c / 2^k, (c+1) / 2^k) in x = t / B
    unsigned k;
    bool root_left, root_right;  // s vanishes at that endpoint
  };
  auto to_t = [&](const Rat& x, const Node& nd) {
    Rat r = (nd.c + x) * bound / Rat(Int(1) << nd.k);
    r.canonicalize();
    return r;
  };
  std::vector<Node> stack{{a, 0, 0, zero_root, false}};
  while (!stack.empty()) {
    Node nd = std::move(stack.back());
    stack.pop_back();
    const int v = descartes_01(nd.h);
    if (v == 0) continue;
    if (v == 1) {
      const Rat lo = nd.root_left ? inner_point(nd.h, true) : Rat(0);
      const Rat hi = nd.root_right ? inner_point(nd.h, false) : Rat(1);
      out.push_back({to_t(lo, nd), to_t(hi, nd), 1});
      continue;
    }
    IntPoly left = halve(nd.h);
    bool mid_root = false;
    Int at_one = 0;
    for (const auto& c : left) at_one += c;
    if (sgn(at_one) == 0) {
      mid_root = true;
      const Rat m = to_t(Rat(1, 2), nd);
      out.push_back({m, m, 1});
      left = deflate_at_one(left);
    }
    IntPoly right = taylor_shift1(left);
    stack.push_back({std::move(right), 2 * nd.c + 1, nd.k + 1, mid_root, nd.root_right});
    stack.push_back({std::move(left), 2 * nd.c, nd.k + 1, nd.root_left, mid_root});
  }
  return out;
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const RatPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() == 0) return out;

  const auto factors = squarefree_decomposition(p);
  RatPoly s({Rat(1)});
  for (const auto& f : factors) s = s * f;

  if (s.sign_at(Rat(0)) == 0) out.push_back({Rat(0), Rat(0), 1});
  std::vector<Rat> mirrored = s.coeffs();
  for (std::size_t k = 1; k < mirrored.size(); k += 2) mirrored[k] = -mirrored[k];
  for (const auto& r : positive_isolation(RatPoly(std::move(mirrored)))) out.push_back({-r.hi, -r.lo, 1});
  for (const auto& r : positive_isolation(s)) out.push_back(r);
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });

  for (auto& iv : out) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const bool hit = iv.lo == iv.hi ? factors[i].sign_at(iv.lo) == 0
                                      : factors[i].sign_at(iv.lo) * factors[i].sign_at(iv.hi) < 0;
      if (hit) {
        iv.multiplicity = static_cast<int>(i + 1);
        break;
      }
    }
  }
  return out;
}

RootInterval refine_root(const RatPoly& p, const RootInterval& interval, const Rat& width) {
  RootInterval iv = interval;
  if (iv.lo == iv.hi && p.sign_at(iv.lo) == 0) return iv;
  int s_lo = p.sign_at(iv.lo);
  const int s_hi = p.sign_at(iv.hi);
  if (s_lo * s_hi >= 0) {
    if (s_lo == 0) return {iv.lo, iv.lo, iv.multiplicity};
    if (s_hi == 0) return {iv.hi, iv.hi, iv.multiplicity};
    throw std::invalid_argument("refine_root: no sign change on the interval");
  }
  while (iv.width() > width) {
    const Rat m = iv.midpoint();
    const int sm = p.sign_at(m);
    if (sm == 0) return {m, m, iv.multiplicity};
    if (sm == s_lo) {
      iv.lo = m;
    } else {
      iv.hi = m;
    }
  }
  return iv;
}

RootInterval sqrt_bounds(const Rat& x) {
  if (sgn(x) < 0) throw std::domain_error("sqrt_bounds of a negative number");
  if (sgn(x) == 0) return {Rat(0), Rat(0), 1};
  // sqrt(n/d) = sqrt(n d) / d; scale by 2^64 for precision.
  const Int scale = Int(1) << 64;
  Int radicand = x.get_num() * x.get_den() * scale * scale;
  Int root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  Rat lo(root, x.get_den() * scale);
  lo.canonicalize();
  Rat hi = lo;
  if (root * root != radicand) {
    hi = Rat(root + 1, x.get_den() * scale);
    hi.canonicalize();
  }
  return {lo, hi, 1};
}

namespace {

// Shrinks an isolating interval of the square-free `sq` until it excludes 0.
// Returns false when the isolated root is 0 itself.
bool clear_of_zero(const RatPoly& sq, RootInterval& r) {
  if (!(r.lo <= 0 && r.hi >= 0)) return true;
  if (sq.sign_at(Rat(0)) == 0) return false;
  Rat w = r.width();
  while (r.lo <= 0 && r.hi >= 0) {
    w /= 2;
    r = refine_root(sq, r, w);
  }
  return true;
}

}  // namespace

std::vector<RootInterval> positive_real_roots(const RatPoly& p, const Rat& width) {
  if (p.is_zero()) throw std::invalid_argument("positive_real_roots: zero polynomial");
  std::vector<RootInterval> out;
  const bool even = p.is_even() && p.degree() >= 2;
  const RatPoly base = even ? p.even_part_in_square() : p;
  const RatPoly sq = squarefree_part(base);
  for (RootInterval r : isolate_real_roots(base)) {
    if (r.hi <= 0) continue;
    if (!clear_of_zero(sq, r) || r.hi <= 0) continue;
    if (!even) {
      RootInterval refined = refine_root(sq, r, width);
      refined.multiplicity = r.multiplicity;
      out.push_back(refined);
      continue;
    }
    Rat t_width = width;
    while (true) {
      r = refine_root(sq, r, t_width);
      RootInterval z{sqrt_bounds(r.lo).lo, sqrt_bounds(r.hi).hi, r.multiplicity};
      if (z.width() <= width) {
        out.push_back(z);
        break;
      }
      t_width /= 4;
    }
  }
  return out;
}

}  // namespace qes

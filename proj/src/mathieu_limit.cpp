#include "qes/mathieu_limit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace qes {

std::string_view kind_name(MathieuKind k) { return k == MathieuKind::Xi ? "xi" : "theta"; }

MathieuKind kind_from_name(std::string_view name) {
  if (name == "xi" || name == "Xi") return MathieuKind::Xi;
  if (name == "theta" || name == "Theta") return MathieuKind::Theta;
  throw std::invalid_argument("unknown matrix kind '" + std::string(name) + "' (expected xi or theta)");
}

namespace {

const MultiPoly& g_var() {
  static const MultiPoly g = MultiPoly::variable(Var::G);
  return g;
}

void require_level(int ell) {
  if (ell < 2) throw std::invalid_argument("truncation level must be at least 2");
}

}  // namespace

TruncatedOperator build(MathieuKind kind, int ell) {
  require_level(ell);
  TruncatedOperator op{kind, ell, PolyMatrix(static_cast<std::size_t>(ell))};
  const MultiPoly sub = -2 * g_var() * g_var();
  for (int r = 0; r < ell; ++r) {
    const auto u = static_cast<std::size_t>(r);
    const long i = op.first_index() + r;
    op.entries(u, u) = MultiPoly(4 * i * i);
    if (r + 1 < ell) {
      op.entries(u, u + 1) = MultiPoly(Rat(1, 2));
      op.entries(u + 1, u) = sub;
    }
  }
  if (kind == MathieuKind::Theta) op.entries(0, 1) += MultiPoly(Rat(1, 2));
  return op;
}

TruncatedOperator build_rescaled(MathieuKind kind, int ell, bool broken) {
  TruncatedOperator op = build(kind, ell);
  const MultiPoly two_g = 2 * g_var();
  for (std::size_t r = 0; r + 1 < op.entries.size(); ++r) {
    op.entries(r, r + 1) *= two_g;
    if (!broken) op.entries(r + 1, r) = divide_exact(op.entries(r + 1, r), two_g);
  }
  return op;
}

MultiPoly charpoly(const TruncatedOperator& op) {
  const MultiPoly E = MultiPoly::variable(Var::E);
  const PolyMatrix& m = op.entries;
  MultiPoly prev(1);
  MultiPoly cur = m(0, 0) - E;
  for (std::size_t k = 1; k < m.size(); ++k) {
    MultiPoly next = (m(k, k) - E) * cur - m(k - 1, k) * m(k, k - 1) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

MultiPoly charpoly_bareiss(const TruncatedOperator& op) {
  PolyMatrix m = op.entries;
  const MultiPoly E = MultiPoly::variable(Var::E);
  for (std::size_t k = 0; k < m.size(); ++k) m(k, k) -= E;
  return determinant(m);
}

RatPoly coupling_discriminant(MathieuKind kind, int ell) {
  const MultiPoly cp = charpoly(build(kind, ell));
  return RatPoly::from_multi(discriminant(UniPolyView::from(cp, Var::E)), Var::G);
}

namespace {

const Rat kCouplingWidth(1, 10000000000L);

std::vector<RootInterval> zeros_at(MathieuKind kind, int ell) {
  static std::map<std::pair<int, int>, std::vector<RootInterval>> cache;
  static std::mutex mu;
  const std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(static_cast<int>(kind), ell);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, positive_real_roots(coupling_discriminant(kind, ell), kCouplingWidth)).first;
  return it->second;
}

double nearest_gap(double x, const std::vector<RootInterval>& zs) {
  double best = HUGE_VAL;
  for (const auto& z : zs) best = std::min(best, std::abs(z.approx() - x));
  return best;
}

}  // namespace

std::vector<CriticalCoupling> critical_couplings(MathieuKind kind, int ell, double tolerance) {
  require_level(ell);
  const auto here = zeros_at(kind, ell);
  const auto next = zeros_at(kind, ell + 1);
  std::vector<CriticalCoupling> out;
  for (std::size_t k = 0; k < here.size(); ++k) {
    const bool conv = nearest_gap(here[k].approx(), next) < tolerance;
    out.push_back({kind, ell, static_cast<int>(k), here[k], conv});
  }
  return out;
}

ConvergedCoupling converge_coupling(MathieuKind kind, int index, double tolerance, int max_ell) {
  max_ell = std::min(max_ell, 24);
  ConvergedCoupling out;
  for (int ell = 2; ell <= max_ell; ++ell) {
    const auto zs = zeros_at(kind, ell);
    if (static_cast<int>(zs.size()) <= index) {
      out.history.push_back(NAN);
      continue;
    }
    const double g0 = zs[static_cast<std::size_t>(index)].approx();
    out.history.push_back(g0);
    out.ell = ell;
    out.g0 = g0;
    const std::size_t h = out.history.size();
    if (h >= 2 && std::isfinite(out.history[h - 2]) && std::abs(g0 - out.history[h - 2]) < tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

bool similarity_invariance_check(int ell, bool broken) {
  for (MathieuKind kind : {MathieuKind::Xi, MathieuKind::Theta})
    if (charpoly_bareiss(build(kind, ell)) != charpoly_bareiss(build_rescaled(kind, ell, broken))) return false;
  return true;
}

namespace {

Rat max_abs_coeff(const MultiPoly& p) {
  Rat best = 0;
  for (const auto& [e, c] : p.terms()) best = std::max(best, Rat(abs(c)));
  return best;
}

// (a)_{n} with the Gamma-function convention, also for n = -1.
Rat pochhammer(const Rat& a, int n) {
  if (n == -1) return 1 / (a - 1);
  Rat r = 1;
  for (int k = 0; k < n; ++k) r *= a + k;
  return r;
}

}  // namespace

double recurrence_limit_check(Parity family, int n_max, const Rat& N, const Rat& g, LimitForm form) {
  if (n_max < 2) throw std::invalid_argument("recurrence_limit_check: n_max must be at least 2");
  if (sgn(N) <= 0) throw std::invalid_argument("recurrence_limit_check: N must be positive");
  if (form == LimitForm::AnsatzScaled && sgn(g) == 0)
    throw std::invalid_argument("recurrence_limit_check: the Ansatz scaling needs g != 0");
  const Rat zeta = g / N;
  const MultiPoly E = MultiPoly::variable(Var::E);
  const PolyFamily fam = generate(family, n_max, N);
  const PolyFamily even = generate(Parity::Even, n_max, N);

  auto member = [&](const PolyFamily& f, int n) -> MultiPoly {
    if (n < f.first()) return MultiPoly();
    MultiPoly v = eval(f.at(n), {{Var::Zeta, zeta}});
    if (form == LimitForm::AnsatzScaled) {
      Rat s = N * pochhammer(1 + 2 * N, n - 1);
      for (int k = 0; k < n; ++k) s *= zeta;
      v *= MultiPoly(Rat(1 / s));
    }
    return v;
  };

  const int lo = fam.first();
  const Rat g2 = g * g;
  double worst = 0;
  for (int n = lo; n + 1 <= n_max; ++n) {
    Rat super(1, 2), sub = -2 * g2;
    if (form == LimitForm::AnsatzScaled) {
      super = g;
      sub = -g;
    } else if (form == LimitForm::Literal) {
      sub = -2 * g;
    }
    // Row 0 of Theta carries the doubled corner entry.
    if (n == 0) super *= 2;
    const MultiPoly up = (form == LimitForm::Literal && family == Parity::Odd) ? member(even, n + 1) : member(fam, n + 1);
    const MultiPoly vn = member(fam, n);
    const MultiPoly lhs = MultiPoly(super) * up + MultiPoly(Rat(4L * n * n)) * vn + MultiPoly(sub) * member(fam, n - 1);
    const MultiPoly rhs = E * vn;
    const Rat scale = max_abs_coeff(rhs);
    const Rat dev = max_abs_coeff(lhs - rhs) / (sgn(scale) > 0 ? scale : Rat(1));
    worst = std::max(worst, dev.get_d());
  }
  return worst;
}

}  // namespace qes

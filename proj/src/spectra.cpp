#include "qes/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qes {

RatPoly specialize(const SpectralProblem& problem, const Rat& zeta) {
  return RatPoly::from_multi(eval(problem.poly.to_multi(), {{Var::Zeta, zeta}}), Var::E);
}

int EnergyLevels::real_count() const {
  return static_cast<int>(std::count(kinds.begin(), kinds.end(), RootKind::Real));
}

namespace {

using cld = std::complex<long double>;

long double to_ld(const Rat& q) {
  // Exact for the dyadic coefficients that occur here; otherwise correctly
  // rounded to double, which is ample for a Newton step.
  return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
}

struct Horner {
  std::vector<long double> a;

  // p(z), p'(z) and the backward-error scale sum |a_k||z|^k.
  void operator()(cld z, cld& p, cld& dp, long double& scale) const {
    p = 0;
    dp = 0;
    scale = 0;
    const long double r = std::abs(z);
    for (std::size_t k = a.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
      scale = scale * r + std::fabs(a[k]);
    }
  }

  double residual(cld z) const {
    cld p, dp;
    long double s;
    (*this)(z, p, dp, s);
    return s == 0 ? 0.0 : static_cast<double>(std::abs(p) / s);
  }
};

cld polish(const Horner& h, cld z) {
  for (int it = 0; it < 3; ++it) {
    cld p, dp;
    long double s;
    h(z, p, dp, s);
    if (p == cld(0) || dp == cld(0)) break;
    const cld next = z - p / dp;
    if (h.residual(next) >= h.residual(z)) break;
    z = next;
  }
  return z;
}

Rat rat_from_double(double x) {
  Rat r(x);  // exact binary value
  r.canonicalize();
  return r;
}

bool by_re_im(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

EnergyLevels energies(const SpectralProblem& problem, const Rat& zeta, double precision) {
  if (!(precision > 0)) throw std::invalid_argument("energies: precision must be positive");
  const RatPoly p = specialize(problem, zeta);
  if (p.degree() < 1) throw std::invalid_argument("energies: critical polynomial is constant in E");
  const RatPoly m = p.monic();
  const int n = m.degree();

  Horner h;
  Eigen::VectorXd c(n + 1);
  for (int k = 0; k <= n; ++k) {
    h.a.push_back(to_ld(m.coeff(k)));
    c(k) = m.coeff(k).get_d();
  }

  EnergyLevels out;
  out.zeta = zeta;
  out.precision = precision;

  // Real roots come from exact isolation; the companion matrix only supplies
  // the non-real ones.
  const RatPoly sq = squarefree_part(m);
  const Rat width = rat_from_double(precision);
  int real_with_mult = 0;
  for (const RootInterval& iv : isolate_real_roots(m)) {
    const RootInterval r = refine_root(sq, iv, width);
    const double x = static_cast<double>(polish(h, cld(to_ld(r.midpoint()), 0)).real());
    const double v = (x >= r.lo.get_d() && x <= r.hi.get_d()) ? x : r.approx();
    for (int k = 0; k < iv.multiplicity; ++k) {
      out.roots.emplace_back(v, 0.0);
      out.kinds.push_back(RootKind::Real);
      out.certified.push_back(true);
    }
    real_with_mult += iv.multiplicity;
  }

  const int complex_count = n - real_with_mult;
  if (complex_count > 0) {
    const Eigen::VectorXcd eig = companion_roots<double>(c);
    std::vector<std::complex<double>> upper;
    for (Eigen::Index k = 0; k < eig.size(); ++k) upper.push_back(eig(k));
    // Largest |Im| first; the top half-plane representatives of the pairs.
    std::sort(upper.begin(), upper.end(),
              [](const auto& a, const auto& b) { return std::abs(a.imag()) > std::abs(b.imag()); });
    upper.resize(static_cast<std::size_t>(complex_count));
    std::vector<std::complex<double>> reps;
    for (const auto& z : upper)
      if (z.imag() > 0) reps.push_back(z);
    if (2 * static_cast<int>(reps.size()) != complex_count)
      throw std::runtime_error("energies: companion eigenvalues inconsistent with the exact real-root count");
    for (const auto& z : reps) {
      const cld w = polish(h, cld(z.real(), z.imag()));
      const std::complex<double> r(static_cast<double>(w.real()), std::abs(static_cast<double>(w.imag())));
      for (const auto& v : {r, std::conj(r)}) {
        out.roots.push_back(v);
        out.kinds.push_back(RootKind::ComplexPair);
        out.certified.push_back(false);
      }
    }
  }

  std::vector<std::size_t> order(out.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return by_re_im(out.roots[a], out.roots[b]); });
  EnergyLevels sorted = out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.roots[i] = out.roots[order[i]];
    sorted.kinds[i] = out.kinds[order[i]];
    sorted.certified[i] = out.certified[order[i]];
    sorted.residuals.push_back(h.residual(cld(sorted.roots[i].real(), sorted.roots[i].imag())));
  }
  return sorted;
}

RatPoly critical_discriminant(Parity parity, const Rat& N) {
  const SpectralProblem prob = critical_polynomial(parity, N);
  return RatPoly::from_multi(discriminant(prob.poly), Var::Zeta);
}

std::vector<ExceptionalPoint> exceptional_points(const Rat& N, Parity parity, const Rat& width) {
  const SpectralProblem prob = critical_polynomial(parity, N);
  std::vector<ExceptionalPoint> out;
  if (prob.degree() < 2) return out;
  const RatPoly disc = RatPoly::from_multi(discriminant(prob.poly), Var::Zeta);
  if (disc.degree() < 1) return out;
  for (const RootInterval& r : positive_real_roots(disc, width))
    out.push_back({N, parity, r, Rat(r.midpoint() * N).get_d()});
  return out;
}

std::string_view closed_form_name(ClosedForm level) {
  switch (level) {
    case ClosedForm::E1c: return "E1c";
    case ClosedForm::E2c: return "E2c";
    case ClosedForm::E3c: return "E3c";
    case ClosedForm::E2s: return "E2s";
    case ClosedForm::E3s: return "E3s";
    case ClosedForm::E4s: return "E4s";
  }
  return "?";
}

ClosedForm closed_form_from_name(std::string_view name) {
  for (ClosedForm f : {ClosedForm::E1c, ClosedForm::E2c, ClosedForm::E3c, ClosedForm::E2s, ClosedForm::E3s,
                       ClosedForm::E4s})
    if (closed_form_name(f) == name) return f;
  throw std::invalid_argument("unknown closed form '" + std::string(name) + "'");
}

namespace {

using cd = std::complex<double>;

// Principal cube root, refusing arguments on the negative real axis.
cd principal_cbrt(cd x) {
  if (x.real() < 0 && std::abs(x.imag()) <= 1e-14 * std::abs(x))
    throw BranchAmbiguity("cube-root argument lies on the principal branch cut");
  return std::pow(x, 1.0 / 3.0);
}

// 2/3 Omega e^{i pi l/3} - 2/3 c e^{-i pi l/3} / Omega + shift, l = 0, 2, -2.
std::vector<cd> cubic_triple(double shift, double a, double b, double c) {
  const double pi = std::acos(-1.0);
  const cd omega = principal_cbrt(a + std::pow(3.0, 1.5) * std::sqrt(cd(b)));
  if (std::abs(omega) < 1e-12) throw BranchAmbiguity("cube root vanishes");
  std::vector<cd> out;
  for (int l : {0, 2, -2}) {
    const cd ph = std::polar(1.0, pi * l / 3.0);
    out.push_back(shift + 2.0 / 3.0 * omega * ph - 2.0 / 3.0 * c * std::conj(ph) / omega);
  }
  return out;
}

}  // namespace

ClosedFormResult closed_form_check(ClosedForm level, const Rat& zeta) {
  const double z = zeta.get_d();
  const double z2 = z * z;
  ClosedFormResult out;
  Parity par = Parity::Even;
  Rat N = 1;
  switch (level) {
    case ClosedForm::E1c:
      N = Rat(1, 2);
      out.formula = {0.0};
      break;
    case ClosedForm::E2c: {
      const cd s = std::sqrt(cd(4 - z2));
      out.formula = {2.0 + s, 2.0 - s};
      break;
    }
    case ClosedForm::E3c:
      N = Rat(3, 2);
      out.formula = cubic_triple(20.0 / 3, 280 + 36 * z2, z2 * z2 * z2 - 4 * z2 * z2 + 1648 * z2 - 2304, 3 * z2 - 52);
      break;
    case ClosedForm::E2s:
      par = Parity::Odd;
      out.formula = {4.0};
      break;
    case ClosedForm::E3s: {
      par = Parity::Odd;
      N = Rat(3, 2);
      const cd s = std::sqrt(cd(36 - z2));
      out.formula = {10.0 + s, 10.0 - s};
      break;
    }
    case ClosedForm::E4s:
      par = Parity::Odd;
      N = 2;
      out.formula =
          cubic_triple(56.0 / 3, 1144 + 36 * z2, z2 * z2 * z2 - 148 * z2 * z2 + 15856 * z2 - 230400, 3 * z2 - 196);
      break;
  }
  out.roots = energies(critical_polynomial(par, N), zeta).roots;
  out.deviation = hausdorff_distance(out.formula, out.roots);
  return out;
}

double hausdorff_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : HUGE_VAL;
  auto directed = [](const auto& x, const auto& y) {
    double worst = 0;
    for (const auto& p : x) {
      double best = HUGE_VAL;
      for (const auto& q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace qes

#include "qes/measure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "qes/spectra.hpp"

namespace qes {

namespace {

const MultiPoly& zeta_var() {
  static const MultiPoly z = MultiPoly::variable(Var::Zeta);
  return z;
}

MultiPoly n_value(const std::optional<Rat>& N) { return N ? MultiPoly(*N) : MultiPoly::variable(Var::N); }

void check_q_domain(Parity family, const std::optional<Rat>& N) {
  if (family == Parity::Odd && N && (sgn(*N) == 0 || *N == Rat(1, 2)))
    throw std::invalid_argument("Q norms are undefined at N = 0 and N = 1/2");
}

// (a)_n for a polynomial a.
MultiPoly pochhammer(const MultiPoly& a, int n) {
  MultiPoly r(1);
  for (int k = 0; k < n; ++k) r *= a + MultiPoly(k);
  return r;
}

}  // namespace

NormSequence norms_closed_form(Parity family, int n_max, const std::optional<Rat>& N) {
  check_q_domain(family, N);
  const MultiPoly n = n_value(N);
  const MultiPoly one_minus = MultiPoly(1) - 2 * n;
  const MultiPoly two_n = 2 * n;
  NormSequence out{family, N, {}};
  for (int k = first_index(family); k <= n_max; ++k) {
    if (family == Parity::Even) {
      if (k == 0) {
        out.values.emplace_back(1);
        continue;
      }
      out.values.push_back(MultiPoly(Rat(1, 2)) * zeta_var().pow(static_cast<unsigned>(2 * k)) *
                           pochhammer(one_minus, k) * pochhammer(two_n, k));
    } else {
      const MultiPoly num = pochhammer(one_minus, k) * pochhammer(two_n, k);
      out.values.push_back(zeta_var().pow(static_cast<unsigned>(2 * k - 2)) * divide_exact(num, two_n * one_minus));
    }
  }
  return out;
}

NormSequence norms_from_b(Parity family, int n_max, const std::optional<Rat>& N) {
  check_q_domain(family, N);
  const MultiPoly n = n_value(N);
  const MultiPoly z2 = zeta_var().pow(2);
  auto b = [&](int k) {
    if (k == 1) return (n - 2 * n * n) * z2;
    return (MultiPoly(static_cast<long>(k) * (k - 1)) + 2 * n - 4 * n * n) * z2;
  };
  NormSequence out{family, N, {}};
  MultiPoly acc(1);
  for (int k = first_index(family); k <= n_max; ++k) {
    if (k >= (family == Parity::Even ? 1 : 2)) acc *= b(k);
    out.values.push_back(acc);
  }
  return out;
}

Rat gamma_half_squared_over_pi(int n) {
  Rat r = 1;
  for (int k = 1; k <= n; ++k) r *= Rat(2 * k - 1, 2);
  r.canonicalize();
  return r * r;
}

namespace {

using cd = std::complex<double>;

struct Family {
  Parity parity;
  std::vector<RatPoly> members;  // in E at the fixed zeta

  const RatPoly& at(int n) const { return members.at(static_cast<std::size_t>(n - first_index(parity))); }
};

Family family_at(Parity parity, const Rat& N, const Rat& zeta, int n_max) {
  const PolyFamily fam = generate(parity, std::max(n_max, first_index(parity)), N);
  Family out{parity, {}};
  for (const auto& m : fam.members()) out.members.push_back(RatPoly::from_multi(eval(m, {{Var::Zeta, zeta}}), Var::E));
  return out;
}

// p(x), and sum |a_k||x|^k in *magnitude (the rounding scale of the value).
cd horner(const RatPoly& p, cd x, double* magnitude = nullptr) {
  std::complex<long double> acc = 0;
  long double mag = 0;
  const std::complex<long double> z(x.real(), x.imag());
  const long double r = std::abs(z);
  for (int k = p.degree(); k >= 0; --k) {
    const long double c = p.coeff(k).get_d();
    acc = acc * z + c;
    mag = mag * r + std::fabs(c);
  }
  if (magnitude) *magnitude = static_cast<double>(mag);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

int node_count(Parity family, const Rat& N) {
  const Rat twice = 2 * N;
  return static_cast<int>(twice.get_num().get_si()) - (family == Parity::Odd ? 1 : 0);
}

}  // namespace

DiscreteMeasure solve_weights(Parity family, const Rat& N, const Rat& zeta) {
  const SpectralProblem prob = critical_polynomial(family, N);
  const EnergyLevels lv = energies(prob, zeta);
  DiscreteMeasure m{family, N, zeta, lv.roots, {}, 0, lv.real_count() != static_cast<int>(lv.roots.size())};
  const int L = node_count(family, N);
  if (m.size() != L) throw std::logic_error("solve_weights: node count mismatch");

  const int f = first_index(family);
  const Family fam = family_at(family, N, zeta, f + L - 1);
  Eigen::MatrixXcd A(L, L);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(L);
  rhs(0) = 1;
  for (int r = 0; r < L; ++r)
    for (int k = 0; k < L; ++k) A(r, k) = horner(fam.at(f + r), m.nodes[static_cast<std::size_t>(k)]);

  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j)
      if (m.nodes[static_cast<std::size_t>(i)] == m.nodes[static_cast<std::size_t>(j)])
        throw SingularSystem("weight system is singular: coincident nodes at zeta = " + rat_to_string(zeta));
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible())
    throw SingularSystem("weight system is numerically singular at zeta = " + rat_to_string(zeta));
  const Eigen::VectorXcd w = lu.solve(rhs);
  m.residual = (A * w - rhs).cwiseAbs().maxCoeff();
  for (int k = 0; k < L; ++k) m.weights.push_back(w(k));
  return m;
}

std::vector<std::complex<double>> family_values(const DiscreteMeasure& m, int n) {
  const Family fam = family_at(m.family, m.N, m.zeta, n);
  std::vector<cd> out;
  for (const auto& x : m.nodes) out.push_back(horner(fam.at(n), x));
  return out;
}

double verify_orthogonality(const DiscreteMeasure& m, int n_max) {
  const int f = first_index(m.family);
  const Family fam = family_at(m.family, m.N, m.zeta, n_max);
  const NormSequence norms = norms_closed_form(m.family, n_max, m.N);
  std::vector<std::vector<cd>> vals;
  std::vector<std::vector<double>> mags;
  for (int n = f; n <= n_max; ++n) {
    std::vector<cd> v;
    std::vector<double> g;
    for (const auto& x : m.nodes) {
      double mag = 0;
      v.push_back(horner(fam.at(n), x, &mag));
      g.push_back(mag);
    }
    vals.push_back(std::move(v));
    mags.push_back(std::move(g));
  }
  double worst = 0;
  for (int n = f; n <= n_max; ++n) {
    const cd exact(eval(norms.at(n), {{Var::Zeta, m.zeta}}).constant_value().get_d(), 0);
    for (int k = f; k <= n_max; ++k) {
      cd sum = 0;
      double scale = 1;
      for (std::size_t j = 0; j < m.nodes.size(); ++j) {
        const auto a = static_cast<std::size_t>(n - f), b = static_cast<std::size_t>(k - f);
        sum += m.weights[j] * vals[a][j] * vals[b][j];
        scale += std::abs(m.weights[j]) * mags[a][j] * mags[b][j];
      }
      const cd want = n == k ? exact : cd(0);
      worst = std::max(worst, std::abs(sum - want) / std::max(scale, std::abs(want)));
    }
  }
  return worst;
}

MomentSequence moments_exact(Parity family, const Rat& N, int n_max) {
  if (n_max < 0) throw std::invalid_argument("moments: n_max must be nonnegative");
  MomentSequence out{family, N, {MultiPoly(1)}};
  const int shift = family == Parity::Even ? 0 : 1;  // mu_m comes from member m + shift
  const PolyFamily fam = generate(family, n_max + shift, N);
  for (int m = 1; m <= n_max; ++m) {
    // Member m + shift = 2^{m+shift-1} E^m - sum_k nu_k E^k, and L of it vanishes.
    const UniPolyView v = UniPolyView::from(fam.at(m + shift), Var::E);
    MultiPoly acc;
    for (int k = 0; k < m; ++k) acc -= v.coeff(k) * out.values[static_cast<std::size_t>(k)];
    out.values.push_back(divide_exact(acc, v.coeff(m)));
  }
  return out;
}

std::vector<std::complex<double>> moments_from_measure(const DiscreteMeasure& m, int n_max) {
  std::vector<cd> out;
  for (int n = 0; n <= n_max; ++n) {
    cd sum = 0;
    for (std::size_t k = 0; k < m.nodes.size(); ++k) sum += m.weights[k] * std::pow(m.nodes[k], n);
    out.push_back(sum);
  }
  return out;
}

MomentSequence moments(Parity family, const Rat& N, int n_max, std::vector<Rat> samples, double tolerance) {
  MomentSequence exact = moments_exact(family, N, n_max);
  if (samples.empty()) {
    const auto eps = exceptional_points(N, family, Rat(1, 1000));
    const Rat top = eps.empty() ? Rat(4, 3) : eps.front().zeta0.lo;
    for (int k : {1, 2, 3}) {
      Rat s = top * Rat(k, 4);
      s.canonicalize();
      samples.push_back(s);
    }
  }
  for (const Rat& z : samples) {
    const DiscreteMeasure m = solve_weights(family, N, z);
    const auto numeric = moments_from_measure(m, n_max);
    for (int n = 0; n <= n_max; ++n) {
      const double want = eval(exact.values[static_cast<std::size_t>(n)], {{Var::Zeta, z}}).constant_value().get_d();
      double scale = 1;
      for (std::size_t k = 0; k < m.nodes.size(); ++k) scale += std::abs(m.weights[k]) * std::pow(std::abs(m.nodes[k]), n);
      if (std::abs(numeric[static_cast<std::size_t>(n)] - want) > tolerance * scale)
        throw RouteMismatch("moment mu_" + std::to_string(n) + " disagrees between routes at zeta = " + rat_to_string(z));
    }
  }
  return exact;
}

}  // namespace qes

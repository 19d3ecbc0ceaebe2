#include <cmath>

#include "doctest.h"
#include "qes/spectra.hpp"

using namespace qes;

namespace {

Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

Rat rat_of(double x) {
  Rat r(x);
  r.canonicalize();
  return r;
}

struct TableEntry {
  Rat N;
  Parity parity;
  std::vector<double> zeta0N;
};

// Printed zeta0 * N, grouped by row and family.
const std::vector<TableEntry> kTable = {
    {1, Parity::Even, {2.00000}},
    {frac(3, 2), Parity::Even, {1.77556}},
    {frac(3, 2), Parity::Odd, {9.00000}},
    {2, Parity::Even, {1.68457, 21.0567}},  // first entry: see below
    {2, Parity::Odd, {8.21937}},
    {frac(5, 2), Parity::Even, {1.63564, 19.4554}},
    {frac(5, 2), Parity::Odd, {7.8691, 38.2224}},
    {3, Parity::Even, {1.6047, 18.6864, 60.535}},
    {3, Parity::Odd, {7.6688, 35.5683}},
};

double min_pair_distance(const std::vector<std::complex<double>>& r) {
  double best = HUGE_VAL;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) best = std::min(best, std::abs(r[i] - r[j]));
  return best;
}

int sturm_real_count(const SpectralProblem& p, const Rat& zeta) {
  return static_cast<int>(isolate_real_roots(specialize(p, zeta)).size());
}

}  // namespace

TEST_CASE("energies examples") {
  const auto e = energies(critical_polynomial(Parity::Even, 1), 1);
  REQUIRE(e.roots.size() == 2);
  CHECK(e.real_count() == 2);
  CHECK(e.roots[0].real() == doctest::Approx(2 - std::sqrt(3.0)).epsilon(1e-14));
  CHECK(e.roots[1].real() == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-14));
  for (bool c : e.certified) CHECK(c);

  const auto d = energies(critical_polynomial(Parity::Odd, frac(3, 2)), 6);
  REQUIRE(d.roots.size() == 2);
  CHECK(d.real_count() == 2);
  CHECK(d.roots[0] == std::complex<double>(10, 0));
  CHECK(d.roots[1] == std::complex<double>(10, 0));

  for (const Rat& z : {Rat(0), Rat(3), frac(-7, 2)}) {
    const auto one = energies(critical_polynomial(Parity::Even, frac(1, 2)), z);
    REQUIRE(one.roots.size() == 1);
    CHECK(one.roots[0] == std::complex<double>(0, 0));
  }

  // Past zeta = 2 the N = 1 pair is complex conjugate.
  const auto c = energies(critical_polynomial(Parity::Even, 1), 3);
  CHECK(c.real_count() == 0);
  CHECK(c.roots[0] == std::conj(c.roots[1]));
  CHECK(c.roots[0].imag() == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-14));
  CHECK_THROWS_AS(energies(critical_polynomial(Parity::Even, 1), 1, 0.0), std::invalid_argument);
}

TEST_CASE("companion roots agree across scalar types") {
  Eigen::VectorXd c(4);
  c << -6, 11, -6, 1;  // (x-1)(x-2)(x-3)
  const auto rd = companion_roots<double>(c);
  const auto rl = companion_roots<long double>(c.cast<long double>());
  std::vector<std::complex<double>> a, b;
  for (int i = 0; i < 3; ++i) {
    a.push_back(rd(i));
    b.emplace_back(static_cast<double>(rl(i).real()), static_cast<double>(rl(i).imag()));
  }
  CHECK(hausdorff_distance(a, {1.0, 2.0, 3.0}) < 1e-12);
  CHECK(hausdorff_distance(a, b) < 1e-12);
}

TEST_CASE("residuals are at rounding level") {
  for (const Rat& N : {Rat(2), frac(5, 2), Rat(3)})
    for (Parity par : {Parity::Even, Parity::Odd})
      for (const Rat& z : {frac(1, 3), Rat(1), Rat(7)}) {
        const auto e = energies(critical_polynomial(par, N), z);
        CHECK(static_cast<int>(e.roots.size()) == critical_polynomial(par, N).degree());
        for (double r : e.residuals) CHECK(r < 1e-13);
      }
}

TEST_CASE("zeta = 0 gives the free rotor levels exactly") {
  for (const Rat& N : {frac(1, 2), Rat(1), frac(3, 2), Rat(2), frac(5, 2), Rat(3)}) {
    const int m = static_cast<int>(Rat(2 * N).get_num().get_si());
    for (Parity par : {Parity::Even, Parity::Odd}) {
      if (par == Parity::Odd && m < 2) continue;
      const RatPoly p = specialize(critical_polynomial(par, N), 0);
      for (int k = first_index(par); k < m; ++k) CHECK(p(Rat(4L * k * k)) == 0);
      CHECK(p.degree() == m - first_index(par));
      CHECK(static_cast<int>(isolate_real_roots(p).size()) == p.degree());
    }
  }
}

TEST_CASE("finite-N exceptional-point table") {
  // The printed N = 2 cosine entry 1.68457 disagrees with the zero of its own
  // printed discriminant; an independent root finder (numpy/sympy on the
  // printed coefficients) gives 1.6848676, which is what this checks.
  const double kN2cOracle = 1.6848676;
  int checked = 0;
  for (const auto& row : kTable) {
    const auto eps = exceptional_points(row.N, row.parity);
    // Every printed entry is matched by a computed zero.
    for (double printed : row.zeta0N) {
      const double want = printed == 1.68457 ? kN2cOracle : printed;
      bool found = false;
      for (const auto& ep : eps) {
        CHECK(ep.zeta0.width() <= Rat(1, 100000000));
        if (std::abs(ep.zeta0_times_N - want) <= 5e-5) found = true;
      }
      CHECK_MESSAGE(found, "N=", rat_to_string(row.N), " ", parity_tag(row.parity), " ", printed);
      checked += found;
    }
  }
  CHECK(checked == 15);
  const auto n2 = exceptional_points(2, Parity::Even);
  CHECK(std::abs(n2[0].zeta0_times_N - 1.68457) == doctest::Approx(3.0e-4).epsilon(0.01));
  CHECK(exceptional_points(frac(1, 2), Parity::Even).empty());
}

TEST_CASE("exceptional points are where levels collide") {
  for (const auto& row : kTable) {
    const SpectralProblem prob = critical_polynomial(row.parity, row.N);
    const auto eps = exceptional_points(row.N, row.parity);
    REQUIRE(!eps.empty());
    // Below the first one every level is real and simple.
    const Rat below = eps.front().zeta0.lo / 2;
    CHECK(sturm_real_count(prob, below) == prob.degree());
    CHECK(squarefree_part(specialize(prob, below)).degree() == prob.degree());
    CHECK(min_pair_distance(energies(prob, below).roots) > 1e-1);
    for (const auto& ep : eps) {
      const Rat z0 = ep.zeta0.midpoint();
      const int before = sturm_real_count(prob, z0 - Rat(1, 1000));
      const int after = sturm_real_count(prob, z0 + Rat(1, 1000));
      CHECK(before - after == 2);
      CHECK(min_pair_distance(energies(prob, z0).roots) < 1e-3);
    }
  }
}

TEST_CASE("zeta0 N decreases with N along each column") {
  // Column j of the table alternates c, s, c, s, c; entry k of family f is
  // column 2k (c) or 2k+1 (s).
  for (Parity par : {Parity::Even, Parity::Odd}) {
    for (std::size_t k = 0; k < 3; ++k) {
      double prev = HUGE_VAL;
      for (const Rat& N : {Rat(1), frac(3, 2), Rat(2), frac(5, 2), Rat(3)}) {
        if (par == Parity::Odd && N == 1) continue;
        const auto eps = exceptional_points(N, par);
        if (eps.size() <= k) continue;
        CHECK(eps[k].zeta0_times_N < prev);
        prev = eps[k].zeta0_times_N;
      }
    }
  }
}

TEST_CASE("closed forms") {
  for (ClosedForm f : {ClosedForm::E1c, ClosedForm::E2c, ClosedForm::E3c, ClosedForm::E2s, ClosedForm::E3s,
                       ClosedForm::E4s})
    for (const Rat& z : {frac(1, 2), Rat(1), frac(3, 2)}) CHECK(closed_form_check(f, z).deviation < 1e-9);

  const auto e2 = closed_form_check(ClosedForm::E2c, 2);
  CHECK(e2.deviation == 0);
  CHECK(e2.formula[0] == std::complex<double>(2, 0));

  const auto e3 = closed_form_check(ClosedForm::E3s, 0);
  CHECK(hausdorff_distance(e3.formula, {4.0, 16.0}) == 0);
  CHECK(e3.deviation < 1e-12);

  // Complex regime of the cubic: past the first exceptional point.
  CHECK(closed_form_check(ClosedForm::E3c, 3).deviation < 1e-9);
  CHECK(closed_form_check(ClosedForm::E4s, rat_of(3.5)).deviation < 1e-9);
  CHECK(closed_form_from_name("E4s") == ClosedForm::E4s);
  CHECK_THROWS_AS(closed_form_from_name("E9c"), std::invalid_argument);
}

TEST_CASE("hausdorff distance") {
  CHECK(hausdorff_distance({1.0, 2.0}, {2.0, 1.0}) == 0);
  CHECK(hausdorff_distance({1.0}, {1.0, 4.0}) == 3);
}

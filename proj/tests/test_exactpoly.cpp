#include <random>

#include "doctest.h"
#include "qes/exactpoly.hpp"

using namespace qes;

namespace {

Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

const MultiPoly E = MultiPoly::variable(Var::E);
const MultiPoly z = MultiPoly::variable(Var::Zeta);
const MultiPoly N = MultiPoly::variable(Var::N);

// Printed P2, P3, P4 and R1 transcribed for golden comparisons.
const char* kP2 = "2*E^2 - 8*E + 2*z^2*N*(2*N-1)";
const char* kP3 = "4*E^3 - 80*E^2 + E*(2*z^2*(6*N^2-3*N-1) + 256) + 64*z^2*(1-2*N)*N";
const char* kP4 =
    "8*E^4 - 448*E^3 + E^2*(16*z^2*(N-1)*(2*N+1) + 6272) - 192*E*(z^2*(6*N^2-3*N-1) + 96)"
    " + 4*z^2*N*(2*N-1)*(z^2*(N+1)*(2*N-3) + 1152)";

MultiPoly random_poly(std::mt19937& rng, int max_terms = 4, int max_deg = 2) {
  std::uniform_int_distribution<int> coeff(-5, 5), deg(0, max_deg), nterms(0, max_terms);
  MultiPoly p;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Exponents e{};
    for (std::size_t k = 0; k < 3; ++k) e[k] = static_cast<std::uint32_t>(deg(rng));
    p += MultiPoly::monomial(frac(coeff(rng), 1 + std::abs(coeff(rng))), e);
  }
  return p;
}

}  // namespace

TEST_CASE("add") {
  CHECK((E + (-E)).is_zero());
  CHECK(parse_poly("2*E^2 - 8*E") + parse_poly("2*z^2*N*(2*N-1)") == parse_poly(kP2));
  CHECK((E + 1) + (E - 1) == 2 * E);
}

TEST_CASE("mul") {
  CHECK((parse_poly(kP4) * MultiPoly()).is_zero());
  CHECK((E - 2) * (E - 2) == parse_poly("E^2 - 4*E + 4"));
  // R1 * P2 = P3 at N = 1.
  const std::map<Var, Rat> at_one{{Var::N, 1}};
  const MultiPoly r1 = eval(parse_poly("2*E - 32*N^2"), at_one);
  CHECK(r1 * eval(parse_poly(kP2), at_one) == eval(parse_poly(kP3), at_one));
}

TEST_CASE("eval") {
  CHECK(eval(parse_poly(kP2), {{Var::N, 1}}) == parse_poly("2*E^2 - 8*E + 2*z^2"));
  CHECK(eval(parse_poly(kP2), {{Var::N, Rat(1, 2)}}) == parse_poly("2*E^2 - 8*E"));
  const MultiPoly c = eval(E * E, {{Var::E, 3}});
  CHECK(c.is_constant());
  CHECK(c.constant_value() == 9);
  CHECK_FALSE(eval(parse_poly(kP2), {{Var::N, 1}}).vars().contains(Var::N));
}

TEST_CASE("parse and print round trip") {
  for (const char* text : {kP2, kP3, kP4, "-3/7*g^5 + 1/2", "0"}) {
    const MultiPoly p = parse_poly(text);
    CHECK(parse_poly(p.to_string()) == p);
  }
  CHECK(parse_rat("0.125") == Rat(1, 8));
  CHECK(parse_rat("-3/6") == Rat(-1, 2));
  CHECK(parse_rat("1e-3") == Rat(1, 1000));
  CHECK_THROWS_AS(parse_rat("1.0.0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("3/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("2*x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("(E+1"), std::invalid_argument);
}

TEST_CASE("grlex leading term and canonical order") {
  const MultiPoly p = parse_poly("E + z^3 + E^2*z");
  // Total degree 3 ties: E^2 z beats z^3 lexicographically (E first).
  CHECK(p.leading_term().first == Exponents{2, 1, 0, 0});
  CHECK(p.total_degree() == 3);
  CHECK(p.degree(Var::E) == 2);
}

TEST_CASE("exact division") {
  const MultiPoly a = parse_poly("E^2 - z^2");
  CHECK(divide_exact(a, E - z) == E + z);
  CHECK_THROWS_AS(divide_exact(a, E - 2 * z), std::domain_error);
  CHECK(divide_exact(parse_poly("-2*g^2"), parse_poly("2*g")) == parse_poly("-g"));
}

TEST_CASE("resultant examples") {
  const MultiPoly a = MultiPoly::variable(Var::Zeta);
  const MultiPoly b = MultiPoly::variable(Var::N);
  // Sylvester convention: res(x - s, x - t) = s - t.
  CHECK(resultant(UniPolyView::from(E - a, Var::E), UniPolyView::from(E - b, Var::E)) == a - b);
  const MultiPoly t = MultiPoly::variable(Var::G);
  CHECK(resultant(UniPolyView::from(E * E - t, Var::E), UniPolyView::from(2 * E, Var::E)) == -4 * t);
  // Against a direct Sylvester determinant for a cubic/quadratic pair.
  const MultiPoly p = parse_poly("2*E^3 - z*E + 5");
  const MultiPoly q = parse_poly("E^2 + N*E - 1");
  PolyMatrix syl(5);
  const auto pv = UniPolyView::from(p, Var::E);
  const auto qv = UniPolyView::from(q, Var::E);
  for (int r = 0; r < 2; ++r)
    for (int k = 0; k <= 3; ++k) syl(r, r + k) = pv.coeff(3 - k);
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k <= 2; ++k) syl(2 + r, r + k) = qv.coeff(2 - k);
  CHECK(resultant(pv, qv) == determinant(syl));
  CHECK_THROWS_AS(resultant(UniPolyView(Var::E, {}), qv), std::invalid_argument);
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant_raw(UniPolyView::from(parse_poly("E^2 + z*E + N"), Var::E)) == parse_poly("z^2 - 4*N"));
  const auto p2 = UniPolyView::from(eval(parse_poly(kP2), {{Var::N, 1}}), Var::E);
  CHECK(discriminant(p2) == parse_poly("z^2 - 4"));
  const MultiPoly res = resultant(p2, p2.derivative());
  CHECK(primitive_normalized(res) == parse_poly("z^2 - 4"));
  const auto p4 = UniPolyView::from(eval(parse_poly(kP4), {{Var::N, 2}}), Var::E);
  CHECK(discriminant(p4) ==
        parse_poly("z^12 + 8*z^10 + 6160*z^8 - 2119680*z^6 + 4128768*z^4 - 749850624*z^2 + 530841600"));
  CHECK_THROWS_AS(discriminant(UniPolyView::from(E + 1, Var::E)), std::invalid_argument);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    const MultiPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("eval commutes with ring operations") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> v(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const MultiPoly a = random_poly(rng), b = random_poly(rng);
    const std::map<Var, Rat> bind{{Var::E, frac(v(rng), 3)}, {Var::N, frac(v(rng), 2)}};
    CHECK(eval(a * b, bind) == eval(a, bind) * eval(b, bind));
    CHECK(eval(a + b, bind) == eval(a, bind) + eval(b, bind));
  }
}

TEST_CASE("discriminant vanishes on repeated roots") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> v(-6, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const Rat r = frac(v(rng), 1 + std::abs(v(rng)));
    const MultiPoly q = parse_poly("E^2 + 3*E - 7") + MultiPoly(Rat(v(rng)));
    const MultiPoly p = (E - MultiPoly(r)) * (E - MultiPoly(r)) * q;
    CHECK(discriminant_raw(UniPolyView::from(p, Var::E)).is_zero());
    // A simple-root perturbation does not vanish.
    const MultiPoly simple = (E - MultiPoly(r)) * (E - MultiPoly(r) - 1) * (E + 100);
    CHECK_FALSE(discriminant_raw(UniPolyView::from(simple, Var::E)).is_zero());
  }
}

TEST_CASE("resultant multiplicativity") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> v(-4, 4), deg(1, 3);
  auto rand_uni = [&]() {
    MultiPoly p = E.pow(static_cast<unsigned>(deg(rng)));
    for (int k = 0; k < 3; ++k) p += MultiPoly(Rat(v(rng))) * E.pow(static_cast<unsigned>(k)) * (k == 1 ? z : MultiPoly(1));
    return p;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const MultiPoly p = rand_uni(), q = rand_uni(), r = rand_uni();
    const auto view = [](const MultiPoly& m) { return UniPolyView::from(m, Var::E); };
    CHECK(resultant(view(p * q), view(r)) == resultant(view(p), view(r)) * resultant(view(q), view(r)));
  }
}

TEST_CASE("determinant with pivoting") {
  PolyMatrix m(3);
  m(0, 1) = E;
  m(1, 0) = z;
  m(2, 2) = 1;
  CHECK(determinant(m) == -(E * z));
}

#include <random>

#include "doctest.h"
#include "qes/realroots.hpp"

using namespace qes;

namespace {

Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

Rat rat_of_double(double x) {
  Rat r(x);
  r.canonicalize();
  return r;
}

RatPoly poly(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long x : c) v.emplace_back(x);
  return RatPoly(std::move(v));
}

// Counts sign changes on a uniform sample grid; roots exactly on grid points
// are counted once.
int sampled_root_count(const RatPoly& p, double a, double b, double step) {
  int count = 0;
  double prev = p.eval_double(a);
  for (double x = a + step; x <= b + 1e-12; x += step) {
    const double cur = p.eval_double(x);
    if (cur == 0.0) {
      ++count;
      x += step;
      prev = p.eval_double(x);
      continue;
    }
    if (prev * cur < 0) ++count;
    prev = cur;
  }
  return count;
}

}  // namespace

TEST_CASE("isolate simple examples") {
  const auto roots = isolate_real_roots(poly({-4, 0, 1}));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].lo < -2);
  CHECK(roots[0].hi > -2);
  CHECK(roots[1].lo < 2);
  CHECK(roots[1].hi > 2);
  CHECK(isolate_real_roots(poly({1, 0, 1})).empty());
  CHECK(isolate_real_roots(poly({5})).empty());
  CHECK_THROWS_AS(isolate_real_roots(RatPoly()), std::invalid_argument);
}

TEST_CASE("multiplicities from the square-free decomposition") {
  // (x-1)^3 (x+2)^2 (x-5)
  const RatPoly p = poly({-1, 1}) * poly({-1, 1}) * poly({-1, 1}) * poly({2, 1}) * poly({2, 1}) * poly({-5, 1});
  const auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].multiplicity == 2);
  CHECK(roots[1].multiplicity == 3);
  CHECK(roots[2].multiplicity == 1);
  const auto factors = squarefree_decomposition(p);
  REQUIRE(factors.size() == 3);
  CHECK(factors[0] == poly({-5, 1}));
  CHECK(factors[1] == poly({2, 1}));
  CHECK(factors[2] == poly({-1, 1}));
}

TEST_CASE("refine_root") {
  const RatPoly p = poly({-4, 0, 1});
  const auto r = refine_root(p, {Rat(1), Rat(3), 1}, Rat(1, 1000000));
  CHECK(r.width() <= Rat(1, 1000000));
  CHECK(r.lo <= 2);
  CHECK(r.hi >= 2);

  const RatPoly two = poly({-2, 0, 1});
  const auto s = refine_root(two, {Rat(1), Rat(2), 1}, Rat(1, 10000000000L));
  CHECK(s.lo * s.lo < 2);
  CHECK(s.hi * s.hi > 2);
  CHECK(s.width() <= Rat(1, 10000000000L));

  // Table-1 N = 3/2 entry: zeta0 * N = 1.77556.
  const RatPoly d3c = poly({-2304, 0, 1648, 0, -4, 0, 1});
  const auto d = refine_root(d3c, {Rat(1), Rat(2), 1}, Rat(1, 1000000));
  CHECK(d.approx() * 1.5 == doctest::Approx(1.77556).epsilon(5e-6 / 1.77556));

  CHECK_THROWS_AS(refine_root(p, {Rat(3), Rat(4), 1}, Rat(1, 10)), std::invalid_argument);
}

TEST_CASE("even shortcut and positive roots") {
  // Delta_4^s: three positive roots; zeta0 * 5/2 compared with an independent
  // sampled bisection.
  const RatPoly d5s = RatPoly::from_multi(
      parse_poly("z^12 - 376*z^10 + 16*7041*z^8 - 2048*11925*z^6 + 8192*207675*z^4 - 4096*19579725*z^2 + "
                 "262144*2480625"),
      Var::Zeta);
  const auto roots = positive_real_roots(d5s, Rat(1, 10000000));
  REQUIRE(!roots.empty());
  for (const auto& r : roots) {
    CHECK(r.width() <= Rat(1, 10000000));
    CHECK(d5s.sign_at(r.lo) * d5s.sign_at(r.hi) <= 0);
  }
  // Independent oracle: sign changes sampled at step 1e-3, then bisection in doubles.
  std::vector<double> sampled;
  for (double x = 1e-3; x < 40; x += 1e-3) {
    if (d5s.eval_double(x) * d5s.eval_double(x + 1e-3) < 0) {
      double a = x, b = x + 1e-3;
      for (int i = 0; i < 60; ++i) {
        const double m = 0.5 * (a + b);
        (d5s.eval_double(a) * d5s.eval_double(m) <= 0 ? b : a) = m;
      }
      sampled.push_back(0.5 * (a + b));
    }
  }
  REQUIRE(sampled.size() == roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) CHECK(roots[i].approx() == doctest::Approx(sampled[i]).epsilon(1e-9));
  CHECK(roots[0].approx() * 2.5 == doctest::Approx(7.8691).epsilon(5e-4 / 7.8691));
}

TEST_CASE("sqrt bounds bracket") {
  for (const Rat& x : {Rat(2), Rat(1, 3), Rat(49, 4), Rat(1, 1000001)}) {
    const auto b = sqrt_bounds(x);
    CHECK(b.lo * b.lo <= x);
    CHECK(b.hi * b.hi >= x);
    CHECK(b.width() < Rat(1, 1000000000000L));
  }
}

TEST_CASE("Sturm count matches sign sampling on random polynomials") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> nroots(0, 6), root(-40, 40), extra(0, 3), c(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    // Random product of linear factors with well separated rational roots
    // times a positive-definite quadratic factor, degree <= 12.
    RatPoly p = poly({1});
    std::vector<int> used;
    const int k = nroots(rng);
    while (static_cast<int>(used.size()) < k) {
      const int r = root(rng);
      if (std::find(used.begin(), used.end(), r) != used.end()) continue;
      used.push_back(r);
      p = p * RatPoly({frac(-r, 4), Rat(1)});
    }
    for (int e = extra(rng); e > 0; --e) p = p * RatPoly({Rat(1 + std::abs(c(rng))), frac(c(rng), 10), Rat(1)});
    if (p.degree() < 1) continue;
    const auto chain = sturm_sequence(squarefree_part(p));
    const int sturm = count_real_roots(chain, Rat(-11), Rat(11));
    // Root spacing 1/4; step 1e-3 resolves it. Grid offset keeps roots off grid points.
    CHECK(sturm == sampled_root_count(p, -11.0 + 1.3e-4, 11.0, 1e-3));
    CHECK(static_cast<int>(isolate_real_roots(p).size()) == sturm);
  }
}

TEST_CASE("exact roots adjacent to isolating intervals") {
  // Integer roots are hit exactly as bisection midpoints; neighbouring
  // intervals must still bracket a sign change of the square-free part.
  const RatPoly p = poly({0, 1}) * poly({-4, 1}) * poly({-16, 1}) * poly({-36, 1}) * poly({-5, 1}) * poly({7, 2}) *
                    poly({-17, 1}) * poly({-17, 1});
  const RatPoly s = squarefree_part(p);
  const auto roots = isolate_real_roots(p);
  const std::vector<double> want = {-3.5, 0, 4, 5, 16, 17, 36};
  REQUIRE(roots.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(roots[i].lo <= rat_of_double(want[i]));
    CHECK(roots[i].hi >= rat_of_double(want[i]));
    if (roots[i].lo != roots[i].hi) CHECK(s.sign_at(roots[i].lo) * s.sign_at(roots[i].hi) < 0);
    CHECK(roots[i].multiplicity == (want[i] == 17 ? 2 : 1));
    if (i > 0) CHECK(roots[i - 1].hi <= roots[i].lo);
  }
}

TEST_CASE("root bound") {
  CHECK(root_bound(poly({-1000000, 0, 1})) >= 1000);
  for (const auto& r : isolate_real_roots(poly({-1000000, 0, 1}))) CHECK(abs(r.lo) <= root_bound(poly({-1000000, 0, 1})));
  CHECK(root_bound(poly({1, 3})) >= Rat(1, 3));
}

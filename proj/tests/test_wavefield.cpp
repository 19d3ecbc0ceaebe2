#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qes/spectra.hpp"
#include "qes/wavefield.hpp"

using namespace qes;

namespace {

using cd = std::complex<double>;

Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

const cd kI(0, 1);

}  // namespace

TEST_CASE("psi examples") {
  // N = 1/2, E = 0: only the prefactor survives.
  const WaveSample s = eval_psi({1.0, 0.5}, Parity::Even, 0.0);
  CHECK(s.truncated);
  CHECK(s.n_max == 0);
  double worst = 0;
  for (int j = 0; j < s.size(); ++j)
    worst = std::max(worst, std::abs(s.values(j) - std::exp(kI * 0.25 * std::cos(2 * s.theta[static_cast<std::size_t>(j)]))));
  CHECK(worst < 1e-15);

  const cd E = 2 - std::sqrt(3.0);
  const WaveSample w = eval_psi({1.0, 1.0}, Parity::Even, E);
  CHECK(w.truncated);
  CHECK(w.n_max == 1);
  const int half = w.size() / 2;
  for (int j = 0; j < half; ++j) CHECK(std::abs(w.values(j) - w.values(j + half)) < 1e-14);
  const double mean = w.values.squaredNorm() / w.size();
  CHECK(std::isfinite(mean));
  CHECK(mean > 0.1);

  CHECK_THROWS_AS(eval_psi({0.0, 1.0}, Parity::Even, E), std::invalid_argument);
  CHECK_THROWS_AS(eval_psi({1.0, 1.0}, Parity::Even, E, 8, 30), std::invalid_argument);
}

TEST_CASE("coefficients follow the Ansatz") {
  // c_1 = i P_1 / (zeta N), c_2 = -P_2 / (zeta^2 N (1+2N)) with P_2 = 2E^2 - 8E + 2 zeta^2 N(2N-1)
  const double z = 0.7, N = 1.3;
  const cd E(1.1, 0.2);
  const auto c = ansatz_coefficients({z, N}, Parity::Even, E, 2);
  const cd p2 = 2.0 * E * E - 8.0 * E + 2 * z * z * N * (2 * N - 1);
  CHECK(std::abs(c[0] - 1.0) < 1e-15);
  CHECK(std::abs(c[1] - kI * E / (z * N)) < 1e-14);
  CHECK(std::abs(c[2] + p2 / (z * z * N * (1 + 2 * N))) < 1e-14);
  const auto q = ansatz_coefficients({z, N}, Parity::Odd, E, 2);
  CHECK(std::abs(q[0] - kI / (z * N)) < 1e-14);
}

TEST_CASE("H on simple functions") {
  const HamiltonianParams p{0.8, 1.5};
  const auto t = uniform_grid(64);
  const WaveSample one = apply_H(p, sample_of(Eigen::VectorXcd::Ones(64)));
  for (int j = 0; j < 64; ++j)
    CHECK(std::abs(one.values(j) + 2.0 * kI * p.zeta * p.N * std::cos(2 * t[static_cast<std::size_t>(j)])) < 1e-13);

  for (int n = 0; n <= 6; ++n) {
    Eigen::VectorXcd v(64);
    for (int j = 0; j < 64; ++j) v(j) = std::cos(2 * n * t[static_cast<std::size_t>(j)]);
    CHECK(residual({0.0, 1.0}, sample_of(v, 4.0 * n * n)) < 1e-11);
  }

  Eigen::VectorXcd rough(64);
  for (int j = 0; j < 64; ++j) rough(j) = std::cos(30 * t[static_cast<std::size_t>(j)]);
  CHECK_THROWS_AS(apply_H(p, sample_of(rough)), AliasingError);
}

TEST_CASE("quasi-exact eigenfunctions solve the equation") {
  for (const Rat& N : {frac(1, 2), Rat(1), frac(3, 2), Rat(2)})
    for (Parity par : {Parity::Even, Parity::Odd}) {
      if (par == Parity::Odd && N == frac(1, 2)) continue;
      for (const Rat& z : {frac(1, 2), Rat(1), frac(3, 2)}) {
        const HamiltonianParams p{z.get_d(), N.get_d()};
        const auto lv = energies(critical_polynomial(par, N), z);
        for (const cd& E : lv.roots) {
          const WaveSample s = eval_psi(p, par, E);
          CHECK(s.truncated);
          CHECK(s.tail < 1e-10);
          CHECK_MESSAGE(residual(p, s) < 1e-10, "N=", rat_to_string(N), " ", parity_tag(par), " zeta=", rat_to_string(z));
        }
      }
    }
}

TEST_CASE("a non-root energy is not truncated and fails the equation") {
  const HamiltonianParams p{1.0, 1.0};
  const WaveSample s = eval_psi(p, Parity::Even, 0.5);
  CHECK_FALSE(s.truncated);
  CHECK(s.n_max == 10);
  CHECK(residual(p, s) > 1e-3);
}

TEST_CASE("Fourier matrix") {
  const auto d = fourier_matrix({0.0, 1.0}, 5, Parity::Even).matrix;
  for (int n = 0; n < 5; ++n) CHECK(d(n, n) == cd(4.0 * n * n));
  CHECK(d.isDiagonal());
  const auto s = fourier_matrix({0.0, 1.0}, 3, Parity::Odd).matrix;
  CHECK(s(0, 0) == cd(4));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> zeta(-3, 3), n(-2, 3);
  for (int k = 0; k < 10; ++k) {
    const HamiltonianParams p{zeta(rng), n(rng)};
    for (Parity par : {Parity::Even, Parity::Odd}) CHECK(adjoint_deviation(p, 32, par) < 1e-12);
  }
  for (Parity par : {Parity::Even, Parity::Odd}) {
    CHECK(hermiticity_deviation(fourier_matrix({1.7, 0.25}, 32, par)) < 1e-12);
    CHECK(hermiticity_deviation(fourier_matrix({1.7, 1.0}, 32, par)) > 0.1);
  }
}

TEST_CASE("matrix eigenvalues contain the quasi-exact levels") {
  for (const Rat& N : {Rat(1), frac(3, 2), Rat(2)})
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const auto lv = energies(critical_polynomial(par, N), 1);
      CHECK(sector_eigen_distance({1.0, N.get_d()}, 40, par, lv.roots) < 1e-8);
    }
}

TEST_CASE("matrix tends to the Mathieu matrix") {
  const double g = 1.5;
  auto gap = [&](double N, Parity par) {
    return (fourier_matrix({g / N, N}, 12, par).matrix - mathieu_matrix(g, 12, par).matrix).cwiseAbs().maxCoeff();
  };
  for (Parity par : {Parity::Even, Parity::Odd}) {
    CHECK(gap(1000, par) < 1e-2);
    CHECK(gap(100, par) / gap(1000, par) == doctest::Approx(10).epsilon(0.05));
  }
}

TEST_CASE("PT3") {
  for (Parity par : {Parity::Even, Parity::Odd}) {
    CHECK(pt3_check(fourier_matrix({1.0, 1.0}, 32, par)) < 1e-12);
    CHECK(pt3_check(fourier_matrix({-2.3, 0.37}, 32, par)) < 1e-12);
  }
  // The prefactor alone is fixed.
  const WaveSample f = eval_psi({1.0, 0.5}, Parity::Even, 0.0);
  CHECK((pt3_apply(f) - f.values).cwiseAbs().maxCoeff() < 1e-14);

  // Unbroken: real levels map to multiples of themselves.
  for (const Rat& N : {Rat(1), frac(3, 2), Rat(2)})
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const auto lv = energies(critical_polynomial(par, N), frac(1, 2));
      for (const cd& E : lv.roots) CHECK(pt3_check(eval_psi({0.5, N.get_d()}, par, E)) < 1e-12);
    }

  // Broken, N = 1 just past zeta = 2: the pair is exchanged.
  const Rat z = frac(21, 10);
  const auto lv = energies(critical_polynomial(Parity::Even, 1), z);
  REQUIRE(lv.real_count() == 0);
  const WaveSample a = eval_psi({2.1, 1.0}, Parity::Even, lv.roots[0]);
  const WaveSample b = eval_psi({2.1, 1.0}, Parity::Even, lv.roots[1]);
  CHECK(pt3_check(a, b) < 1e-12);
  CHECK(pt3_check(a) > 0.1);
}

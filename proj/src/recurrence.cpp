#include "qes/recurrence.hpp"

#include <stdexcept>
#include <string>

namespace qes {

namespace {

const MultiPoly& sym_E() {
  static const MultiPoly e = MultiPoly::variable(Var::E);
  return e;
}

MultiPoly zeta_squared() { return MultiPoly::variable(Var::Zeta).pow(2); }

}  // namespace

std::string_view parity_tag(Parity p) { return p == Parity::Even ? "c" : "s"; }

Parity parity_from_tag(std::string_view tag) {
  if (tag == "c" || tag == "even") return Parity::Even;
  if (tag == "s" || tag == "odd") return Parity::Odd;
  throw std::invalid_argument("unknown parity '" + std::string(tag) + "' (expected c or s)");
}

MultiPoly recurrence_coefficient(int n) {
  const MultiPoly N = MultiPoly::variable(Var::N);
  const long nn = static_cast<long>(n) * (n - 1);
  return zeta_squared() * (4 * N * N - 2 * N - MultiPoly(nn));
}

MultiPoly recurrence_coefficient(int n, const Rat& N) {
  const Rat c = 4 * N * N - 2 * N - static_cast<long>(n) * (n - 1);
  return zeta_squared() * MultiPoly(c);
}

MultiPoly diagonal_factor(int n) { return 2 * (sym_E() - MultiPoly(4L * n * n)); }

PolyFamily::PolyFamily(Parity parity, std::vector<MultiPoly> members, std::optional<Rat> fixed_N)
    : parity_(parity), members_(std::move(members)), fixed_N_(std::move(fixed_N)) {
  if (members_.empty()) throw std::invalid_argument("PolyFamily must be nonempty");
}

const MultiPoly& PolyFamily::at(int n) const {
  if (n < first() || n > last())
    throw std::out_of_range("family index " + std::to_string(n) + " outside [" + std::to_string(first()) + ", " +
                            std::to_string(last()) + "]");
  return members_[static_cast<std::size_t>(n - first())];
}

bool PolyFamily::satisfies_recurrence() const {
  const int f = first();
  if (at(f) != MultiPoly(1)) return false;
  if (last() >= f + 1) {
    const MultiPoly second = parity_ == Parity::Even ? sym_E() : diagonal_factor(1);
    if (at(f + 1) != second) return false;
  }
  for (int n = f + 1; n + 1 <= last(); ++n) {
    const MultiPoly b = fixed_N_ ? recurrence_coefficient(n, *fixed_N_) : recurrence_coefficient(n);
    if (!(at(n + 1) - diagonal_factor(n) * at(n) - b * at(n - 1)).is_zero()) return false;
  }
  return true;
}

PolyFamily generate(Parity parity, int n_max, const std::optional<Rat>& N) {
  const int f = first_index(parity);
  if (n_max < f) throw std::invalid_argument("generate: n_max below the first family index");
  std::vector<MultiPoly> members;
  members.emplace_back(1);
  if (n_max >= f + 1) members.push_back(parity == Parity::Even ? sym_E() : diagonal_factor(1));
  for (int n = f + 1; n + 1 <= n_max; ++n) {
    const auto k = static_cast<std::size_t>(n - f);
    const MultiPoly b = N ? recurrence_coefficient(n, *N) : recurrence_coefficient(n);
    members.push_back(diagonal_factor(n) * members[k] + b * members[k - 1]);
  }
  return PolyFamily(parity, std::move(members), N);
}

bool is_half_integer(const Rat& N) {
  const Rat twice = 2 * N;
  return twice.get_den() == 1 && sgn(twice) > 0;
}

namespace {

int twice_N(const Rat& N) {
  if (!is_half_integer(N)) throw std::invalid_argument("N must be a positive half-integer, got " + rat_to_string(N));
  const Rat twice = 2 * N;
  return static_cast<int>(twice.get_num().get_si());
}

}  // namespace

SpectralProblem critical_polynomial(Parity parity, const Rat& N) {
  const int m = twice_N(N);
  if (parity == Parity::Odd && m < 2) throw std::invalid_argument("odd critical polynomial requires 2N >= 2");
  const PolyFamily fam = generate(parity, m, N);
  return {N, parity, UniPolyView::from(fam.at(m), Var::E)};
}

FactorCheck factor_check(Parity parity, const Rat& N, int n) {
  const int m = twice_N(N);
  const PolyFamily fam = generate(parity, m + n, N);
  auto [q, r] = divide(fam.at(m + n), fam.at(m));
  return {q, r.is_zero()};
}

std::vector<MultiPoly> factor_sequence(int n_max) {
  const MultiPoly N = MultiPoly::variable(Var::N);
  const MultiPoly twoN = 2 * N;
  std::vector<MultiPoly> r{MultiPoly(1)};
  // R_{n+1} = 2(E - 4(2N+n)^2) R_n + zeta^2 [4N^2 - 2N - (2N+n)(2N+n-1)] R_{n-1}.
  for (int n = 0; n < n_max; ++n) {
    const MultiPoly idx = twoN + MultiPoly(n);
    MultiPoly next = 2 * (sym_E() - 4 * idx * idx) * r.back();
    if (n >= 1) next += zeta_squared() * (4 * N * N - twoN - idx * (idx - 1)) * r[r.size() - 2];
    r.push_back(std::move(next));
  }
  return r;
}

}  // namespace qes

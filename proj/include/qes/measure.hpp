#pragma once

// The moment functional L(p) = sum_k w_k p(E_k) on the quasi-exact levels:
// weights, norms and moments, each obtained along two independent routes.

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qes/recurrence.hpp"

namespace qes {

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RouteMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NormSequence {
  Parity family;
  std::optional<Rat> N;          // unset: symbolic in N
  std::vector<MultiPoly> values;  // values[k] is the norm of member first_index + k

  const MultiPoly& at(int n) const { return values.at(static_cast<std::size_t>(n - first_index(family))); }
};

/// zeta^{2n}/2 (1-2N)_n (2N)_n for P (n >= 1, N_0 = 1) and
/// zeta^{2n-2} (1-2N)_n (2N)_n / (2N(1-2N)) for Q.  For Q at fixed N,
/// N in {0, 1/2} is rejected.
NormSequence norms_closed_form(Parity family, int n_max, const std::optional<Rat>& N = std::nullopt);

/// Products of b_1 = (N - 2N^2) zeta^2, b_k = [k(k-1) + 2N - 4N^2] zeta^2;
/// P takes k = 1..n, Q takes k = 2..n.
NormSequence norms_from_b(Parity family, int n_max, const std::optional<Rat>& N = std::nullopt);

/// Gamma^2(1/2 + n) / pi = ((2n-1)!! / 2^n)^2.
Rat gamma_half_squared_over_pi(int n);

struct DiscreteMeasure {
  Parity family;
  Rat N;
  Rat zeta;
  std::vector<std::complex<double>> nodes;
  std::vector<std::complex<double>> weights;
  double residual = 0;   // max |A w - e| of the weight system
  bool complex = false;  // some node is non-real

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Nodes are the roots of P_{2N} (L = 2N) or Q_{2N} (L = 2N - 1); the
/// weights solve sum_k w_k Phi_n(E_k) = delta over the lowest L members.
/// Throws SingularSystem when nodes coincide.
DiscreteMeasure solve_weights(Parity family, const Rat& N, const Rat& zeta);

/// Largest deviation of sum_k w_k Phi_n(E_k) Phi_m(E_k) from N_n delta_nm over
/// all n, m <= n_max, each measured relative to sum_k |w_k| M_n(E_k) M_m(E_k)
/// (at least 1), where M_n(x) = sum_i |a_i||x|^i bounds the rounding in
/// Phi_n(x).  Norms vanish from n = 2N on, where the measure still represents
/// L because P_{2N} (or Q_{2N}) annihilates it.
double verify_orthogonality(const DiscreteMeasure& m, int n_max);

/// Complex values of member n of the family at (N, zeta) on the nodes.
std::vector<std::complex<double>> family_values(const DiscreteMeasure& m, int n);

struct MomentSequence {
  Parity family;
  Rat N;
  std::vector<MultiPoly> values;  // mu_0 .. mu_{n_max}, polynomials in zeta
};

/// Exact moments from the expansion coefficients nu_k^(n) of the members:
/// L(P_n) = 0 for n >= 1 and L(Q_n) = 0 for n >= 2, mu_0 = 1.
MomentSequence moments_exact(Parity family, const Rat& N, int n_max);

/// sum_k w_k E_k^n for n = 0..n_max.
std::vector<std::complex<double>> moments_from_measure(const DiscreteMeasure& m, int n_max);

/// moments_exact() after confirming the node sums agree to `tolerance`
/// (relative to sum_k |w_k||E_k|^n) at each sample zeta.  Default samples are
/// 1/4, 1/2 and 3/4 of the first exceptional point (or 1/3, 1/2, 1 when
/// there is none).  Throws RouteMismatch.
MomentSequence moments(Parity family, const Rat& N, int n_max, std::vector<Rat> samples = {},
                       double tolerance = 1e-9);

}  // namespace qes

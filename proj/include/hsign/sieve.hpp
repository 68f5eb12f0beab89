#pragma once

#include <cstdint>
#include <optional>

#include "hsign/coefficients.hpp"
#include "hsign/error.hpp"
#include "hsign/ideals.hpp"

namespace hsign {

/// h_y at a prime of norm N: 1 for N <= sqrt(y), 0 for sqrt(y) < N <= y,
/// -2 for N > y.
int sieve_prime_weight(double y, std::uint64_t norm);

/// The multiplicative weight h_y; vanishes on every non-square-free ideal.
template <IdealLike I>
int sieve_weight(double y, const I& ideal) {
  int w = 1;
  for (std::size_t k = 0; k < ideal.size(); ++k) {
    if (ideal.exponent(k) > 1) return 0;
    w *= sieve_prime_weight(y, ideal.prime(k).norm);
    if (w == 0) return 0;
  }
  return w;
}

/// Exact sum of h_y over ideals of norm <= y^u, for y >= 4 and 1 <= u <= 3/2.
std::int64_t sieve_weight_sum(const QuadraticField& field, double y, double u);

/// Main term (c_F / zeta_F(2)) y^u (rho(2u) - 2 log u) of that sum.
double sieve_weight_sum_main_term(const QuadraticField& field, double y, double u);

/// g_y with C = g_y * h_y (Dirichlet convolution), on a square-free ideal:
/// prod (C(p) - h_y(p)). Throws NotSquareFree and MissingPrime.
template <IdealLike I>
double quotient_weight(const CoefficientSystem& system, double y, const I& ideal) {
  if (!is_squarefree(ideal)) throw NotSquareFree("quotient weight is taken on square-free ideals");
  double g = 1.0;
  for (std::size_t k = 0; k < ideal.size(); ++k) {
    g *= system.prime_value(ideal.prime(k)) - sieve_prime_weight(y, ideal.prime(k).norm);
  }
  return g;
}

/// Both sides of the convolution identity up to norm `limit`:
///   square-free:  sum^#_m C(m) = sum^#_d g(d) sum^#_{l, (l,d)=1} h(l)
///   all ideals:   sum_m C(m)   = sum_d g(d) sum_{N(l) <= limit/N(d)} h(l)
/// where g extends to prime powers by g(p^v) = C(p^v) - h(p) g(p^{v-1}).
/// `uncoprime_rhs` drops the coprimality condition in the square-free form;
/// it is reported for comparison and is not an identity.
struct ConvolutionReport {
  double limit = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double full_lhs = 0.0;
  double full_rhs = 0.0;
  double uncoprime_rhs = 0.0;
  bool holds = false;  // both identities within 1e-9 (relative to 1 + |lhs|)
};

ConvolutionReport check_convolution(const CoefficientSystem& system, double y, double limit);

/// Lower-bound chain T(y^u) >= T^#(y^u) >= sum_{N(m) <= y^u} h_y(m), with
/// g_y >= 0 on square-free ideals checked directly rather than assumed.
struct LowerBoundReport {
  double y = 0.0;
  double u = 0.0;
  double partial_sum = 0.0;             // T(y^u)
  double squarefree_partial_sum = 0.0;  // T^#(y^u)
  std::int64_t weight_sum = 0;          // sum of h_y
  bool quotient_nonnegative = false;    // g_y >= 0 on every square-free ideal
  bool holds = false;                   // T^# >= sum of h_y
  std::optional<PrimeIdeal> premise_violation;  // first prime with C(p) < h_y(p)
};

/// Needs y >= 4 and 1 <= u < kappa.
LowerBoundReport check_lower_bound(const CoefficientSystem& system, double y, double u);

}  // namespace hsign

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "hsign/coefficients.hpp"
#include "hsign/ideals.hpp"

namespace hsign {

/// Values within this distance of zero are classified as zero, absorbing the
/// rounding left by exact algebraic cancellations such as C(p) = 1 => C(p^2) = 0.
inline constexpr double kZeroThreshold = 1e-12;

/// -1, 0 or +1 under kZeroThreshold.
int classify_sign(double value);

// ---------------------------------------------------------------------------
// Sums over the first rows of an IdealTable with caller-supplied values
// (values[i] belongs to row i). These are the primitives; the
// CoefficientSystem overloads below evaluate the system and delegate.

/// sum_{N(m) <= x} a(m).
double partial_sum(const IdealTable& table, std::span<const double> values, double x,
                   unsigned threads = 1);

/// sum_{N(m) <= x} a(m) log(x / N(m)).
double log_weighted_sum(const IdealTable& table, std::span<const double> values, double x,
                        unsigned threads = 1);

/// int_1^x A(t) / t dt for the step function A(t) = sum_{N(m) <= t} a(m),
/// integrated exactly piece by piece between consecutive distinct norms.
/// Equals log_weighted_sum by partial summation.
double log_weighted_sum_by_parts(const IdealTable& table, std::span<const double> values, double x);

/// T(f, x) = sum_{N(m) <= x} C(m).
double partial_sum(const CoefficientSystem& system, double x, unsigned threads = 1);

/// S(f, x) = sum_{N(m) <= x} C(m) log(x / N(m)).
double log_weighted_sum(const CoefficientSystem& system, double x, unsigned threads = 1);

/// S(f, x) through the integral of T(f, t) / t.
double log_weighted_sum_by_parts(const CoefficientSystem& system, double x);

/// First ideal in enumeration order (norm, then factorization) with C(m) < 0,
/// searching norms <= x_max in geometrically growing windows.
std::optional<IdealEntry> first_negative(const CoefficientSystem& system, double x_max);

// ---------------------------------------------------------------------------

struct SignReport {
  double x = 0.0;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  std::int64_t zeros = 0;
  /// Euler product for the density of ideals with C(m) != 0.
  double euler_product_prediction = 0.0;
  /// max(|pos/(pos+neg) - 1/2|, |neg/(pos+neg) - 1/2|).
  double half_deviation = 0.0;

  std::int64_t total() const noexcept { return positives + negatives + zeros; }
};

SignReport sign_counts(const CoefficientSystem& system, double x);
SignReport sign_counts(const CoefficientSystem& system, const IdealTable& table, double x);

/// (1 / #{N(m) <= x}) sum_{N(m) <= x} w(m).
double mean_value(const IdealTable& table, double x,
                  const std::function<double(const IdealRef&)>& weight);
double mean_value(const QuadraticField& field, double x,
                  const std::function<double(const IdealRef&)>& weight);

// ---------------------------------------------------------------------------

/// Weight of a prime power p^v (v >= 1), in [0, 1].
using PrimePowerWeight = std::function<double(const PrimeIdeal&, unsigned)>;

struct EulerProductReport {
  double value = 0.0;
  double truncation = 0.0;
  /// sum over N(p) in (T/2, T] of (1 - w(p)) / N(p); a mean-value product
  /// converges only if these dyadic blocks vanish.
  double dyadic_defect = 0.0;
  bool converged = false;  // dyadic_defect <= 1e-3
  /// Bound on |log| of the omitted factors when w(p) = 1 beyond T: 4 / T.
  double tail_bound = 0.0;
};

/// prod_{N(p) <= T} (1 - 1/N(p)) (1 + w(p)/N(p) + w(p^2)/N(p)^2 + ...), the
/// inner series summed to double precision. Needs truncation >= 100.
EulerProductReport euler_product(const QuadraticField& field, const PrimePowerWeight& weight,
                                 double truncation);

// ---------------------------------------------------------------------------

struct LValueReport {
  double s = 0.0;
  double truncation = 0.0;
  double series = 0.0;   // sum_{N(m) <= T} C(m) N(m)^{-s}
  double product = 0.0;  // prod_{N(p) <= T} (1 - C(p) N(p)^{-s} + N(p)^{-2s})^{-1}
  double discrepancy = 0.0;
  double value() const noexcept { return product; }
};

/// Needs s > 1 (DomainError) and every prime of norm <= T (MissingPrime).
LValueReport l_value(const CoefficientSystem& system, double s, double truncation);

/// Least-squares slope of log|value| against log x. Needs >= 3 samples, x
/// positive and strictly increasing, values finite and nonzero (DegenerateFit).
double growth_exponent(std::span<const std::pair<double, double>> samples);

}  // namespace hsign

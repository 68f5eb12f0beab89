#include "hsign/sums.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsign/error.hpp"
#include "hsign/summation.hpp"

namespace hsign {

int classify_sign(double value) {
  if (value > kZeroThreshold) return 1;
  if (value < -kZeroThreshold) return -1;
  return 0;
}

namespace {

std::size_t rows_up_to(const IdealTable& table, std::span<const double> values, double x) {
  if (!(x >= 1.0)) throw DomainError("sums need x >= 1");
  if (norm_bound(x) > table.norm_limit()) {
    throw DomainError("table does not reach x = " + std::to_string(x));
  }
  const std::size_t n = table.count_up_to(x);
  if (values.size() < n) throw DomainError("fewer values than table rows");
  return n;
}

}  // namespace

double partial_sum(const IdealTable& table, std::span<const double> values, double x,
                   unsigned threads) {
  const std::size_t n = rows_up_to(table, values, x);
  return deterministic_sum(n, [&](std::size_t i) { return values[i]; }, threads);
}

double log_weighted_sum(const IdealTable& table, std::span<const double> values, double x,
                        unsigned threads) {
  const std::size_t n = rows_up_to(table, values, x);
  const double log_x = std::log(x);
  const auto norms = table.norms();
  return deterministic_sum(
      n,
      [&](std::size_t i) { return values[i] * (log_x - std::log(static_cast<double>(norms[i]))); },
      threads);
}

double log_weighted_sum_by_parts(const IdealTable& table, std::span<const double> values,
                                 double x) {
  const std::size_t n = rows_up_to(table, values, x);
  const auto norms = table.norms();
  CompensatedSum running;  // A(t) on the current piece
  CompensatedSum integral;
  std::size_t i = 0;
  while (i < n) {
    const std::uint64_t norm = norms[i];
    while (i < n && norms[i] == norm) running += values[i++];
    const double next = i < n ? static_cast<double>(norms[i]) : x;
    integral += running.value() * (std::log(next) - std::log(static_cast<double>(norm)));
  }
  return integral.value();
}

double partial_sum(const CoefficientSystem& system, double x, unsigned threads) {
  const IdealTable table = enumerate_ideals(system.field(), x);
  return partial_sum(table, system.values(table), x, threads);
}

double log_weighted_sum(const CoefficientSystem& system, double x, unsigned threads) {
  const IdealTable table = enumerate_ideals(system.field(), x);
  return log_weighted_sum(table, system.values(table), x, threads);
}

double log_weighted_sum_by_parts(const CoefficientSystem& system, double x) {
  const IdealTable table = enumerate_ideals(system.field(), x);
  return log_weighted_sum_by_parts(table, system.values(table), x);
}

std::optional<IdealEntry> first_negative(const CoefficientSystem& system, double x_max) {
  if (!(x_max >= 1.0)) throw DomainError("first_negative needs x_max >= 1");
  double window = std::min(x_max, 1024.0);
  while (true) {
    const IdealTable table = enumerate_ideals(system.field(), window);
    const std::vector<double> values = system.values(table);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (classify_sign(values[i]) < 0) return table.entry(i);
    }
    if (window >= x_max) return std::nullopt;
    window = std::min(x_max, window * 16.0);
  }
}

// ---------------------------------------------------------------------------

SignReport sign_counts(const CoefficientSystem& system, double x) {
  return sign_counts(system, enumerate_ideals(system.field(), x), x);
}

SignReport sign_counts(const CoefficientSystem& system, const IdealTable& table, double x) {
  const std::size_t n = table.count_up_to(x);
  const std::vector<double> values = system.values(table, n);
  SignReport report;
  report.x = x;
  for (double v : values) {
    switch (classify_sign(v)) {
      case 1: ++report.positives; break;
      case -1: ++report.negatives; break;
      default: ++report.zeros; break;
    }
  }
  const std::int64_t nonzero = report.positives + report.negatives;
  if (nonzero > 0) {
    const double pos = static_cast<double>(report.positives) / static_cast<double>(nonzero);
    const double neg = static_cast<double>(report.negatives) / static_cast<double>(nonzero);
    report.half_deviation = std::max(std::abs(pos - 0.5), std::abs(neg - 0.5));
  }
  // Nonzero indicator s(p^v); primes outside the system count as nonzero.
  const PrimePowerWeight nonzero_indicator = [&system](const PrimeIdeal& p, unsigned v) {
    if (!system.contains(p)) return 1.0;
    return classify_sign(system.prime_power_value(p, v)) != 0 ? 1.0 : 0.0;
  };
  report.euler_product_prediction =
      euler_product(system.field(), nonzero_indicator, std::max(x, 100.0)).value;
  return report;
}

double mean_value(const IdealTable& table, double x,
                  const std::function<double(const IdealRef&)>& weight) {
  const std::size_t n = table.count_up_to(x);
  if (n == 0) throw DomainError("mean value needs x >= 1");
  CompensatedSum sum;
  for (std::size_t i = 0; i < n; ++i) sum += weight(table[i]);
  return sum.value() / static_cast<double>(n);
}

double mean_value(const QuadraticField& field, double x,
                  const std::function<double(const IdealRef&)>& weight) {
  return mean_value(enumerate_ideals(field, x), x, weight);
}

// ---------------------------------------------------------------------------

EulerProductReport euler_product(const QuadraticField& field, const PrimePowerWeight& weight,
                                 double truncation) {
  if (!(truncation >= 100.0)) throw DomainError("Euler product truncation must be >= 100");
  EulerProductReport report;
  report.truncation = truncation;
  CompensatedSum log_product;
  CompensatedSum defect;
  for (const PrimeIdeal& p : prime_ideals_up_to(field, truncation)) {
    const double inv = 1.0 / static_cast<double>(p.norm);
    double tail = 0.0;  // the inner series minus its leading 1
    double power = 1.0;
    for (unsigned v = 1;; ++v) {
      power *= inv;
      // Every remaining term is at most N^{-v}, so the rest is below 2 N^{-v}.
      if (2.0 * power <= 1e-17 * (1.0 + tail)) break;
      const double w = weight(p, v);
      if (!(w >= 0.0 && w <= 1.0)) throw DomainError("prime-power weights must lie in [0, 1]");
      tail += w * power;
    }
    log_product += std::log1p(-inv) + std::log1p(tail);
    if (2.0 * static_cast<double>(p.norm) > truncation) defect += (1.0 - weight(p, 1)) * inv;
  }
  report.value = std::exp(log_product.value());
  report.dyadic_defect = defect.value();
  report.converged = report.dyadic_defect <= 1e-3;
  report.tail_bound = 4.0 / truncation;
  return report;
}

LValueReport l_value(const CoefficientSystem& system, double s, double truncation) {
  if (!(s > 1.0)) throw DomainError("L(s, f) is evaluated only for s > 1");
  if (!(truncation >= 2.0)) throw DomainError("L-value truncation must be >= 2");
  const IdealTable table = enumerate_ideals(system.field(), truncation);
  const std::vector<double> c = system.values(table);
  const auto norms = table.norms();

  LValueReport report;
  report.s = s;
  report.truncation = truncation;
  // Smallest terms first.
  CompensatedSum series;
  for (std::size_t i = c.size(); i-- > 0;) {
    series += c[i] * std::pow(static_cast<double>(norms[i]), -s);
  }
  report.series = series.value();

  CompensatedSum log_product;
  for (const PrimeIdeal& p : table.primes()) {
    const double x = std::pow(static_cast<double>(p.norm), -s);
    log_product += -std::log1p(-system.prime_value(p) * x + x * x);
  }
  report.product = std::exp(log_product.value());
  report.discrepancy = std::abs(report.series - report.product);
  return report;
}

double growth_exponent(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw DegenerateFit("growth fit needs at least 3 samples");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [x, v] = samples[i];
    if (!(x > 0.0) || (i > 0 && !(x > samples[i - 1].first))) {
      throw DegenerateFit("growth fit needs positive, strictly increasing x");
    }
    if (!std::isfinite(v) || v == 0.0) throw DegenerateFit("growth fit needs finite nonzero values");
    sx += std::log(x);
    sy += std::log(std::abs(v));
  }
  const double n = static_cast<double>(samples.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, v] : samples) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(std::abs(v)) - my);
  }
  return sxy / sxx;
}

}  // namespace hsign

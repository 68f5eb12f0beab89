#include "hsign/sieve.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hsign/dickman.hpp"
#include "hsign/summation.hpp"

namespace hsign {

namespace {

void require_range(double y, double u) {
  if (!(y >= 4.0)) throw DomainError("sieve weight needs y >= 4, got " + std::to_string(y));
  if (!(u >= 1.0 && u <= 1.5)) {
    throw DomainError("sieve weight sum needs 1 <= u <= 3/2, got " + std::to_string(u));
  }
}

struct WeightedPrimes {
  std::vector<std::uint64_t> norms;
  std::vector<int> weights;
  std::vector<std::int64_t> prefix;  // prefix[i] = sum of weights[0..i)
};

// Square-free h-weighted count over ideals of norm <= bound from primes [start..).
std::int64_t weighted_from(const WeightedPrimes& p, std::size_t start, std::uint64_t bound) {
  std::int64_t total = 1;
  for (std::size_t i = start; i < p.norms.size(); ++i) {
    const std::uint64_t n = p.norms[i];
    if (n > bound) break;
    if (n > bound / n) {
      const auto end = static_cast<std::size_t>(
          std::upper_bound(p.norms.begin() + static_cast<std::ptrdiff_t>(i), p.norms.end(), bound) -
          p.norms.begin());
      total += p.prefix[end] - p.prefix[i];
      break;
    }
    if (p.weights[i] != 0) total += p.weights[i] * weighted_from(p, i + 1, bound / n);
  }
  return total;
}

}  // namespace

int sieve_prime_weight(double y, std::uint64_t norm) {
  const double n = static_cast<double>(norm);
  if (n * n <= y) return 1;
  if (n <= y) return 0;
  return -2;
}

std::int64_t sieve_weight_sum(const QuadraticField& field, double y, double u) {
  require_range(y, u);
  const double limit = std::pow(y, u);
  WeightedPrimes primes;
  for (const PrimeIdeal& p : prime_ideals_up_to(field, limit)) {
    primes.norms.push_back(p.norm);
    primes.weights.push_back(sieve_prime_weight(y, p.norm));
  }
  primes.prefix.assign(primes.norms.size() + 1, 0);
  for (std::size_t i = 0; i < primes.weights.size(); ++i) {
    primes.prefix[i + 1] = primes.prefix[i] + primes.weights[i];
  }
  return weighted_from(primes, 0, norm_bound(limit));
}

double sieve_weight_sum_main_term(const QuadraticField& field, double y, double u) {
  require_range(y, u);
  return zeta_residue(field) / dedekind_zeta(field, 2.0) * std::pow(y, u) *
         kappa_gap(default_dickman_solver(), u);
}

// ---------------------------------------------------------------------------

namespace {

bool coprime(std::span<const IdealTable::PackedFactor> a,
             std::span<const IdealTable::PackedFactor> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->prime == j->prime) return false;
    if (i->prime < j->prime) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

bool squarefree_row(std::span<const IdealTable::PackedFactor> f) {
  for (const auto& x : f) {
    if (x.exponent > 1) return false;
  }
  return true;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)); }

}  // namespace

ConvolutionReport check_convolution(const CoefficientSystem& system, double y, double limit) {
  if (!(y >= 4.0)) throw DomainError("sieve weight needs y >= 4");
  if (!(limit >= 1.0)) throw DomainError("convolution check needs limit >= 1");
  const IdealTable table = enumerate_ideals(system.field(), limit);
  const std::vector<double> c = system.values(table);
  const auto primes = table.primes();

  // g and h at prime powers, indexed like table.primes().
  std::vector<std::vector<double>> g_pow(primes.size());
  std::vector<int> h_prime(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    unsigned max_exponent = 1;
    for (std::uint64_t n = primes[i].norm; n <= table.norm_limit() / primes[i].norm;
         n *= primes[i].norm) {
      ++max_exponent;
    }
    const auto c_pow = hecke_prime_powers(system.prime_value(primes[i]), max_exponent);
    h_prime[i] = sieve_prime_weight(y, primes[i].norm);
    g_pow[i].assign(max_exponent + 1, 1.0);
    for (unsigned v = 1; v <= max_exponent; ++v) g_pow[i][v] = c_pow[v] - h_prime[i] * g_pow[i][v - 1];
  }

  const std::size_t n = table.size();
  std::vector<double> g(n, 1.0);
  std::vector<int> h(n, 1);
  std::vector<bool> squarefree(n);
  for (std::size_t row = 0; row < n; ++row) {
    const auto f = table.factors(row);
    squarefree[row] = squarefree_row(f);
    for (const auto& x : f) {
      g[row] *= g_pow[x.prime][x.exponent];
      h[row] = x.exponent > 1 ? 0 : h[row] * h_prime[x.prime];
    }
  }
  // H(z) = sum_{N(l) <= z} h(l) = h_prefix[count of rows with norm <= z].
  std::vector<double> h_prefix(n + 1, 0.0);
  for (std::size_t row = 0; row < n; ++row) h_prefix[row + 1] = h_prefix[row] + h[row];

  ConvolutionReport report;
  report.limit = limit;
  CompensatedSum lhs, rhs, full_lhs, full_rhs, uncoprime;
  const std::uint64_t bound = table.norm_limit();
  for (std::size_t d = 0; d < n; ++d) {
    full_lhs += c[d];
    const std::size_t inner = table.count_up_to(static_cast<double>(bound / table.norms()[d]));
    full_rhs += g[d] * h_prefix[inner];
    if (!squarefree[d]) continue;
    lhs += c[d];
    uncoprime += g[d] * h_prefix[inner];
    CompensatedSum h_coprime;
    for (std::size_t l = 0; l < inner; ++l) {
      if (h[l] != 0 && coprime(table.factors(d), table.factors(l))) h_coprime += h[l];
    }
    rhs += g[d] * h_coprime.value();
  }
  report.lhs = lhs.value();
  report.rhs = rhs.value();
  report.full_lhs = full_lhs.value();
  report.full_rhs = full_rhs.value();
  report.uncoprime_rhs = uncoprime.value();
  report.holds = close(report.lhs, report.rhs) && close(report.full_lhs, report.full_rhs);
  return report;
}

LowerBoundReport check_lower_bound(const CoefficientSystem& system, double y, double u) {
  if (!(y >= 4.0)) throw DomainError("sieve weight needs y >= 4");
  const double kappa = solve_kappa();
  if (!(u >= 1.0 && u < kappa)) {
    throw DomainError("lower-bound check needs 1 <= u < kappa = " + std::to_string(kappa));
  }
  const IdealTable table = enumerate_ideals(system.field(), std::pow(y, u));
  const std::vector<double> c = system.values(table);

  LowerBoundReport report;
  report.y = y;
  report.u = u;
  for (const PrimeIdeal& p : table.primes()) {
    if (system.prime_value(p) < sieve_prime_weight(y, p.norm)) {
      report.premise_violation = p;
      break;
    }
  }
  CompensatedSum total, squarefree_total;
  std::int64_t weight_sum = 0;
  bool nonnegative = true;
  for (std::size_t row = 0; row < table.size(); ++row) {
    total += c[row];
    const IdealRef ideal = table[row];
    if (!is_squarefree(ideal)) continue;
    squarefree_total += c[row];
    weight_sum += sieve_weight(y, ideal);
    if (nonnegative && quotient_weight(system, y, ideal) < 0.0) nonnegative = false;
  }
  report.partial_sum = total.value();
  report.squarefree_partial_sum = squarefree_total.value();
  report.weight_sum = weight_sum;
  report.quotient_nonnegative = nonnegative;
  report.holds = report.squarefree_partial_sum >= static_cast<double>(report.weight_sum);
  return report;
}

}  // namespace hsign

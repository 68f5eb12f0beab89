#include "hsign/ideals.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hsign/error.hpp"
#include "hsign/primes.hpp"
#include "hsign/summation.hpp"

namespace hsign {

std::string_view to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
    case Splitting::Rational: return "rational";
  }
  return "?";
}

std::vector<PrimeIdeal> primes_above(const QuadraticField& field, std::uint64_t p) {
  if (field.is_rational()) return {{p, p, Splitting::Rational, 0}};
  switch (field.character(p)) {
    case 0: return {{p, p, Splitting::Ramified, 0}};
    case 1: return {{p, p, Splitting::Split, 0}, {p, p, Splitting::Split, 1}};
    default: return {{p, p * p, Splitting::Inert, 0}};
  }
}

PrimeIdeal prime_ideal(const QuadraticField& field, std::uint64_t p, int label) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not a rational prime");
  for (const PrimeIdeal& ideal : primes_above(field, p)) {
    if (ideal.label == label) return ideal;
  }
  throw DomainError("no prime ideal above " + std::to_string(p) + " with label " +
                    std::to_string(label));
}

std::uint64_t norm_bound(double x) {
  if (!(x >= 0.0)) return 0;
  return static_cast<std::uint64_t>(std::floor(x + 1e-9));
}

std::vector<PrimeIdeal> prime_ideals_up_to(const QuadraticField& field, double limit) {
  const std::uint64_t bound = norm_bound(limit);
  std::vector<PrimeIdeal> out;
  for (std::uint64_t p : primes_up_to(bound)) {
    for (const PrimeIdeal& ideal : primes_above(field, p)) {
      if (ideal.norm <= bound) out.push_back(ideal);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("ideal norm overflows 64 bits");
  return r;
}

}  // namespace

IdealEntry::IdealEntry(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.prime < b.prime; });
  for (const Factor& f : factors) {
    if (f.exponent == 0) throw DomainError("ideal factors need positive exponents");
    if (!factors_.empty() && factors_.back().prime == f.prime) {
      factors_.back().exponent += f.exponent;
    } else {
      factors_.push_back(f);
    }
  }
  for (const Factor& f : factors_) {
    for (unsigned e = 0; e < f.exponent; ++e) norm_ = checked_mul(norm_, f.prime.norm);
  }
}

IdealEntry IdealEntry::prime_power(const PrimeIdeal& p, unsigned exponent) {
  return IdealEntry({Factor{p, exponent}});
}

IdealEntry operator*(const IdealEntry& a, const IdealEntry& b) {
  std::vector<Factor> merged(a.factors_.begin(), a.factors_.end());
  merged.insert(merged.end(), b.factors_.begin(), b.factors_.end());
  return IdealEntry(std::move(merged));
}

std::string to_string(const IdealEntry& ideal) {
  if (ideal.is_unit()) return "1";
  std::string out;
  for (const Factor& f : ideal.factors()) {
    if (!out.empty()) out += '*';
    out += "P(" + std::to_string(f.prime.rational_prime) + "," + std::to_string(f.prime.label) + ")";
    if (f.exponent > 1) out += "^" + std::to_string(f.exponent);
  }
  return out;
}

IdealEntry IdealRef::to_entry() const {
  std::vector<Factor> factors;
  factors.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) factors.push_back({prime(k), exponent(k)});
  return IdealEntry(std::move(factors));
}

std::size_t IdealTable::count_up_to(double x) const {
  const std::uint64_t bound = norm_bound(x);
  return static_cast<std::size_t>(std::upper_bound(norms_.begin(), norms_.end(), bound) -
                                  norms_.begin());
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint64_t> prime_norms(const QuadraticField& field, double limit) {
  std::vector<std::uint64_t> norms;
  for (const PrimeIdeal& p : prime_ideals_up_to(field, limit)) norms.push_back(p.norm);
  return norms;
}

// Ideals of norm <= bound built from primes norms[start..] (sorted).
std::int64_t count_from(std::span<const std::uint64_t> norms, std::size_t start,
                        std::uint64_t bound, bool squarefree) {
  std::int64_t total = 1;
  for (std::size_t i = start; i < norms.size(); ++i) {
    const std::uint64_t n = norms[i];
    if (n > bound) break;
    if (n > bound / n) {
      // No product of two remaining primes fits: only the primes themselves.
      total += std::upper_bound(norms.begin() + static_cast<std::ptrdiff_t>(i), norms.end(), bound) -
               (norms.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
    std::uint64_t rest = bound / n;
    while (true) {
      total += count_from(norms, i + 1, rest, squarefree);
      if (squarefree || rest < n) break;
      rest /= n;
    }
  }
  return total;
}

struct Enumerator {
  std::span<const PrimeIdeal> primes;
  std::uint64_t bound;
  std::vector<IdealTable::PackedFactor> stack;
  std::vector<std::uint64_t>& norms;
  std::vector<std::uint32_t>& offsets;
  std::vector<IdealTable::PackedFactor>& factors;

  void emit(std::uint64_t norm) {
    norms.push_back(norm);
    factors.insert(factors.end(), stack.begin(), stack.end());
    offsets.push_back(static_cast<std::uint32_t>(factors.size()));
  }

  void walk(std::size_t start, std::uint64_t norm) {
    for (std::size_t i = start; i < primes.size(); ++i) {
      const std::uint64_t n = primes[i].norm;
      if (n > bound / norm) break;
      std::uint64_t m = norm * n;
      stack.push_back({static_cast<std::uint32_t>(i), 1});
      while (true) {
        emit(m);
        walk(i + 1, m);
        if (n > bound / m) break;
        m *= n;
        ++stack.back().exponent;
      }
      stack.pop_back();
    }
  }
};

}  // namespace

IdealTable enumerate_ideals(const QuadraticField& field, double limit) {
  if (!(limit >= 1.0)) throw DomainError("ideal enumeration needs limit >= 1");
  IdealTable table(field);
  table.limit_ = norm_bound(limit);
  table.primes_ = prime_ideals_up_to(field, limit);

  std::vector<std::uint64_t> norms;
  std::vector<std::uint32_t> offsets{0};
  std::vector<IdealTable::PackedFactor> factors;
  Enumerator walker{table.primes_, table.limit_, {}, norms, offsets, factors};
  walker.emit(1);
  walker.walk(0, 1);

  std::vector<std::uint32_t> order(norms.size());
  std::iota(order.begin(), order.end(), 0u);
  auto key = [&](std::uint32_t i) {
    return std::span<const IdealTable::PackedFactor>(factors.data() + offsets[i],
                                                     factors.data() + offsets[i + 1]);
  };
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (norms[a] != norms[b]) return norms[a] < norms[b];
    const auto fa = key(a);
    const auto fb = key(b);
    return std::lexicographical_compare(
        fa.begin(), fa.end(), fb.begin(), fb.end(),
        [](const IdealTable::PackedFactor& x, const IdealTable::PackedFactor& y) {
          return x.prime != y.prime ? x.prime < y.prime : x.exponent < y.exponent;
        });
  });

  table.norms_.reserve(norms.size());
  table.offsets_.reserve(norms.size() + 1);
  table.factors_.reserve(factors.size());
  table.offsets_.push_back(0);
  for (std::uint32_t i : order) {
    table.norms_.push_back(norms[i]);
    const auto f = key(i);
    table.factors_.insert(table.factors_.end(), f.begin(), f.end());
    table.offsets_.push_back(static_cast<std::uint32_t>(table.factors_.size()));
  }
  return table;
}

void for_each_ideal(const QuadraticField& field, double limit,
                    const std::function<void(const IdealEntry&)>& visit) {
  if (!(limit >= 1.0)) throw DomainError("ideal enumeration needs limit >= 1");
  const std::vector<PrimeIdeal> primes = prime_ideals_up_to(field, limit);
  const std::uint64_t bound = norm_bound(limit);
  std::vector<Factor> stack;
  IdealEntry entry;
  visit(entry);
  std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t start,
                                                             std::uint64_t norm) {
    for (std::size_t i = start; i < primes.size(); ++i) {
      const std::uint64_t n = primes[i].norm;
      if (n > bound / norm) break;
      std::uint64_t m = norm * n;
      stack.push_back({primes[i], 1});
      while (true) {
        entry = IdealEntry(stack);
        visit(entry);
        walk(i + 1, m);
        if (n > bound / m) break;
        m *= n;
        ++stack.back().exponent;
      }
      stack.pop_back();
    }
  };
  walk(0, 1);
}

std::int64_t count_ideals(const QuadraticField& field, double x) {
  if (!(x >= 1.0)) throw DomainError("ideal count needs x >= 1");
  const auto norms = prime_norms(field, x);
  return count_from(norms, 0, norm_bound(x), false);
}

std::int64_t count_squarefree(const QuadraticField& field, double x) {
  if (!(x >= 1.0)) throw DomainError("square-free count needs x >= 1");
  const auto norms = prime_norms(field, x);
  return count_from(norms, 0, norm_bound(x), true);
}

std::int64_t count_smooth(const QuadraticField& field, double x, double y, bool squarefree_only) {
  if (!(x >= 1.0)) throw DomainError("smooth count needs x >= 1");
  if (!(y >= 2.0)) throw DomainError("smooth count needs y >= 2");
  const auto norms = prime_norms(field, std::min(x, y));
  return count_from(norms, 0, norm_bound(x), squarefree_only);
}

double prime_reciprocal_sum(const QuadraticField& field, double x) {
  if (!(x >= 2.0)) throw DomainError("prime reciprocal sum needs x >= 2");
  CompensatedSum sum;
  for (const PrimeIdeal& p : prime_ideals_up_to(field, x)) sum += 1.0 / static_cast<double>(p.norm);
  return sum.value();
}

}  // namespace hsign

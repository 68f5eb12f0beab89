#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "hsign/field.hpp"

namespace hsign {

/// How a rational prime decomposes. Over Q every prime is its own (single)
/// prime ideal, tagged Rational.
enum class Splitting { Split, Inert, Ramified, Rational };

std::string_view to_string(Splitting s);

struct PrimeIdeal {
  std::uint64_t rational_prime = 0;
  std::uint64_t norm = 0;
  Splitting splitting = Splitting::Rational;
  int label = 0;  // 0 or 1; only the second conjugate of a split prime has 1

  // Canonical order: (norm, rational_prime, label).
  friend std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b) {
    return std::tie(a.norm, a.rational_prime, a.label) <=>
           std::tie(b.norm, b.rational_prime, b.label);
  }
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.norm == b.norm && a.rational_prime == b.rational_prime && a.label == b.label;
  }
};

/// Prime ideals above the rational prime p, in canonical order.
std::vector<PrimeIdeal> primes_above(const QuadraticField& field, std::uint64_t p);

/// The prime ideal above p with the given conjugate label; throws DomainError
/// when p is not prime or the label does not exist for its splitting type.
PrimeIdeal prime_ideal(const QuadraticField& field, std::uint64_t p, int label = 0);

/// Every prime ideal of norm <= limit, sorted canonically.
std::vector<PrimeIdeal> prime_ideals_up_to(const QuadraticField& field, double limit);

/// Largest integer norm admitted by a real bound x (norm <= x).
std::uint64_t norm_bound(double x);

// ---------------------------------------------------------------------------
// Ideals as factorization vectors.

struct Factor {
  PrimeIdeal prime;
  unsigned exponent = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// An integral ideal: its factorization over prime ideals (canonical prime
/// order, positive exponents) and its norm. Default-constructed is O_F.
class IdealEntry {
 public:
  IdealEntry() = default;
  /// Sorts and merges repeated primes; throws DomainError on a zero exponent
  /// or a norm that overflows 64 bits.
  explicit IdealEntry(std::vector<Factor> factors);

  static IdealEntry prime_power(const PrimeIdeal& p, unsigned exponent = 1);

  std::uint64_t norm() const noexcept { return norm_; }
  std::span<const Factor> factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  const PrimeIdeal& prime(std::size_t k) const { return factors_[k].prime; }
  unsigned exponent(std::size_t k) const { return factors_[k].exponent; }
  bool is_unit() const noexcept { return factors_.empty(); }

  friend bool operator==(const IdealEntry&, const IdealEntry&) = default;
  friend IdealEntry operator*(const IdealEntry& a, const IdealEntry& b);

 private:
  std::uint64_t norm_ = 1;
  std::vector<Factor> factors_;
};

/// "1" for the unit ideal, else e.g. "P(2,0)^2*P(11,1)" (rational prime,
/// conjugate label, exponent).
std::string to_string(const IdealEntry& ideal);

/// Anything exposing an ideal's norm and factorization.
template <class I>
concept IdealLike = requires(const I& ideal, std::size_t k) {
  { ideal.norm() } -> std::convertible_to<std::uint64_t>;
  { ideal.size() } -> std::convertible_to<std::size_t>;
  { ideal.prime(k) } -> std::convertible_to<const PrimeIdeal&>;
  { ideal.exponent(k) } -> std::convertible_to<unsigned>;
};

template <IdealLike I>
bool is_squarefree(const I& ideal) {
  for (std::size_t k = 0; k < ideal.size(); ++k) {
    if (ideal.exponent(k) > 1) return false;
  }
  return true;
}

/// Moebius function on ideals.
template <IdealLike I>
int mobius(const I& ideal) {
  if (!is_squarefree(ideal)) return 0;
  return ideal.size() % 2 == 0 ? 1 : -1;
}

/// P(m): largest norm of a prime ideal dividing m (1 for the unit ideal).
template <IdealLike I>
std::uint64_t largest_prime_norm(const I& ideal) {
  std::uint64_t best = 1;
  for (std::size_t k = 0; k < ideal.size(); ++k) best = std::max(best, ideal.prime(k).norm);
  return best;
}

// ---------------------------------------------------------------------------
// Materialized, norm-ordered ideal list.

class IdealTable;

/// Lightweight view of one row of an IdealTable.
class IdealRef {
 public:
  IdealRef(const IdealTable& table, std::size_t index) : table_(&table), index_(index) {}

  std::size_t index() const noexcept { return index_; }
  std::uint64_t norm() const;
  std::size_t size() const;
  const PrimeIdeal& prime(std::size_t k) const;
  std::uint32_t prime_index(std::size_t k) const;
  unsigned exponent(std::size_t k) const;
  IdealEntry to_entry() const;

 private:
  const IdealTable* table_;
  std::size_t index_;
};

/// All ideals of norm <= limit, sorted by norm; equal norms are ordered
/// lexicographically by their (prime index, exponent) sequences. Storage is
/// flat: one norm, one offset and ~log log X packed factors per ideal.
class IdealTable {
 public:
  struct PackedFactor {
    std::uint32_t prime;  // index into primes()
    std::uint32_t exponent;
  };

  class iterator {
   public:
    using iterator_category = std::random_access_iterator_tag;
    using value_type = IdealRef;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const IdealTable* t, std::size_t i) : table_(t), index_(i) {}
    IdealRef operator*() const { return IdealRef(*table_, index_); }
    iterator& operator++() { ++index_; return *this; }
    iterator operator++(int) { auto old = *this; ++index_; return old; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    const IdealTable* table_ = nullptr;
    std::size_t index_ = 0;
  };

  const QuadraticField& field() const noexcept { return field_; }
  std::uint64_t norm_limit() const noexcept { return limit_; }
  std::size_t size() const noexcept { return norms_.size(); }
  IdealRef operator[](std::size_t i) const { return IdealRef(*this, i); }
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

  std::span<const std::uint64_t> norms() const noexcept { return norms_; }
  std::span<const PrimeIdeal> primes() const noexcept { return primes_; }
  std::span<const PackedFactor> factors(std::size_t i) const {
    return {factors_.data() + offsets_[i], factors_.data() + offsets_[i + 1]};
  }
  /// Number of leading rows with norm <= x.
  std::size_t count_up_to(double x) const;
  IdealEntry entry(std::size_t i) const { return (*this)[i].to_entry(); }

 private:
  friend IdealTable enumerate_ideals(const QuadraticField& field, double limit);
  explicit IdealTable(const QuadraticField& field) : field_(field) {}

  QuadraticField field_;
  std::uint64_t limit_ = 0;
  std::vector<PrimeIdeal> primes_;
  std::vector<std::uint64_t> norms_;
  std::vector<std::uint32_t> offsets_;
  std::vector<PackedFactor> factors_;
};

inline std::uint64_t IdealRef::norm() const { return table_->norms()[index_]; }
inline std::size_t IdealRef::size() const { return table_->factors(index_).size(); }
inline const PrimeIdeal& IdealRef::prime(std::size_t k) const {
  return table_->primes()[table_->factors(index_)[k].prime];
}
inline std::uint32_t IdealRef::prime_index(std::size_t k) const {
  return table_->factors(index_)[k].prime;
}
inline unsigned IdealRef::exponent(std::size_t k) const {
  return table_->factors(index_)[k].exponent;
}

/// Every integral ideal with norm <= limit exactly once, unit ideal first.
IdealTable enumerate_ideals(const QuadraticField& field, double limit);

/// Lazy depth-first walk over the same set as enumerate_ideals, without
/// materializing it. Visit order is depth-first over canonical prime order,
/// not norm order. The entry passed to `visit` is reused between calls.
void for_each_ideal(const QuadraticField& field, double limit,
                    const std::function<void(const IdealEntry&)>& visit);

// ---------------------------------------------------------------------------
// Exact counting functions (no materialization).

/// |{m : N(m) <= x}|.
std::int64_t count_ideals(const QuadraticField& field, double x);

/// Square-free ideals of norm <= x.
std::int64_t count_squarefree(const QuadraticField& field, double x);

/// psi(x, y): ideals of norm <= x whose prime factors all have norm <= y;
/// psi^#(x, y) when `squarefree_only`.
std::int64_t count_smooth(const QuadraticField& field, double x, double y, bool squarefree_only);

/// sum_{N(p) <= x} 1 / N(p) over prime ideals.
double prime_reciprocal_sum(const QuadraticField& field, double x);

}  // namespace hsign

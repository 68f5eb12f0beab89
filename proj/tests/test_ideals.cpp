#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "hsign/error.hpp"
#include "hsign/ideals.hpp"
#include "hsign/primes.hpp"
#include "oracles.hpp"

using namespace hsign;

namespace {

std::vector<std::uint64_t> norms_of(const std::vector<PrimeIdeal>& ps) {
  std::vector<std::uint64_t> out;
  for (const auto& p : ps) out.push_back(p.norm);
  return out;
}

std::vector<std::uint64_t> norms_of(const IdealTable& t) {
  return {t.norms().begin(), t.norms().end()};
}

}  // namespace

TEST_CASE("rational primes") {
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
  CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_up_to(1'000'000).size() == 78498);
  for (std::uint64_t n = 0; n < 2000; ++n) CHECK(is_prime(n) == oracle::prime(n));
}

TEST_CASE("prime ideals and splitting") {
  const QuadraticField f(5);
  CHECK(norms_of(prime_ideals_up_to(f, 12)) == std::vector<std::uint64_t>{4, 5, 9, 11, 11});
  CHECK(norms_of(prime_ideals_up_to(QuadraticField(1), 10)) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(prime_ideals_up_to(f, 3).empty());

  const auto eleven = primes_above(f, 11);
  REQUIRE(eleven.size() == 2);
  CHECK(eleven[0].label == 0);
  CHECK(eleven[1].label == 1);
  CHECK(eleven[0].splitting == Splitting::Split);
  CHECK(primes_above(f, 2).front().splitting == Splitting::Inert);
  CHECK(primes_above(f, 2).front().norm == 4);
  CHECK(primes_above(f, 5).front().splitting == Splitting::Ramified);
  CHECK(primes_above(QuadraticField(1), 5).front().splitting == Splitting::Rational);

  CHECK_THROWS_AS(prime_ideal(f, 9), DomainError);
  CHECK_THROWS_AS(prime_ideal(f, 2, 1), DomainError);
  CHECK_THROWS_AS(prime_ideal(f, 5, 1), DomainError);
  CHECK(prime_ideal(f, 11, 1).label == 1);

  SUBCASE("splitting invariants and norm counts match the character") {
    for (std::int64_t d : {1, 5, 8, 13, 24, 57}) {
      const QuadraticField g(d);
      const auto ps = prime_ideals_up_to(g, 5000);
      CHECK(std::is_sorted(ps.begin(), ps.end()));
      const auto expected = oracle::prime_ideal_norms(d, 5000);
      auto got = norms_of(ps);
      auto want = expected;
      std::sort(want.begin(), want.end());
      CHECK(got == want);
      for (const auto& p : ps) {
        switch (p.splitting) {
          case Splitting::Split: CHECK(p.norm == p.rational_prime); break;
          case Splitting::Inert:
            CHECK(p.norm == p.rational_prime * p.rational_prime);
            CHECK(p.label == 0);
            break;
          case Splitting::Ramified:
            CHECK(d % static_cast<std::int64_t>(p.rational_prime) == 0);
            CHECK(p.label == 0);
            break;
          case Splitting::Rational: CHECK(d == 1); break;
        }
      }
    }
  }
}

TEST_CASE("ideal entries") {
  const QuadraticField f(5);
  const PrimeIdeal p2 = prime_ideal(f, 2), p11a = prime_ideal(f, 11, 0), p11b = prime_ideal(f, 11, 1);
  const IdealEntry unit;
  CHECK(unit.is_unit());
  CHECK(unit.norm() == 1);
  CHECK(to_string(unit) == "1");
  CHECK(mobius(unit) == 1);

  const IdealEntry m({{p11b, 1}, {p2, 1}, {p2, 1}});
  CHECK(m.norm() == 4 * 4 * 11);
  CHECK(m.size() == 2);
  CHECK(m.prime(0) == p2);
  CHECK(m.exponent(0) == 2);
  CHECK(to_string(m) == "P(2,0)^2*P(11,1)");
  CHECK(mobius(m) == 0);
  CHECK(!is_squarefree(m));
  CHECK(mobius(IdealEntry::prime_power(p11a)) == -1);
  CHECK(mobius(IdealEntry({{p11a, 1}, {p11b, 1}})) == 1);
  CHECK(largest_prime_norm(m) == 11);
  CHECK(IdealEntry::prime_power(p2, 2) * IdealEntry::prime_power(p11b) == m);
  CHECK_THROWS_AS(IdealEntry({{p2, 0}}), DomainError);
  CHECK_THROWS_AS(IdealEntry::prime_power(p2, 40), DomainError);
}

TEST_CASE("enumeration") {
  const QuadraticField f(5);
  CHECK(norms_of(enumerate_ideals(f, 10)) == std::vector<std::uint64_t>{1, 4, 5, 9});
  CHECK(norms_of(enumerate_ideals(QuadraticField(1), 4)) == std::vector<std::uint64_t>{1, 2, 3, 4});
  const IdealTable t11 = enumerate_ideals(f, 11);
  REQUIRE(t11.size() == 6);
  CHECK(t11[4].prime(0).label == 0);
  CHECK(t11[5].prime(0).label == 1);
  CHECK(t11.entry(0).is_unit());
  CHECK_THROWS_AS(enumerate_ideals(f, 0.5), DomainError);
  CHECK(enumerate_ideals(f, 10.999).size() == 4);

  SUBCASE("norm counts agree with sum over d | n of chi(d)") {
    for (std::int64_t d : {1, 5, 8, 12, 13}) {
      const auto a = oracle::ideal_counts(d, 20000);
      const IdealTable t = enumerate_ideals(QuadraticField(d), 20000);
      std::vector<std::int64_t> got(20001, 0);
      for (std::uint64_t n : t.norms()) ++got[n];
      got[0] = 0;
      CAPTURE(d);
      CHECK(got == a);
    }
  }
  SUBCASE("rows are distinct, sorted, and factorizations reproduce norms") {
    const IdealTable t = enumerate_ideals(QuadraticField(13), 30000);
    std::set<std::string> seen;
    std::uint64_t prev = 0;
    for (const IdealRef r : t) {
      CHECK(r.norm() >= prev);
      prev = r.norm();
      const IdealEntry e = r.to_entry();
      CHECK(e.norm() == r.norm());
      CHECK(seen.insert(to_string(e)).second);
    }
  }
  SUBCASE("lazy walk visits the same set") {
    const IdealTable t = enumerate_ideals(f, 5000);
    std::multiset<std::uint64_t> walked;
    std::set<std::string> names;
    for_each_ideal(f, 5000, [&](const IdealEntry& e) {
      walked.insert(e.norm());
      names.insert(to_string(e));
    });
    CHECK(walked.size() == t.size());
    CHECK(std::multiset<std::uint64_t>(t.norms().begin(), t.norms().end()) == walked);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(names.contains(to_string(t.entry(i))));
  }
  SUBCASE("count_up_to") {
    const IdealTable t = enumerate_ideals(f, 1000);
    CHECK(t.count_up_to(1) == 1);
    CHECK(t.count_up_to(10) == 4);
    CHECK(t.count_up_to(1000) == t.size());
  }
}

TEST_CASE("counting functions") {
  const QuadraticField q(1), f(5);
  CHECK(count_ideals(f, 10) == 4);
  CHECK(count_ideals(q, 100) == 100);
  CHECK(count_squarefree(q, 10) == 7);
  CHECK(count_squarefree(f, 10) == 4);
  CHECK(count_smooth(q, 100, 10, false) == 46);
  CHECK(count_smooth(q, 100, 100, false) == 100);
  CHECK(count_smooth(f, 5000, 6000, false) == count_ideals(f, 5000));
  CHECK_THROWS_AS(count_smooth(f, 100, 1.5, false), DomainError);
  CHECK_THROWS_AS(count_ideals(f, 0.0), DomainError);

  SUBCASE("agree with independent Euler-factor oracles") {
    for (std::int64_t d : {1, 5, 8, 13}) {
      const QuadraticField g(d);
      const auto a = oracle::ideal_counts(d, 100000);
      CHECK(count_ideals(g, 100000) == oracle::total(a));
      for (std::uint64_t y : {2u, 10u, 100u, 1000u}) {
        if (y < 2) continue;
        CAPTURE(d);
        CAPTURE(y);
        CHECK(count_smooth(g, 10000, y, false) == oracle::total(oracle::smooth_counts(d, 10000, y, false)));
        CHECK(count_smooth(g, 10000, y, true) == oracle::total(oracle::smooth_counts(d, 10000, y, true)));
      }
      CHECK(count_squarefree(g, 10000) == oracle::total(oracle::smooth_counts(d, 10000, 10000, true)));
    }
  }
  SUBCASE("smooth square-free count equals a filter over the enumeration") {
    const IdealTable t = enumerate_ideals(f, 10000);
    std::int64_t filtered = 0;
    for (const IdealRef r : t) filtered += is_squarefree(r) && largest_prime_norm(r) <= 100;
    CHECK(count_smooth(f, 10000, 100, true) == filtered);
  }
  SUBCASE("monotone in x and y") {
    for (double x = 10; x < 5000; x *= 1.7) {
      CHECK(count_ideals(f, x) <= count_ideals(f, x * 1.7));
      CHECK(count_smooth(f, x, 30, false) <= count_smooth(f, x, 60, false));
      CHECK(count_smooth(f, x, 30, true) <= count_smooth(f, x, 30, false));
    }
  }
}

TEST_CASE("prime reciprocal sums") {
  CHECK(prime_reciprocal_sum(QuadraticField(1), 10) == doctest::Approx(1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7));
  CHECK(prime_reciprocal_sum(QuadraticField(5), 4) == doctest::Approx(0.25));
  CHECK_THROWS_AS(prime_reciprocal_sum(QuadraticField(5), 1.0), DomainError);
  for (std::int64_t d : {1, 5}) {
    const QuadraticField g(d);
    const double a = prime_reciprocal_sum(g, 1e5) - std::log(std::log(1e5));
    const double b = prime_reciprocal_sum(g, 1e6) - std::log(std::log(1e6));
    CHECK(std::abs(a - b) < 0.01);
  }
}

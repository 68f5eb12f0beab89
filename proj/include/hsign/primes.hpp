#pragma once

#include <cstdint>
#include <vector>

namespace hsign {

/// Rational primes p <= limit (sieve of Eratosthenes over odd numbers).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

bool is_prime(std::uint64_t n);

}  // namespace hsign

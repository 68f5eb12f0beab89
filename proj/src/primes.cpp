#include "hsign/primes.hpp"

namespace hsign {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  // composite[i] describes 2i + 1.
  std::vector<bool> composite(limit / 2 + 1, false);
  for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[m / 2] = true;
  }
  return primes;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace hsign

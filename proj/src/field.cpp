#include "hsign/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hsign/error.hpp"

namespace hsign {

namespace {

bool is_squarefree(std::int64_t m) {
  if (m <= 0) return false;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t disc) {
  if (disc == 1) return true;
  if (disc <= 1) return false;
  if (disc % 4 == 1) return is_squarefree(disc);
  if (disc % 4 != 0) return false;
  const std::int64_t m = disc / 4;
  return (m % 4 == 2 || m % 4 == 3) && is_squarefree(m);
}

QuadraticField::QuadraticField(std::int64_t disc) : disc_(disc) {
  if (!is_fundamental_discriminant(disc)) {
    throw NonFundamentalDiscriminant("not 1 or a positive fundamental discriminant: " +
                                     std::to_string(disc));
  }
}

int jacobi_symbol(std::int64_t a, std::uint64_t n) {
  if (n == 0 || n % 2 == 0) throw DomainError("Jacobi symbol needs an odd positive modulus");
  std::int64_t m = static_cast<std::int64_t>(n);
  a %= m;
  if (a < 0) a += m;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

int QuadraticField::character(std::uint64_t n) const {
  if (n == 0) throw DomainError("character argument must be positive");
  if (disc_ == 1) return 1;
  int result = 1;
  if (n % 2 == 0) {
    // (D/2): 0 for even D, +1 for D = +-1 mod 8, -1 for D = +-3 mod 8.
    if (disc_ % 2 == 0) return 0;
    const int two = (disc_ % 8 == 1 || disc_ % 8 == 7) ? 1 : -1;
    while (n % 2 == 0) {
      n /= 2;
      result *= two;
    }
  }
  if (n == 1) return result;
  return result * jacobi_symbol(disc_, n);
}

double zeta_residue(const QuadraticField& field) {
  if (field.is_rational()) return 1.0;
  const std::int64_t d = field.disc();
  double sum = 0.0;
  for (std::int64_t a = 1; a < d; ++a) {
    const int c = field.character(static_cast<std::uint64_t>(a));
    if (c == 0) continue;
    sum += c * std::log(std::sin(std::numbers::pi * static_cast<double>(a) / static_cast<double>(d)));
  }
  return -sum / std::sqrt(static_cast<double>(d));
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0)) throw DomainError("Hurwitz zeta needs s > 1");
  if (!(q > 0.0)) throw DomainError("Hurwitz zeta needs q > 0");
  constexpr int kTerms = 24;
  // B_{2k} / (2k)!
  constexpr double kBernoulli[] = {
      1.0 / 12.0,       -1.0 / 720.0,          1.0 / 30240.0,           -1.0 / 1209600.0,
      1.0 / 47900160.0, -691.0 / 1307674368000.0, 1.0 / 74724249600.0,
  };
  double head = 0.0;
  for (int n = kTerms - 1; n >= 0; --n) head += std::pow(n + q, -s);
  const double a = kTerms + q;
  double tail = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  // Rising factorial s (s+1) ... (s+2k-2) times a^{-s-2k+1}.
  double rising = s;
  double power = std::pow(a, -s - 1.0);
  for (int k = 0; k < 7; ++k) {
    tail += kBernoulli[k] * rising * power;
    rising *= (s + 2 * k + 1) * (s + 2 * k + 2);
    power /= a * a;
  }
  return head + tail;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double dirichlet_l(const QuadraticField& field, double s) {
  if (!(s > 1.0)) throw DomainError("L(s, chi) is evaluated only for s > 1");
  if (field.is_rational()) return riemann_zeta(s);
  const std::int64_t d = field.disc();
  const double dd = static_cast<double>(d);
  double sum = 0.0;
  for (std::int64_t a = 1; a < d; ++a) {
    const int c = field.character(static_cast<std::uint64_t>(a));
    if (c != 0) sum += c * hurwitz_zeta(s, static_cast<double>(a) / dd);
  }
  return std::pow(dd, -s) * sum;
}

double dedekind_zeta(const QuadraticField& field, double s) {
  if (!(s > 1.0)) throw DomainError("Dedekind zeta is evaluated only for s > 1");
  const double zeta = riemann_zeta(s);
  return field.is_rational() ? zeta : zeta * dirichlet_l(field, s);
}

double analytic_conductor(const QuadraticField& field, std::span<const int> weights) {
  if (static_cast<int>(weights.size()) != field.degree()) {
    throw WeightMismatch("expected " + std::to_string(field.degree()) + " weights, got " +
                         std::to_string(weights.size()));
  }
  const double disc = static_cast<double>(field.disc());
  double q = field.is_rational() ? 1.0 : disc * disc;
  for (int k : weights) {
    if (k <= 0) throw WeightMismatch("weights must be positive, got " + std::to_string(k));
    q *= (k + 5) / 2.0 * ((k + 7) / 2.0);
  }
  return q;
}

}  // namespace hsign

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hsign/error.hpp"
#include "hsign/field.hpp"
#include "hsign/ideals.hpp"

namespace hsign {

/// EvenWeight systems obey the Ramanujan-Petersson bound |C(p)| <= 2.
enum class CoefficientMode { EvenWeight, Unrestricted };

std::string_view to_string(CoefficientMode mode);
CoefficientMode parse_mode(std::string_view text);

struct ExplicitSource {};
struct SyntheticSource {
  std::uint64_t seed = 0;
  std::string generator = "mt19937_64";
};
struct FileSource {
  std::string path;
};
using Provenance = std::variant<ExplicitSource, SyntheticSource, FileSource>;

/// Values at p^0, p^1, ..., p^max_exponent forced by the local Euler factor
/// (1 - a X + X^2)^{-1}: c_0 = 1, c_1 = a, c_{v+1} = a c_v - c_{v-1}.
std::vector<double> hecke_prime_powers(double prime_value, unsigned max_exponent);

/// Normalized Hecke-multiplicative coefficients. Only prime values are
/// stored; prime powers follow from hecke_prime_powers and composite ideals
/// from multiplicativity. The unit ideal always has value 1.
class CoefficientSystem {
 public:
  using PrimeValues = std::map<PrimeIdeal, double>;

  /// Throws RamanujanViolation (EvenWeight with |value| > 2) and DomainError
  /// for keys that are not prime ideals of `field` or non-finite values.
  static CoefficientSystem from_prime_values(const QuadraticField& field, PrimeValues values,
                                             CoefficientMode mode,
                                             Provenance provenance = ExplicitSource{});

  const QuadraticField& field() const noexcept { return field_; }
  CoefficientMode mode() const noexcept { return mode_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  const PrimeValues& prime_values() const noexcept { return values_; }

  bool contains(const PrimeIdeal& p) const { return values_.contains(p); }
  /// Throws MissingPrime.
  double prime_value(const PrimeIdeal& p) const;
  double prime_power_value(const PrimeIdeal& p, unsigned exponent) const;

  template <IdealLike I>
  double value(const I& ideal) const {
    double v = 1.0;
    for (std::size_t k = 0; k < ideal.size(); ++k) {
      v *= prime_power_value(ideal.prime(k), ideal.exponent(k));
    }
    return v;
  }

  /// Values of the first `count` rows of `table`, computed from per-prime
  /// power tables. Throws MissingPrime if any prime those rows use is absent.
  std::vector<double> values(const IdealTable& table, std::size_t count) const;
  std::vector<double> values(const IdealTable& table) const { return values(table, table.size()); }

 private:
  CoefficientSystem(QuadraticField field, PrimeValues values, CoefficientMode mode,
                    Provenance provenance)
      : field_(field), values_(std::move(values)), mode_(mode), provenance_(std::move(provenance)) {}

  QuadraticField field_;
  PrimeValues values_;
  CoefficientMode mode_;
  Provenance provenance_;
};

/// Sato-Tate model: for every prime ideal of norm <= limit (canonical order),
/// C(p) = 2 cos(theta) with theta drawn from (2/pi) sin^2(theta) on [0, pi]
/// by rejection from the uniform law. Uniforms are the top 53 bits of
/// std::mt19937_64(seed) scaled by 2^-53, so the stream is reproducible from
/// the seed and generator name alone.
CoefficientSystem sample_sato_tate(const QuadraticField& field, double limit, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Coefficient CSV:
//   # mode=EvenWeight, disc=5
//   rational_prime,conjugate_label,value
//   2,0,-0.53033008588991049
// Further '#' lines and the column header row are optional.

CoefficientSystem parse_coefficients_csv(std::istream& in, const std::string& source_name);
/// Field taken from the file header.
CoefficientSystem load_coefficients_csv(const std::filesystem::path& path);
/// Throws ParseError if the header's disc differs from `field`.
CoefficientSystem load_coefficients_csv(const QuadraticField& field,
                                        const std::filesystem::path& path);
void write_coefficients_csv(const CoefficientSystem& system, std::ostream& out);

}  // namespace hsign

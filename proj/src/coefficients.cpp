#include "hsign/coefficients.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hsign/error.hpp"

namespace hsign {

std::string_view to_string(CoefficientMode mode) {
  return mode == CoefficientMode::EvenWeight ? "EvenWeight" : "Unrestricted";
}

CoefficientMode parse_mode(std::string_view text) {
  if (text == "EvenWeight") return CoefficientMode::EvenWeight;
  if (text == "Unrestricted") return CoefficientMode::Unrestricted;
  throw ParseError("unknown coefficient mode '" + std::string(text) + "'");
}

std::vector<double> hecke_prime_powers(double prime_value, unsigned max_exponent) {
  std::vector<double> c(max_exponent + 1);
  c[0] = 1.0;
  if (max_exponent >= 1) c[1] = prime_value;
  for (unsigned v = 1; v < max_exponent; ++v) c[v + 1] = prime_value * c[v] - c[v - 1];
  return c;
}

namespace {

std::string describe(const PrimeIdeal& p) {
  return "prime ideal (p=" + std::to_string(p.rational_prime) + ", label=" +
         std::to_string(p.label) + ", norm=" + std::to_string(p.norm) + ")";
}

}  // namespace

CoefficientSystem CoefficientSystem::from_prime_values(const QuadraticField& field,
                                                       PrimeValues values, CoefficientMode mode,
                                                       Provenance provenance) {
  for (const auto& [p, v] : values) {
    const PrimeIdeal expected = prime_ideal(field, p.rational_prime, p.label);
    if (!(expected == p) || expected.splitting != p.splitting) {
      throw DomainError(describe(p) + " is not a prime ideal of the field");
    }
    if (!std::isfinite(v)) throw DomainError("non-finite value at " + describe(p));
    if (mode == CoefficientMode::EvenWeight && std::abs(v) > 2.0) {
      throw RamanujanViolation("|C(p)| = " + std::to_string(std::abs(v)) + " > 2 at " +
                               describe(p));
    }
  }
  return CoefficientSystem(field, std::move(values), mode, std::move(provenance));
}

double CoefficientSystem::prime_value(const PrimeIdeal& p) const {
  const auto it = values_.find(p);
  if (it == values_.end()) throw MissingPrime("no coefficient for " + describe(p));
  return it->second;
}

double CoefficientSystem::prime_power_value(const PrimeIdeal& p, unsigned exponent) const {
  if (exponent == 0) return 1.0;
  return hecke_prime_powers(prime_value(p), exponent).back();
}

std::vector<double> CoefficientSystem::values(const IdealTable& table, std::size_t count) const {
  count = std::min(count, table.size());
  std::vector<double> out(count, 1.0);
  if (count == 0) return out;
  const std::uint64_t limit = table.norms()[count - 1];
  const auto primes = table.primes();
  std::vector<std::vector<double>> powers(primes.size());
  for (std::size_t i = 0; i < primes.size() && primes[i].norm <= limit; ++i) {
    unsigned max_exponent = 1;
    for (std::uint64_t n = primes[i].norm; n <= limit / primes[i].norm; n *= primes[i].norm) {
      ++max_exponent;
    }
    powers[i] = hecke_prime_powers(prime_value(primes[i]), max_exponent);
  }
  for (std::size_t row = 0; row < count; ++row) {
    double v = 1.0;
    for (const auto& f : table.factors(row)) v *= powers[f.prime][f.exponent];
    out[row] = v;
  }
  return out;
}

CoefficientSystem sample_sato_tate(const QuadraticField& field, double limit, std::uint64_t seed) {
  if (!(limit >= 2.0)) throw DomainError("Sato-Tate sampling needs limit >= 2");
  std::mt19937_64 engine(seed);
  auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  CoefficientSystem::PrimeValues values;
  for (const PrimeIdeal& p : prime_ideals_up_to(field, limit)) {
    double theta = 0.0;
    while (true) {
      theta = std::numbers::pi * uniform();
      const double s = std::sin(theta);
      if (uniform() <= s * s) break;
    }
    values.emplace_hint(values.end(), p, 2.0 * std::cos(theta));
  }
  return CoefficientSystem::from_prime_values(field, std::move(values), CoefficientMode::EvenWeight,
                                              SyntheticSource{seed});
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& where) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(where + ": cannot parse '" + text + "'");
  }
  return value;
}

}  // namespace

CoefficientSystem parse_coefficients_csv(std::istream& in, const std::string& source_name) {
  std::optional<CoefficientMode> mode;
  std::optional<std::int64_t> disc;
  std::vector<std::pair<std::uint64_t, std::pair<int, double>>> rows;
  std::vector<std::size_t> row_lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      for (const std::string& item : split(text.substr(1), ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(item.substr(0, eq));
        const std::string val = trim(item.substr(eq + 1));
        if (key == "mode") mode = parse_mode(val);
        if (key == "disc") disc = parse_number<std::int64_t>(val, where);
      }
      continue;
    }
    if (text.rfind("rational_prime", 0) == 0) continue;
    const auto cols = split(text, ',');
    if (cols.size() != 3) throw ParseError(where + ": expected 3 columns");
    const auto p = parse_number<std::uint64_t>(cols[0], where);
    const auto label = parse_number<int>(cols[1], where);
    const auto value = parse_number<double>(cols[2], where);
    rows.push_back({p, {label, value}});
    row_lines.push_back(line_no);
  }
  if (!mode || !disc) {
    throw ParseError(source_name + ": missing '# mode=..., disc=...' header");
  }
  QuadraticField field = [&] {
    try {
      return QuadraticField(*disc);
    } catch (const NonFundamentalDiscriminant& e) {
      throw ParseError(source_name + ": " + e.what());
    }
  }();
  CoefficientSystem::PrimeValues values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = source_name + ":" + std::to_string(row_lines[i]);
    const auto& [p, rest] = rows[i];
    PrimeIdeal ideal;
    try {
      ideal = prime_ideal(field, p, rest.first);
    } catch (const DomainError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!values.emplace(ideal, rest.second).second) {
      throw DuplicatePrime(where + ": prime " + std::to_string(p) + " label " +
                           std::to_string(rest.first) + " listed twice");
    }
  }
  return CoefficientSystem::from_prime_values(field, std::move(values), *mode,
                                              FileSource{source_name});
}

CoefficientSystem load_coefficients_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_coefficients_csv(in, path.string());
}

CoefficientSystem load_coefficients_csv(const QuadraticField& field,
                                        const std::filesystem::path& path) {
  CoefficientSystem system = load_coefficients_csv(path);
  if (!(system.field() == field)) {
    throw ParseError(path.string() + ": file is for disc " + std::to_string(system.field().disc()) +
                     ", expected " + std::to_string(field.disc()));
  }
  return system;
}

void write_coefficients_csv(const CoefficientSystem& system, std::ostream& out) {
  out << "# mode=" << to_string(system.mode()) << ", disc=" << system.field().disc() << '\n';
  if (const auto* synthetic = std::get_if<SyntheticSource>(&system.provenance())) {
    out << "# source=sato-tate, generator=" << synthetic->generator << ", seed=" << synthetic->seed
        << '\n';
  }
  out << "rational_prime,conjugate_label,value\n";
  char buf[64];
  for (const auto& [p, v] : system.prime_values()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << p.rational_prime << ',' << p.label << ',' << buf << '\n';
  }
}

}  // namespace hsign

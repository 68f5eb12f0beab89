#include "hsign/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsign/error.hpp"

namespace hsign {

namespace {

constexpr int kDegree = 40;
constexpr int kLastInteger = static_cast<int>(DickmanSolver::kMaxArgument);

}  // namespace

DickmanSolver::DickmanSolver(Options options) : options_(options) {
  if (!(options_.step > 0.0) || !(options_.tolerance > 0.0)) {
    throw DomainError("Dickman solver needs positive step and tolerance");
  }
  at_integer_.assign(kLastInteger + 1, 0.0);
  at_integer_[0] = 1.0;
  at_integer_[1] = 1.0;
  at_integer_[2] = 1.0 - std::log(2.0);
  auto f = [this](double t) { return integrand(t); };
  for (int m = 2; m < kLastInteger; ++m) {
    const std::vector<double> x = ChebyshevInterpolant::nodes(m, m + 1, kDegree);
    std::vector<double> values(x.size());
    values[0] = at_integer_[m];
    for (std::size_t j = 1; j < x.size(); ++j) {
      values[j] = values[j - 1] -
                  adaptive_simpson(f, x[j - 1], x[j], options_.tolerance / kDegree, options_.step);
    }
    at_integer_[m + 1] = values.back();
    pieces_.emplace_back(m, m + 1, std::move(values));
  }
}

double DickmanSolver::previous_interval(double v) const {
  if (v <= 1.0) return 1.0;
  if (v <= 2.0) return 1.0 - std::log(v);
  const int m = std::min(static_cast<int>(std::ceil(v)) - 1, kLastInteger - 1);
  return pieces_[m - 2](v);
}

double DickmanSolver::operator()(double u) const {
  if (!(u > 0.0)) throw DomainError("rho needs u > 0, got " + std::to_string(u));
  if (u > kMaxArgument) throw DomainError("rho is tabulated only for u <= 10");
  if (u <= 1.0) return 1.0;
  if (u <= 2.0) return 1.0 - std::log(u);
  const int k = static_cast<int>(std::ceil(u)) - 1;
  auto f = [this](double t) { return integrand(t); };
  return at_integer_[k] - adaptive_simpson(f, k, u, options_.tolerance, options_.step);
}

const DickmanSolver& default_dickman_solver() {
  static const DickmanSolver solver;
  return solver;
}

double DickmanTable::interpolate(double x) const {
  if (!(x >= 0.0) || x > u_max) throw DomainError("interpolation outside the table");
  const auto it = std::upper_bound(u.begin(), u.end(), x);
  if (it == u.end()) return rho.back();
  const std::size_t hi = static_cast<std::size_t>(it - u.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - u[lo]) / (u[hi] - u[lo]);
  return (1.0 - w) * rho[lo] + w * rho[hi];
}

DickmanTable dickman_table(double u_max, double step) {
  if (!(u_max > 0.0) || u_max > DickmanSolver::kMaxArgument) {
    throw DomainError("table range must satisfy 0 < u_max <= 10");
  }
  if (!(step > 0.0) || step > 0.1) throw DomainError("table step must satisfy 0 < step <= 0.1");
  const DickmanSolver solver(DickmanSolver::Options{.step = step, .tolerance = 1e-11});

  std::vector<double> grid;
  const long n = std::lround(std::floor(u_max / step + 1e-9));
  for (long i = 0; i <= n; ++i) {
    const double u = static_cast<double>(i) * step;
    const double nearest = std::round(u);
    grid.push_back(std::abs(u - nearest) < 1e-9 ? nearest : u);
  }
  for (double m = 1.0; m <= u_max; m += 1.0) grid.push_back(m);
  grid.push_back(u_max);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             grid.end());

  DickmanTable table;
  table.u_max = u_max;
  table.step = step;
  table.u = grid;
  table.rho.reserve(grid.size());
  for (double u : grid) table.rho.push_back(u == 0.0 ? 1.0 : solver(u));
  table.tolerance = step * step / 8.0 + solver.options().tolerance;
  return table;
}

double kappa_gap(const DickmanSolver& solver, double u) {
  return solver(2.0 * u) - 2.0 * std::log(u);
}

double solve_kappa(const DickmanSolver& solver) {
  double lo = 10.0 / 9.0;
  double hi = 1.5;
  const double g_lo = kappa_gap(solver, lo);
  const double g_hi = kappa_gap(solver, hi);
  if (!(g_lo > 0.0) || !(g_hi < 0.0)) {
    throw BracketError("rho(2u) - 2 log u does not change sign on (10/9, 3/2): g(10/9) = " +
                       std::to_string(g_lo) + ", g(3/2) = " + std::to_string(g_hi));
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (kappa_gap(solver, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hsign

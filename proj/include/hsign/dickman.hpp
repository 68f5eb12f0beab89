#pragma once

#include <vector>

#include "hsign/quadrature.hpp"

namespace hsign {

/// Dickman's function rho: rho = 1 on (0, 1] and u rho'(u) + rho(u - 1) = 0
/// beyond. rho is advanced one unit interval at a time through
///   rho(u) = rho(k) - int_k^u rho(t - 1) / t dt,   k = ceil(u) - 1,
/// with adaptive Simpson quadrature. rho(t - 1) comes from the closed form
/// 1 - log(t - 1) when k = 2, and otherwise from a degree-40 Chebyshev
/// interpolant of the previous interval whose node values were produced by
/// the same recursion. Immutable after construction.
class DickmanSolver {
 public:
  struct Options {
    double step = 0.05;        // widest initial quadrature panel
    double tolerance = 1e-11;  // per unit interval
  };

  static constexpr double kMaxArgument = 10.0;

  DickmanSolver() : DickmanSolver(Options{}) {}
  explicit DickmanSolver(Options options);

  /// rho(u) for 0 < u <= 10; DomainError otherwise.
  double operator()(double u) const;
  const Options& options() const noexcept { return options_; }

 private:
  double previous_interval(double v) const;  // rho(v) for 1 <= v <= 9
  double integrand(double t) const { return previous_interval(t - 1.0) / t; }

  Options options_;
  std::vector<ChebyshevInterpolant> pieces_;  // pieces_[m - 2] spans [m, m + 1]
  std::vector<double> at_integer_;            // rho(m), m = 0..10
};

/// Shared solver with default options.
const DickmanSolver& default_dickman_solver();

inline double dickman_rho(double u) { return default_dickman_solver()(u); }

/// rho sampled on [0, u_max]; sample spacing never exceeds `step` and every
/// integer point is a sample. `tolerance` bounds the linear interpolation
/// error: step^2 / 8 (|rho''| <= 1 away from u = 1) plus the integrator's.
struct DickmanTable {
  double u_max = 0.0;
  double step = 0.0;
  std::vector<double> u;
  std::vector<double> rho;
  double tolerance = 0.0;

  double interpolate(double x) const;
};

/// Builds the table with a solver whose quadrature panels are `step` wide,
/// so halving `step` also refines the integrator. Needs u_max > 0 and
/// 0 < step <= 0.1.
DickmanTable dickman_table(double u_max, double step);

/// rho(2u) - 2 log u, whose root on (10/9, 3/2) is the threshold kappa.
double kappa_gap(const DickmanSolver& solver, double u);

/// Root of rho(2u) = 2 log u by bisection on (10/9, 3/2) to width 1e-9.
/// Throws BracketError if the gap does not change sign over the bracket.
double solve_kappa(const DickmanSolver& solver);
inline double solve_kappa() { return solve_kappa(default_dickman_solver()); }

}  // namespace hsign

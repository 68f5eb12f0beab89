#pragma once

#include <functional>
#include <vector>

namespace hsign {

/// Adaptive Simpson quadrature with Richardson correction. [a, b] is first cut
/// into panels no wider than `max_panel`; each panel is refined until the
/// local error estimate is below its share of `tolerance`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance, double max_panel);

/// Polynomial interpolant through Chebyshev points of the second kind on
/// [a, b], evaluated with the barycentric formula.
class ChebyshevInterpolant {
 public:
  ChebyshevInterpolant() = default;
  ChebyshevInterpolant(double a, double b, std::vector<double> values);

  /// Interpolation nodes for `degree`, in increasing order.
  static std::vector<double> nodes(double a, double b, int degree);

  double operator()(double x) const;
  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }

 private:
  double a_ = 0.0;
  double b_ = 1.0;
  std::vector<double> x_;
  std::vector<double> f_;
};

}  // namespace hsign

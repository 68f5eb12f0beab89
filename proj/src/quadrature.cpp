#include "hsign/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "hsign/error.hpp"

namespace hsign {

namespace {

struct SimpsonPanel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double refine(const std::function<double(double)>& f, const SimpsonPanel& p, double tolerance,
              int depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (p.m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
  const double right = (p.b - p.m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance) return left + right + delta / 15.0;
  return refine(f, {p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tolerance, depth - 1) +
         refine(f, {p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tolerance, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance, double max_panel) {
  if (a == b) return 0.0;
  if (!(max_panel > 0.0)) throw DomainError("adaptive_simpson needs a positive panel width");
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel - 1e-12)));
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    const double hi = k + 1 == panels ? b : lo + h;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += refine(f, {lo, mid, hi, flo, fmid, fhi, whole}, tolerance / panels, 40);
  }
  return sign * total;
}

std::vector<double> ChebyshevInterpolant::nodes(double a, double b, int degree) {
  std::vector<double> x(degree + 1);
  for (int j = 0; j <= degree; ++j) {
    // cos(pi j / n) runs from 1 to -1; reverse for increasing order.
    const double t = -std::cos(std::numbers::pi * j / degree);
    x[j] = 0.5 * (a + b) + 0.5 * (b - a) * t;
  }
  x.front() = a;
  x.back() = b;
  return x;
}

ChebyshevInterpolant::ChebyshevInterpolant(double a, double b, std::vector<double> values)
    : a_(a), b_(b), f_(std::move(values)) {
  if (f_.size() < 2) throw DomainError("Chebyshev interpolant needs at least two values");
  x_ = nodes(a, b, static_cast<int>(f_.size()) - 1);
}

double ChebyshevInterpolant::operator()(double x) const {
  const std::size_t n = f_.size() - 1;
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double diff = x - x_[j];
    if (diff == 0.0) return f_[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n) w *= 0.5;
    w /= diff;
    num += w * f_[j];
    den += w;
  }
  return num / den;
}

}  // namespace hsign

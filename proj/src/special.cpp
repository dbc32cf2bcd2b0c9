#include "superosc/special.hpp"

#include <cmath>
#include <numbers>

#include "superosc/errors.hpp"

namespace superosc::special {

namespace {

using cplx = std::complex<double>;

// The series loses about exp(2 Re(z)^2) ulps to cancellation; the continued
// fraction is slow near the imaginary axis.
constexpr double kSeriesRe2 = 2.5;

bool use_series(cplx z) { return z.real() * z.real() <= kSeriesRe2 || std::abs(z) <= 1.0; }

cplx erf_series(cplx z) {
  // erf(z) = 2/sqrt(pi) * sum_n (-1)^n z^(2n+1) / (n! (2n+1))
  const cplx z2 = z * z;
  cplx term = z;  // (-1)^n z^(2n+1) / n!
  cplx sum = z;
  for (int n = 1; n < 400; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx contrib = term / static_cast<double>(2 * n + 1);
    sum += contrib;
    if (std::abs(contrib) <= 1e-17 * std::abs(sum)) break;
  }
  return sum * (2.0 / std::sqrt(std::numbers::pi));
}

// erfc(z) for Re z > 0 via
//   erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + 2/(z + ...)))))
cplx erfc_continued_fraction(cplx z) {
  constexpr double tiny = 1e-300;
  cplx f = z;
  cplx c = z;
  cplx d = 0.0;
  int n = 1;
  for (; n < 20000; ++n) {
    const double a = 0.5 * n;
    d = z + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = z + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  if (n >= 20000) throw EvaluationError("erfc continued fraction did not converge");
  return std::exp(-z * z) / (std::sqrt(std::numbers::pi) * f);
}

}  // namespace

cplx erf(cplx z) {
  if (use_series(z)) return erf_series(z);
  if (z.real() < 0.0) return -erf(-z);
  return 1.0 - erfc_continued_fraction(z);
}

cplx erfc(cplx z) {
  if (use_series(z)) return 1.0 - erf_series(z);
  if (z.real() < 0.0) return 2.0 - erfc(-z);
  return erfc_continued_fraction(z);
}

double sinc(double y) {
  if (std::abs(y) < 1e-4) {
    const double y2 = y * y;
    return 1.0 - y2 / 6.0 + y2 * y2 / 120.0;
  }
  return std::sin(y) / y;
}

double sinc_derivative(double y) {
  // The closed form cancels for small y; sum -y/3 + y^3/30 - ... instead.
  if (std::abs(y) < 1.0) {
    const double y2 = y * y;
    double term = -y / 3.0;  // (-1)^n 2n y^(2n-1) / (2n+1)!
    double sum = term;
    for (int n = 2; n < 30; ++n) {
      term *= -y2 * n / ((n - 1.0) * (2.0 * n) * (2.0 * n + 1.0));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return (y * std::cos(y) - std::sin(y)) / (y * y);
}

}  // namespace superosc::special

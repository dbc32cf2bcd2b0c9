#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "superosc/errors.hpp"
#include "superosc/numerics.hpp"

namespace superosc {

Interval::Interval(double b1, double b2) : b1_(b1), b2_(b2) {
  if (!(b1 < b2) || !std::isfinite(b1) || !std::isfinite(b2)) {
    throw std::invalid_argument("interval requires finite b1 < b2, got [" + std::to_string(b1) + ", " +
                                std::to_string(b2) + "]");
  }
}

namespace {

// Kronrod abscissae on [0,1]; the odd-indexed ones (and 0) are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

Segment gauss_kronrod(const RealFunction& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = g(center - dx) + g(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Integral integrate(const RealFunction& g, const Interval& interval, double tol, int max_subintervals) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate requires tol > 0");
  std::vector<Segment> segments{gauss_kronrod(g, interval.b1(), interval.b2())};
  auto by_error = [](const Segment& x, const Segment& y) { return x.error < y.error; };

  for (;;) {
    double total_error = 0.0;
    for (const auto& s : segments) total_error += s.error;
    if (total_error <= tol) break;
    if (static_cast<int>(segments.size()) >= max_subintervals) {
      throw NumericError("integrate: maximum number of subintervals exceeded (error estimate " +
                         std::to_string(total_error) + ", tol " + std::to_string(tol) + ")");
    }
    std::pop_heap(segments.begin(), segments.end(), by_error);
    const Segment worst = segments.back();
    segments.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericError("integrate: interval too small to subdivide");
    }
    segments.push_back(gauss_kronrod(g, worst.a, mid));
    std::push_heap(segments.begin(), segments.end(), by_error);
    segments.push_back(gauss_kronrod(g, mid, worst.b));
    std::push_heap(segments.begin(), segments.end(), by_error);
  }

  // Sum in position order so the result does not depend on heap layout.
  std::sort(segments.begin(), segments.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  Integral result;
  for (const auto& s : segments) {
    result.value += s.value;
    result.error_estimate += s.error;
  }
  result.subintervals = static_cast<int>(segments.size());
  return result;
}

}  // namespace superosc

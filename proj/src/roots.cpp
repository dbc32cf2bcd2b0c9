#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "superosc/numerics.hpp"

namespace superosc {

namespace {

struct Scalar {
  std::function<double(double)> phi;   // function whose zeros we want
  std::function<double(double)> dphi;  // its derivative
  std::function<double(double)> size;  // |f|, which sets the tolerance
};

double bisect(const std::function<double(double)>& phi, double lo, double hi, double phi_lo) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
    const double pm = phi(mid);
    if (pm == 0.0) return mid;
    if ((pm < 0.0) == (phi_lo < 0.0)) {
      lo = mid;
      phi_lo = pm;
    } else {
      hi = mid;
    }
  }
  return std::abs(phi(lo)) <= std::abs(phi(hi)) ? lo : hi;
}

RootList scan(const Scalar& s, const Interval& range, double step, double scale, RootKind kind) {
  if (!(step > 0.0)) throw std::invalid_argument("root scan step must be > 0");
  if (step > range.length()) throw std::invalid_argument("root scan step larger than the range");
  const int n = static_cast<int>(std::ceil(range.length() / step));
  const double h = range.length() / n;
  std::vector<double> xs(n + 1), vals(n + 1), sizes(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = (i == n) ? range.b2() : range.b1() + i * h;
    vals[i] = s.phi(xs[i]);
    sizes[i] = s.size(xs[i]);
  }

  // Growth elsewhere in a long range must not loosen the test near a point:
  // scale by max |f| over about half a period around it.
  const int reach = 64;
  auto tol_at = [&](int i) {
    double local = 0.0;
    for (int j = std::max(0, i - reach); j <= std::min(n, i + reach); ++j) local = std::max(local, sizes[j]);
    return endpoint_tolerance(std::min(local, scale));
  };
  std::vector<double> found;
  for (int i = 0; i <= n; ++i) {
    if (vals[i] == 0.0) found.push_back(xs[i]);
    if (i < n && vals[i] != 0.0 && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0)) {
      found.push_back(bisect(s.phi, xs[i], xs[i + 1], vals[i]));
    }
  }
  // Range endpoints that already sit on a zero.
  if (vals[0] != 0.0 && std::abs(vals[0]) <= tol_at(0)) found.push_back(xs[0]);
  if (vals[n] != 0.0 && std::abs(vals[n]) <= tol_at(n)) found.push_back(xs[n]);

  // Tangential zeros: grid minima of |phi| without a sign change, refined on phi'.
  for (int i = 1; i < n; ++i) {
    const double a = vals[i - 1], b = vals[i], c = vals[i + 1];
    if (b == 0.0 || a == 0.0 || c == 0.0) continue;
    if ((a < 0.0) != (b < 0.0) || (b < 0.0) != (c < 0.0)) continue;
    if (!(std::abs(b) < std::abs(a) && std::abs(b) <= std::abs(c))) continue;
    const double da = s.dphi(xs[i - 1]);
    const double dc = s.dphi(xs[i + 1]);
    if (da == 0.0 || dc == 0.0 || (da < 0.0) == (dc < 0.0)) continue;
    const double x = bisect(s.dphi, xs[i - 1], xs[i + 1], da);
    if (std::abs(s.phi(x)) <= tol_at(i)) found.push_back(x);
  }

  std::sort(found.begin(), found.end());
  RootList out;
  out.kind = kind;
  out.scale = scale;
  for (double x : found) {
    if (!out.points.empty() && x - out.points.back() <= 1e-7 * std::max(1.0, std::abs(x))) {
      // Keep whichever duplicate has the smaller residual.
      const double r = std::abs(s.phi(x));
      if (r < out.residuals.back()) {
        out.points.back() = x;
        out.residuals.back() = r;
      }
      continue;
    }
    out.points.push_back(x);
    out.residuals.push_back(std::abs(s.phi(x)));
  }
  return out;
}

double second_derivative(const BandlimitedFunction& f, double x) {
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  return (f.real_derivative(x + h) - f.real_derivative(x - h)) / (2.0 * h);
}

Scalar level_scalar(const BandlimitedFunction& f, double c) {
  return {[&f, c](double x) { return f.real(x) - c; }, [&f](double x) { return f.real_derivative(x); },
          [&f](double x) { return std::abs(f.real(x)); }};
}

Scalar critical_scalar(const BandlimitedFunction& f) {
  return {[&f](double x) { return f.real_derivative(x); }, [&f](double x) { return second_derivative(f, x); },
          [&f](double x) { return std::abs(f.real(x)); }};
}

}  // namespace

double default_root_step(double band_edge, const Interval& range, double k_hint) {
  const double b_eff = std::max(band_edge, std::numbers::pi * k_hint / range.length());
  if (!(b_eff > 0.0)) return range.length() / 1024.0;
  return std::min(std::numbers::pi / (64.0 * b_eff), range.length());
}

double function_scale(const BandlimitedFunction& f, const Interval& interval, int samples) {
  double m = 1.0;
  for (int i = 0; i < samples; ++i) {
    const double x = interval.b1() + interval.length() * i / (samples - 1);
    m = std::max(m, std::abs(f.real(x)));
  }
  return m;
}

RootList find_roots(const BandlimitedFunction& f, double c, const Interval& range, double step) {
  return scan(level_scalar(f, c), range, step, function_scale(f, range), RootKind::Level);
}

RootList find_extrema(const BandlimitedFunction& f, const Interval& range, double step) {
  return scan(critical_scalar(f), range, step, function_scale(f, range), RootKind::Critical);
}

double snap_endpoint(const BandlimitedFunction& f, RootKind kind, double c, double b, double radius) {
  const Scalar s = kind == RootKind::Level ? level_scalar(f, c) : critical_scalar(f);
  if (s.phi(b) == 0.0 || !(radius > 0.0)) return b;
  const Interval around(b - radius, b + radius);
  const RootList roots = scan(s, around, around.length() / 16.0, function_scale(f, around, 33), kind);
  double best = b;
  double best_dist = radius * 2.0;
  for (double x : roots.points) {
    if (std::abs(x - b) < best_dist) {
      best = x;
      best_dist = std::abs(x - b);
    }
  }
  return best;
}

}  // namespace superosc

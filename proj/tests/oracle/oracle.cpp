#include "oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace {

constexpr long double kX[5] = {0.148874338981631210884826001129720L, 0.433395394129247190799265943165784L,
                               0.679409568299024406234327365114874L, 0.865063366688984510732096688423493L,
                               0.973906528517171720077964012084452L};
constexpr long double kW[5] = {0.295524224714752870173892994651338L, 0.269266719309996355091226921569469L,
                               0.219086362515982043995534934228163L, 0.149451349150580593145776339657697L,
                               0.066671344308688137593568809893332L};

template <class G>
long double gl10(const G& g, long double a, long double b) {
  const long double c = 0.5L * (a + b), h = 0.5L * (b - a);
  long double s = 0.0L;
  for (int i = 0; i < 5; ++i) {
    s += kW[i] * (static_cast<long double>(g(static_cast<double>(c - h * kX[i]))) +
                  static_cast<long double>(g(static_cast<double>(c + h * kX[i]))));
  }
  return s * h;
}

long double gl_rec(const Fn& f, long double a, long double b, long double whole, long double tol, int depth) {
  const long double m = 0.5L * (a + b);
  const long double left = gl10(f, a, m), right = gl10(f, m, b);
  const long double diff = std::fabs(left + right - whole);
  if (depth > 30 || diff <= tol) return left + right;
  const long double noise = 1.5e-14L * gl10([&](double x) { return std::fabs(f(x)); }, a, b);
  if (diff <= noise) return left + right;
  return gl_rec(f, a, m, left, 0.5L * tol, depth + 1) + gl_rec(f, m, b, right, 0.5L * tol, depth + 1);
}

}  // namespace

long double gauss_legendre(const Fn& f, double a, double b, double tol) {
  // Start from a few panels so that short-period integrands are not mistaken for converged.
  const int panels = 8;
  long double mass = 0.0L;
  for (int i = 0; i < 64; ++i) {
    mass += gl10([&](double x) { return std::fabs(f(x)); }, a + (static_cast<long double>(b) - a) * i / 64,
                 a + (static_cast<long double>(b) - a) * (i + 1) / 64);
  }
  tol *= static_cast<double>(mass > 0 ? mass : 1.0L);
  long double sum = 0.0L;
  for (int i = 0; i < panels; ++i) {
    const long double lo = a + (static_cast<long double>(b) - a) * i / panels;
    const long double hi = a + (static_cast<long double>(b) - a) * (i + 1) / panels;
    sum += gl_rec(f, lo, hi, gl10(f, lo, hi), tol / panels, 0);
  }
  return sum;
}

long double simpson(const Fn& f, double a, double b, int panels) {
  if (panels % 2) throw std::invalid_argument("simpson needs an even panel count");
  const long double h = (static_cast<long double>(b) - a) / panels;
  long double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(static_cast<double>(a + i * h));
  return s * h / 3.0L;
}

int k0(double band_edge, double length) {
  const double wl = band_edge * length / std::numbers::pi;
  const double n = std::nearbyint(wl);
  if (std::fabs(wl - n) <= 1e-9) return static_cast<int>(n) + 1;
  return static_cast<int>(std::floor(wl)) + 1;
}

double sine_mode(const Fn& f, double c, double a, double b, int k) {
  const double L = b - a;
  return static_cast<double>(gauss_legendre(
      [&](double x) { return (f(x) - c) * std::sin(std::numbers::pi * k * (x - a) / L); }, a, b, 1e-15));
}

double cosine_mode(const Fn& f, double a, double b, int k) {
  const double L = b - a;
  return static_cast<double>(
      gauss_legendre([&](double x) { return f(x) * std::cos(std::numbers::pi * k * (x - a) / L); }, a, b, 1e-15));
}

double q_sine(const Fn& f, double c, double a, double b, double band_edge) {
  const double L = b - a;
  const long double energy = gauss_legendre([&](double x) { return (f(x) - c) * (f(x) - c); }, a, b, 1e-16);
  const long double total = 0.5L * L * energy;
  long double low = 0.0L;
  for (int k = 1; k < k0(band_edge, L); ++k) {
    const long double ak = sine_mode(f, c, a, b, k);
    low += ak * ak;
  }
  const long double r = 1.0L - low / total;
  return static_cast<double>(std::sqrt(r > 0 ? r : 0.0L));
}

double q_cosine(const Fn& f, double a, double b, double band_edge) {
  const double L = b - a;
  const long double energy = gauss_legendre([&](double x) { return f(x) * f(x); }, a, b, 1e-16);
  const long double a0 = gauss_legendre(f, a, b, 1e-16);
  const long double total = 0.5L * L * (energy - a0 * a0 / L);
  long double low = 0.0L;
  for (int k = 1; k < k0(band_edge, L); ++k) {
    const long double ak = cosine_mode(f, a, b, k);
    low += ak * ak;
  }
  const long double r = 1.0L - low / total;
  return static_cast<double>(std::sqrt(r > 0 ? r : 0.0L));
}

std::complex<long double> erf_series(std::complex<long double> z) {
  std::complex<long double> term = z;  // z^(2n+1) (-1)^n / n!
  std::complex<long double> sum = z;
  const std::complex<long double> z2 = z * z;
  for (int n = 1; n < 200; ++n) {
    term *= -z2 / static_cast<long double>(n);
    sum += term / static_cast<long double>(2 * n + 1);
  }
  return sum * (2.0L / std::sqrt(std::numbers::pi_v<long double>));
}

std::complex<long double> g_binomial(double x, double a, int n) {
  const long double t = static_cast<long double>(x) / n;
  const long double cs = std::cos(t), sn = std::sin(t);
  std::complex<long double> sum = 0.0L;
  long double binom = 1.0L;
  for (int k = 0; k <= n; ++k) {
    const std::complex<long double> ik = std::pow(std::complex<long double>(0.0L, 1.0L), k);
    sum += binom * std::pow(cs, n - k) * std::pow(static_cast<long double>(a) * sn, k) * ik;
    binom = binom * (n - k) / (k + 1);
  }
  return sum;
}

double bisect(const Fn& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 300 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> grid_zeros(const Fn& f, double lo, double hi, int n) {
  std::vector<double> out;
  double xa = lo, fa = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double xb = lo + (hi - lo) * i / n, fb = f(xb);
    if ((fa < 0) != (fb < 0) && fa != 0.0 && fb != 0.0) out.push_back(bisect(f, xa, xb));
    xa = xb;
    fa = fb;
  }
  return out;
}

}  // namespace oracle

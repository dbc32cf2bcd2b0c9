#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "superosc/errors.hpp"
#include "superosc/numerics.hpp"

namespace superosc {

namespace {

constexpr int kGregoryOrder = 8;
// Samples per mode; the one-sided end corrections lose accuracy near the Nyquist end.
constexpr int kOversample = 64;

// Endpoint corrections c_j (j < kGregoryOrder) added to the trapezoid rule at each
// end: sum_j c_j j^m equals B_{m+1}/(m+1) for odd m and 0 for even m, which
// cancels the Euler-Maclaurin terms through h^8.
const std::array<double, kGregoryOrder>& gregory_weights() {
  static const std::array<double, kGregoryOrder> weights = [] {
    constexpr int n = kGregoryOrder;
    // Bernoulli numbers B_2, B_4, B_6, B_8
    const long double bern[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30};
    long double a[n][n + 1];
    for (int m = 0; m < n; ++m) {
      for (int j = 0; j < n; ++j) a[m][j] = std::pow(static_cast<long double>(j), m);
      a[m][0] = (m == 0) ? 1.0L : 0.0L;
      a[m][n] = (m % 2 == 1) ? bern[m / 2] / (m + 1) : 0.0L;
    }
    for (int col = 0; col < n; ++col) {
      int pivot = col;
      for (int r = col + 1; r < n; ++r) {
        if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
      }
      for (int k = 0; k <= n; ++k) std::swap(a[col][k], a[pivot][k]);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const long double factor = a[r][col] / a[col][col];
        for (int k = col; k <= n; ++k) a[r][k] -= factor * a[col][k];
      }
    }
    std::array<double, n> w{};
    for (int j = 0; j < n; ++j) w[j] = static_cast<double>(a[j][n] / a[j][j]);
    return w;
  }();
  return weights;
}

// FFTW's planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class R2RPlan {
 public:
  R2RPlan(int n, double* in, double* out, fftw_r2r_kind kind) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_r2r_1d(n, in, out, kind, FFTW_ESTIMATE);
    if (!plan_) throw NumericError("FFTW plan creation failed");
  }
  ~R2RPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  R2RPlan(const R2RPlan&) = delete;
  R2RPlan& operator=(const R2RPlan&) = delete;
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

int samples_for(int k_max) {
  int m = 64;
  while (m < kOversample * k_max) m *= 2;
  return m;
}

// cos/sin(pi * k * j / M) with the angle reduced exactly on integers.
double basis(Parity parity, std::int64_t k, std::int64_t j, std::int64_t m) {
  const std::int64_t r = (k * j) % (2 * m);
  const double angle = std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
  return parity == Parity::Sine ? std::sin(angle) : std::cos(angle);
}

std::vector<double> fast_modes(const std::vector<double>& v, double h, Parity parity, int k_max) {
  const int m = static_cast<int>(v.size()) - 1;
  std::vector<double> out;
  std::vector<double> y;
  if (parity == Parity::Sine) {
    std::vector<double> in(v.begin() + 1, v.end() - 1);  // interior samples
    y.resize(in.size());
    R2RPlan plan(static_cast<int>(in.size()), in.data(), y.data(), FFTW_RODFT00);
    plan.execute();
    out.resize(k_max);
    for (int k = 1; k <= k_max; ++k) out[k - 1] = 0.5 * h * y[k - 1];
  } else {
    std::vector<double> in(v);
    y.resize(in.size());
    R2RPlan plan(static_cast<int>(in.size()), in.data(), y.data(), FFTW_REDFT00);
    plan.execute();
    out.resize(k_max + 1);
    for (int k = 0; k <= k_max; ++k) out[k] = 0.5 * h * y[k];
  }

  const auto& w = gregory_weights();
  const int k_first = parity == Parity::Sine ? 1 : 0;
  for (int k = k_first; k <= k_max; ++k) {
    double corr = 0.0;
    for (int j = 0; j < kGregoryOrder; ++j) {
      corr += w[j] * (v[j] * basis(parity, k, j, m) + v[m - j] * basis(parity, k, m - j, m));
    }
    out[k - k_first] += h * corr;
  }
  return out;
}

}  // namespace

std::vector<double> project_modes(const RealFunction& f, const Interval& interval, double c, Parity parity,
                                  int k_max, const ProjectionOptions& options) {
  if (k_max < 1) throw std::invalid_argument("project_modes requires k_max >= 1");
  const int m = samples_for(k_max);
  const double b1 = interval.b1();
  const double len = interval.length();
  const double h = len / m;
  const double shift = parity == Parity::Sine ? c : 0.0;

  std::vector<double> v(m + 1);
  double scale = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double x = (j == m) ? interval.b2() : b1 + j * h;
    v[j] = f(x) - shift;
    if (!std::isfinite(v[j])) throw NumericError("project_modes: non-finite sample at x = " + std::to_string(x));
    scale = std::max(scale, std::abs(v[j]));
  }

  std::vector<double> coeffs = fast_modes(v, h, parity, k_max);

  if (options.cross_check && scale > 0.0) {
    const int first = parity == Parity::Sine ? 1 : 0;
    const int count = std::min(options.cross_check_modes, static_cast<int>(coeffs.size()));
    double largest = 0.0;
    for (int i = 0; i < count; ++i) largest = std::max(largest, std::abs(coeffs[i]));
    const double quad_tol = options.quad_tol * len * scale;
    for (int i = 0; i < count; ++i) {
      const int k = first + i;
      const double omega = std::numbers::pi * k / len;
      RealFunction integrand;
      if (parity == Parity::Sine) {
        integrand = [&, omega](double x) { return (f(x) - shift) * std::sin(omega * (x - b1)); };
      } else {
        integrand = [&, omega](double x) { return f(x) * std::cos(omega * (x - b1)); };
      }
      const double reference = integrate(integrand, interval, quad_tol).value;
      const double allowed = options.cross_check_rel * std::max(largest, std::abs(reference)) + 2.0 * quad_tol;
      if (std::abs(reference - coeffs[i]) > allowed) {
        throw NumericError("project_modes: mode " + std::to_string(k) + " disagrees with quadrature (" +
                           std::to_string(coeffs[i]) + " vs " + std::to_string(reference) + ")");
      }
    }
  }
  return coeffs;
}

AdaptiveProjection project_modes_adaptive(const RealFunction& f, const Interval& interval, double c, Parity parity,
                                          int k_min, int k_cap, double tail_tol, const ProjectionOptions& options) {
  if (k_cap < 16) throw std::invalid_argument("k_cap must be >= 16");
  int k = std::min(std::max(k_min, 64), k_cap);
  ProjectionOptions quick = options;
  quick.cross_check = false;

  AdaptiveProjection result;
  for (;;) {
    result.coefficients = project_modes(f, interval, c, parity, k, quick);
    result.k_max = k;
    const int first = parity == Parity::Sine ? 1 : 0;
    double total = 0.0;
    double tail = 0.0;
    for (int kk = 1; kk <= k; ++kk) {
      const double a = result.coefficients[kk - first];
      total += a * a;
      if (kk > k - 16) tail += a * a;
    }
    result.truncation_ratio = total > 0.0 ? tail / total : 0.0;
    if (result.truncation_ratio < tail_tol) break;
    if (k >= k_cap) {
      result.truncated = true;
      break;
    }
    k = std::min(2 * k, k_cap);
  }

  if (options.cross_check) {
    // Re-run at the final size with the quadrature cross-check enabled.
    result.coefficients = project_modes(f, interval, c, parity, result.k_max, options);
  }

  const double shift = parity == Parity::Sine ? c : 0.0;
  const int m = samples_for(result.k_max);
  double scale = 0.0;
  for (int j = 0; j <= m; j += std::max(1, m / 512)) {
    scale = std::max(scale, std::abs(f(interval.b1() + j * interval.length() / m) - shift));
  }
  result.sample_scale = scale;
  return result;
}

}  // namespace superosc

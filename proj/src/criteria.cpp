#include "superosc/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "superosc/errors.hpp"

namespace superosc {

std::string_view to_string(CriterionMode mode) { return mode == CriterionMode::Sine ? "sine" : "cosine"; }

double LocalSpectrum::coefficient(int k) const {
  const int index = mode == CriterionMode::Sine ? k - 1 : k;
  if (index < 0 || index >= static_cast<int>(coefficients.size())) return 0.0;
  return coefficients[index];
}

Verdict QReport::verdict() const {
  if (!q) return Verdict::Undefined;
  return passes ? Verdict::Superoscillating : Verdict::NotSuperoscillating;
}

int k0_index(double band_edge, const Interval& interval) {
  if (band_edge < 0.0) throw std::invalid_argument("band edge must be >= 0");
  const double wl = band_edge / std::numbers::pi * interval.length();
  const double nearest = std::round(wl);
  if (std::abs(wl - nearest) <= 1e-9) return static_cast<int>(nearest) + 1;
  return static_cast<int>(std::floor(wl)) + 1;
}

EndpointCheck check_endpoints(const BandlimitedFunction& f, CriterionMode mode, double c, const Interval& interval) {
  EndpointCheck out;
  if (mode == CriterionMode::Sine) {
    out.residuals = {std::abs(f.real(interval.b1()) - c), std::abs(f.real(interval.b2()) - c)};
  } else {
    out.residuals = {std::abs(f.real_derivative(interval.b1())), std::abs(f.real_derivative(interval.b2()))};
  }
  out.tolerance = endpoint_tolerance(function_scale(f, interval));
  out.admissible = out.residuals.first <= out.tolerance && out.residuals.second <= out.tolerance;
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

LocalSpectrum local_spectrum(const BandlimitedFunction& f, CriterionMode mode, double c, const Interval& interval,
                             const CriterionConfig& config) {
  if (!f.is_real_valued()) {
    throw PreconditionError("criteria apply to real-valued functions; wrap '" + f.label() + "' in re() or im()");
  }
  const EndpointCheck ends = check_endpoints(f, mode, c, interval);
  if (!ends.admissible) {
    const std::string what = mode == CriterionMode::Sine ? "|f(b) - c|" : "|f'(b)|";
    throw PreconditionError("endpoints of [" + fmt(interval.b1()) + ", " + fmt(interval.b2()) +
                            "] are not admissible for the " + std::string(to_string(mode)) + " criterion: " + what +
                            " = " + fmt(ends.residuals.first) + ", " + fmt(ends.residuals.second) +
                            " (tolerance " + fmt(ends.tolerance) + ")");
  }

  LocalSpectrum s;
  s.mode = mode;
  s.interval = interval;
  s.c = mode == CriterionMode::Sine ? c : 0.0;
  s.k0 = k0_index(f.band_edge(), interval);
  s.endpoint_residuals = ends.residuals;

  ProjectionOptions opts;
  opts.quad_tol = config.quad_tol;
  const Parity parity = mode == CriterionMode::Sine ? Parity::Sine : Parity::Cosine;
  const int k_min = std::max(4 * s.k0, 64);
  if (k_min > config.k_cap) {
    throw NumericError("k0 = " + std::to_string(s.k0) + " needs more modes than the cap " +
                       std::to_string(config.k_cap));
  }
  AdaptiveProjection proj = project_modes_adaptive([&f](double x) { return f.real(x); }, interval, s.c, parity,
                                                   k_min, config.k_cap, config.tail_tol, opts);
  s.coefficients = std::move(proj.coefficients);
  s.k_max = proj.k_max;
  s.truncation_ratio = proj.truncation_ratio;
  s.truncation_warning = proj.truncated;
  s.sample_scale = proj.sample_scale;
  return s;
}

}  // namespace

LocalSpectrum sine_spectrum(const BandlimitedFunction& f, double c, const Interval& interval,
                            const CriterionConfig& config) {
  return local_spectrum(f, CriterionMode::Sine, c, interval, config);
}

LocalSpectrum cosine_spectrum(const BandlimitedFunction& f, const Interval& interval, const CriterionConfig& config) {
  return local_spectrum(f, CriterionMode::Cosine, 0.0, interval, config);
}

QReport q_value(const LocalSpectrum& spectrum, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must lie in (0, 1)");
  QReport r;
  r.mode = spectrum.mode;
  r.k0 = spectrum.k0;
  r.threshold = threshold;
  r.spectrum = spectrum;

  double total = 0.0;
  double high = 0.0;
  for (int k = 1; k <= spectrum.k_max; ++k) {
    const double a = spectrum.coefficient(k);
    total += a * a;
    if (k >= spectrum.k0) high += a * a;
  }
  // A flat segment leaves only rounding noise in the k >= 1 modes.
  const double noise_floor = 1e-12 * spectrum.interval.length() * spectrum.sample_scale;
  if (total == 0.0 || std::sqrt(total) <= noise_floor) {
    r.passes = false;
    return r;
  }
  r.q = std::clamp(std::sqrt(high / total), 0.0, 1.0);
  r.passes = *r.q > threshold;
  return r;
}

QReport check_criterion(const BandlimitedFunction& f, CriterionMode mode, double c, const Interval& interval,
                        const CriterionConfig& config) {
  return q_value(local_spectrum(f, mode, c, interval, config), config.threshold);
}

QReport check_sine_criterion(const BandlimitedFunction& f, double c, const Interval& interval,
                             const CriterionConfig& config) {
  return check_criterion(f, CriterionMode::Sine, c, interval, config);
}

QReport check_cosine_criterion(const BandlimitedFunction& f, const Interval& interval, const CriterionConfig& config) {
  return check_criterion(f, CriterionMode::Cosine, 0.0, interval, config);
}

Interval default_search_window(double band_edge, const Interval& target) {
  const double pad = band_edge > 0.0 ? 2.0 * (2.0 * std::numbers::pi / band_edge) : target.length();
  return Interval(target.b1() - pad, target.b2() + pad);
}

DefinitionVerdict classify_definition(const BandlimitedFunction& f, const Interval& target, CriterionMode mode,
                                      double c, const ClassifyOptions& options) {
  if (!f.is_real_valued()) {
    throw PreconditionError("criteria apply to real-valued functions; wrap '" + f.label() + "' in re() or im()");
  }
  const Interval window = options.window.value_or(default_search_window(f.band_edge(), target));
  if (!window.contains(target)) throw std::invalid_argument("search window must contain the target interval");

  DefinitionVerdict v;
  v.target = target;
  v.mode = mode;
  v.c = mode == CriterionMode::Sine ? c : 0.0;
  v.search_window = window;

  auto q_of = [&](const Interval& iv) { return check_criterion(f, mode, v.c, iv, options.criterion); };

  const EndpointCheck ends = check_endpoints(f, mode, v.c, target);
  if (ends.admissible) {
    const QReport r = q_of(target);
    if (r.passes) {
      v.inner = v.outer = target;
      v.inner_q = v.outer_q = r.q;
      v.superoscillating = true;
      return v;
    }
  }

  const double step = options.step.value_or(default_root_step(f.band_edge(), window));
  RootList roots = mode == CriterionMode::Sine ? find_roots(f, v.c, window, step) : find_extrema(f, window, step);
  std::vector<double> points = roots.points;
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
  if (ends.residuals.first <= ends.tolerance) points.push_back(target.b1());
  if (ends.residuals.second <= ends.tolerance) points.push_back(target.b2());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(), near), points.end());
  if (points.empty()) throw PreconditionError("no admissible endpoints in the search window");

  const double lo_slack = 1e-9 * std::max(1.0, std::abs(target.b1()));
  const double hi_slack = 1e-9 * std::max(1.0, std::abs(target.b2()));
  std::vector<Interval> inner, outer;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double a = points[i], b = points[j];
      if (a >= target.b1() - lo_slack && b <= target.b2() + hi_slack) inner.emplace_back(a, b);
      if (a <= target.b1() + lo_slack && b >= target.b2() - hi_slack) outer.emplace_back(a, b);
    }
  }
  std::stable_sort(inner.begin(), inner.end(),
                   [](const Interval& x, const Interval& y) { return x.length() > y.length(); });
  std::stable_sort(outer.begin(), outer.end(),
                   [](const Interval& x, const Interval& y) { return x.length() < y.length(); });

  std::map<std::pair<double, double>, QReport> cache;
  auto passes = [&](const Interval& iv) -> const QReport& {
    const auto key = std::make_pair(iv.b1(), iv.b2());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, q_of(iv)).first;
    return it->second;
  };

  for (const auto& iv : inner) {
    const QReport& r = passes(iv);
    if (r.passes) {
      v.inner = iv;
      v.inner_q = r.q;
      break;
    }
  }
  if (v.inner) {
    for (const auto& iv : outer) {
      const QReport& r = passes(iv);
      if (r.passes) {
        v.outer = iv;
        v.outer_q = r.q;
        break;
      }
    }
  }
  v.superoscillating = v.inner.has_value() && v.outer.has_value();
  return v;
}

BandlimitedFunction polynomial_reference_transform(const BandlimitedFunction& f, std::vector<double> coeffs) {
  return subtract_polynomial(f, std::move(coeffs));
}

}  // namespace superosc

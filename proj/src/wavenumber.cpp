#include "superosc/wavenumber.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "superosc/errors.hpp"

namespace superosc {

TrigPolynomial hilbert_transform(const TrigPolynomial& v) {
  TrigPolynomial out;
  for (const auto& t : v.terms()) out.add_term(t.frequency, -t.sin_amp, t.cos_amp);
  return out;
}

AnalyticSignal analytic_signal(const TrigPolynomial& v) {
  AnalyticSignal s;
  s.source = v;
  s.imaginary = hilbert_transform(v);
  const TrigPolynomial expected = -(v - TrigPolynomial(v.constant()));
  if (!(hilbert_transform(s.imaginary) == expected)) {
    throw std::logic_error("Hilbert transform failed the involution check");
  }
  if (v.constant() != 0.0) s.u.terms.push_back({0.0, {v.constant(), 0.0}});
  for (const auto& t : v.terms()) s.u.terms.push_back({t.frequency, {t.cos_amp, -t.sin_amp}});
  return s;
}

double local_wavenumber(const ExponentialSum& u, double x, double floor) {
  const std::complex<double> value = u(x);
  if (!(std::abs(value) > floor)) {
    throw PreconditionError("local wavenumber undefined at x = " + std::to_string(x) + ": |u| = " +
                            std::to_string(std::abs(value)));
  }
  // Im(u' conj(u)) / |u|^2 summed over term pairs, so that the cancellation
  // near a small |u| is shared by numerator and denominator.
  double num = 0.0;
  double den = 0.0;
  const auto& t = u.terms;
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double p = std::norm(t[j].coeff);
    num += t[j].frequency * p;
    den += p;
    for (std::size_t l = j + 1; l < t.size(); ++l) {
      const double cross =
          (t[j].coeff * std::conj(t[l].coeff) * std::polar(1.0, (t[j].frequency - t[l].frequency) * x)).real();
      num += (t[j].frequency + t[l].frequency) * cross;
      den += 2.0 * cross;
    }
  }
  return num / den;
}

double local_wavenumber(const AnalyticSignal& s, double x, double floor) { return local_wavenumber(s.u, x, floor); }

WavenumberReport wavenumber_report(const TrigPolynomial& v, const Interval& range, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("wavenumber_report needs at least 2 samples");
  const AnalyticSignal s = analytic_signal(v);

  std::vector<double> xs(n_samples);
  std::vector<double> mags(n_samples);
  double max_mag = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    xs[i] = i == n_samples - 1 ? range.b2() : range.b1() + range.length() * i / (n_samples - 1);
    mags[i] = std::abs(s.u(xs[i]));
    max_mag = std::max(max_mag, mags[i]);
  }

  WavenumberReport r;
  r.band_edge = v.band_edge();
  r.floor = 1e-9 * max_mag;
  for (int i = 0; i < n_samples; ++i) {
    if (!(mags[i] > r.floor)) {
      ++r.dropped;
      continue;
    }
    const double k = local_wavenumber(s.u, xs[i]);
    r.samples.emplace_back(xs[i], k);
    r.sup_k = r.samples.size() == 1 ? k : std::max(r.sup_k, k);
    r.sup_abs_k = std::max(r.sup_abs_k, std::abs(k));
  }
  if (r.samples.empty()) throw PreconditionError("every sample of the analytic signal is degenerate");
  r.flags_superoscillation = r.sup_k > r.band_edge * (1.0 + 1e-9);
  return r;
}

}  // namespace superosc

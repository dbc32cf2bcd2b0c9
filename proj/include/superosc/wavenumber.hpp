#pragma once

#include <utility>
#include <vector>

#include "superosc/numerics.hpp"
#include "superosc/trig_polynomial.hpp"

namespace superosc {

/// Termwise multiplier -i sgn(w): cos wx -> sin wx, sin wx -> -cos wx; constants vanish.
TrigPolynomial hilbert_transform(const TrigPolynomial& v);

/// u = v + i H[v] = const + sum (alpha - i beta) exp(i w x).
struct AnalyticSignal {
  TrigPolynomial source;
  TrigPolynomial imaginary;  // H[v]
  ExponentialSum u;
};

/// Checks H[H[v]] == -(v - const) exactly before returning.
AnalyticSignal analytic_signal(const TrigPolynomial& v);

/// Im(u'(x) / u(x)). Throws PreconditionError when |u(x)| <= floor.
double local_wavenumber(const ExponentialSum& u, double x, double floor = 0.0);
double local_wavenumber(const AnalyticSignal& s, double x, double floor = 0.0);

struct WavenumberReport {
  std::vector<std::pair<double, double>> samples;  // (x, k(x)) at retained points
  int dropped = 0;                                 // samples with |u| below the floor
  double sup_k = 0.0;      // signed maximum of k
  double sup_abs_k = 0.0;  // maximum of |k|
  double band_edge = 0.0;
  double floor = 0.0;
  bool flags_superoscillation = false;  // sup k > B
};

/// k(x) on n_samples uniform points of `range` (ends included). Samples with
/// |u| < 1e-9 max|u| are dropped and counted. The flag compares the signed
/// sup k with B: near zeros of u the phase can run backwards fast, so |k|
/// exceeds B for hs(s, m) even though k <= m everywhere. A relative rounding
/// slack of 1e-9 is allowed.
WavenumberReport wavenumber_report(const TrigPolynomial& v, const Interval& range, int n_samples);

}  // namespace superosc

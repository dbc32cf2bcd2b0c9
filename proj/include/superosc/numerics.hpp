#pragma once

#include <functional>
#include <string>
#include <vector>

#include "superosc/bandlimited.hpp"

namespace superosc {

/// Closed interval [b1, b2] with b1 < b2.
class Interval {
 public:
  Interval(double b1, double b2);
  double b1() const { return b1_; }
  double b2() const { return b2_; }
  double length() const { return b2_ - b1_; }
  bool contains(const Interval& o) const { return b1_ <= o.b1_ && o.b2_ <= b2_; }
  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double b1_;
  double b2_;
};

using RealFunction = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Quadrature

struct Integral {
  double value = 0.0;
  double error_estimate = 0.0;
  int subintervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature: bisects the interval
/// with the largest |K15 - G7| until the summed estimate is <= tol.
/// Throws NumericError if `max_subintervals` is exhausted.
Integral integrate(const RealFunction& g, const Interval& interval, double tol, int max_subintervals = 4000);

// ---------------------------------------------------------------------------
// Local mode projection

enum class Parity { Sine, Cosine };

struct ProjectionOptions {
  /// Absolute tolerance factor for the quadrature cross-check; the actual
  /// tolerance is `quad_tol * L * max|f - c|`.
  double quad_tol = 1e-10;
  /// Allowed disagreement of the lowest modes, relative to the largest of them.
  double cross_check_rel = 1e-8;
  int cross_check_modes = 8;
  bool cross_check = true;
};

/// Coefficients over an interval of length L:
///   sine:   a_k = int (f - c) sin(pi k (x - b1)/L) dx, k = 1..k_max   (index k-1)
///   cosine: a_k = int f cos(pi k (x - b1)/L) dx,       k = 0..k_max   (index k)
/// Computed from M = 2^p >= 64 k_max uniform samples with a DST-I/DCT-I and
/// Gregory end corrections; the lowest modes are checked against `integrate`.
std::vector<double> project_modes(const RealFunction& f, const Interval& interval, double c, Parity parity,
                                  int k_max, const ProjectionOptions& options = {});

struct AdaptiveProjection {
  std::vector<double> coefficients;  // as project_modes
  int k_max = 0;
  double truncation_ratio = 0.0;  // energy of the trailing 16 modes / energy of modes k >= 1
  bool truncated = false;         // cap reached before the tail criterion was met
  double sample_scale = 0.0;      // max |f - c| (sine) or max |f| (cosine) over the samples
};

/// Grows k_max from max(k_min, 64) by doubling until the trailing 16-mode
/// block holds < tail_tol of the energy, or `k_cap` is reached.
AdaptiveProjection project_modes_adaptive(const RealFunction& f, const Interval& interval, double c, Parity parity,
                                          int k_min, int k_cap = 4096, double tail_tol = 1e-10,
                                          const ProjectionOptions& options = {});

// ---------------------------------------------------------------------------
// Roots and extrema

enum class RootKind { Level, Critical };

struct RootList {
  RootKind kind = RootKind::Level;
  std::vector<double> points;     // strictly increasing
  std::vector<double> residuals;  // |f(x) - c| or |f'(x)| at each point
  double scale = 1.0;             // max(1, max|f|) over the scanned range
};

/// Default scan step pi / (64 B_eff), B_eff = max(B, pi k_hint / L).
double default_root_step(double band_edge, const Interval& range, double k_hint = 0.0);

/// Zeros of Re f - c in `range`: sign changes on a uniform grid refined by
/// bisection, plus tangential zeros (grid minima of |f - c| refined on f').
RootList find_roots(const BandlimitedFunction& f, double c, const Interval& range, double step);
/// Critical points of Re f in `range` (zeros of f').
RootList find_extrema(const BandlimitedFunction& f, const Interval& range, double step);

/// Residual tolerance for an admissible endpoint: 1e-9 * max(1, scale).
inline double endpoint_tolerance(double scale) { return 1e-9 * (scale > 1.0 ? scale : 1.0); }

/// max(1, max |Re f|) sampled over an interval.
double function_scale(const BandlimitedFunction& f, const Interval& interval, int samples = 513);

/// Moves `b` to the nearest zero of Re f - c (Level) or of f' (Critical)
/// within `radius`; returns b unchanged if none is found.
double snap_endpoint(const BandlimitedFunction& f, RootKind kind, double c, double b, double radius);

}  // namespace superosc

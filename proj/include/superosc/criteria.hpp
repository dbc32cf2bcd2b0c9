#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "superosc/bandlimited.hpp"
#include "superosc/numerics.hpp"

namespace superosc {

enum class CriterionMode { Sine, Cosine };

std::string_view to_string(CriterionMode mode);

/// Tunables shared by both criteria. The 2-norm and the 1/2 threshold are the
/// defaults; the threshold is exposed for problems that need another cut.
struct CriterionConfig {
  double threshold = 0.5;
  double quad_tol = 1e-10;  // cross-check quadrature tolerance factor
  int k_cap = 4096;
  double tail_tol = 1e-10;
};

/// Local Fourier sine or cosine spectrum of f over an interval.
struct LocalSpectrum {
  CriterionMode mode = CriterionMode::Sine;
  Interval interval{0.0, 1.0};
  double c = 0.0;                    // reference level (sine); 0 for cosine
  std::vector<double> coefficients;  // a_1.. for sine, a_0.. for cosine
  int k0 = 1;
  int k_max = 0;
  double truncation_ratio = 0.0;
  bool truncation_warning = false;
  std::pair<double, double> endpoint_residuals{0.0, 0.0};
  double sample_scale = 0.0;

  /// a_k for k >= 1 (both modes), or a_0 for cosine.
  double coefficient(int k) const;
};

enum class Verdict { Superoscillating, NotSuperoscillating, Undefined };

struct QReport {
  CriterionMode mode = CriterionMode::Sine;
  std::optional<double> q;  // empty when every k >= 1 coefficient vanishes
  int k0 = 1;
  double threshold = 0.5;
  bool passes = false;
  bool valid_endpoints = true;
  LocalSpectrum spectrum;

  Verdict verdict() const;
};

/// Smallest natural k0 with k0 > (B/pi) L; values within 1e-9 of an integer n give n + 1.
int k0_index(double band_edge, const Interval& interval);

/// Endpoint residuals: |f(b) - c| (sine) or |f'(b)| (cosine), with the
/// admissibility tolerance 1e-9 * max(1, max|f| on the interval).
struct EndpointCheck {
  std::pair<double, double> residuals;
  double tolerance = 0.0;
  bool admissible = false;
};
EndpointCheck check_endpoints(const BandlimitedFunction& f, CriterionMode mode, double c, const Interval& interval);

/// Throws PreconditionError for non-real f or inadmissible endpoints.
LocalSpectrum sine_spectrum(const BandlimitedFunction& f, double c, const Interval& interval,
                            const CriterionConfig& config = {});
LocalSpectrum cosine_spectrum(const BandlimitedFunction& f, const Interval& interval,
                              const CriterionConfig& config = {});

QReport q_value(const LocalSpectrum& spectrum, double threshold = 0.5);

QReport check_sine_criterion(const BandlimitedFunction& f, double c, const Interval& interval,
                             const CriterionConfig& config = {});
QReport check_cosine_criterion(const BandlimitedFunction& f, const Interval& interval,
                               const CriterionConfig& config = {});
QReport check_criterion(const BandlimitedFunction& f, CriterionMode mode, double c, const Interval& interval,
                        const CriterionConfig& config = {});

struct DefinitionVerdict {
  Interval target{0.0, 1.0};
  CriterionMode mode = CriterionMode::Sine;
  double c = 0.0;
  std::optional<Interval> inner;
  std::optional<Interval> outer;
  std::optional<double> inner_q;
  std::optional<double> outer_q;
  bool superoscillating = false;
  Interval search_window{0.0, 1.0};
};

struct ClassifyOptions {
  std::optional<Interval> window;  // default: target widened by two periods 2 pi / B per side
  std::optional<double> step;      // root scan step; default from the band edge
  CriterionConfig criterion;
};

/// Looks for I1 within the target and I2 covering it (both between admissible
/// endpoints) that pass the criterion. Inner candidates are tried largest
/// first, outer smallest first; a passing target is its own witness.
DefinitionVerdict classify_definition(const BandlimitedFunction& f, const Interval& target, CriterionMode mode,
                                      double c, const ClassifyOptions& options = {});

Interval default_search_window(double band_edge, const Interval& target);

/// f - p for applying either criterion about a polynomial p (ascending
/// coefficients, degree <= 8). The result keeps f's band edge.
BandlimitedFunction polynomial_reference_transform(const BandlimitedFunction& f, std::vector<double> coeffs);

}  // namespace superosc

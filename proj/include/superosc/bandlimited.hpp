#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "superosc/expr.hpp"
#include "superosc/trig_polynomial.hpp"

namespace superosc {

using cplx = std::complex<double>;

/// Value and first derivative of a function at a point.
struct Jet {
  cplx value;
  cplx derivative;
};

namespace detail {
class Node {
 public:
  virtual ~Node() = default;
  virtual cplx value(double x) const = 0;
  virtual Jet jet(double x) const = 0;
};
}  // namespace detail

/// An evaluatable function together with a certified band edge B: the
/// Fourier support lies in [-B, B] (the bandlimit parameter W is B/pi).
///
/// Immutable after construction; evaluation is pure and thread-safe.
class BandlimitedFunction {
 public:
  const ExprPtr& expr() const { return expr_; }
  double band_edge() const { return band_edge_; }
  double bandlimit_w() const;
  bool is_real_valued() const { return real_valued_; }
  const std::string& label() const { return label_; }

  /// Polynomial subtracted from the expression (ascending coefficients); empty if none.
  const std::vector<double>& reference_polynomial() const { return reference_poly_; }
  /// Set once a non-constant polynomial has been subtracted: the result is no longer
  /// strictly bandlimited and `band_edge` is inherited from the original function.
  bool band_edge_inherited() const { return band_edge_inherited_; }

  /// Throws EvaluationError on non-finite results.
  cplx operator()(double x) const;
  cplx derivative(double x) const;
  Jet jet(double x) const;

  /// Real part of the value, for real-valued functions.
  double real(double x) const { return (*this)(x).real(); }
  double real_derivative(double x) const { return derivative(x).real(); }

  /// Exact finite trigonometric form when one exists (trig builtins, h, hs,
  /// constants and their sums/products/powers).
  const std::optional<TrigPolynomial>& trig_polynomial() const { return trig_; }

 private:
  friend BandlimitedFunction compile(const ExprPtr& expr, std::string label);
  friend BandlimitedFunction subtract_polynomial(const BandlimitedFunction& f, std::vector<double> coeffs);

  ExprPtr expr_;
  std::shared_ptr<const detail::Node> root_;
  double band_edge_ = 0.0;
  bool real_valued_ = true;
  std::string label_;
  std::vector<double> reference_poly_;
  bool band_edge_inherited_ = false;
  std::optional<TrigPolynomial> trig_;
};

/// Infers the band edge and builds the evaluator. Throws CompileError when the
/// expression is not certifiably bandlimited or catalog parameters are invalid.
BandlimitedFunction compile(const ExprPtr& expr, std::string label = {});
BandlimitedFunction compile(std::string_view text);

/// f(x) - p(x), p given by ascending coefficients (degree <= 8).
BandlimitedFunction subtract_polynomial(const BandlimitedFunction& f, std::vector<double> coeffs);

/// sup over a 4096-point uniform grid on [lo, hi] of |g(x,a,N) - exp(i a x)|.
double sequence_distance(double a, int n, double lo, double hi);

/// Closed-form g(x,a,N) = (cos(x/N) + i a sin(x/N))^N.
cplx g_closed_form(double x, double a, int n);

struct CatalogEntry {
  std::string name;
  std::string parameters;
  std::string band_edge;
  std::string definition;
};
const std::vector<CatalogEntry>& catalog();

}  // namespace superosc

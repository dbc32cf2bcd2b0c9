#pragma once

#include <complex>
#include <string>
#include <vector>

namespace superosc {

struct TrigTerm {
  double frequency = 0.0;  // > 0
  double cos_amp = 0.0;
  double sin_amp = 0.0;

  friend bool operator==(const TrigTerm&, const TrigTerm&) = default;
};

/// v(x) = constant + sum_j (cos_amp_j cos(w_j x) + sin_amp_j sin(w_j x)).
///
/// Canonical form: terms sorted by strictly increasing positive frequency,
/// equal frequencies merged, zero-frequency content folded into `constant`.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(double constant) : constant_(constant) {}

  static TrigPolynomial cosine(double frequency, double amplitude = 1.0);
  static TrigPolynomial sine(double frequency, double amplitude = 1.0);
  /// sin(slope*x + intercept) / cos(slope*x + intercept), any sign of slope.
  static TrigPolynomial sin_affine(double slope, double intercept);
  static TrigPolynomial cos_affine(double slope, double intercept);

  /// Adds a term; negative frequencies are reflected, zero folds into the constant.
  void add_term(double frequency, double cos_amp, double sin_amp);

  double constant() const { return constant_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  double band_edge() const;

  double operator()(double x) const;
  double derivative(double x) const;

  TrigPolynomial operator+(const TrigPolynomial& o) const;
  TrigPolynomial operator-(const TrigPolynomial& o) const;
  TrigPolynomial operator-() const;
  TrigPolynomial operator*(const TrigPolynomial& o) const;
  TrigPolynomial operator*(double s) const;
  TrigPolynomial pow(int n) const;

  friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;

 private:
  double constant_ = 0.0;
  std::vector<TrigTerm> terms_;
};

/// Finite sum of complex exponentials, u(x) = sum_j c_j exp(i w_j x), any real w_j.
struct ExponentialSum {
  struct Term {
    double frequency = 0.0;
    std::complex<double> coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };
  std::vector<Term> terms;

  std::complex<double> operator()(double x) const;
  std::complex<double> derivative(double x) const;
};

}  // namespace superosc

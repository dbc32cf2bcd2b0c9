#include "superosc/trig_polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace superosc {

TrigPolynomial TrigPolynomial::cosine(double frequency, double amplitude) {
  TrigPolynomial p;
  p.add_term(frequency, amplitude, 0.0);
  return p;
}

TrigPolynomial TrigPolynomial::sine(double frequency, double amplitude) {
  TrigPolynomial p;
  p.add_term(frequency, 0.0, amplitude);
  return p;
}

TrigPolynomial TrigPolynomial::sin_affine(double slope, double intercept) {
  // sin(wx + b) = cos(b) sin(wx) + sin(b) cos(wx)
  TrigPolynomial p;
  p.add_term(slope, std::sin(intercept), std::cos(intercept));
  return p;
}

TrigPolynomial TrigPolynomial::cos_affine(double slope, double intercept) {
  // cos(wx + b) = cos(b) cos(wx) - sin(b) sin(wx)
  TrigPolynomial p;
  p.add_term(slope, std::cos(intercept), -std::sin(intercept));
  return p;
}

void TrigPolynomial::add_term(double frequency, double cos_amp, double sin_amp) {
  if (frequency < 0.0) {
    frequency = -frequency;
    sin_amp = -sin_amp;
  }
  if (frequency == 0.0) {
    constant_ += cos_amp;
    return;
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), frequency,
                             [](const TrigTerm& t, double w) { return t.frequency < w; });
  if (it != terms_.end() && it->frequency == frequency) {
    it->cos_amp += cos_amp;
    it->sin_amp += sin_amp;
    if (it->cos_amp == 0.0 && it->sin_amp == 0.0) terms_.erase(it);
    return;
  }
  if (cos_amp == 0.0 && sin_amp == 0.0) return;
  terms_.insert(it, TrigTerm{frequency, cos_amp, sin_amp});
}

double TrigPolynomial::band_edge() const { return terms_.empty() ? 0.0 : terms_.back().frequency; }

double TrigPolynomial::operator()(double x) const {
  double v = constant_;
  for (const auto& t : terms_) v += t.cos_amp * std::cos(t.frequency * x) + t.sin_amp * std::sin(t.frequency * x);
  return v;
}

double TrigPolynomial::derivative(double x) const {
  double v = 0.0;
  for (const auto& t : terms_) {
    v += t.frequency * (t.sin_amp * std::cos(t.frequency * x) - t.cos_amp * std::sin(t.frequency * x));
  }
  return v;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& o) const {
  TrigPolynomial r = *this;
  r.constant_ += o.constant_;
  for (const auto& t : o.terms_) r.add_term(t.frequency, t.cos_amp, t.sin_amp);
  return r;
}

TrigPolynomial TrigPolynomial::operator-() const { return *this * -1.0; }

TrigPolynomial TrigPolynomial::operator-(const TrigPolynomial& o) const { return *this + (-o); }

TrigPolynomial TrigPolynomial::operator*(double s) const {
  TrigPolynomial r;
  r.constant_ = constant_ * s;
  for (const auto& t : terms_) r.add_term(t.frequency, t.cos_amp * s, t.sin_amp * s);
  return r;
}

TrigPolynomial TrigPolynomial::operator*(const TrigPolynomial& o) const {
  TrigPolynomial r;
  r.constant_ = constant_ * o.constant_;
  for (const auto& t : terms_) r.add_term(t.frequency, t.cos_amp * o.constant_, t.sin_amp * o.constant_);
  for (const auto& t : o.terms_) r.add_term(t.frequency, t.cos_amp * constant_, t.sin_amp * constant_);
  for (const auto& p : terms_) {
    for (const auto& q : o.terms_) {
      const double sum = p.frequency + q.frequency;
      const double diff = p.frequency - q.frequency;
      // cos a cos b = (cos(a-b) + cos(a+b))/2
      // sin a sin b = (cos(a-b) - cos(a+b))/2
      // sin a cos b = (sin(a+b) + sin(a-b))/2
      // cos a sin b = (sin(a+b) - sin(a-b))/2
      const double cc = p.cos_amp * q.cos_amp;
      const double ss = p.sin_amp * q.sin_amp;
      const double sc = p.sin_amp * q.cos_amp;
      const double cs = p.cos_amp * q.sin_amp;
      r.add_term(sum, 0.5 * (cc - ss), 0.5 * (sc + cs));
      r.add_term(diff, 0.5 * (cc + ss), 0.5 * (sc - cs));
    }
  }
  return r;
}

TrigPolynomial TrigPolynomial::pow(int n) const {
  TrigPolynomial r(1.0);
  TrigPolynomial base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

std::complex<double> ExponentialSum::operator()(double x) const {
  std::complex<double> v = 0.0;
  for (const auto& t : terms) v += t.coeff * std::polar(1.0, t.frequency * x);
  return v;
}

std::complex<double> ExponentialSum::derivative(double x) const {
  std::complex<double> v = 0.0;
  for (const auto& t : terms) v += t.coeff * std::complex<double>(0.0, t.frequency) * std::polar(1.0, t.frequency * x);
  return v;
}

}  // namespace superosc

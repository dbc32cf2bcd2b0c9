#include "superosc/bandlimited.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "superosc/errors.hpp"
#include "superosc/special.hpp"

namespace superosc {

using detail::Node;
using NodePtr = std::shared_ptr<const Node>;

namespace {

constexpr cplx I{0.0, 1.0};

// ---------------------------------------------------------------------------
// Evaluation nodes

class ConstNode final : public Node {
 public:
  explicit ConstNode(cplx c) : c_(c) {}
  cplx value(double) const override { return c_; }
  Jet jet(double) const override { return {c_, 0.0}; }

 private:
  cplx c_;
};

enum class Builtin { Sin, Cos, Sinc };

class AffineBuiltinNode final : public Node {
 public:
  AffineBuiltinNode(Builtin fn, double slope, double intercept) : fn_(fn), slope_(slope), intercept_(intercept) {}

  cplx value(double x) const override {
    const double y = slope_ * x + intercept_;
    switch (fn_) {
      case Builtin::Sin:
        return std::sin(y);
      case Builtin::Cos:
        return std::cos(y);
      case Builtin::Sinc:
        return special::sinc(y);
    }
    return 0.0;
  }

  Jet jet(double x) const override {
    const double y = slope_ * x + intercept_;
    switch (fn_) {
      case Builtin::Sin:
        return {std::sin(y), slope_ * std::cos(y)};
      case Builtin::Cos:
        return {std::cos(y), -slope_ * std::sin(y)};
      case Builtin::Sinc:
        return {special::sinc(y), slope_ * special::sinc_derivative(y)};
    }
    return {};
  }

 private:
  Builtin fn_;
  double slope_;
  double intercept_;
};

class NegNode final : public Node {
 public:
  explicit NegNode(NodePtr a) : a_(std::move(a)) {}
  cplx value(double x) const override { return -a_->value(x); }
  Jet jet(double x) const override {
    const Jet j = a_->jet(x);
    return {-j.value, -j.derivative};
  }

 private:
  NodePtr a_;
};

class BinaryNode final : public Node {
 public:
  BinaryNode(ExprKind op, NodePtr a, NodePtr b) : op_(op), a_(std::move(a)), b_(std::move(b)) {}

  cplx value(double x) const override {
    const cplx u = a_->value(x);
    const cplx v = b_->value(x);
    switch (op_) {
      case ExprKind::Add:
        return u + v;
      case ExprKind::Sub:
        return u - v;
      case ExprKind::Mul:
        return u * v;
      default:
        return u / v;
    }
  }

  Jet jet(double x) const override {
    const Jet u = a_->jet(x);
    const Jet v = b_->jet(x);
    switch (op_) {
      case ExprKind::Add:
        return {u.value + v.value, u.derivative + v.derivative};
      case ExprKind::Sub:
        return {u.value - v.value, u.derivative - v.derivative};
      case ExprKind::Mul:
        return {u.value * v.value, u.derivative * v.value + u.value * v.derivative};
      default:
        // divisor is constant
        return {u.value / v.value, u.derivative / v.value};
    }
  }

 private:
  ExprKind op_;
  NodePtr a_;
  NodePtr b_;
};

class PowNode final : public Node {
 public:
  PowNode(NodePtr a, int n) : a_(std::move(a)), n_(n) {}
  cplx value(double x) const override { return ipow(a_->value(x), n_); }
  Jet jet(double x) const override {
    const Jet j = a_->jet(x);
    const cplx lower = ipow(j.value, n_ - 1);
    return {lower * j.value, static_cast<double>(n_) * lower * j.derivative};
  }

  static cplx ipow(cplx b, int n) {
    cplx r = 1.0;
    while (n > 0) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n) b *= b;
    }
    return r;
  }

 private:
  NodePtr a_;
  int n_;
};

class ProjectionNode final : public Node {
 public:
  ProjectionNode(NodePtr a, bool imag) : a_(std::move(a)), imag_(imag) {}
  cplx value(double x) const override { return pick(a_->value(x)); }
  Jet jet(double x) const override {
    const Jet j = a_->jet(x);
    return {pick(j.value), pick(j.derivative)};
  }

 private:
  cplx pick(cplx z) const { return imag_ ? z.imag() : z.real(); }
  NodePtr a_;
  bool imag_;
};

class GNode final : public Node {
 public:
  GNode(double a, int n) : a_(a), n_(n) {}
  cplx value(double x) const override { return g_closed_form(x, a_, n_); }
  Jet jet(double x) const override {
    const double t = x / n_;
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double log_r = 0.5 * std::log1p((a_ * a_ - 1.0) * s * s);
    const double theta = std::atan2(a_ * s, c);
    const cplx log_base{log_r, theta};
    const cplx lower = std::exp(static_cast<double>(n_ - 1) * log_base);
    const cplx base{c, a_ * s};
    return {lower * base, lower * cplx{-s, a_ * c}};
  }

 private:
  double a_;
  int n_;
};

// Five-point central difference, one Richardson step.
template <typename F>
cplx numeric_derivative(const F& f, double x) {
  auto five_point = [&](double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
  };
  const double h = std::max(1e-3, 1e-3 * std::abs(x));
  const cplx coarse = five_point(h);
  const cplx fine = five_point(0.5 * h);
  return (16.0 * fine - coarse) / 15.0;
}

class FNode final : public Node {
 public:
  FNode(double amp, double delta) : a_(amp), delta_(delta) {}

  cplx value(double x) const override {
    const double y = delta_ * delta_ * x;
    const cplx denom = delta_ * std::sqrt(cplx{2.0, 2.0 * y});
    const cplx zp = cplx{2.0, a_ + 2.0 * y} / denom;
    const cplx zm = cplx{2.0, -a_ + 2.0 * y} / denom;
    const cplx pref = (special::erf(zp) + special::erf(zm)) / (2.0 * std::sqrt(cplx{1.0, y}));
    const cplx expo = I * x * cplx{a_ * a_ + 2.0, 2.0 * y} / (2.0 * cplx{1.0, y});
    return pref * std::exp(expo);
  }

  Jet jet(double x) const override {
    return {value(x), numeric_derivative([this](double t) { return value(t); }, x)};
  }

 private:
  double a_;
  double delta_;
};

class ChremmosNode final : public Node {
 public:
  ChremmosNode(double s, double d) : s_(s), d_(d) {}

  cplx value(double x) const override {
    const double u = x / s_;
    const double env = special::sinc(x / (4.0 * d_));
    const double env2 = env * env;
    return 1.5 * std::sqrt(3.0) * (u * u * u - u) * env2 * env2;
  }

  Jet jet(double x) const override {
    return {value(x), numeric_derivative([this](double t) { return value(t); }, x)};
  }

 private:
  double s_;
  double d_;
};

class CosProductNode final : public Node {
 public:
  CosProductNode(double m, double n) : m_(m), n_(n) {}
  cplx value(double x) const override { return std::cos(m_ * x) * std::cos(n_ * x); }
  Jet jet(double x) const override {
    const double cm = std::cos(m_ * x), sm = std::sin(m_ * x);
    const double cn = std::cos(n_ * x), sn = std::sin(n_ * x);
    return {cm * cn, -m_ * sm * cn - n_ * cm * sn};
  }

 private:
  double m_;
  double n_;
};

class ShiftedCosSquaredNode final : public Node {
 public:
  ShiftedCosSquaredNode(double s, double m) : s_(s), m_(m) {}
  cplx value(double x) const override {
    const double d = std::cos(m_ * x) - s_;
    return d * d;
  }
  Jet jet(double x) const override {
    const double d = std::cos(m_ * x) - s_;
    return {d * d, -2.0 * m_ * std::sin(m_ * x) * d};
  }

 private:
  double s_;
  double m_;
};

// ---------------------------------------------------------------------------
// Compilation

struct Compiled {
  NodePtr node;
  double band_edge = 0.0;
  bool real = true;
  std::optional<TrigPolynomial> trig;
  bool constant = false;
};

Compiled make_constant(double v) {
  return {std::make_shared<ConstNode>(v), 0.0, true, TrigPolynomial(v), true};
}

double constant_value(const Expr& e);

// (slope, intercept) when e is affine in x.
std::optional<std::pair<double, double>> affine_form(const Expr& e) {
  using P = std::pair<double, double>;
  switch (e.kind) {
    case ExprKind::Number:
      return P{0.0, e.number};
    case ExprKind::Variable:
      return P{1.0, 0.0};
    case ExprKind::Neg: {
      auto a = affine_form(*e.args[0]);
      if (!a) return std::nullopt;
      return P{-a->first, -a->second};
    }
    case ExprKind::Add:
    case ExprKind::Sub: {
      auto a = affine_form(*e.args[0]);
      auto b = affine_form(*e.args[1]);
      if (!a || !b) return std::nullopt;
      const double sign = e.kind == ExprKind::Add ? 1.0 : -1.0;
      return P{a->first + sign * b->first, a->second + sign * b->second};
    }
    case ExprKind::Mul: {
      auto a = affine_form(*e.args[0]);
      auto b = affine_form(*e.args[1]);
      if (!a || !b) return std::nullopt;
      if (a->first == 0.0) return P{a->second * b->first, a->second * b->second};
      if (b->first == 0.0) return P{b->second * a->first, b->second * a->second};
      return std::nullopt;
    }
    case ExprKind::Div: {
      auto a = affine_form(*e.args[0]);
      if (!a) return std::nullopt;
      const double d = constant_value(*e.args[1]);
      if (d == 0.0) throw CompileError("division by zero");
      return P{a->first / d, a->second / d};
    }
    default:
      if (is_constant(e)) return P{0.0, constant_value(e)};
      return std::nullopt;
  }
}

Compiled compile_node(const Expr& e);

double constant_value(const Expr& e) {
  const Compiled c = compile_node(e);
  if (!c.constant) throw CompileError("expected a constant expression, got '" + print(e) + "'");
  const cplx v = c.node->value(0.0);
  if (v.imag() != 0.0 || !std::isfinite(v.real())) throw CompileError("constant '" + print(e) + "' is not a finite real");
  return v.real();
}

Compiled compile_builtin(const Expr& e) {
  const auto form = affine_form(*e.args[0]);
  if (!form) {
    throw CompileError("argument of " + e.name + "() must be affine in x to certify a band edge: '" +
                       print(*e.args[0]) + "'");
  }
  const auto [slope, intercept] = *form;
  const Builtin fn = e.name == "sin" ? Builtin::Sin : e.name == "cos" ? Builtin::Cos : Builtin::Sinc;
  Compiled c;
  c.node = std::make_shared<AffineBuiltinNode>(fn, slope, intercept);
  c.band_edge = std::abs(slope);
  c.real = true;
  c.constant = slope == 0.0;
  if (fn == Builtin::Sin) c.trig = TrigPolynomial::sin_affine(slope, intercept);
  if (fn == Builtin::Cos) c.trig = TrigPolynomial::cos_affine(slope, intercept);
  if (c.constant) return make_constant(c.node->value(0.0).real());
  return c;
}

Compiled compile_catalog(const Expr& e) {
  const double p = constant_value(*e.args[0]);
  const double q = constant_value(*e.args[1]);
  Compiled c;
  if (e.name == "g") {
    if (q < 1.0 || q != std::floor(q) || q > 1e9) throw CompileError("g(a,N) requires an integer N >= 1");
    c.node = std::make_shared<GNode>(p, static_cast<int>(q));
    c.band_edge = 1.0;
    c.real = false;
  } else if (e.name == "F") {
    if (!(q > 0.0)) throw CompileError("F(A,delta) requires delta > 0");
    c.node = std::make_shared<FNode>(p, q);
    c.band_edge = 1.0;
    c.real = false;
  } else if (e.name == "G") {
    if (p == 0.0) throw CompileError("G(s,D) requires s != 0");
    if (!(q >= 1.0)) throw CompileError("G(s,D) requires D >= 1 for a declared band edge");
    c.node = std::make_shared<ChremmosNode>(p, q);
    c.band_edge = 1.0;
  } else if (e.name == "h") {
    c.node = std::make_shared<CosProductNode>(p, q);
    c.band_edge = std::abs(p) + std::abs(q);
    c.trig = TrigPolynomial::cosine(p) * TrigPolynomial::cosine(q);
  } else {  // hs
    c.node = std::make_shared<ShiftedCosSquaredNode>(p, q);
    c.band_edge = 2.0 * std::abs(q);
    const TrigPolynomial shifted = TrigPolynomial::cosine(q) - TrigPolynomial(p);
    c.trig = shifted * shifted;
  }
  return c;
}

Compiled compile_node(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Number:
      return make_constant(e.number);
    case ExprKind::Variable:
      throw CompileError("bare x is not bandlimited; use it only inside sin, cos or sinc");
    case ExprKind::Neg: {
      Compiled a = compile_node(*e.args[0]);
      Compiled c{std::make_shared<NegNode>(a.node), a.band_edge, a.real, std::nullopt, a.constant};
      if (a.trig) c.trig = -*a.trig;
      return c;
    }
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul: {
      Compiled a = compile_node(*e.args[0]);
      Compiled b = compile_node(*e.args[1]);
      Compiled c;
      c.node = std::make_shared<BinaryNode>(e.kind, a.node, b.node);
      c.band_edge = e.kind == ExprKind::Mul ? a.band_edge + b.band_edge : std::max(a.band_edge, b.band_edge);
      c.real = a.real && b.real;
      c.constant = a.constant && b.constant;
      if (a.trig && b.trig) {
        c.trig = e.kind == ExprKind::Add ? *a.trig + *b.trig
                 : e.kind == ExprKind::Sub ? *a.trig - *b.trig
                                           : *a.trig * *b.trig;
      }
      return c;
    }
    case ExprKind::Div: {
      Compiled a = compile_node(*e.args[0]);
      const double d = constant_value(*e.args[1]);
      if (d == 0.0) throw CompileError("division by zero");
      Compiled c;
      c.node = std::make_shared<BinaryNode>(ExprKind::Div, a.node, std::make_shared<ConstNode>(d));
      c.band_edge = a.band_edge;
      c.real = a.real;
      c.constant = a.constant;
      if (a.trig) c.trig = *a.trig * (1.0 / d);
      return c;
    }
    case ExprKind::Pow: {
      if (e.exponent < 1) throw CompileError("exponent must be >= 1");
      Compiled a = compile_node(*e.args[0]);
      Compiled c;
      c.node = std::make_shared<PowNode>(a.node, e.exponent);
      c.band_edge = a.band_edge * e.exponent;
      c.real = a.real;
      c.constant = a.constant;
      // Expansion size grows quickly with the exponent; past this the
      // function is still evaluatable but has no trig form.
      if (a.trig && e.exponent <= 32) c.trig = a.trig->pow(e.exponent);
      return c;
    }
    case ExprKind::Call:
      switch (classify_call(e.name)) {
        case CallClass::Builtin:
          return compile_builtin(e);
        case CallClass::Projection: {
          Compiled a = compile_node(*e.args[0]);
          const bool imag = e.name == "im";
          Compiled c{std::make_shared<ProjectionNode>(a.node, imag), a.band_edge, true, std::nullopt, a.constant};
          // Trig polynomials are real, so re() is the identity and im() vanishes.
          if (a.trig) c.trig = imag ? TrigPolynomial() : *a.trig;
          return c;
        }
        case CallClass::Catalog:
          return compile_catalog(e);
        case CallClass::Unknown:
          break;
      }
      throw CompileError("unknown function '" + e.name + "'");
  }
  throw CompileError("unsupported expression");
}

double eval_poly(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

double eval_poly_derivative(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) v = v * x + static_cast<double>(k) * coeffs[k];
  return v;
}

cplx checked(cplx v, double x) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw EvaluationError("non-finite value at x = " + std::to_string(x));
  }
  return v;
}

}  // namespace

cplx g_closed_form(double x, double a, int n) {
  const double t = x / n;
  const double s = std::sin(t);
  const double c = std::cos(t);
  // |base|^2 = cos^2 + a^2 sin^2 = 1 + (a^2 - 1) sin^2
  const double log_r = 0.5 * std::log1p((a * a - 1.0) * s * s);
  const double theta = std::atan2(a * s, c);
  return std::exp(static_cast<double>(n) * cplx{log_r, theta});
}

double BandlimitedFunction::bandlimit_w() const { return band_edge_ / std::numbers::pi; }

cplx BandlimitedFunction::operator()(double x) const {
  cplx v = root_->value(x);
  if (!reference_poly_.empty()) v -= eval_poly(reference_poly_, x);
  return checked(v, x);
}

cplx BandlimitedFunction::derivative(double x) const { return jet(x).derivative; }

Jet BandlimitedFunction::jet(double x) const {
  Jet j = root_->jet(x);
  if (!reference_poly_.empty()) {
    j.value -= eval_poly(reference_poly_, x);
    j.derivative -= eval_poly_derivative(reference_poly_, x);
  }
  checked(j.value, x);
  checked(j.derivative, x);
  return j;
}

BandlimitedFunction compile(const ExprPtr& expr, std::string label) {
  if (!expr) throw CompileError("empty expression");
  Compiled c = compile_node(*expr);
  BandlimitedFunction f;
  f.expr_ = expr;
  f.root_ = c.node;
  f.band_edge_ = c.band_edge;
  f.real_valued_ = c.real;
  f.label_ = label.empty() ? print(*expr) : std::move(label);
  f.trig_ = std::move(c.trig);
  return f;
}

BandlimitedFunction compile(std::string_view text) { return compile(parse(text)); }

BandlimitedFunction subtract_polynomial(const BandlimitedFunction& f, std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.size() > 9) throw std::invalid_argument("reference polynomial degree must be <= 8");
  BandlimitedFunction r = f;
  if (r.reference_poly_.size() < coeffs.size()) r.reference_poly_.resize(coeffs.size(), 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) r.reference_poly_[k] += coeffs[k];
  while (!r.reference_poly_.empty() && r.reference_poly_.back() == 0.0) r.reference_poly_.pop_back();
  if (coeffs.size() > 1) r.band_edge_inherited_ = true;
  if (r.trig_) {
    if (r.reference_poly_.size() <= 1 && !r.band_edge_inherited_) {
      if (!coeffs.empty()) r.trig_ = *r.trig_ - TrigPolynomial(coeffs[0]);
    } else {
      r.trig_.reset();
    }
  }
  return r;
}

double sequence_distance(double a, int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("sequence_distance requires N >= 1");
  if (!(hi >= lo)) throw std::invalid_argument("sequence_distance requires lo <= hi");
  constexpr int kGrid = 4096;
  double sup = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = lo + (hi - lo) * i / (kGrid - 1);
    const cplx g = checked(g_closed_form(x, a, n), x);
    sup = std::max(sup, std::abs(g - std::polar(1.0, a * x)));
  }
  return sup;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"g", "a, N", "1", "(cos(x/N) + i a sin(x/N))^N"},
      {"F", "A, delta", "1",
       "[erf((iA + 2i delta^2 x + 2)/(delta sqrt(2 + 2i delta^2 x))) + erf((-iA + 2i delta^2 x + 2)/(...))]"
       " / (2 sqrt(1 + i delta^2 x)) * exp(i x (A^2 + 2i delta^2 x + 2) / (2 (1 + i delta^2 x)))"},
      {"G", "s, D", "1", "(3 sqrt(3)/2) (x^3/s^3 - x/s) sinc^4(x/(4D)), D >= 1"},
      {"h", "m, n", "|m|+|n|", "cos(m x) cos(n x)"},
      {"hs", "s, m", "2|m|", "(cos(m x) - s)^2"},
      {"sinc", "(builtin)", "1", "sin(x)/x"},
  };
  return entries;
}

}  // namespace superosc

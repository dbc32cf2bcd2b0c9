#include "superosc/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "superosc/errors.hpp"

namespace superosc {

ExprPtr Expr::make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Number;
  e->number = v;
  return e;
}

ExprPtr Expr::make_variable() {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Variable;
  return e;
}

ExprPtr Expr::make_neg(ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Neg;
  e->args = {std::move(operand)};
  return e;
}

ExprPtr Expr::make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr Expr::make_pow(ExprPtr base, int exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Pow;
  e->exponent = exponent;
  e->args = {std::move(base)};
  return e;
}

ExprPtr Expr::make_call(std::string name, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Call;
  e->name = std::move(name);
  e->args = std::move(args);
  return e;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case ExprKind::Number:
      if (a.number != b.number) return false;
      break;
    case ExprKind::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    case ExprKind::Call:
      if (a.name != b.name) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

CallClass classify_call(std::string_view name) {
  if (name == "sin" || name == "cos" || name == "sinc") return CallClass::Builtin;
  if (name == "re" || name == "im") return CallClass::Projection;
  if (name == "g" || name == "F" || name == "G" || name == "h" || name == "hs") return CallClass::Catalog;
  return CallClass::Unknown;
}

int call_arity(std::string_view name) {
  switch (classify_call(name)) {
    case CallClass::Builtin:
    case CallClass::Projection:
      return 1;
    case CallClass::Catalog:
      return 2;
    case CallClass::Unknown:
      break;
  }
  return -1;
}

bool is_constant(const Expr& e) {
  if (e.kind == ExprKind::Variable) return false;
  if (e.kind == ExprKind::Call && classify_call(e.name) == CallClass::Catalog) return false;
  for (const auto& a : e.args) {
    if (!is_constant(*a)) return false;
  }
  return true;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse_all() {
    auto e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  ExprPtr parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::make_binary(ExprKind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::make_binary(ExprKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    auto lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::make_binary(ExprKind::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        auto rhs = parse_unary();
        if (!is_constant(*rhs)) throw ParseError("division by non-constant expression", at);
        lhs = Expr::make_binary(ExprKind::Div, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (!accept('-')) return parse_power();
    // A sign directly on a literal becomes part of it, except under '^' (-2^2 is -(2^2)).
    skip_ws();
    const std::size_t at = pos_;
    if (at < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[at])) || text_[at] == '.')) {
      const double v = parse_number_literal();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '^') return Expr::make_number(-v);
      pos_ = at;
    }
    return Expr::make_neg(parse_unary());
  }

  ExprPtr parse_power() {
    auto base = parse_primary();
    while (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      if (at >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[at])) || text_[at] == '.')) {
        fail("exponent must be a positive integer literal");
      }
      const double v = parse_number_literal();
      if (v != std::floor(v) || v < 1.0 || v > 1e6) {
        throw ParseError("non-integer or non-positive exponent", at);
      }
      base = Expr::make_pow(base, static_cast<int>(v));
    }
    return base;
  }

  double parse_number_literal() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError("malformed number", start);
    return v;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return Expr::make_number(parse_number_literal());
    if (ch == '(') {
      ++pos_;
      auto e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (name == "x") return Expr::make_variable();
      if (classify_call(name) == CallClass::Unknown) throw ParseError("unknown identifier '" + name + "'", start);
      expect('(');
      std::vector<ExprPtr> args;
      args.push_back(parse_expr());
      while (accept(',')) args.push_back(parse_expr());
      expect(')');
      const int arity = call_arity(name);
      if (static_cast<int>(args.size()) != arity) {
        throw ParseError("'" + name + "' takes " + std::to_string(arity) + " argument(s), got " +
                             std::to_string(args.size()),
                         start);
      }
      return Expr::make_call(std::move(name), std::move(args));
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer; higher binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    case ExprKind::Number:
      return std::signbit(e.number) ? 3 : 5;  // printed with a leading '-'
    default:
      return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

void print_into(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print_into(e, out);
  if (wrap) out += ')';
}

void print_into(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::Number:
      out += format_number(e.number);
      return;
    case ExprKind::Variable:
      out += 'x';
      return;
    case ExprKind::Neg:
      out += '-';
      print_wrapped(*e.args[0], precedence(*e.args[0]) < 3 || e.args[0]->kind == ExprKind::Number, out);
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
      const int p = precedence(e);
      const char op = e.kind == ExprKind::Add ? '+' : e.kind == ExprKind::Sub ? '-' : e.kind == ExprKind::Mul ? '*' : '/';
      // Left-associative: the right operand needs parens at equal precedence.
      print_wrapped(*e.args[0], precedence(*e.args[0]) < p, out);
      out += op;
      print_wrapped(*e.args[1], precedence(*e.args[1]) <= p, out);
      return;
    }
    case ExprKind::Pow:
      print_wrapped(*e.args[0], precedence(*e.args[0]) < 5, out);
      out += '^';
      out += std::to_string(e.exponent);
      return;
    case ExprKind::Call:
      out += e.name;
      out += '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ',';
        print_into(*e.args[i], out);
      }
      out += ')';
      return;
  }
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

}  // namespace superosc

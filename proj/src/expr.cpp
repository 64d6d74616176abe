#include "znav/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "znav/errors.hpp"

namespace znav {

class ExprParser {
 public:
  ExprParser(const std::string& s, Expression& out) : s_(s), out_(out) {}

  void run() {
    const int root = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    (void)root;  // root is the last node pushed
    if (out_.nodes_.empty()) fail("empty expression");
  }

 private:
  using Op = Expression::Op;

  const std::string& s_;
  Expression& out_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("expression error at position " + std::to_string(pos_) + " in \"" + s_ +
                          "\": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int push(Expression::Node n) {
    out_.nodes_.push_back(n);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (eat('+')) {
        int rhs = parse_term();
        lhs = push({Op::Add, 0.0, lhs, rhs});
      } else if (eat('-')) {
        int rhs = parse_term();
        lhs = push({Op::Sub, 0.0, lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_factor();
    for (;;) {
      if (eat('*')) {
        int rhs = parse_factor();
        lhs = push({Op::Mul, 0.0, lhs, rhs});
      } else if (eat('/')) {
        int rhs = parse_factor();
        lhs = push({Op::Div, 0.0, lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than ^, so -x^2 parses as -(x^2).
  int parse_factor() {
    if (eat('-')) return push({Op::Neg, 0.0, parse_factor(), -1});
    if (eat('+')) return parse_factor();
    int base = parse_primary();
    if (eat('^')) {
      int exponent = parse_factor();  // right associative
      return push({Op::Pow, 0.0, base, exponent});
    }
    return base;
  }

  int parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      int e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  int parse_number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double val = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos_ += static_cast<size_t>(end - begin);
    return push({Op::Num, val, -1, -1});
  }

  int parse_ident() {
    const size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "x") return push({Op::VarX, 0.0, -1, -1});
    if (name == "y") return push({Op::VarY, 0.0, -1, -1});
    if (name == "pi") return push({Op::Num, 3.14159265358979323846, -1, -1});
    Op fn;
    if (name == "sin") fn = Op::Sin;
    else if (name == "cos") fn = Op::Cos;
    else if (name == "exp") fn = Op::Exp;
    else if (name == "log") fn = Op::Log;
    else if (name == "sqrt") fn = Op::Sqrt;
    else fail("unknown identifier '" + name + "'");
    if (!eat('(')) fail("expected '(' after function name");
    int arg = parse_expr();
    if (!eat(')')) fail("expected ')'");
    return push({fn, 0.0, arg, -1});
  }
};

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  ExprParser(text, e).run();
  return e;
}

namespace {

double scalar_pow(double a, double b) { return std::pow(a, b); }
Jet2 scalar_pow(const Jet2& a, const Jet2& b) {
  // Integer constant exponents go through the exact power route.
  if (b.gx == 0.0 && b.gy == 0.0 && b.gxx == 0.0 && b.gxy == 0.0 && b.gyy == 0.0) return pow(a, b.v);
  return pow(a, b);
}

double make_const(double v, const double&) { return v; }
Jet2 make_const(double v, const Jet2&) { return Jet2::constant(v); }

}  // namespace

template <class T>
T Expression::eval_generic(const T& x, const T& y) const {
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  std::vector<T> vals(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::Num: vals[i] = make_const(n.num, x); break;
      case Op::VarX: vals[i] = x; break;
      case Op::VarY: vals[i] = y; break;
      case Op::Add: vals[i] = vals[n.a] + vals[n.b]; break;
      case Op::Sub: vals[i] = vals[n.a] - vals[n.b]; break;
      case Op::Mul: vals[i] = vals[n.a] * vals[n.b]; break;
      case Op::Div: vals[i] = vals[n.a] / vals[n.b]; break;
      case Op::Pow: vals[i] = scalar_pow(vals[n.a], vals[n.b]); break;
      case Op::Neg: vals[i] = -vals[n.a]; break;
      case Op::Sin: vals[i] = sin(vals[n.a]); break;
      case Op::Cos: vals[i] = cos(vals[n.a]); break;
      case Op::Exp: vals[i] = exp(vals[n.a]); break;
      case Op::Log: vals[i] = log(vals[n.a]); break;
      case Op::Sqrt: vals[i] = sqrt(vals[n.a]); break;
    }
  }
  return vals.back();
}

double Expression::eval(double x, double y) const { return eval_generic<double>(x, y); }

Jet2 Expression::eval_jet(double x, double y) const {
  return eval_generic<Jet2>(Jet2::var_x(x), Jet2::var_y(y));
}

}  // namespace znav

// Arithmetic mini-language for scalar fields on a chart.
//
// Grammar: + - * / ^ (right assoc), unary minus, parentheses,
// functions sin cos exp log sqrt, variables x y, constant pi.
// Expressions evaluate on plain doubles or on Jet2, so any field written
// in the mini-language carries exact first and second derivatives.

#ifndef ZNAV_EXPR_HPP
#define ZNAV_EXPR_HPP

#include <string>
#include <vector>

#include "znav/jet.hpp"

namespace znav {

class Expression {
 public:
  Expression() = default;

  // Throws ValidationError with the offending position on parse failure.
  static Expression parse(const std::string& text);

  double eval(double x, double y) const;
  Jet2 eval_jet(double x, double y) const;

  bool empty() const { return nodes_.empty(); }
  const std::string& text() const { return text_; }

 private:
  enum class Op : unsigned char { Num, VarX, VarY, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Log, Sqrt };
  struct Node {
    Op op;
    double num = 0.0;
    int a = -1;
    int b = -1;
  };

  template <class T>
  T eval_generic(const T& x, const T& y) const;

  std::vector<Node> nodes_;  // root is nodes_.back()
  std::string text_;

  friend class ExprParser;
};

}  // namespace znav

#endif

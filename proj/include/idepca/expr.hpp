#pragma once

// Closed-form real functions of one variable, parsed from text:
//
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := "-" unary | power
//   power   := primary ("^" unary)?          right-associative
//   primary := number | ident | func "(" expr ")" | "(" expr ")"
//   func    := exp | ln | sin | cos | sqrt | abs
//
// "^" binds tighter than a leading minus, so "-t^2" is -(t^2).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idepca/error.hpp"

namespace idepca {

enum class Op : std::uint8_t {
  Constant,
  Variable,
  Neg,
  Exp,
  Ln,
  Sin,
  Cos,
  Sqrt,
  Abs,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
};

bool is_unary(Op op);
bool is_binary(Op op);

// Node of a postfix-ordered tree: children always precede their parent and the
// root is the last node.
struct ExprNode {
  Op op = Op::Constant;
  double value = 0.0;
  std::int32_t lhs = -1;
  std::int32_t rhs = -1;
};

class Expr {
 public:
  // The constant zero in variable "t".
  Expr();

  double operator()(double x) const;
  // out[i] = (*this)(xs[i]); bit-identical to the scalar path.
  void eval_batch(std::span<const double> xs, std::span<double> out) const;

  const std::string& variable() const noexcept { return variable_; }
  std::span<const ExprNode> nodes() const noexcept { return *nodes_; }
  bool is_constant() const noexcept { return !uses_variable_; }

  // Fully parenthesised text that parses back to the same tree.
  std::string to_string() const;

  // Structural equality (constants compared exactly).
  friend bool operator==(const Expr& lhs, const Expr& rhs);

 private:
  friend Expr parse(std::string_view source, std::string_view variable_name);
  Expr(std::vector<ExprNode> nodes, std::string variable);

  std::shared_ptr<const std::vector<ExprNode>> nodes_;
  std::string variable_;
  bool uses_variable_ = false;
};

// Throws ParseError (with the zero-based offset of the offending character).
Expr parse(std::string_view source, std::string_view variable_name);

inline double eval(const Expr& e, double x) { return e(x); }

}  // namespace idepca

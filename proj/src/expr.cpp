#include "idepca/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <utility>

#include "idepca/kernels.hpp"

namespace idepca {

bool is_unary(Op op) { return op >= Op::Neg && op <= Op::Abs; }
bool is_binary(Op op) { return op >= Op::Add; }

namespace {

struct FunctionName {
  std::string_view name;
  Op op;
};

constexpr std::array<FunctionName, 6> kFunctions{{
    {"exp", Op::Exp},
    {"ln", Op::Ln},
    {"sin", Op::Sin},
    {"cos", Op::Cos},
    {"sqrt", Op::Sqrt},
    {"abs", Op::Abs},
}};

inline double apply_unary(Op op, double x) {
  switch (op) {
    case Op::Neg: return -x;
    case Op::Exp: return std::exp(x);
    case Op::Ln: return std::log(x);
    case Op::Sin: return std::sin(x);
    case Op::Cos: return std::cos(x);
    case Op::Sqrt: return std::sqrt(x);
    case Op::Abs: return std::fabs(x);
    default: return x;
  }
}

inline double apply_binary(Op op, double x, double y) {
  switch (op) {
    case Op::Add: return x + y;
    case Op::Sub: return x - y;
    case Op::Mul: return x * y;
    case Op::Div: return x / y;
    case Op::Pow: return std::pow(x, y);
    default: return x;
  }
}

class Parser {
 public:
  Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

  std::vector<ExprNode> run() {
    skip_ws();
    if (at_end()) throw ParseError(pos_, "empty expression");
    parse_expr();
    skip_ws();
    if (!at_end()) {
      if (peek() == ')') throw ParseError(pos_, "unbalanced ')'");
      throw ParseError(pos_, std::string("unexpected trailing '") + peek() + "'");
    }
    return std::move(nodes_);
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int32_t push(ExprNode node) {
    nodes_.push_back(node);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::int32_t binary(Op op, std::int32_t lhs, std::int32_t rhs) {
    return push(ExprNode{op, 0.0, lhs, rhs});
  }

  std::int32_t parse_expr() {
    std::int32_t lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = binary(Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  std::int32_t parse_term() {
    std::int32_t lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  std::int32_t parse_unary() {
    if (accept('-')) {
      const std::int32_t child = parse_unary();
      return push(ExprNode{Op::Neg, 0.0, child, -1});
    }
    return parse_power();
  }

  std::int32_t parse_power() {
    const std::int32_t base = parse_primary();
    if (accept('^')) return binary(Op::Pow, base, parse_unary());
    return base;
  }

  std::int32_t parse_primary() {
    skip_ws();
    if (at_end()) throw ParseError(pos_, "unexpected end of input");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      const std::int32_t inner = parse_expr();
      skip_ws();
      if (at_end() || peek() != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::int32_t parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (!at_end() && peek() == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, "malformed number");
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      if (digits() == 0) throw ParseError(mark, "malformed exponent");
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
      throw ParseError(start, "number out of range");
    return push(ExprNode{Op::Constant, value, -1, -1});
  }

  std::int32_t parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string_view ident = src_.substr(start, pos_ - start);

    const std::size_t after = pos_;
    skip_ws();
    const bool call = !at_end() && peek() == '(';
    pos_ = after;

    if (call) {
      for (const auto& f : kFunctions) {
        if (f.name == ident) {
          accept('(');
          const std::int32_t arg = parse_expr();
          skip_ws();
          if (at_end() || peek() != ')') throw ParseError(pos_, "expected ')'");
          ++pos_;
          return push(ExprNode{f.op, 0.0, arg, -1});
        }
      }
      throw ParseError(start, "unknown function '" + std::string(ident) + "'");
    }
    if (ident == var_) return push(ExprNode{Op::Variable, 0.0, -1, -1});
    throw ParseError(start, "unknown identifier '" + std::string(ident) + "'");
  }

  std::string_view src_;
  std::string_view var_;
  std::size_t pos_ = 0;
  std::vector<ExprNode> nodes_;
};

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string_view function_name(Op op) {
  for (const auto& f : kFunctions)
    if (f.op == op) return f.name;
  return "";
}

void print(std::span<const ExprNode> nodes, std::int32_t i, const std::string& var, std::string& out) {
  const ExprNode& node = nodes[static_cast<std::size_t>(i)];
  switch (node.op) {
    case Op::Constant: {
      char buf[64];
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, node.value);
      out.append(buf, ptr);
      return;
    }
    case Op::Variable:
      out += var;
      return;
    case Op::Neg:
      out += "(-";
      print(nodes, node.lhs, var, out);
      out += ')';
      return;
    default:
      break;
  }
  if (is_unary(node.op)) {
    out += function_name(node.op);
    out += '(';
    print(nodes, node.lhs, var, out);
    out += ')';
    return;
  }
  static constexpr std::string_view kSymbols = "+-*/^";
  out += '(';
  print(nodes, node.lhs, var, out);
  out += kSymbols[static_cast<std::size_t>(node.op) - static_cast<std::size_t>(Op::Add)];
  print(nodes, node.rhs, var, out);
  out += ')';
}

constexpr std::size_t kBatch = 64;

}  // namespace

Expr::Expr() : Expr(std::vector<ExprNode>{ExprNode{}}, "t") {}

Expr::Expr(std::vector<ExprNode> nodes, std::string variable)
    : nodes_(std::make_shared<const std::vector<ExprNode>>(std::move(nodes))), variable_(std::move(variable)) {
  for (const auto& n : *nodes_)
    if (n.op == Op::Variable) uses_variable_ = true;
}

Expr parse(std::string_view source, std::string_view variable_name) {
  if (!valid_identifier(variable_name))
    throw Error(Errc::InvalidArgument, "variable name must be an identifier");
  return Expr(Parser(source, variable_name).run(), std::string(variable_name));
}

double Expr::operator()(double x) const {
  const auto& nodes = *nodes_;
  std::array<double, 64> small;
  std::vector<double> large;
  double* vals = small.data();
  if (nodes.size() > small.size()) {
    large.resize(nodes.size());
    vals = large.data();
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ExprNode& n = nodes[i];
    switch (n.op) {
      case Op::Constant: vals[i] = n.value; break;
      case Op::Variable: vals[i] = x; break;
      default:
        vals[i] = is_unary(n.op) ? apply_unary(n.op, vals[n.lhs]) : apply_binary(n.op, vals[n.lhs], vals[n.rhs]);
    }
  }
  return vals[nodes.size() - 1];
}

void Expr::eval_batch(std::span<const double> xs, std::span<double> out) const {
  const auto& nodes = *nodes_;
  const auto& k = kernels::active();
  thread_local std::vector<double> regs;
  regs.resize(nodes.size() * kBatch);

  for (std::size_t base = 0; base < xs.size(); base += kBatch) {
    const std::size_t m = std::min(kBatch, xs.size() - base);
    const double* x = xs.data() + base;
    auto reg = [&](std::int32_t i) { return regs.data() + static_cast<std::size_t>(i) * kBatch; };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const ExprNode& n = nodes[i];
      double* r = reg(static_cast<std::int32_t>(i));
      switch (n.op) {
        case Op::Constant:
          for (std::size_t j = 0; j < m; ++j) r[j] = n.value;
          break;
        case Op::Variable: std::memcpy(r, x, m * sizeof(double)); break;
        case Op::Neg: k.neg(reg(n.lhs), r, m); break;
        case Op::Abs: k.abs(reg(n.lhs), r, m); break;
        case Op::Sqrt: k.sqrt(reg(n.lhs), r, m); break;
        case Op::Add: k.add(reg(n.lhs), reg(n.rhs), r, m); break;
        case Op::Sub: k.sub(reg(n.lhs), reg(n.rhs), r, m); break;
        case Op::Mul: k.mul(reg(n.lhs), reg(n.rhs), r, m); break;
        case Op::Div: k.div(reg(n.lhs), reg(n.rhs), r, m); break;
        case Op::Pow: {
          const double* a = reg(n.lhs);
          const double* b = reg(n.rhs);
          for (std::size_t j = 0; j < m; ++j) r[j] = std::pow(a[j], b[j]);
          break;
        }
        default: {
          const double* a = reg(n.lhs);
          for (std::size_t j = 0; j < m; ++j) r[j] = apply_unary(n.op, a[j]);
        }
      }
    }
    std::memcpy(out.data() + base, reg(static_cast<std::int32_t>(nodes.size() - 1)), m * sizeof(double));
  }
}

std::string Expr::to_string() const {
  std::string out;
  print(*nodes_, static_cast<std::int32_t>(nodes_->size() - 1), variable_, out);
  return out;
}

bool operator==(const Expr& lhs, const Expr& rhs) {
  const auto& a = *lhs.nodes_;
  const auto& b = *rhs.nodes_;
  if (lhs.variable_ != rhs.variable_ || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].op != b[i].op || a[i].lhs != b[i].lhs || a[i].rhs != b[i].rhs) return false;
    if (a[i].op == Op::Constant && a[i].value != b[i].value) return false;
  }
  return true;
}

}  // namespace idepca

/**
 * @file expr.hpp
 * @brief A small expression language for scalar-, vector- and matrix-valued
 *        functions of z1..zd: complex literals (a+bi), the operators
 *        + - * / ^ (integer powers only), unary minus, the calls
 *        exp/sin/cos/log/sqrt/conj, and [..] / [[..],[..]] constructors.
 *
 * Grammar:  expr   := term (('+'|'-') term)*
 *           term   := factor (('*'|'/') factor)*
 *           factor := '-' factor | atom ('^' int)?
 *           atom   := number | var | call '(' expr ')' | vector | '(' expr ')'
 * Precedence ^ > unary- > * / > + -, with '^' taking a literal integer
 * exponent (optionally negative). log and sqrt use principal branches. conj
 * is the only non-holomorphic primitive and taints the whole tree; the
 * diagnostics use the taint as an expected-fail hint.
 *
 * The printed form is the canonical serialization: parse(print(e)) is
 * structurally equal to e (literal sums like 1+2i fold into one literal).
 */
#pragma once

#include <charconv>
#include <memory>
#include <string>
#include <string_view>

#include "core.hpp"
#include "quadrature.hpp"

namespace polydisc::expr {

class ParseError : public DomainError {
public:
  ParseError(const std::string& what, std::size_t column)
      : DomainError(what + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

enum class Func { Exp, Sin, Cos, Log, Sqrt, Conj };

inline const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Conj: return "conj";
  }
  return "?";
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Literal, Variable, Neg, Add, Sub, Mul, Div, Pow, Call, Vector, Matrix };

  Kind kind = Kind::Literal;
  Complex literal{0.0, 0.0};
  std::size_t var_index = 0;  // 0-based
  int exponent = 0;
  Func func = Func::Exp;
  std::size_t rows = 0;  // Matrix: children are row-major rows*rows entries
  std::vector<NodePtr> children;

  static NodePtr make_literal(Complex v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Literal;
    n->literal = v;
    return n;
  }
  static NodePtr make_variable(std::size_t index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->var_index = index;
    return n;
  }
  static NodePtr make_unary(Kind kind, NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children = {std::move(child)};
    return n;
  }
  static NodePtr make_binary(Kind kind, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children = {std::move(a), std::move(b)};
    return n;
  }
};

struct Shape {
  enum class Kind { Scalar, Vector, Matrix };
  Kind kind = Kind::Scalar;
  std::size_t m = 1;

  bool operator==(const Shape&) const = default;
};

namespace detail {

struct Token {
  enum class Kind { Number, Ident, Op, End };
  Kind kind = Kind::End;
  double number = 0.0;
  bool imaginary = false;
  std::string ident;
  char op = 0;
  std::size_t column = 0;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    current_ = Token{};
    current_.column = pos_ + 1;
    if (pos_ >= src_.size()) {
      current_.kind = Token::Kind::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      if (end < src_.size() && src_[end] == '.') {
        ++end;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      }
      if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t exp_end = end + 1;
        if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
        if (exp_end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp_end]))) {
          ++exp_end;
          while (exp_end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp_end])))
            ++exp_end;
          end = exp_end;
        }
      }
      double value = 0.0;
      auto result = std::from_chars(src_.data() + pos_, src_.data() + end, value);
      if (result.ec != std::errc{}) throw ParseError("malformed number", pos_ + 1);
      current_.kind = Token::Kind::Number;
      current_.number = value;
      pos_ = end;
      if (pos_ < src_.size() && src_[pos_] == 'i' &&
          (pos_ + 1 >= src_.size() ||
           !std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])))) {
        current_.imaginary = true;
        ++pos_;
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && std::isalnum(static_cast<unsigned char>(src_[end]))) ++end;
      current_.kind = Token::Kind::Ident;
      current_.ident = std::string(src_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    if (std::string_view("+-*/^()[],").find(c) != std::string_view::npos) {
      current_.kind = Token::Kind::Op;
      current_.op = c;
      ++pos_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_ + 1);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
public:
  Parser(std::string_view src, std::size_t dim) : lex_(src), dim_(dim) {}

  NodePtr parse() {
    NodePtr e = parse_expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End) throw ParseError("unexpected trailing input", t.column);
    return e;
  }

private:
  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (lex_.peek().kind == Token::Kind::Op &&
           (lex_.peek().op == '+' || lex_.peek().op == '-')) {
      const char op = lex_.take().op;
      NodePtr rhs = parse_term();
      lhs = fold_binary(op == '+' ? Node::Kind::Add : Node::Kind::Sub, lhs, rhs);
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (lex_.peek().kind == Token::Kind::Op &&
           (lex_.peek().op == '*' || lex_.peek().op == '/')) {
      const char op = lex_.take().op;
      NodePtr rhs = parse_factor();
      lhs = Node::make_binary(op == '*' ? Node::Kind::Mul : Node::Kind::Div, lhs, rhs);
    }
    return lhs;
  }

  NodePtr parse_factor() {
    if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == '-') {
      lex_.take();
      NodePtr child = parse_factor();
      if (child->kind == Node::Kind::Literal) return Node::make_literal(-child->literal);
      return Node::make_unary(Node::Kind::Neg, child);
    }
    NodePtr base = parse_atom();
    if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == '^') {
      lex_.take();
      int sign = 1;
      if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == '-') {
        lex_.take();
        sign = -1;
      }
      const Token t = lex_.take();
      if (t.kind != Token::Kind::Number || t.imaginary ||
          t.number != std::floor(t.number) || std::abs(t.number) > 1e9)
        throw ParseError("exponent must be an integer literal", t.column);
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Pow;
      n->exponent = sign * static_cast<int>(t.number);
      n->children = {base};
      return n;
    }
    return base;
  }

  NodePtr parse_atom() {
    const Token t = lex_.take();
    if (t.kind == Token::Kind::Number)
      return Node::make_literal(t.imaginary ? Complex{0.0, t.number} : Complex{t.number, 0.0});
    if (t.kind == Token::Kind::Ident) return parse_ident(t);
    if (t.kind == Token::Kind::Op && t.op == '(') {
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    if (t.kind == Token::Kind::Op && t.op == '[') return parse_constructor(t);
    throw ParseError("expected an operand", t.column);
  }

  NodePtr parse_ident(const Token& t) {
    if (t.ident == "i") return Node::make_literal(Complex{0.0, 1.0});
    if (t.ident.size() >= 2 && t.ident[0] == 'z') {
      bool digits = true;
      for (std::size_t k = 1; k < t.ident.size(); ++k)
        digits = digits && std::isdigit(static_cast<unsigned char>(t.ident[k]));
      if (digits) {
        const unsigned long index = std::stoul(t.ident.substr(1));
        if (index == 0 || index > dim_)
          throw ParseError("variable " + t.ident + " exceeds dimension " + std::to_string(dim_),
                           t.column);
        return Node::make_variable(index - 1);
      }
    }
    for (Func f : {Func::Exp, Func::Sin, Func::Cos, Func::Log, Func::Sqrt, Func::Conj}) {
      if (t.ident == func_name(f)) {
        expect('(');
        NodePtr arg = parse_expr();
        expect(')');
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Call;
        n->func = f;
        n->children = {arg};
        return n;
      }
    }
    throw ParseError("unknown identifier '" + t.ident + "'", t.column);
  }

  NodePtr parse_constructor(const Token& open) {
    // matrix when the first element itself starts with '['
    if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == '[') {
      std::vector<std::vector<NodePtr>> rows;
      while (true) {
        expect('[');
        rows.push_back(parse_element_list());
        expect(']');
        if (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == ',') {
          lex_.take();
          continue;
        }
        break;
      }
      expect(']');
      const std::size_t m = rows.size();
      for (const auto& row : rows)
        if (row.size() != m)
          throw ParseError("matrix constructor must be square", open.column);
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Matrix;
      n->rows = m;
      for (auto& row : rows)
        for (auto& e : row) n->children.push_back(std::move(e));
      return n;
    }
    std::vector<NodePtr> elements = parse_element_list();
    expect(']');
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Vector;
    n->children = std::move(elements);
    return n;
  }

  std::vector<NodePtr> parse_element_list() {
    std::vector<NodePtr> elements;
    elements.push_back(parse_expr());
    while (lex_.peek().kind == Token::Kind::Op && lex_.peek().op == ',') {
      lex_.take();
      elements.push_back(parse_expr());
    }
    return elements;
  }

  NodePtr fold_binary(Node::Kind kind, const NodePtr& a, const NodePtr& b) {
    if (a->kind == Node::Kind::Literal && b->kind == Node::Kind::Literal)
      return Node::make_literal(kind == Node::Kind::Add ? a->literal + b->literal
                                                        : a->literal - b->literal);
    return Node::make_binary(kind, a, b);
  }

  void expect(char op) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Op || t.op != op)
      throw ParseError(std::string("expected '") + op + "'", t.column);
  }

  Lexer lex_;
  std::size_t dim_;
};

inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_literal(Complex v) {
  if (v.imag() == 0.0) return format_double(v.real());
  if (v.real() == 0.0) return format_double(v.imag()) + "i";
  std::string s = "(" + format_double(v.real());
  if (v.imag() >= 0.0)
    s += "+" + format_double(v.imag()) + "i";
  else
    s += "-" + format_double(-v.imag()) + "i";
  return s + ")";
}

// precedence levels: add/sub 1, mul/div 2, unary minus 3, pow 4, atoms 5
inline int node_level(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Add:
    case Node::Kind::Sub: return 1;
    case Node::Kind::Mul:
    case Node::Kind::Div: return 2;
    case Node::Kind::Neg: return 3;
    case Node::Kind::Pow: return 4;
    default: return 5;
  }
}

inline std::string print_node(const Node& n);

inline std::string print_child(const Node& child, int min_level) {
  std::string s = print_node(child);
  if (node_level(child) < min_level) return "(" + s + ")";
  return s;
}

inline std::string print_node(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Literal:
      return format_literal(n.literal);
    case Node::Kind::Variable:
      return "z" + std::to_string(n.var_index + 1);
    case Node::Kind::Neg:
      return "-" + print_child(*n.children[0], 3);
    case Node::Kind::Add:
      return print_child(*n.children[0], 1) + "+" + print_child(*n.children[1], 2);
    case Node::Kind::Sub:
      return print_child(*n.children[0], 1) + "-" + print_child(*n.children[1], 2);
    case Node::Kind::Mul:
      return print_child(*n.children[0], 2) + "*" + print_child(*n.children[1], 3);
    case Node::Kind::Div:
      return print_child(*n.children[0], 2) + "/" + print_child(*n.children[1], 3);
    case Node::Kind::Pow:
      return print_child(*n.children[0], 5) + "^" + std::to_string(n.exponent);
    case Node::Kind::Call:
      return std::string(func_name(n.func)) + "(" + print_node(*n.children[0]) + ")";
    case Node::Kind::Vector: {
      std::string s = "[";
      for (std::size_t i = 0; i < n.children.size(); ++i)
        s += (i ? "," : "") + print_node(*n.children[i]);
      return s + "]";
    }
    case Node::Kind::Matrix: {
      std::string s = "[";
      for (std::size_t r = 0; r < n.rows; ++r) {
        if (r) s += ",";
        s += "[";
        for (std::size_t c = 0; c < n.rows; ++c)
          s += (c ? "," : "") + print_node(*n.children[r * n.rows + c]);
        s += "]";
      }
      return s + "]";
    }
  }
  return "?";
}

inline bool nodes_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::Literal:
      if (a.literal != b.literal) return false;
      break;
    case Node::Kind::Variable:
      if (a.var_index != b.var_index) return false;
      break;
    case Node::Kind::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    case Node::Kind::Call:
      if (a.func != b.func) return false;
      break;
    case Node::Kind::Matrix:
      if (a.rows != b.rows) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!nodes_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

inline bool node_tainted(const Node& n) {
  if (n.kind == Node::Kind::Call && n.func == Func::Conj) return true;
  for (const auto& c : n.children)
    if (node_tainted(*c)) return true;
  return false;
}

struct EvalValue {
  Shape shape;
  std::vector<Complex> entries;  // 1 entry for scalars, m for vectors, m*m row-major
};

inline EvalValue eval_node(const Node& n, const CPoint& z);

inline Complex eval_scalar_node(const Node& n, const CPoint& z) {
  EvalValue v = eval_node(n, z);
  if (v.shape.kind != Shape::Kind::Scalar)
    throw DomainError("expression: expected a scalar subexpression");
  return v.entries[0];
}

inline EvalValue eval_node(const Node& n, const CPoint& z) {
  switch (n.kind) {
    case Node::Kind::Literal:
      return {Shape{}, {n.literal}};
    case Node::Kind::Variable:
      if (n.var_index >= z.dim()) throw DomainError("expression: variable index out of range");
      return {Shape{}, {z[n.var_index]}};
    case Node::Kind::Neg: {
      EvalValue v = eval_node(*n.children[0], z);
      for (auto& e : v.entries) e = -e;
      return v;
    }
    case Node::Kind::Add:
    case Node::Kind::Sub: {
      EvalValue a = eval_node(*n.children[0], z);
      EvalValue b = eval_node(*n.children[1], z);
      if (!(a.shape == b.shape))
        throw DomainError("expression: shape mismatch in addition");
      for (std::size_t i = 0; i < a.entries.size(); ++i)
        a.entries[i] = n.kind == Node::Kind::Add ? a.entries[i] + b.entries[i]
                                                 : a.entries[i] - b.entries[i];
      return a;
    }
    case Node::Kind::Mul: {
      EvalValue a = eval_node(*n.children[0], z);
      EvalValue b = eval_node(*n.children[1], z);
      if (a.shape.kind != Shape::Kind::Scalar && b.shape.kind != Shape::Kind::Scalar)
        throw DomainError("expression: multiplication needs a scalar factor");
      if (a.shape.kind == Shape::Kind::Scalar) std::swap(a, b);
      const Complex s = b.entries[0];
      for (auto& e : a.entries) e *= s;
      return a;
    }
    case Node::Kind::Div: {
      EvalValue a = eval_node(*n.children[0], z);
      EvalValue b = eval_node(*n.children[1], z);
      if (b.shape.kind != Shape::Kind::Scalar)
        throw DomainError("expression: divisor must be scalar");
      if (std::abs(b.entries[0]) < 1e-300)
        throw EvaluationError("expression: division by zero", z);
      for (auto& e : a.entries) e /= b.entries[0];
      return a;
    }
    case Node::Kind::Pow: {
      EvalValue a = eval_node(*n.children[0], z);
      if (a.shape.kind != Shape::Kind::Scalar)
        throw DomainError("expression: power base must be scalar");
      const int e = n.exponent;
      const unsigned mag = static_cast<unsigned>(e < 0 ? -e : e);
      if (e < 0 && std::abs(a.entries[0]) < 1e-300)
        throw EvaluationError("expression: negative power of zero", z);
      Complex p{1.0, 0.0};
      for (unsigned k = 0; k < mag; ++k) p *= a.entries[0];
      a.entries[0] = e < 0 ? 1.0 / p : p;
      return a;
    }
    case Node::Kind::Call: {
      EvalValue a = eval_node(*n.children[0], z);
      for (auto& e : a.entries) {
        switch (n.func) {
          case Func::Exp: e = std::exp(e); break;
          case Func::Sin: e = std::sin(e); break;
          case Func::Cos: e = std::cos(e); break;
          case Func::Log:
            if (std::abs(e) < 1e-300)
              throw EvaluationError("expression: log of zero", z);
            e = std::log(e);
            break;
          case Func::Sqrt: e = std::sqrt(e); break;
          case Func::Conj: e = std::conj(e); break;
        }
      }
      return a;
    }
    case Node::Kind::Vector: {
      EvalValue v;
      v.shape = Shape{Shape::Kind::Vector, n.children.size()};
      for (const auto& c : n.children) v.entries.push_back(eval_scalar_node(*c, z));
      return v;
    }
    case Node::Kind::Matrix: {
      EvalValue v;
      v.shape = Shape{Shape::Kind::Matrix, n.rows};
      for (const auto& c : n.children) v.entries.push_back(eval_scalar_node(*c, z));
      return v;
    }
  }
  throw DomainError("expression: unhandled node kind");
}

inline Shape node_shape(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Vector:
      return {Shape::Kind::Vector, n.children.size()};
    case Node::Kind::Matrix:
      return {Shape::Kind::Matrix, n.rows};
    case Node::Kind::Neg:
    case Node::Kind::Call:
      return node_shape(*n.children[0]);
    case Node::Kind::Add:
    case Node::Kind::Sub:
      return node_shape(*n.children[0]);
    case Node::Kind::Mul:
    case Node::Kind::Div: {
      const Shape a = node_shape(*n.children[0]);
      return a.kind == Shape::Kind::Scalar ? node_shape(*n.children[1]) : a;
    }
    default:
      return {};
  }
}

}  // namespace detail

/// Immutable parsed expression over z1..zd.
class Expr {
public:
  static Expr parse(std::string_view src, std::size_t d) {
    if (d == 0) throw DomainError("Expr: dimension must be >= 1");
    std::size_t first = 0;
    while (first < src.size() && std::isspace(static_cast<unsigned char>(src[first]))) ++first;
    if (first == src.size()) throw ParseError("empty expression", 1);
    detail::Parser parser(src, d);
    return Expr(parser.parse(), d);
  }

  const NodePtr& root() const { return root_; }
  std::size_t dim() const { return dim_; }
  bool tainted() const { return tainted_; }

  Shape shape() const { return detail::node_shape(*root_); }

  std::string print() const { return detail::print_node(*root_); }

  bool structurally_equal(const Expr& other) const {
    return dim_ == other.dim_ && detail::nodes_equal(*root_, *other.root_);
  }

  Complex evaluate_scalar(const CPoint& z) const {
    check_dim(z);
    return detail::eval_scalar_node(*root_, z);
  }

  /// Evaluate into the given space; the expression shape must match the
  /// space kind and dimension.
  VectorValue evaluate(const CPoint& z, const SpacePtr& space) const {
    check_dim(z);
    detail::EvalValue v = detail::eval_node(*root_, z);
    const bool ok =
        (v.shape.kind == Shape::Kind::Scalar && space->kind() == SpaceDescriptor::Kind::Coordinates &&
         space->m() == 1) ||
        (v.shape.kind == Shape::Kind::Vector && space->kind() == SpaceDescriptor::Kind::Coordinates &&
         space->m() == v.shape.m) ||
        (v.shape.kind == Shape::Kind::Matrix && space->kind() == SpaceDescriptor::Kind::Matrices &&
         space->m() == v.shape.m);
    if (!ok) throw DomainError("Expr: expression shape does not match the value space");
    return VectorValue(space, std::move(v.entries));
  }

  /// The space this expression naturally evaluates into.
  SpacePtr natural_space() const {
    const Shape s = shape();
    switch (s.kind) {
      case Shape::Kind::Scalar: return SpaceDescriptor::scalar();
      case Shape::Kind::Vector: return SpaceDescriptor::coordinates(s.m);
      case Shape::Kind::Matrix: return SpaceDescriptor::matrices(s.m);
    }
    throw DomainError("Expr: unhandled shape");
  }

  IntegrandFn to_integrand(SpacePtr space = nullptr) const {
    SpacePtr sp = space ? std::move(space) : natural_space();
    Expr copy = *this;
    return IntegrandFn{
        [copy, sp](const CPoint& z) { return copy.evaluate(z, sp); }, sp, {},
        tainted_ ? Smoothness::Continuous : Smoothness::AnalyticOnAnnulus};
  }

private:
  Expr(NodePtr root, std::size_t d)
      : root_(std::move(root)), dim_(d), tainted_(detail::node_tainted(*root_)) {}

  void check_dim(const CPoint& z) const {
    if (z.dim() != dim_) throw DomainError("Expr: point dimension mismatch");
  }

  NodePtr root_;
  std::size_t dim_;
  bool tainted_;
};

}  // namespace polydisc::expr

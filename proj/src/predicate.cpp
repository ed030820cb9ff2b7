#include "qsub/predicate.hpp"

#include <cctype>
#include <limits>
#include <utility>

namespace qsub {
namespace {

ExprPtr literal_node(BigInt value) {
  ExprNode node;
  node.op = ExprOp::kLiteral;
  node.literal = std::move(value);
  return std::make_shared<const ExprNode>(std::move(node));
}

ExprPtr var_node() {
  ExprNode node;
  node.op = ExprOp::kVar;
  return std::make_shared<const ExprNode>(std::move(node));
}

ExprPtr negate_node(ExprPtr child) {
  ExprNode node;
  node.op = ExprOp::kNegate;
  node.lhs = std::move(child);
  return std::make_shared<const ExprNode>(std::move(node));
}

ExprPtr binary_node(ExprOp op, ExprPtr lhs, ExprPtr rhs) {
  ExprNode node;
  node.op = op;
  node.lhs = std::move(lhs);
  node.rhs = std::move(rhs);
  return std::make_shared<const ExprNode>(std::move(node));
}

ExprPtr power_node(ExprPtr base, unsigned exponent) {
  ExprNode node;
  node.op = ExprOp::kPower;
  node.exponent = exponent;
  node.lhs = std::move(base);
  return std::make_shared<const ExprNode>(std::move(node));
}

PredPtr compare_node(CmpOp cmp, ExprPtr lhs, ExprPtr rhs) {
  PredNode node;
  node.op = BoolOp::kCompare;
  node.cmp = cmp;
  node.lhs = std::move(lhs);
  node.rhs = std::move(rhs);
  return std::make_shared<const PredNode>(std::move(node));
}

PredPtr bool_node(BoolOp op, PredPtr left, PredPtr right = nullptr) {
  PredNode node;
  node.op = op;
  node.left = std::move(left);
  node.right = std::move(right);
  return std::make_shared<const PredNode>(std::move(node));
}

// ---------------------------------------------------------------------------
// Tokenizer

enum class Tok {
  kInteger, kVar, kAnd, kOr, kNot,
  kPlus, kMinus, kStar, kCaret, kLParen, kRParen,
  kEq, kNe, kLt, kLe, kGt, kGe,
  kEnd,
};

struct Token {
  Tok kind;
  std::size_t pos;   // character offset of the first char (end of input for kEnd)
  BigInt value;      // kInteger only
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    cur_.pos = pos_;
    if (pos_ >= text_.size()) {
      cur_.kind = Tok::kEnd;
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      cur_.kind = Tok::kInteger;
      cur_.value = BigInt(std::string(text_.substr(start, pos_ - start)));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") cur_.kind = Tok::kVar;
      else if (word == "and") cur_.kind = Tok::kAnd;
      else if (word == "or") cur_.kind = Tok::kOr;
      else if (word == "not") cur_.kind = Tok::kNot;
      else throw SyntaxError("unknown identifier '" + std::string(word) + "'", start);
      return;
    }
    ++pos_;
    switch (c) {
      case '+': cur_.kind = Tok::kPlus; return;
      case '-': cur_.kind = Tok::kMinus; return;
      case '*': cur_.kind = Tok::kStar; return;
      case '^': cur_.kind = Tok::kCaret; return;
      case '(': cur_.kind = Tok::kLParen; return;
      case ')': cur_.kind = Tok::kRParen; return;
      case '=': cur_.kind = Tok::kEq; return;
      case '<':
        if (pos_ < text_.size() && text_[pos_] == '=') { ++pos_; cur_.kind = Tok::kLe; }
        else cur_.kind = Tok::kLt;
        return;
      case '>':
        if (pos_ < text_.size() && text_[pos_] == '=') { ++pos_; cur_.kind = Tok::kGe; }
        else cur_.kind = Tok::kGt;
        return;
      case '!':
        if (pos_ < text_.size() && text_[pos_] == '=') { ++pos_; cur_.kind = Tok::kNe; }
        else throw SyntaxError("expected '=' after '!'", cur_.pos);
        return;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", cur_.pos);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token cur_;
};

bool is_cmp(Tok t) {
  return t == Tok::kEq || t == Tok::kNe || t == Tok::kLt || t == Tok::kLe ||
         t == Tok::kGt || t == Tok::kGe;
}

CmpOp cmp_of(Tok t) {
  switch (t) {
    case Tok::kEq: return CmpOp::kEq;
    case Tok::kNe: return CmpOp::kNe;
    case Tok::kLt: return CmpOp::kLt;
    case Tok::kLe: return CmpOp::kLe;
    case Tok::kGt: return CmpOp::kGt;
    default: return CmpOp::kGe;
  }
}

// ---------------------------------------------------------------------------
// Parser
//
// Every level returns a Value that is either arithmetic or boolean; a
// parenthesized boolean propagates unchanged through the arithmetic levels
// (no operators may touch it) until a boolean context picks it up.

struct Value {
  ExprPtr expr;      // set iff arithmetic
  PredPtr pred;      // set iff boolean
  std::size_t pos;   // where this value started

  bool boolean() const { return pred != nullptr; }
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  PredPtr parse() {
    Value v = parse_or();
    if (lex_.peek().kind != Tok::kEnd) {
      throw SyntaxError("unexpected trailing input", lex_.peek().pos);
    }
    return require_pred(v);
  }

 private:
  static PredPtr require_pred(const Value& v) {
    if (!v.boolean()) {
      throw TypeError("expected a comparison or boolean expression", v.pos);
    }
    return v.pred;
  }

  static ExprPtr require_expr(const Value& v) {
    if (v.boolean()) {
      throw TypeError("boolean value used where a number is required", v.pos);
    }
    return v.expr;
  }

  Value parse_or() {
    Value v = parse_and();
    while (lex_.peek().kind == Tok::kOr) {
      lex_.take();
      PredPtr l = require_pred(v);
      Value r = parse_and();
      v.pred = bool_node(BoolOp::kOr, l, require_pred(r));
      v.expr = nullptr;
    }
    return v;
  }

  Value parse_and() {
    Value v = parse_not();
    while (lex_.peek().kind == Tok::kAnd) {
      lex_.take();
      PredPtr l = require_pred(v);
      Value r = parse_not();
      v.pred = bool_node(BoolOp::kAnd, l, require_pred(r));
      v.expr = nullptr;
    }
    return v;
  }

  Value parse_not() {
    if (lex_.peek().kind == Tok::kNot) {
      std::size_t pos = lex_.take().pos;
      Value operand = parse_not();
      return {nullptr, bool_node(BoolOp::kNot, require_pred(operand)), pos};
    }
    return parse_cmp();
  }

  Value parse_cmp() {
    Value v = parse_sum();
    if (is_cmp(lex_.peek().kind)) {
      Token op = lex_.take();
      ExprPtr l = require_expr(v);
      Value r = parse_sum();
      v.pred = compare_node(cmp_of(op.kind), l, require_expr(r));
      v.expr = nullptr;
    }
    return v;
  }

  Value parse_sum() {
    Value v = parse_prod();
    while (lex_.peek().kind == Tok::kPlus || lex_.peek().kind == Tok::kMinus) {
      Token op = lex_.take();
      ExprPtr l = require_expr(v);
      Value r = parse_prod();
      v.expr = binary_node(op.kind == Tok::kPlus ? ExprOp::kAdd : ExprOp::kSubtract,
                           l, require_expr(r));
      v.pred = nullptr;
    }
    return v;
  }

  Value parse_prod() {
    Value v = parse_unary();
    while (lex_.peek().kind == Tok::kStar) {
      lex_.take();
      ExprPtr l = require_expr(v);
      Value r = parse_unary();
      v.expr = binary_node(ExprOp::kMultiply, l, require_expr(r));
      v.pred = nullptr;
    }
    return v;
  }

  Value parse_unary() {
    if (lex_.peek().kind == Tok::kMinus) {
      std::size_t pos = lex_.take().pos;
      Value operand = parse_unary();
      return {negate_node(require_expr(operand)), nullptr, pos};
    }
    return parse_pow();
  }

  Value parse_pow() {
    Value v = parse_atom();
    if (lex_.peek().kind == Tok::kCaret) {
      lex_.take();
      ExprPtr base = require_expr(v);
      if (lex_.peek().kind != Tok::kInteger) {
        throw SyntaxError("exponent must be an integer literal", lex_.peek().pos);
      }
      Token exp = lex_.take();
      if (exp.value > std::numeric_limits<unsigned>::max()) {
        throw SyntaxError("exponent too large", exp.pos);
      }
      v.expr = power_node(base, static_cast<unsigned>(exp.value));
      v.pred = nullptr;
    }
    return v;
  }

  Value parse_atom() {
    Token t = lex_.peek();
    switch (t.kind) {
      case Tok::kInteger:
        lex_.take();
        return {literal_node(t.value), nullptr, t.pos};
      case Tok::kVar:
        lex_.take();
        return {var_node(), nullptr, t.pos};
      case Tok::kLParen: {
        lex_.take();
        Value inner = parse_or();
        if (lex_.peek().kind != Tok::kRParen) {
          throw SyntaxError("expected ')'", lex_.peek().pos);
        }
        lex_.take();
        inner.pos = t.pos;
        return inner;
      }
      case Tok::kEnd:
        throw SyntaxError("unexpected end of input", t.pos);
      default:
        throw SyntaxError("expected a number, 'x', or '('", t.pos);
    }
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Evaluation and printing

BigInt eval_expr(const ExprNode& e, const BigInt& x) {
  switch (e.op) {
    case ExprOp::kLiteral: return e.literal;
    case ExprOp::kVar: return x;
    case ExprOp::kNegate: return -eval_expr(*e.lhs, x);
    case ExprOp::kAdd: return eval_expr(*e.lhs, x) + eval_expr(*e.rhs, x);
    case ExprOp::kSubtract: return eval_expr(*e.lhs, x) - eval_expr(*e.rhs, x);
    case ExprOp::kMultiply: return eval_expr(*e.lhs, x) * eval_expr(*e.rhs, x);
    case ExprOp::kPower: return boost::multiprecision::pow(eval_expr(*e.lhs, x), e.exponent);
  }
  return 0;  // unreachable
}

bool eval_pred(const PredNode& p, const BigInt& x) {
  switch (p.op) {
    case BoolOp::kCompare: {
      const BigInt l = eval_expr(*p.lhs, x);
      const BigInt r = eval_expr(*p.rhs, x);
      switch (p.cmp) {
        case CmpOp::kEq: return l == r;
        case CmpOp::kNe: return l != r;
        case CmpOp::kLt: return l < r;
        case CmpOp::kLe: return l <= r;
        case CmpOp::kGt: return l > r;
        case CmpOp::kGe: return l >= r;
      }
      return false;
    }
    case BoolOp::kAnd: return eval_pred(*p.left, x) && eval_pred(*p.right, x);
    case BoolOp::kOr: return eval_pred(*p.left, x) || eval_pred(*p.right, x);
    case BoolOp::kNot: return !eval_pred(*p.left, x);
  }
  return false;  // unreachable
}

std::string print_expr(const ExprNode& e) {
  switch (e.op) {
    case ExprOp::kLiteral: return e.literal.str();
    case ExprOp::kVar: return "x";
    case ExprOp::kNegate: return "(-" + print_expr(*e.lhs) + ")";
    case ExprOp::kAdd: return "(" + print_expr(*e.lhs) + " + " + print_expr(*e.rhs) + ")";
    case ExprOp::kSubtract: return "(" + print_expr(*e.lhs) + " - " + print_expr(*e.rhs) + ")";
    case ExprOp::kMultiply: return "(" + print_expr(*e.lhs) + " * " + print_expr(*e.rhs) + ")";
    case ExprOp::kPower:
      return "(" + print_expr(*e.lhs) + " ^ " + std::to_string(e.exponent) + ")";
  }
  return {};
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return " = ";
    case CmpOp::kNe: return " != ";
    case CmpOp::kLt: return " < ";
    case CmpOp::kLe: return " <= ";
    case CmpOp::kGt: return " > ";
    case CmpOp::kGe: return " >= ";
  }
  return {};
}

std::string print_pred(const PredNode& p) {
  switch (p.op) {
    case BoolOp::kCompare:
      return print_expr(*p.lhs) + cmp_text(p.cmp) + print_expr(*p.rhs);
    case BoolOp::kAnd:
      return "(" + print_pred(*p.left) + " and " + print_pred(*p.right) + ")";
    case BoolOp::kOr:
      return "(" + print_pred(*p.left) + " or " + print_pred(*p.right) + ")";
    case BoolOp::kNot:
      return "(not " + print_pred(*p.left) + ")";
  }
  return {};
}

bool expr_equal(const ExprNode& a, const ExprNode& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case ExprOp::kLiteral: return a.literal == b.literal;
    case ExprOp::kVar: return true;
    case ExprOp::kNegate: return expr_equal(*a.lhs, *b.lhs);
    case ExprOp::kPower:
      return a.exponent == b.exponent && expr_equal(*a.lhs, *b.lhs);
    default:
      return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
  }
}

bool pred_equal(const PredNode& a, const PredNode& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case BoolOp::kCompare:
      return a.cmp == b.cmp && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    case BoolOp::kNot:
      return pred_equal(*a.left, *b.left);
    default:
      return pred_equal(*a.left, *b.left) && pred_equal(*a.right, *b.right);
  }
}

}  // namespace

Predicate Predicate::parse(std::string_view text) {
  return Predicate(Parser(text).parse());
}

bool Predicate::evaluate(std::uint64_t x) const { return eval_pred(*root_, BigInt(x)); }

bool Predicate::evaluate(const BigInt& x) const { return eval_pred(*root_, x); }

std::string Predicate::to_string() const { return print_pred(*root_); }

bool Predicate::equals(const Predicate& other) const {
  return pred_equal(*root_, *other.root_);
}

SolutionSet enumerate_solutions(const Predicate& pred, int k, int max_bits) {
  if (k < 1 || k > max_bits) {
    throw LayoutTooLarge("register width " + std::to_string(k) +
                         " outside [1, " + std::to_string(max_bits) + "]");
  }
  SolutionSet out;
  out.k = k;
  const std::uint64_t limit = std::uint64_t{1} << k;
  for (std::uint64_t x = 0; x < limit; ++x) {
    if (pred.evaluate(x)) out.members.push_back(x);
  }
  return out;
}

}  // namespace qsub

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsub/config.hpp"
#include "qsub/errors.hpp"

namespace qsub {

// All predicate arithmetic is over unbounded signed integers; no modular
// wraparound, so solution counts never depend on the machine word size.
using BigInt = boost::multiprecision::cpp_int;

enum class ExprOp { kLiteral, kVar, kNegate, kAdd, kSubtract, kMultiply, kPower };
enum class CmpOp { kEq, kNe, kLt, kLe, kGt, kGe };
enum class BoolOp { kCompare, kAnd, kOr, kNot };

struct ExprNode;
struct PredNode;
using ExprPtr = std::shared_ptr<const ExprNode>;
using PredPtr = std::shared_ptr<const PredNode>;

struct ExprNode {
  ExprOp op;
  BigInt literal;         // kLiteral
  unsigned exponent = 0;  // kPower
  ExprPtr lhs, rhs;       // binary ops; kNegate uses lhs only
};

struct PredNode {
  BoolOp op;
  CmpOp cmp = CmpOp::kEq;  // kCompare
  ExprPtr lhs, rhs;        // kCompare operands
  PredPtr left, right;     // kAnd/kOr children; kNot uses left only
};

// Immutable expression tree for the condition defining solutions.
// Handles are cheap to copy and safe to share across threads.
class Predicate {
 public:
  // Recursive-descent parse. Whitespace-insensitive; precedence
  // ^  >  unary -  >  *  >  + -  >  comparisons  >  not  >  and  >  or.
  // Throws SyntaxError (with character position) or TypeError.
  static Predicate parse(std::string_view text);

  // Truth value at x, evaluated over unbounded integers.
  bool evaluate(std::uint64_t x) const;
  bool evaluate(const BigInt& x) const;

  // Canonical parenthesized form; parse(to_string()) is structurally
  // identical to *this.
  std::string to_string() const;

  bool equals(const Predicate& other) const;

  const PredNode& root() const { return *root_; }

 private:
  explicit Predicate(PredPtr root) : root_(std::move(root)) {}
  PredPtr root_;
};

// The x in [0, 2^k) satisfying a predicate, in ascending order.
struct SolutionSet {
  int k = 0;
  std::vector<std::uint64_t> members;

  std::uint64_t n() const { return members.size(); }
};

// Exact brute-force scan of [0, 2^k). Ground truth for every statistical
// and algebraic check in this repository.
SolutionSet enumerate_solutions(const Predicate& pred, int k,
                                int max_bits = kDefaultMaxBits);

}  // namespace qsub

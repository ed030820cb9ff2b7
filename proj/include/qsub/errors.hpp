#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsub {

// Base class for every recoverable error this library raises.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LayoutTooLarge : Error { using Error::Error; };
struct LayoutMismatch : Error { using Error::Error; };
struct NoFlagQubit : Error { using Error::Error; };
struct ZeroResidual : Error { using Error::Error; };
struct DegenerateSet : Error { using Error::Error; };
struct NoSolutions : Error { using Error::Error; };
struct InvalidTrialCount : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Sampled measurement branch carries (near-)zero mass. Cannot happen under
// correct Born sampling; signals internal inconsistency.
struct DegenerateBranch : Error { using Error::Error; };

// An operation's built-in statistical or algebraic cross-check failed.
struct InternalCheckFailure : Error { using Error::Error; };

struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t pos)
      : Error("syntax error at position " + std::to_string(pos) + ": " + what),
        position(pos) {}
  std::size_t position;
};

struct TypeError : Error {
  TypeError(const std::string& what, std::size_t pos)
      : Error("type error at position " + std::to_string(pos) + ": " + what),
        position(pos) {}
  std::size_t position;
};

}  // namespace qsub

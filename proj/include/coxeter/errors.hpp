#pragma once

#include <stdexcept>
#include <string>

namespace coxeter {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos, std::string tok)
      : std::runtime_error(what + " at position " + std::to_string(pos) +
                           " (near '" + tok + "')"),
        position(pos),
        token(std::move(tok)) {}
  std::size_t position;
  std::string token;
};

struct UnsupportedType : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a configured budget (elements, tuples, memory, time) would be
// exceeded. Never accompanied by a partial result.
struct CapExceeded : std::runtime_error {
  CapExceeded(std::string which, const std::string& detail)
      : std::runtime_error("cap exceeded: " + which + " (" + detail + ")"),
        cap(std::move(which)) {}
  std::string cap;
};

struct GroupMismatch : std::invalid_argument {
  GroupMismatch() : std::invalid_argument("elements belong to different groups") {}
};

struct NotInSubgroup : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ShapeNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotDistinct : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadFactorization : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TypeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotGenerating : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WrongArity : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace coxeter

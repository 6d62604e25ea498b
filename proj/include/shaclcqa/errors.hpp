#ifndef SHACLCQA_ERRORS_HPP
#define SHACLCQA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shaclcqa {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error in one of the three DSLs, with 1-based position.
struct ParseError : Error {
  std::size_t line;
  std::size_t col;
  ParseError(const std::string& msg, std::size_t line_, std::size_t col_)
      : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

// An identifier was used in two incompatible roles (node/class/property/shape).
struct NamespaceError : Error {
  using Error::Error;
};

struct DuplicateDefinitionError : Error {
  using Error::Error;
};

struct UndefinedShapeError : Error {
  using Error::Error;
};

struct BudgetExceededError : Error {
  using Error::Error;
};

// No (A, D) yields a supported model even with the empty target set.
struct NoModelError : Error {
  using Error::Error;
};

struct EmptyFamilyError : Error {
  using Error::Error;
};

struct ConstraintViolationError : Error {
  using Error::Error;
};

struct NotWellDesignedError : Error {
  using Error::Error;
};

struct ShapeMismatchError : Error {
  using Error::Error;
};

struct SizeExceededError : Error {
  using Error::Error;
};

struct MalformedGraphError : Error {
  using Error::Error;
};

}  // namespace shaclcqa

#endif

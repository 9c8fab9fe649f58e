#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hive {

enum class ErrorCode {
  kInvalidArgument,
  kNotFound,
  kParse,
  kIo,
  kDecode,
  kUnsupported,
  kEmptyOntology,
  kInvariant,
  kCorrupt,
  kNetwork,
  kConflict,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  // User errors are caused by bad input; everything else is internal.
  bool is_user_error() const {
    return code_ != ErrorCode::kInternal && code_ != ErrorCode::kCorrupt;
  }

 private:
  ErrorCode code_;
};

// Malformed RDF input; carries the 1-based position of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::kParse, message + " at line " + std::to_string(line) +
                                     ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hive

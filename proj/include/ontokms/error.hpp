#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ontokms {

/// Error categories shared by every module. The HTTP layer maps each code to a
/// fixed status (NotFound 404, Conflict/Cycle 409, Parse/Validation 422, Io 500).
enum class ErrorCode { NotFound, Conflict, Cycle, Parse, Validation, Io };

std::string_view to_string(ErrorCode code);
int http_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json detail = nullptr)
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

/// Syntax error in Turtle, N-Triples or SPARQL text. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ontokms

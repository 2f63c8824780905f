#include "ontokms/error.hpp"

namespace ontokms {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::Conflict: return "Conflict";
    case ErrorCode::Cycle: return "Cycle";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::Io: return "Io";
  }
  return "Io";
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Conflict:
    case ErrorCode::Cycle: return 409;
    case ErrorCode::Parse:
    case ErrorCode::Validation: return 422;
    case ErrorCode::Io: return 500;
  }
  return 500;
}

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(ErrorCode::Parse,
            message + " at line " + std::to_string(line) + ", column " +
                std::to_string(column),
            {{"line", line}, {"column", column}}),
      line_(line),
      column_(column) {}

}  // namespace ontokms

#ifndef LAMRES_ERROR_HPP_
#define LAMRES_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lamres {

enum class ErrorCode {
  SyntaxError,
  DuplicateRuleId,
  TooLarge,
  NotConflicting,
  UnresolvableRules,
  InconsistentExtension,
  UnknownRule,
  UnknownGroup,
  UnknownFormat,
  InvalidTarget,
  StaleExtension,
  EmptyHistory,
  InvalidInput,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateRuleId: return "DuplicateRuleId";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotConflicting: return "NotConflicting";
    case ErrorCode::UnresolvableRules: return "UnresolvableRules";
    case ErrorCode::InconsistentExtension: return "InconsistentExtension";
    case ErrorCode::UnknownRule: return "UnknownRule";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::StaleExtension: return "StaleExtension";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when some conflicts cannot be covered by any resolvable conflict group.
class UnresolvableRules : public Error {
 public:
  explicit UnresolvableRules(std::vector<std::string> rules)
      : Error(ErrorCode::UnresolvableRules, join(rules)), rules_(std::move(rules)) {}

  const std::vector<std::string>& rules() const noexcept { return rules_; }

 private:
  static std::string join(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
      if (!out.empty()) out += ", ";
      out += id;
    }
    return out;
  }

  std::vector<std::string> rules_;
};

}  // namespace lamres

#endif  // LAMRES_ERROR_HPP_

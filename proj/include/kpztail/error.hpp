#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kpztail {

enum class ErrorKind {
  Domain,
  Range,
  IllConditioned,
  Numeric,
  Resolution,
  Divergence,
  Truncation,
  Usage,
  Io
};

const char* to_string(ErrorKind kind) noexcept;

// Offending parameters travel with the exception so the CLI can serialize them.
using ErrorContext = std::vector<std::pair<std::string, double>>;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, ErrorContext context = {})
      : std::runtime_error(message), kind_(kind), context_(std::move(context)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const ErrorContext& context() const noexcept { return context_; }

 private:
  ErrorKind kind_;
  ErrorContext context_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message,
                               ErrorContext context = {}) {
  throw Error(kind, message, std::move(context));
}

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Range: return "range";
    case ErrorKind::IllConditioned: return "ill_conditioned";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace kpztail

#pragma once

// Structured error reports with source spans. Rendering format:
//   FILE:LINE:COL: error[CODE]: MESSAGE
// optionally followed by "expected:" / "actual:" normal-form lines.

#include <cstdint>
#include <exception>
#include <optional>
#include <sstream>
#include <string>

namespace hti {

struct Span {
  uint32_t line = 0;  // 1-based; 0 means unknown
  uint32_t col = 0;

  bool known() const { return line != 0; }
};

enum class Severity : uint8_t { Error, Warning };

// Stable diagnostic codes.
namespace code {
inline constexpr const char* Parse = "E-PARSE";
inline constexpr const char* Duplicate = "E-DUP";
inline constexpr const char* Scope = "E-SCOPE";
inline constexpr const char* Conv = "E-CONV";
inline constexpr const char* NotFun = "E-NOTFUN";
inline constexpr const char* NotPath = "E-NOTPATH";
inline constexpr const char* NotPair = "E-NOTPAIR";
inline constexpr const char* NotType = "E-NOTTYPE";
inline constexpr const char* Level = "E-LEVEL";
inline constexpr const char* Infer = "E-INFER";
inline constexpr const char* IsoPremise = "E-ISO-PREMISE";
inline constexpr const char* Io = "E-IO";
}  // namespace code

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string file;
  Span span;
  std::optional<std::string> expected;  // pretty-printed normal form
  std::optional<std::string> actual;

  std::string render() const {
    std::ostringstream os;
    os << (file.empty() ? "<input>" : file);
    if (span.known()) os << ":" << span.line << ":" << span.col;
    os << ": " << (severity == Severity::Error ? "error" : "warning");
    os << "[" << code << "]: " << message;
    if (expected) os << "\n  expected: " << *expected;
    if (actual) os << "\n  actual: " << *actual;
    return os.str();
  }
};

// Thrown by the checker and elaborator; drivers catch it per declaration.
struct TypeError : std::exception {
  Diagnostic diagnostic;

  explicit TypeError(Diagnostic d) : diagnostic(std::move(d)) {}

  const char* what() const noexcept override {
    rendered_ = diagnostic.render();
    return rendered_.c_str();
  }

 private:
  mutable std::string rendered_;
};

[[noreturn]] inline void fail(std::string codeStr, std::string message, Span span = {}) {
  Diagnostic d;
  d.code = std::move(codeStr);
  d.message = std::move(message);
  d.span = span;
  throw TypeError{std::move(d)};
}

}  // namespace hti

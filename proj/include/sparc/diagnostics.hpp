#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sparc {

struct SourcePos {
  int line = 0;   // 1-based; 0 means "no position"
  int column = 0; // 1-based
};

struct SourceSpan {
  SourcePos begin;
  SourcePos end;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  SourcePos pos;
  std::string message;
};

inline Diagnostic makeError(SourcePos pos, std::string message) {
  return Diagnostic{Severity::Error, pos, std::move(message)};
}

// Renders "file:line:col: error: message"; omits the position part when unknown.
std::string render(const Diagnostic& d, const std::string& file);

inline bool hasErrors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

// Thrown when a configured resource cap (atom count, search nodes) is exceeded.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// External solver failures, each reported distinctly.
class SolverLaunchError : public std::runtime_error {
public:
  explicit SolverLaunchError(const std::string& what) : std::runtime_error(what) {}
};

class SolverExitError : public std::runtime_error {
public:
  SolverExitError(const std::string& what, int code)
      : std::runtime_error(what), exitCode(code) {}
  int exitCode;
};

class SolverOutputError : public std::runtime_error {
public:
  explicit SolverOutputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sparc

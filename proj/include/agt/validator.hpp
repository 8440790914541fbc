#pragma once

#include <string>
#include <vector>

#include "agt/ast.hpp"
#include "agt/workspace.hpp"

namespace agt {

enum class DiagnosticKind : std::uint8_t {
  UnknownName,
  IndexArrayMismatch,
  NotAnIndex,
  NotAnArray,
  NotAScalar,
  UndefinedMacro,
  LengthAssignment,
  ConstantAssignment,
  RecursionForbidden,
  DuplicateMacro,
  NameClash,
};

[[nodiscard]] std::string_view to_string(DiagnosticKind k);

struct Diagnostic {
  DiagnosticKind kind;
  std::string path;
  std::string message;
  /// Non-fatal diagnostics describe legal but incomplete programs.
  bool fatal = true;
};

/// Static checks of a program against the declared data.
[[nodiscard]] std::vector<Diagnostic> validate(const Program& program, const Workspace& ws);

}  // namespace agt

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agt/ast.hpp"
#include "agt/workspace.hpp"

namespace agt {

/// A declarations section followed by macro definitions.
struct Source {
  std::vector<EntitySpec> declarations;
  Program program;
};

struct ParseDiagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  [[nodiscard]] std::string text() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }
};

struct ParseResult {
  std::optional<Source> source;
  std::vector<ParseDiagnostic> diagnostics;

  [[nodiscard]] bool ok() const { return source.has_value(); }
};

/// Stops at the first error; the diagnostic names what was expected.
[[nodiscard]] ParseResult parse(std::string_view text);

/// Throws SyntaxError carrying the first diagnostic.
[[nodiscard]] Source parse_source(std::string_view text);
[[nodiscard]] Program parse_program(std::string_view text);
/// A single comparison such as `t[j] <= t[k]`.
[[nodiscard]] Comparison parse_comparison(std::string_view text);
/// A single operand: literal, name, `t[3]`, `t[i]` or `t.length`.
[[nodiscard]] Operand parse_operand(std::string_view text);
[[nodiscard]] Ref parse_ref(std::string_view text);

}  // namespace agt

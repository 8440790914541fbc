#pragma once

#include <string>
#include <vector>

#include "agt/ast.hpp"
#include "agt/parser.hpp"

namespace agt {

/// Lines are 1-based and inclusive.
struct LineSpan {
  std::string path;
  std::size_t line_begin = 0;
  std::size_t line_end = 0;
  friend bool operator==(const LineSpan&, const LineSpan&) = default;
};

struct PrintedProgram {
  std::string text;
  std::vector<LineSpan> source_map;
};

[[nodiscard]] std::string print_declaration(const EntitySpec& spec);
[[nodiscard]] std::string print_macro(const MacroDef& macro);
[[nodiscard]] std::string print_program(const Program& program);
[[nodiscard]] PrintedProgram print_program_mapped(const Program& program);
[[nodiscard]] std::string print_source(const Source& source);

/// One-line rendering; an alternative shows only its head, `if (v <= 0)`.
[[nodiscard]] std::string instruction_text(const Instruction& instruction);
[[nodiscard]] std::string quote(std::string_view message);

}  // namespace agt

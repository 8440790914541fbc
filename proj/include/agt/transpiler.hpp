#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "agt/action.hpp"
#include "agt/ast.hpp"
#include "agt/printer.hpp"
#include "agt/workspace.hpp"

namespace agt {

enum class Dialect : std::uint8_t { Agt, Python, C, Cpp, Java };
enum class Flavor : std::uint8_t { Instrumented, Export };

[[nodiscard]] std::string_view to_string(Dialect d);
[[nodiscard]] std::string_view to_string(Flavor f);
/// Throw UnknownDialect / UnknownFlavor.
[[nodiscard]] Dialect parse_dialect(std::string_view s);
[[nodiscard]] Flavor parse_flavor(std::string_view s);

// ---------------------------------------------------------------------------
// Continuation conditions

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

/// The while condition equivalent to an Until list: negated comparisons joined
/// by the dialect's AND, in list order. `spans[i]` locates conjunct i in `text`.
struct Continuation {
  std::vector<Comparison> conjuncts;
  std::string text;
  std::vector<Span> spans;
};

[[nodiscard]] Continuation negate_until(const std::vector<Comparison>& until, Dialect dialect = Dialect::Python);

// ---------------------------------------------------------------------------
// Flattened programs

struct FlatNode;

struct FlatIf {
  Comparison cond;
  std::string then_comment;
  std::vector<FlatNode> then_body;
  ElseState else_state = ElseState::None;
  std::string else_comment;
  std::vector<FlatNode> else_body;
};

struct FlatLoop {
  std::string macro;
  std::vector<FlatNode> from;
  std::vector<Comparison> until;
  std::vector<FlatNode> loop;
  std::vector<FlatNode> terminate;
};

/// A macro call. Once expanded, `body` holds the callee's code.
struct FlatCall {
  std::string name;
  std::string role;
  bool expanded = false;
  std::vector<FlatNode> body;
};

struct FlatNode {
  std::variant<Assign, ReadInstr, WriteInstr, FlatIf, FlatLoop, FlatCall> node;
  /// Path of the AGT instruction this node comes from; empty for a loop.
  std::string origin;
};

struct FlatProgram {
  std::string entry;
  std::vector<std::string> comment;
  std::vector<FlatNode> body;
};

/// Lowers one macro, leaving its calls unexpanded. Throws UnresolvedMacro.
[[nodiscard]] FlatProgram lower_macro(const Program& program, std::string_view name);
/// Lowers `entry` with every call replaced by the callee's code.
/// Throws UnresolvedMacro, RecursionForbidden.
[[nodiscard]] FlatProgram inline_macros(const Program& program, std::string_view entry);

// ---------------------------------------------------------------------------
// Emission

/// Location of Until condition `path` (`M/Until/i`) inside an emitted line.
/// Lines are 1-based, columns are 0-based byte offsets, end exclusive.
struct ConditionSpan {
  std::string path;
  std::size_t line = 0;
  std::size_t column_begin = 0;
  std::size_t column_end = 0;
  friend bool operator==(const ConditionSpan&, const ConditionSpan&) = default;
};

struct EmissionUnit {
  Dialect dialect = Dialect::Python;
  Flavor flavor = Flavor::Instrumented;
  std::string text;
  std::vector<LineSpan> source_map;
  std::vector<ConditionSpan> condition_map;

  [[nodiscard]] Json map_json() const;
};

struct TranspileOptions {
  /// Macro exported or called from `main`; defaults to the last macro.
  std::string entry;
  /// Source of global declarations for the C-like dialects.
  const Workspace* workspace = nullptr;
};

[[nodiscard]] EmissionUnit transpile(const Program& program, Dialect dialect, Flavor flavor,
                                     const TranspileOptions& options = {});

}  // namespace agt

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "agt/value.hpp"

namespace agt {

// ---------------------------------------------------------------------------
// Operands, expressions, comparisons

/// A literal integer or a readable place.
struct Operand {
  std::variant<std::int64_t, Ref> node;

  static Operand literal(std::int64_t v) { return {v}; }
  static Operand of(Ref r) { return {std::move(r)}; }

  [[nodiscard]] bool is_literal() const { return std::holds_alternative<std::int64_t>(node); }
  [[nodiscard]] std::int64_t literal_value() const { return std::get<std::int64_t>(node); }
  [[nodiscard]] const Ref& ref() const { return std::get<Ref>(node); }
  [[nodiscard]] std::string text() const { return is_literal() ? std::to_string(literal_value()) : ref().text(); }

  friend bool operator==(const Operand&, const Operand&) = default;
};

enum class ArithOp : std::uint8_t { Add, Sub, Mul, Div, Mod };

[[nodiscard]] std::string_view symbol(ArithOp op);
[[nodiscard]] std::optional<ArithOp> parse_arith_op(std::string_view s);

/// At most one binary operation.
struct Expression {
  Operand first;
  std::optional<ArithOp> op;
  Operand second;

  static Expression of(Operand o) { return {std::move(o), std::nullopt, Operand::literal(0)}; }
  static Expression binary(Operand a, ArithOp op, Operand b) { return {std::move(a), op, std::move(b)}; }

  [[nodiscard]] std::string text() const;

  friend bool operator==(const Expression& a, const Expression& b) {
    return a.first == b.first && a.op == b.op && (!a.op || a.second == b.second);
  }
};

enum class Rel : std::uint8_t { Lt, Le, Eq, Gt, Ge, Ne };

inline constexpr std::array<Rel, 6> kAllRelations = {Rel::Lt, Rel::Le, Rel::Eq, Rel::Gt, Rel::Ge, Rel::Ne};

[[nodiscard]] std::string_view symbol(Rel rel);
[[nodiscard]] std::optional<Rel> parse_rel(std::string_view s);
/// {<, >=}, {<=, >}, {==, !=}.
[[nodiscard]] Rel negate(Rel rel);
[[nodiscard]] bool holds(Rel rel, std::int64_t a, std::int64_t b);

struct Comparison {
  Operand left;
  Rel rel = Rel::Eq;
  Operand right;

  [[nodiscard]] std::string text() const;
  [[nodiscard]] Comparison negated() const { return {left, negate(rel), right}; }
  /// True when neither side dereferences an array through an index.
  [[nodiscard]] bool is_guard() const;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// ---------------------------------------------------------------------------
// Instructions

struct Instruction;

struct Assign {
  Ref dst;
  Expression rhs;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct ReadInstr {
  std::string message;
  Ref dst;
  friend bool operator==(const ReadInstr&, const ReadInstr&) = default;
};

struct WriteInstr {
  std::string message;
  Ref src;
  friend bool operator==(const WriteInstr&, const WriteInstr&) = default;
};

struct CallInstr {
  std::string name;
  friend bool operator==(const CallInstr&, const CallInstr&) = default;
};

/// `ToDo` marks the untreated case of an alternative built by demonstration.
enum class ElseState : std::uint8_t { None, ToDo, Present };

struct IfInstr {
  Comparison cond;
  std::string then_comment;
  std::vector<Instruction> then_body;
  ElseState else_state = ElseState::None;
  std::string else_comment;
  std::vector<Instruction> else_body;

  friend bool operator==(const IfInstr& a, const IfInstr& b);
};

struct Instruction {
  std::variant<Assign, ReadInstr, WriteInstr, CallInstr, IfInstr> node;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

inline bool operator==(const IfInstr& a, const IfInstr& b) {
  return a.cond == b.cond && a.then_comment == b.then_comment && a.then_body == b.then_body &&
         a.else_state == b.else_state && a.else_comment == b.else_comment && a.else_body == b.else_body;
}

// ---------------------------------------------------------------------------
// Macros

enum class BlockId : std::uint8_t { Do, From, Until, Loop, Terminate };

[[nodiscard]] std::string_view keyword(BlockId b);
[[nodiscard]] std::optional<BlockId> parse_block_id(std::string_view s);

/// A freshly created block shows the `// ...` placeholder until something is
/// recorded into it.
struct Block {
  bool placeholder = true;
  std::vector<Instruction> body;
  friend bool operator==(const Block&, const Block&) = default;
};

struct UntilBlock {
  bool placeholder = true;
  std::vector<Comparison> conditions;
  friend bool operator==(const UntilBlock&, const UntilBlock&) = default;
};

enum class MacroKind : std::uint8_t { Simple, Loop };

struct MacroDef {
  std::string name;
  std::vector<std::string> comment;
  MacroKind kind = MacroKind::Simple;
  Block do_block;
  Block from;
  UntilBlock until;
  Block loop;
  Block terminate;

  static MacroDef simple(std::string name, std::vector<std::string> comment = {});
  static MacroDef looping(std::string name, std::vector<std::string> comment = {});

  /// Instruction block by id; nullptr for Until or for a block the kind lacks.
  [[nodiscard]] Block* block(BlockId id);
  [[nodiscard]] const Block* block(BlockId id) const;
  [[nodiscard]] bool has_block(BlockId id) const;
  /// No instruction and no exit condition anywhere: a stub awaiting refinement.
  [[nodiscard]] bool is_empty() const;
  /// First non-blank comment line, used as the macro's role.
  [[nodiscard]] std::string role() const;

  friend bool operator==(const MacroDef&, const MacroDef&) = default;
};

struct Program {
  std::vector<MacroDef> macros;

  [[nodiscard]] MacroDef* find(std::string_view name);
  [[nodiscard]] const MacroDef* find(std::string_view name) const;

  friend bool operator==(const Program&, const Program&) = default;
};

// ---------------------------------------------------------------------------
// Paths: `Macro/Block[/index/branch]*[/index]`, e.g. `Alt/Do/0/else/1`.

enum class Branch : std::uint8_t { Then, Else };

struct PathStep {
  std::size_t index = 0;
  Branch branch = Branch::Then;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct Path {
  std::string macro;
  BlockId block = BlockId::Do;
  std::vector<PathStep> nest;
  std::optional<std::size_t> index;

  static Path to_block(std::string macro, BlockId block) { return {std::move(macro), block, {}, std::nullopt}; }
  /// Throws InvalidPath.
  static Path parse(std::string_view text);

  [[nodiscard]] bool is_instruction() const { return index.has_value(); }
  [[nodiscard]] Path container() const { return {macro, block, nest, std::nullopt}; }
  [[nodiscard]] Path child(std::size_t i) const { return {macro, block, nest, i}; }
  /// Container path of one branch of the If this path designates.
  [[nodiscard]] Path branch(Branch b) const;
  [[nodiscard]] std::string text() const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Resolution against a program; all throw InvalidPath when the path does not
/// designate what is asked for.
[[nodiscard]] std::vector<Instruction>& container_body(Program& program, const Path& container);
[[nodiscard]] const std::vector<Instruction>& container_body(const Program& program, const Path& container);
[[nodiscard]] Instruction& instruction_at(Program& program, const Path& path);
[[nodiscard]] const Instruction& instruction_at(const Program& program, const Path& path);

/// Macros called anywhere inside a macro, in order of appearance.
[[nodiscard]] std::vector<std::string> callees(const MacroDef& macro);
/// Name of a macro that lies on a call cycle, if any.
[[nodiscard]] std::optional<std::string> find_call_cycle(const Program& program);
/// Same, restricted to macros reachable from `root`.
[[nodiscard]] std::optional<std::string> find_call_cycle(const Program& program, std::string_view root);

}  // namespace agt

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace agt {

using Json = nlohmann::ordered_json;

enum class ActionKind : std::uint8_t {
  // data setup
  DeclareVariable,
  DeclareConstant,
  DeclareArray,
  DeclareIndex,
  AddLiteral,
  SetValue,
  DefineMacro,
  // manipulations
  DragAssign,
  ApplyOperator,
  SweepIncrement,
  SweepDecrement,
  ReadGesture,
  WriteGesture,
  CallMacro,
  // comparator and cases
  Compare,
  ChooseCondition,
  EndCaseMarker,
  DefineExitCondition,
  // editing and recording
  SelectLine,
  DeleteLine,
  InvertConditional,
  AddElse,
  RemoveElse,
  BeginRecord,
  EndRecord,
  // execution
  RunMacro,
  ExecSelection,
  Resume,
  ProvideInput,
  Undo,
};

[[nodiscard]] std::string_view to_string(ActionKind k);
[[nodiscard]] std::optional<ActionKind> parse_action_kind(std::string_view s);

/// One manipulation event. Operands, destinations and conditions are AGT text
/// (`t[i]`, `10`, `j < 0`); unused fields stay empty.
struct Action {
  ActionKind kind = ActionKind::Undo;
  std::string name;
  std::string type;
  std::optional<std::int64_t> value;
  std::optional<std::vector<std::int64_t>> cells;
  std::optional<std::size_t> length;
  std::string of;
  std::string form;
  std::vector<std::string> comment;
  std::string src;
  std::string dst;
  std::string a;
  std::string b;
  std::string op;
  std::string rel;
  std::string condition;
  std::string path;
  std::string target;
  std::optional<std::string> message;
  std::optional<std::int64_t> input;
  std::string mode;
  std::string detail;
  std::vector<std::int64_t> inputs;

  static Action declare_variable(std::string name, std::int64_t value = 0, std::string type = "int");
  static Action declare_constant(std::string name, std::int64_t value, std::string type = "int");
  static Action declare_array(std::string name, std::vector<std::int64_t> cells);
  static Action declare_random_array(std::string name, std::size_t length = 10);
  static Action declare_index(std::string name, std::string of, std::int64_t value = 0);
  static Action add_literal(std::int64_t value);
  static Action set_value(std::string target, std::int64_t value);
  static Action define_macro(std::string name, std::string form = "simple", std::vector<std::string> comment = {});
  static Action drag_assign(std::string src, std::string dst);
  static Action apply_operator(std::string op, std::string a, std::string b, std::string dst);
  static Action sweep_increment(std::string dst);
  static Action sweep_decrement(std::string dst);
  static Action read_gesture(std::string dst, std::int64_t input, std::optional<std::string> message = std::nullopt);
  static Action write_gesture(std::string src, std::optional<std::string> message = std::nullopt);
  static Action call_macro(std::string name);
  static Action compare(std::string a, std::string b);
  static Action choose_condition(std::string rel);
  static Action end_case();
  static Action define_exit_condition(std::string condition);
  static Action select_line(std::string path);
  static Action delete_line(std::string path);
  static Action invert_conditional(std::string path);
  static Action add_else(std::string path);
  static Action remove_else(std::string path);
  static Action begin_record(std::string path = {});
  static Action end_record();
  static Action run_macro(std::string name, std::vector<std::int64_t> inputs = {}, std::string mode = {},
                          std::string detail = {});
  static Action exec_selection(std::string path);
  static Action resume();
  static Action provide_input(std::int64_t value);
  static Action undo();

  [[nodiscard]] Json to_json() const;
  /// Throws InvalidAction when the record is malformed or lacks a field.
  static Action from_json(const Json& j);

  friend bool operator==(const Action&, const Action&) = default;
};

struct ScriptLine {
  std::size_t line = 0;
  Action action;
};

/// One JSON record per line; blank lines and lines starting with `#` are skipped.
/// Errors name the offending line.
[[nodiscard]] std::vector<ScriptLine> parse_script(std::string_view text);
[[nodiscard]] std::string format_script(const std::vector<Action>& actions);

}  // namespace agt

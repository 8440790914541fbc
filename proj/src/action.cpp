#include "agt/action.hpp"

#include <array>
#include <utility>

#include "agt/error.hpp"

namespace agt {

namespace {

struct KindInfo {
  ActionKind kind;
  std::string_view name;
  std::string_view required;  // space-separated field names
};

constexpr std::array<KindInfo, 30> kKinds = {{
    {ActionKind::DeclareVariable, "DeclareVariable", "name"},
    {ActionKind::DeclareConstant, "DeclareConstant", "name value"},
    {ActionKind::DeclareArray, "DeclareArray", "name"},
    {ActionKind::DeclareIndex, "DeclareIndex", "name of"},
    {ActionKind::AddLiteral, "AddLiteral", "value"},
    {ActionKind::SetValue, "SetValue", "target value"},
    {ActionKind::DefineMacro, "DefineMacro", "name"},
    {ActionKind::DragAssign, "DragAssign", "src dst"},
    {ActionKind::ApplyOperator, "ApplyOperator", "op a b dst"},
    {ActionKind::SweepIncrement, "SweepIncrement", "dst"},
    {ActionKind::SweepDecrement, "SweepDecrement", "dst"},
    {ActionKind::ReadGesture, "ReadGesture", "dst input"},
    {ActionKind::WriteGesture, "WriteGesture", "src"},
    {ActionKind::CallMacro, "CallMacro", "name"},
    {ActionKind::Compare, "Compare", "a b"},
    {ActionKind::ChooseCondition, "ChooseCondition", "rel"},
    {ActionKind::EndCaseMarker, "EndCaseMarker", ""},
    {ActionKind::DefineExitCondition, "DefineExitCondition", "condition"},
    {ActionKind::SelectLine, "SelectLine", "path"},
    {ActionKind::DeleteLine, "DeleteLine", "path"},
    {ActionKind::InvertConditional, "InvertConditional", "path"},
    {ActionKind::AddElse, "AddElse", "path"},
    {ActionKind::RemoveElse, "RemoveElse", "path"},
    {ActionKind::BeginRecord, "BeginRecord", ""},
    {ActionKind::EndRecord, "EndRecord", ""},
    {ActionKind::RunMacro, "RunMacro", "name"},
    {ActionKind::ExecSelection, "ExecSelection", "path"},
    {ActionKind::Resume, "Resume", ""},
    {ActionKind::ProvideInput, "ProvideInput", "value"},
    {ActionKind::Undo, "Undo", ""},
}};

const KindInfo& info(ActionKind k) {
  for (const auto& i : kKinds) {
    if (i.kind == k) return i;
  }
  throw Error(ErrorCode::InvalidAction, "unknown action kind");
}

Action make(ActionKind k) {
  Action a;
  a.kind = k;
  return a;
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidAction, msg); }

std::string get_string(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j[key].is_string()) bad(std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::optional<std::int64_t> get_int(const Json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  if (!j[key].is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return j[key].get<std::int64_t>();
}

std::vector<std::int64_t> get_ints(const Json& j, const char* key) {
  std::vector<std::int64_t> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) bad(std::string("field '") + key + "' must be an array of integers");
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an array of integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

}  // namespace

std::string_view to_string(ActionKind k) { return info(k).name; }

std::optional<ActionKind> parse_action_kind(std::string_view s) {
  for (const auto& i : kKinds) {
    if (i.name == s) return i.kind;
  }
  return std::nullopt;
}

Action Action::declare_variable(std::string name, std::int64_t value, std::string type) {
  Action a = make(ActionKind::DeclareVariable);
  a.name = std::move(name);
  a.value = value;
  a.type = std::move(type);
  return a;
}

Action Action::declare_constant(std::string name, std::int64_t value, std::string type) {
  Action a = declare_variable(std::move(name), value, std::move(type));
  a.kind = ActionKind::DeclareConstant;
  return a;
}

Action Action::declare_array(std::string name, std::vector<std::int64_t> cells) {
  Action a = make(ActionKind::DeclareArray);
  a.name = std::move(name);
  a.cells = std::move(cells);
  return a;
}

Action Action::declare_random_array(std::string name, std::size_t length) {
  Action a = make(ActionKind::DeclareArray);
  a.name = std::move(name);
  a.length = length;
  return a;
}

Action Action::declare_index(std::string name, std::string of_array, std::int64_t value) {
  Action a = make(ActionKind::DeclareIndex);
  a.name = std::move(name);
  a.of = std::move(of_array);
  a.value = value;
  return a;
}

Action Action::add_literal(std::int64_t value) {
  Action a = make(ActionKind::AddLiteral);
  a.value = value;
  return a;
}

Action Action::set_value(std::string target, std::int64_t value) {
  Action a = make(ActionKind::SetValue);
  a.target = std::move(target);
  a.value = value;
  return a;
}

Action Action::define_macro(std::string name, std::string form, std::vector<std::string> comment) {
  Action a = make(ActionKind::DefineMacro);
  a.name = std::move(name);
  a.form = std::move(form);
  a.comment = std::move(comment);
  return a;
}

Action Action::drag_assign(std::string src, std::string dst) {
  Action a = make(ActionKind::DragAssign);
  a.src = std::move(src);
  a.dst = std::move(dst);
  return a;
}

Action Action::apply_operator(std::string op, std::string lhs, std::string rhs, std::string dst) {
  Action a = make(ActionKind::ApplyOperator);
  a.op = std::move(op);
  a.a = std::move(lhs);
  a.b = std::move(rhs);
  a.dst = std::move(dst);
  return a;
}

Action Action::sweep_increment(std::string dst) {
  Action a = make(ActionKind::SweepIncrement);
  a.dst = std::move(dst);
  return a;
}

Action Action::sweep_decrement(std::string dst) {
  Action a = make(ActionKind::SweepDecrement);
  a.dst = std::move(dst);
  return a;
}

Action Action::read_gesture(std::string dst, std::int64_t input, std::optional<std::string> message) {
  Action a = make(ActionKind::ReadGesture);
  a.dst = std::move(dst);
  a.input = input;
  a.message = std::move(message);
  return a;
}

Action Action::write_gesture(std::string src, std::optional<std::string> message) {
  Action a = make(ActionKind::WriteGesture);
  a.src = std::move(src);
  a.message = std::move(message);
  return a;
}

Action Action::call_macro(std::string name) {
  Action a = make(ActionKind::CallMacro);
  a.name = std::move(name);
  return a;
}

Action Action::compare(std::string lhs, std::string rhs) {
  Action a = make(ActionKind::Compare);
  a.a = std::move(lhs);
  a.b = std::move(rhs);
  return a;
}

Action Action::choose_condition(std::string rel) {
  Action a = make(ActionKind::ChooseCondition);
  a.rel = std::move(rel);
  return a;
}

Action Action::end_case() { return make(ActionKind::EndCaseMarker); }

Action Action::define_exit_condition(std::string condition) {
  Action a = make(ActionKind::DefineExitCondition);
  a.condition = std::move(condition);
  return a;
}

namespace {

Action with_path(ActionKind k, std::string path) {
  Action a = make(k);
  a.path = std::move(path);
  return a;
}

}  // namespace

Action Action::select_line(std::string path) { return with_path(ActionKind::SelectLine, std::move(path)); }
Action Action::delete_line(std::string path) { return with_path(ActionKind::DeleteLine, std::move(path)); }
Action Action::invert_conditional(std::string path) {
  return with_path(ActionKind::InvertConditional, std::move(path));
}
Action Action::add_else(std::string path) { return with_path(ActionKind::AddElse, std::move(path)); }
Action Action::remove_else(std::string path) { return with_path(ActionKind::RemoveElse, std::move(path)); }
Action Action::begin_record(std::string path) { return with_path(ActionKind::BeginRecord, std::move(path)); }
Action Action::end_record() { return make(ActionKind::EndRecord); }

Action Action::run_macro(std::string name, std::vector<std::int64_t> inputs, std::string mode, std::string detail) {
  Action a = make(ActionKind::RunMacro);
  a.name = std::move(name);
  a.inputs = std::move(inputs);
  a.mode = std::move(mode);
  a.detail = std::move(detail);
  return a;
}

Action Action::exec_selection(std::string path) { return with_path(ActionKind::ExecSelection, std::move(path)); }
Action Action::resume() { return make(ActionKind::Resume); }

Action Action::provide_input(std::int64_t value) {
  Action a = make(ActionKind::ProvideInput);
  a.value = value;
  return a;
}

Action Action::undo() { return make(ActionKind::Undo); }

Json Action::to_json() const {
  Json j;
  j["action"] = std::string(to_string(kind));
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("name", name);
  put("type", type);
  if (value) j["value"] = *value;
  if (cells) j["cells"] = *cells;
  if (length) j["length"] = *length;
  put("of", of);
  put("form", form);
  if (!comment.empty()) j["comment"] = comment;
  put("src", src);
  put("op", op);
  put("a", a);
  put("b", b);
  put("dst", dst);
  put("rel", rel);
  put("condition", condition);
  put("path", path);
  put("target", target);
  if (message) j["message"] = *message;
  if (input) j["input"] = *input;
  put("mode", mode);
  put("detail", detail);
  if (!inputs.empty()) j["inputs"] = inputs;
  return j;
}

Action Action::from_json(const Json& j) {
  if (!j.is_object()) bad("an action record must be a JSON object");
  const std::string kind_name = get_string(j, "action");
  auto kind = parse_action_kind(kind_name);
  if (!kind) bad("unknown action '" + kind_name + "'");

  static constexpr std::string_view kKnown[] = {"action", "name",      "type",  "value",  "cells",  "length",
                                                "of",     "form",      "comment", "src",  "op",     "a",
                                                "b",      "dst",       "rel",   "condition", "path", "target",
                                                "message", "input",    "mode",  "detail", "inputs"};
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto k : kKnown) known = known || k == key;
    if (!known) bad("unknown field '" + key + "' in " + kind_name);
  }

  std::string_view required = info(*kind).required;
  while (!required.empty()) {
    auto sp = required.find(' ');
    std::string field(required.substr(0, sp));
    if (!j.contains(field)) bad(kind_name + " requires field '" + field + "'");
    required = sp == std::string_view::npos ? std::string_view{} : required.substr(sp + 1);
  }

  Action a;
  a.kind = *kind;
  a.name = get_string(j, "name");
  a.type = get_string(j, "type");
  a.value = get_int(j, "value");
  if (j.contains("cells")) a.cells = get_ints(j, "cells");
  if (auto len = get_int(j, "length")) {
    if (*len < 0) bad("field 'length' must be non-negative");
    a.length = static_cast<std::size_t>(*len);
  }
  a.of = get_string(j, "of");
  a.form = get_string(j, "form");
  if (j.contains("comment")) {
    if (!j["comment"].is_array()) bad("field 'comment' must be an array of strings");
    for (const auto& c : j["comment"]) {
      if (!c.is_string()) bad("field 'comment' must be an array of strings");
      a.comment.push_back(c.get<std::string>());
    }
  }
  a.src = get_string(j, "src");
  a.op = get_string(j, "op");
  a.a = get_string(j, "a");
  a.b = get_string(j, "b");
  a.dst = get_string(j, "dst");
  a.rel = get_string(j, "rel");
  a.condition = get_string(j, "condition");
  a.path = get_string(j, "path");
  a.target = get_string(j, "target");
  if (j.contains("message")) a.message = get_string(j, "message");
  a.input = get_int(j, "input");
  a.mode = get_string(j, "mode");
  a.detail = get_string(j, "detail");
  a.inputs = get_ints(j, "inputs");
  return a;
}

std::vector<ScriptLine> parse_script(std::string_view text) {
  std::vector<ScriptLine> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    try {
      out.push_back({line_no, Action::from_json(Json::parse(line))});
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::InvalidAction, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidAction, "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return out;
}

std::string format_script(const std::vector<Action>& actions) {
  std::string out;
  for (const auto& a : actions) out += a.to_json().dump() + "\n";
  return out;
}

}  // namespace agt

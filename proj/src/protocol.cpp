#include "agt/protocol.hpp"

#include "agt/printer.hpp"

namespace agt {

namespace {

Json value_json(const Value& v) {
  return {{"type", v.kind == ValueKind::Char ? "char" : "int"}, {"value", v.payload}};
}

}  // namespace

Json event_json(const ExecEvent& e) {
  Json j;
  j["event"] = std::string(to_string(e.kind));
  if (!e.path.empty()) j["path"] = e.path;
  switch (e.kind) {
    case EventKind::Snapshot:
    case EventKind::Finished:
    case EventKind::BlockEntered:
      if (!e.detail.empty()) j["detail"] = e.detail;
      break;
    case EventKind::InstructionExecuted: {
      Json changes = Json::array();
      for (const auto& c : e.changes) {
        changes.push_back({{"target", c.target}, {"before", c.before.payload}, {"after", c.after.payload}});
      }
      j["changes"] = std::move(changes);
      break;
    }
    case EventKind::ConditionEvaluated:
      j["index"] = e.condition_index;
      j["truth"] = e.truth;
      break;
    case EventKind::OutputProduced:
      j["message"] = e.message;
      j["value"] = value_json(e.value);
      break;
    case EventKind::Paused:
      if (e.pause) {
        j["reason"] = std::string(to_string(e.pause->kind));
        if (!e.pause->condition.empty()) j["condition"] = e.pause->condition;
        if (!e.pause->macro.empty()) j["macro"] = e.pause->macro;
        if (e.pause->target) j["target"] = e.pause->target->text();
        if (!e.pause->message.empty()) j["message"] = e.pause->message;
      }
      break;
    case EventKind::Error:
      if (e.error) j["code"] = std::string(to_string(*e.error));
      j["detail"] = e.detail;
      break;
  }
  j["text"] = e.text();
  return j;
}

Json output_json(const Output& o) { return {{"message", o.message}, {"value", value_json(o.value)}}; }

Json error_json(const Error& e) {
  Json j{{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}};
  if (!e.path().empty()) j["path"] = e.path();
  return j;
}

Json apply_json(const ApplyResult& r) {
  Json emitted = Json::array();
  for (const auto& i : r.emitted) emitted.push_back(instruction_text(i));
  Json events = Json::array();
  for (const auto& e : r.events) events.push_back(event_json(e));
  return {{"emitted", std::move(emitted)}, {"events", std::move(events)}};
}

}  // namespace agt

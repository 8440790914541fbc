#pragma once

#include <array>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "agt/action.hpp"
#include "agt/ast.hpp"
#include "agt/interpreter.hpp"
#include "agt/workspace.hpp"

namespace agt {

// ---------------------------------------------------------------------------
// Comparator and exit conditions

/// The three relations that hold between a and b, in presentation order:
/// strict (or ==), then != (or the other weak one), then weak.
[[nodiscard]] std::array<Rel, 3> enumerate_true_relations(std::int64_t a, std::int64_t b);

/// Stable partition: guards (no indexed cell) before the rest.
[[nodiscard]] std::vector<Comparison> reorder_exit_conditions(std::vector<Comparison> list);

/// Append then reorder. Throws DuplicateCondition.
void add_exit_condition(UntilBlock& until, const Comparison& chosen);

// ---------------------------------------------------------------------------
// Structural edits. All throw InvalidPath when the path does not name an
// instruction of the required kind.

void delete_line(Program& program, const Path& path);
/// Requires an empty then-branch; the else body becomes the then body under
/// the negated condition. Throws InvertNonEmptyThen.
void invert_conditional(Program& program, const Path& path);
/// Throws ElsePresent.
void add_else(Program& program, const Path& path);
/// Only an empty or ToDo else may go. Throws RemoveNonEmptyElse.
void remove_else(Program& program, const Path& path);

// ---------------------------------------------------------------------------
// Recorder state

/// Insertion point: instructions go at `position` inside `container`.
struct Cursor {
  Path container;
  std::size_t position = 0;
  friend bool operator==(const Cursor&, const Cursor&) = default;
};

struct PendingComparison {
  Operand a;
  Operand b;
  std::array<Rel, 3> candidates{};
  friend bool operator==(const PendingComparison&, const PendingComparison&) = default;
};

/// A case being demonstrated. `Then` follows ChooseCondition; `Missing` is the
/// else branch opened when execution reaches a `// TO DO`.
struct OpenCase {
  enum class Kind : std::uint8_t { Then, Missing };
  Kind kind = Kind::Then;
  Path alternative;
  std::optional<Cursor> resume_cursor;
  bool resume_recording = false;
  friend bool operator==(const OpenCase&, const OpenCase&) = default;
};

struct RecorderState {
  bool recording = false;
  std::optional<Cursor> cursor;
  std::optional<PendingComparison> pending;
  std::vector<OpenCase> open_cases;
  friend bool operator==(const RecorderState&, const RecorderState&) = default;
};

struct ApplyResult {
  std::vector<Instruction> emitted;
  std::vector<ExecEvent> events;
};

/// One engine session: workspace, program, recorder, and at most one live
/// execution. Every action is transactional: on error nothing changes.
class Session {
 public:
  explicit Session(std::uint64_t seed = 0);
  Session(Workspace ws, Program program);

  ApplyResult apply(const Action& action);

  [[nodiscard]] const Workspace& workspace() const { return ws_; }
  [[nodiscard]] const Program& program() const { return program_; }
  [[nodiscard]] const RecorderState& recorder() const { return rec_; }
  [[nodiscard]] const std::optional<ExecState>& execution() const { return exec_; }
  [[nodiscard]] const std::vector<Action>& log() const { return log_; }
  [[nodiscard]] const std::vector<Output>& outputs() const { return outputs_; }
  [[nodiscard]] const std::vector<ExecEvent>& events() const { return events_; }
  [[nodiscard]] bool paused() const { return exec_ && exec_->status == Status::Paused; }
  /// Whether a manipulation right now would also produce code.
  [[nodiscard]] bool emitting() const;

 private:
  struct Snapshot {
    Workspace ws;
    Program program;
    RecorderState rec;
    std::optional<ExecState> exec;
    std::deque<std::int64_t> inputs;
    std::vector<Output> outputs;
    std::size_t events = 0;
    bool from_call = false;
  };

  [[nodiscard]] Snapshot snapshot() const;
  void restore(Snapshot s);
  void dispatch(const Action& a, ApplyResult& out);

  void require_name_free(const std::string& name) const;
  void require_editable() const;
  [[nodiscard]] Operand operand(const std::string& text) const;
  [[nodiscard]] Ref lvalue(const std::string& text) const;
  void manipulate(Instruction ins, ApplyResult& out);
  void emit(Instruction ins, ApplyResult& out);
  void select(const Path& path);
  void call(const std::string& name, ApplyResult& out);
  void choose(const std::string& rel, ApplyResult& out);
  void end_case(ApplyResult& out);
  void start(ExecState st, ApplyResult& out);
  void drive(ApplyResult& out, std::optional<Value> input = std::nullopt);
  void on_pause(ApplyResult& out);

  Workspace ws_;
  Program program_;
  RecorderState rec_;
  std::optional<ExecState> exec_;
  /// Set when the live execution was started by a recorded macro call.
  bool exec_from_recorded_call_ = false;
  std::deque<std::int64_t> inputs_;
  std::vector<Output> outputs_;
  std::vector<ExecEvent> events_;
  std::vector<Action> log_;
  std::vector<Snapshot> undo_;
};

}  // namespace agt

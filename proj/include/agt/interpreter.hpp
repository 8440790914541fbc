#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "agt/ast.hpp"
#include "agt/workspace.hpp"

namespace agt {

enum class Mode : std::uint8_t { Construction, Direct, Animation };
enum class Detail : std::uint8_t { Detailed, Summary };
enum class Granularity : std::uint8_t { Instruction, Block };

[[nodiscard]] std::string_view to_string(Mode m);
[[nodiscard]] std::string_view to_string(Detail d);
[[nodiscard]] std::optional<Mode> parse_mode(std::string_view s);
[[nodiscard]] std::optional<Detail> parse_detail(std::string_view s);
[[nodiscard]] std::optional<Granularity> parse_granularity(std::string_view s);

struct ExecOptions {
  Mode mode = Mode::Direct;
  Detail detail = Detail::Detailed;
  Granularity granularity = Granularity::Instruction;
  std::size_t step_limit = 100000;
};

enum class PauseKind : std::uint8_t { MissingElse, EmptyMacro, InputRequest };
[[nodiscard]] std::string_view to_string(PauseKind k);

struct PauseReason {
  PauseKind kind = PauseKind::InputRequest;
  /// Instruction at which execution stopped.
  std::string path;
  /// MissingElse: the untreated condition, e.g. `v > 0`.
  std::string condition;
  /// EmptyMacro: the called macro.
  std::string macro;
  /// InputRequest: destination and prompt.
  std::optional<Ref> target;
  std::string message;

  [[nodiscard]] std::string text() const;
  friend bool operator==(const PauseReason&, const PauseReason&) = default;
};

enum class EventKind : std::uint8_t {
  Snapshot,
  BlockEntered,
  InstructionExecuted,
  ConditionEvaluated,
  OutputProduced,
  Paused,
  Finished,
  Error,
};
[[nodiscard]] std::string_view to_string(EventKind k);

/// Flat record; fields irrelevant to the kind stay empty.
struct ExecEvent {
  EventKind kind = EventKind::Finished;
  std::string path;
  std::vector<Change> changes;
  std::size_t condition_index = 0;
  bool truth = false;
  std::optional<PauseReason> pause;
  std::string message;
  Value value;
  std::optional<ErrorCode> error;
  std::string detail;

  /// Compact single-line form used by text traces and golden files.
  [[nodiscard]] std::string text() const;
  friend bool operator==(const ExecEvent&, const ExecEvent&) = default;
};

struct Output {
  std::string message;
  Value value;
  friend bool operator==(const Output&, const Output&) = default;
};

enum class Status : std::uint8_t { Running, Paused, Finished, Errored };
[[nodiscard]] std::string_view to_string(Status s);

/// One activation on the explicit control stack. Bodies are resolved by path on
/// every step so that a paused execution sees edits made during the pause.
struct Frame {
  enum class Kind : std::uint8_t { Sequence, LoopMacro, UntilOnly };
  enum class Phase : std::uint8_t { Start, Until, Terminate };

  Kind kind = Kind::Sequence;
  Path container;
  std::size_t pc = 0;
  std::size_t end = SIZE_MAX;
  std::string macro;
  Phase phase = Phase::Start;
};

struct ExecState {
  /// What the first step enters: a macro name or a selected path.
  std::string entry;
  std::optional<Path> selection;
  bool started = false;
  std::vector<Frame> frames;
  ExecOptions options;
  Status status = Status::Running;
  std::optional<PauseReason> pause;
  std::optional<Error> error;
  std::size_t step_count = 0;
  /// Workspace before a construction-mode selection; restored on error.
  std::optional<Workspace> rollback;
  /// Loop-body executions per loop macro, summed over the run.
  std::vector<std::pair<std::string, std::size_t>> loop_iterations;

  [[nodiscard]] bool done() const { return status == Status::Finished || status == Status::Errored; }
  [[nodiscard]] std::size_t iterations(std::string_view macro) const;
};

// ---------------------------------------------------------------------------
// Evaluation shared by the recorder, the interpreter and the test oracles.

[[nodiscard]] std::int64_t eval_operand(const Operand& o, const Workspace& ws);
/// Checked 64-bit arithmetic; division and modulo truncate toward zero.
[[nodiscard]] std::int64_t apply_arith(ArithOp op, std::int64_t a, std::int64_t b);
[[nodiscard]] std::int64_t eval_expression(const Expression& e, const Workspace& ws);
[[nodiscard]] bool eval_comparison(const Comparison& c, const Workspace& ws);

struct UntilOutcome {
  bool exit = false;
  std::size_t index = 0;
  friend bool operator==(const UntilOutcome&, const UntilOutcome&) = default;
};

/// Left to right, stopping at the first true condition.
UntilOutcome eval_until(const std::vector<Comparison>& conditions, const Workspace& ws, const std::string& macro = {},
                        std::vector<ExecEvent>* events = nullptr);

// ---------------------------------------------------------------------------
// Stepping API

/// Prepare a run of a whole macro.
[[nodiscard]] ExecState start_macro(const Program& program, const std::string& name, ExecOptions options = {});
/// Prepare a construction-mode run of one instruction or one block.
[[nodiscard]] ExecState start_selection(const Program& program, const Workspace& ws, const Path& selection,
                                        ExecOptions options = {});

/// Execute one instruction or one Until batch. An input is consumed only when
/// paused on a Read.
std::vector<ExecEvent> step(ExecState& st, const Program& program, Workspace& ws,
                            std::optional<Value> input = std::nullopt);
/// Leave a MissingElse or EmptyMacro pause.
void resume(ExecState& st);
/// Step until finished, errored, or paused on something the queue cannot satisfy.
std::vector<ExecEvent> run(ExecState& st, const Program& program, Workspace& ws, std::deque<std::int64_t>& inputs);

struct RunResult {
  Workspace workspace;
  std::vector<ExecEvent> events;
  std::vector<Output> outputs;
  ExecState state;
};

/// Whole-macro execution on a copy of the workspace.
[[nodiscard]] RunResult run_macro(const Program& program, const Workspace& ws, const std::string& name,
                                  ExecOptions options = {}, std::deque<std::int64_t> inputs = {});

[[nodiscard]] std::vector<Output> outputs_of(const std::vector<ExecEvent>& events);

}  // namespace agt

#include "agt/interpreter.hpp"

#include <algorithm>

#include "agt/overloaded.hpp"
#include "agt/printer.hpp"

namespace agt {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Construction: return "construction";
    case Mode::Direct: return "direct";
    case Mode::Animation: return "animation";
  }
  return "?";
}

std::string_view to_string(Detail d) { return d == Detail::Summary ? "summary" : "detailed"; }

std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::Construction, Mode::Direct, Mode::Animation}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<Detail> parse_detail(std::string_view s) {
  if (s == "detailed") return Detail::Detailed;
  if (s == "summary") return Detail::Summary;
  return std::nullopt;
}

std::optional<Granularity> parse_granularity(std::string_view s) {
  if (s == "instruction") return Granularity::Instruction;
  if (s == "block") return Granularity::Block;
  return std::nullopt;
}

std::string_view to_string(PauseKind k) {
  switch (k) {
    case PauseKind::MissingElse: return "MissingElse";
    case PauseKind::EmptyMacro: return "EmptyMacro";
    case PauseKind::InputRequest: return "InputRequest";
  }
  return "?";
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Snapshot: return "Snapshot";
    case EventKind::BlockEntered: return "BlockEntered";
    case EventKind::InstructionExecuted: return "InstructionExecuted";
    case EventKind::ConditionEvaluated: return "ConditionEvaluated";
    case EventKind::OutputProduced: return "OutputProduced";
    case EventKind::Paused: return "Paused";
    case EventKind::Finished: return "Finished";
    case EventKind::Error: return "Error";
  }
  return "?";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Running: return "running";
    case Status::Paused: return "paused";
    case Status::Finished: return "finished";
    case Status::Errored: return "errored";
  }
  return "?";
}

std::string PauseReason::text() const {
  std::string out = std::string(to_string(kind)) + " " + path;
  switch (kind) {
    case PauseKind::MissingElse: return out + " " + condition;
    case PauseKind::EmptyMacro: return out + " " + macro;
    case PauseKind::InputRequest: return out + " " + (target ? target->text() : "") + " " + quote(message);
  }
  return out;
}

std::string ExecEvent::text() const {
  switch (kind) {
    case EventKind::Snapshot: return "snapshot " + detail;
    case EventKind::BlockEntered: return "block " + path;
    case EventKind::InstructionExecuted: {
      std::string out = "exec " + path;
      if (!detail.empty()) out += " " + detail;
      for (const auto& c : changes) out += " " + c.target + "=" + std::to_string(c.after.payload);
      return out;
    }
    case EventKind::ConditionEvaluated: return "cond " + path + (truth ? " true" : " false");
    case EventKind::OutputProduced: return "output " + quote(message) + " " + std::to_string(value.payload);
    case EventKind::Paused: return "pause " + (pause ? pause->text() : std::string());
    case EventKind::Finished: return "finished";
    case EventKind::Error:
      return "error " + std::string(error ? to_string(*error) : "") + " " + path + ": " + detail;
  }
  return "?";
}

std::size_t ExecState::iterations(std::string_view macro) const {
  for (const auto& [name, n] : loop_iterations) {
    if (name == macro) return n;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Evaluation

std::int64_t eval_operand(const Operand& o, const Workspace& ws) {
  return o.is_literal() ? o.literal_value() : ws.read(o.ref()).payload;
}

std::int64_t apply_arith(ArithOp op, std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  auto overflow = [&] {
    return Error(ErrorCode::Overflow, std::to_string(a) + " " + std::string(symbol(op)) + " " + std::to_string(b) +
                                          " leaves the 64-bit range");
  };
  switch (op) {
    case ArithOp::Add:
      if (__builtin_add_overflow(a, b, &r)) throw overflow();
      return r;
    case ArithOp::Sub:
      if (__builtin_sub_overflow(a, b, &r)) throw overflow();
      return r;
    case ArithOp::Mul:
      if (__builtin_mul_overflow(a, b, &r)) throw overflow();
      return r;
    case ArithOp::Div:
    case ArithOp::Mod:
      if (b == 0) throw Error(ErrorCode::DivisionByZero, std::to_string(a) + " " + std::string(symbol(op)) + " 0");
      if (b == -1) {
        if (op == ArithOp::Mod) return 0;
        if (a == INT64_MIN) throw overflow();
      }
      return op == ArithOp::Div ? a / b : a % b;
  }
  return r;
}

std::int64_t eval_expression(const Expression& e, const Workspace& ws) {
  const std::int64_t a = eval_operand(e.first, ws);
  if (!e.op) return a;
  return apply_arith(*e.op, a, eval_operand(e.second, ws));
}

bool eval_comparison(const Comparison& c, const Workspace& ws) {
  return holds(c.rel, eval_operand(c.left, ws), eval_operand(c.right, ws));
}

UntilOutcome eval_until(const std::vector<Comparison>& conditions, const Workspace& ws, const std::string& macro,
                        std::vector<ExecEvent>* events) {
  const Path until = Path::to_block(macro, BlockId::Until);
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    bool truth = false;
    try {
      truth = eval_comparison(conditions[i], ws);
    } catch (const Error& e) {
      throw e.path().empty() ? e.at(until.child(i).text()) : e;
    }
    if (events) {
      ExecEvent ev;
      ev.kind = EventKind::ConditionEvaluated;
      ev.path = until.child(i).text();
      ev.condition_index = i;
      ev.truth = truth;
      events->push_back(std::move(ev));
    }
    if (truth) return {true, i};
  }
  return {false, conditions.size()};
}

// ---------------------------------------------------------------------------
// Stepping

namespace {

ExecEvent make(EventKind k, std::string path = {}) {
  ExecEvent e;
  e.kind = k;
  e.path = std::move(path);
  return e;
}

ExecEvent snapshot(const Workspace& ws) {
  ExecEvent e = make(EventKind::Snapshot);
  e.detail = ws.summary();
  return e;
}

bool visible(const ExecEvent& e, const ExecOptions& o) {
  if (o.detail == Detail::Summary) {
    return e.kind != EventKind::InstructionExecuted && e.kind != EventKind::BlockEntered &&
           e.kind != EventKind::ConditionEvaluated;
  }
  if (o.mode == Mode::Animation && o.granularity == Granularity::Block) {
    return e.kind != EventKind::InstructionExecuted;
  }
  return true;
}

class Stepper {
 public:
  Stepper(ExecState& st, const Program& program, Workspace& ws) : st_(st), program_(program), ws_(ws) {}

  void enter_macro(const MacroDef& m) {
    if (m.kind == MacroKind::Simple) {
      Frame f;
      f.container = Path::to_block(m.name, BlockId::Do);
      f.macro = m.name;
      st_.frames.push_back(std::move(f));
      events_.push_back(make(EventKind::BlockEntered, Path::to_block(m.name, BlockId::Do).text()));
    } else {
      Frame f;
      f.kind = Frame::Kind::LoopMacro;
      f.macro = m.name;
      st_.frames.push_back(std::move(f));
    }
  }

  void begin() {
    st_.started = true;
    events_.push_back(snapshot(ws_));
    if (st_.selection) {
      const Path& sel = *st_.selection;
      Frame f;
      f.macro = sel.macro;
      if (sel.block == BlockId::Until && !sel.is_instruction()) {
        f.kind = Frame::Kind::UntilOnly;
      } else if (sel.is_instruction()) {
        f.container = sel.container();
        f.pc = *sel.index;
        f.end = *sel.index + 1;
      } else {
        f.container = sel;
        events_.push_back(make(EventKind::BlockEntered, sel.text()));
      }
      st_.frames.push_back(std::move(f));
      return;
    }
    const MacroDef* m = program_.find(st_.entry);
    if (!m) throw Error(ErrorCode::UnknownMacro, "no macro named '" + st_.entry + "'");
    enter_macro(*m);
  }

  void count_step(const std::string& path) {
    if (++st_.step_count > st_.options.step_limit) {
      throw Error(ErrorCode::StepLimit, "step limit " + std::to_string(st_.options.step_limit) + " reached", path);
    }
  }

  void pause(PauseReason r) {
    st_.status = Status::Paused;
    ExecEvent e = make(EventKind::Paused, r.path);
    e.pause = r;
    st_.pause = std::move(r);
    events_.push_back(std::move(e));
  }

  void finish() {
    st_.status = Status::Finished;
    st_.rollback.reset();
    events_.push_back(snapshot(ws_));
    events_.push_back(make(EventKind::Finished));
  }

  void add_iteration(const std::string& macro) {
    for (auto& [name, n] : st_.loop_iterations) {
      if (name == macro) {
        ++n;
        return;
      }
    }
    st_.loop_iterations.emplace_back(macro, 1);
  }

  // Returns after one unit of work, a pause, or the end of the run.
  void advance() {
    while (true) {
      if (st_.frames.empty()) {
        finish();
        return;
      }
      Frame& f = st_.frames.back();
      switch (f.kind) {
        case Frame::Kind::Sequence: {
          const auto& body = container_body(program_, f.container);
          if (f.pc >= std::min(f.end, body.size())) {
            st_.frames.pop_back();
            continue;
          }
          const Path path = f.container.child(f.pc);
          path_ = path.text();
          count_step(path_);
          instruction(body[f.pc], path);
          return;
        }
        case Frame::Kind::LoopMacro: {
          const MacroDef* m = program_.find(f.macro);
          if (!m) throw Error(ErrorCode::UnknownMacro, "no macro named '" + f.macro + "'");
          if (f.phase == Frame::Phase::Start) {
            f.phase = Frame::Phase::Until;
            push_block(m->name, BlockId::From);
            continue;
          }
          if (f.phase == Frame::Phase::Terminate) {
            st_.frames.pop_back();
            continue;
          }
          path_ = Path::to_block(m->name, BlockId::Until).text();
          count_step(path_);
          events_.push_back(make(EventKind::BlockEntered, path_));
          const UntilOutcome out = eval_until(m->until.conditions, ws_, m->name, &events_);
          const std::string name = m->name;
          if (out.exit) {
            f.phase = Frame::Phase::Terminate;
            push_block(name, BlockId::Terminate);
          } else {
            add_iteration(name);
            push_block(name, BlockId::Loop);
          }
          return;
        }
        case Frame::Kind::UntilOnly: {
          const MacroDef* m = program_.find(f.macro);
          if (!m || m->kind != MacroKind::Loop) {
            throw Error(ErrorCode::InvalidPath, "'" + f.macro + "' has no Until block");
          }
          path_ = Path::to_block(m->name, BlockId::Until).text();
          count_step(path_);
          events_.push_back(make(EventKind::BlockEntered, path_));
          eval_until(m->until.conditions, ws_, m->name, &events_);
          st_.frames.pop_back();
          return;
        }
      }
    }
  }

  void push_block(const std::string& macro, BlockId id) {
    Frame f;
    f.container = Path::to_block(macro, id);
    f.macro = macro;
    events_.push_back(make(EventKind::BlockEntered, f.container.text()));
    st_.frames.push_back(std::move(f));
  }

  void executed(const Path& path, std::vector<Change> changes, std::string detail = {}) {
    ExecEvent e = make(EventKind::InstructionExecuted, path.text());
    e.changes = std::move(changes);
    e.detail = std::move(detail);
    events_.push_back(std::move(e));
  }

  void instruction(const Instruction& ins, const Path& path) {
    std::visit(overloaded{
                   [&](const Assign& a) {
                     Change c = ws_.write(a.dst, Value::integer(eval_expression(a.rhs, ws_)));
                     ++st_.frames.back().pc;
                     executed(path, {std::move(c)});
                   },
                   [&](const ReadInstr& r) {
                     PauseReason p;
                     p.kind = PauseKind::InputRequest;
                     p.path = path.text();
                     p.target = r.dst;
                     p.message = r.message;
                     pause(std::move(p));
                   },
                   [&](const WriteInstr& w) {
                     Value v = ws_.read(w.src);
                     ++st_.frames.back().pc;
                     executed(path, {});
                     ExecEvent e = make(EventKind::OutputProduced, path.text());
                     e.message = w.message;
                     e.value = v;
                     events_.push_back(std::move(e));
                   },
                   [&](const CallInstr& c) {
                     const MacroDef* callee = program_.find(c.name);
                     if (!callee) throw Error(ErrorCode::UnknownMacro, "call to undefined macro '" + c.name + "'");
                     ++st_.frames.back().pc;
                     executed(path, {});
                     if (callee->is_empty()) {
                       PauseReason p;
                       p.kind = PauseKind::EmptyMacro;
                       p.path = path.text();
                       p.macro = c.name;
                       pause(std::move(p));
                       return;
                     }
                     enter_macro(*callee);
                   },
                   [&](const IfInstr& i) {
                     const bool truth = eval_comparison(i.cond, ws_);
                     ++st_.frames.back().pc;
                     executed(path, {}, truth ? "true" : "false");
                     if (truth) {
                       push_branch(path, Branch::Then);
                     } else if (i.else_state == ElseState::Present) {
                       push_branch(path, Branch::Else);
                     } else if (i.else_state == ElseState::ToDo) {
                       PauseReason p;
                       p.kind = PauseKind::MissingElse;
                       p.path = path.text();
                       p.condition = i.cond.negated().text();
                       pause(std::move(p));
                     }
                   },
               },
               ins.node);
  }

  void push_branch(const Path& path, Branch b) {
    Frame f;
    f.container = path.branch(b);
    f.macro = path.macro;
    st_.frames.push_back(std::move(f));
  }

  void deliver(Value input) {
    Frame& f = st_.frames.back();
    const Path path = f.container.child(f.pc);
    const auto& r = std::get<ReadInstr>(instruction_at(program_, path).node);
    const Value cur = ws_.read(r.dst);
    Value v = cur.kind == ValueKind::Char ? Value::character(input.payload) : Value::integer(input.payload);
    Change c = ws_.write(r.dst, v);
    ++f.pc;
    st_.status = Status::Running;
    st_.pause.reset();
    executed(path, {std::move(c)});
  }

  void fail(const Error& e) {
    Error located = e.path().empty() && !path_.empty() ? e.at(path_) : e;
    st_.status = Status::Errored;
    st_.error = located;
    st_.frames.clear();
    if (st_.rollback) {
      ws_ = *st_.rollback;
      st_.rollback.reset();
    }
    ExecEvent ev = make(EventKind::Error, located.path());
    ev.error = located.code();
    ev.detail = located.detail();
    events_.push_back(std::move(ev));
    events_.push_back(snapshot(ws_));
  }

  std::vector<ExecEvent> take_events() {
    std::vector<ExecEvent> out;
    for (auto& e : events_) {
      if (visible(e, st_.options)) out.push_back(std::move(e));
    }
    return out;
  }

  std::string path_;

 private:
  ExecState& st_;
  const Program& program_;
  Workspace& ws_;
  std::vector<ExecEvent> events_;
};

}  // namespace

ExecState start_macro(const Program& program, const std::string& name, ExecOptions options) {
  if (!program.find(name)) throw Error(ErrorCode::UnknownMacro, "no macro named '" + name + "'");
  if (auto cyc = find_call_cycle(program, name)) {
    throw Error(ErrorCode::RecursionForbidden, "macro '" + *cyc + "' lies on a call cycle");
  }
  ExecState st;
  st.entry = name;
  st.options = options;
  return st;
}

ExecState start_selection(const Program& program, const Workspace& ws, const Path& selection, ExecOptions options) {
  const MacroDef* m = program.find(selection.macro);
  if (!m) throw Error(ErrorCode::InvalidPath, "no macro '" + selection.macro + "'", selection.text());
  if (selection.block == BlockId::Until) {
    if (m->kind != MacroKind::Loop || selection.is_instruction()) {
      throw Error(ErrorCode::InvalidPath, selection.text() + " is not an executable selection", selection.text());
    }
  } else if (selection.is_instruction()) {
    (void)instruction_at(program, selection);
  } else {
    (void)container_body(program, selection);
  }
  if (auto cyc = find_call_cycle(program, selection.macro)) {
    throw Error(ErrorCode::RecursionForbidden, "macro '" + *cyc + "' lies on a call cycle");
  }
  ExecState st;
  st.entry = selection.macro;
  st.selection = selection;
  st.options = options;
  st.options.mode = Mode::Construction;
  st.rollback = ws;
  return st;
}

std::vector<ExecEvent> step(ExecState& st, const Program& program, Workspace& ws, std::optional<Value> input) {
  if (st.done()) return {};
  Stepper s(st, program, ws);
  try {
    if (st.status == Status::Paused) {
      if (st.pause->kind != PauseKind::InputRequest) {
        throw Error(ErrorCode::SessionPaused, "execution is paused: " + st.pause->text());
      }
      if (!input) throw Error(ErrorCode::InputRequired, "waiting for input at " + st.pause->path);
      s.path_ = st.pause->path;
      s.deliver(*input);
      return s.take_events();
    }
    if (!st.started) s.begin();
    s.advance();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SessionPaused || e.code() == ErrorCode::InputRequired) throw;
    s.fail(e);
  }
  return s.take_events();
}

void resume(ExecState& st) {
  if (st.status != Status::Paused || !st.pause) throw Error(ErrorCode::NotPaused, "execution is not paused");
  if (st.pause->kind == PauseKind::InputRequest) {
    throw Error(ErrorCode::InputRequired, "waiting for input at " + st.pause->path);
  }
  st.status = Status::Running;
  st.pause.reset();
}

std::vector<ExecEvent> run(ExecState& st, const Program& program, Workspace& ws, std::deque<std::int64_t>& inputs) {
  std::vector<ExecEvent> events;
  while (!st.done()) {
    std::optional<Value> input;
    if (st.status == Status::Paused) {
      if (st.pause->kind != PauseKind::InputRequest || inputs.empty()) break;
      input = Value::integer(inputs.front());
      inputs.pop_front();
    }
    auto evs = step(st, program, ws, input);
    events.insert(events.end(), std::make_move_iterator(evs.begin()), std::make_move_iterator(evs.end()));
  }
  return events;
}

RunResult run_macro(const Program& program, const Workspace& ws, const std::string& name, ExecOptions options,
                    std::deque<std::int64_t> inputs) {
  RunResult r{ws, {}, {}, start_macro(program, name, options)};
  r.events = run(r.state, program, r.workspace, inputs);
  r.outputs = outputs_of(r.events);
  return r;
}

std::vector<Output> outputs_of(const std::vector<ExecEvent>& events) {
  std::vector<Output> out;
  for (const auto& e : events) {
    if (e.kind == EventKind::OutputProduced) out.push_back({e.message, e.value});
  }
  return out;
}

}  // namespace agt

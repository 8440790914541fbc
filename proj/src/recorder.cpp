#include "agt/recorder.hpp"

#include <algorithm>

#include "agt/parser.hpp"

namespace agt {

std::array<Rel, 3> enumerate_true_relations(std::int64_t a, std::int64_t b) {
  if (a < b) return {Rel::Lt, Rel::Ne, Rel::Le};
  if (a > b) return {Rel::Gt, Rel::Ne, Rel::Ge};
  return {Rel::Eq, Rel::Le, Rel::Ge};
}

std::vector<Comparison> reorder_exit_conditions(std::vector<Comparison> list) {
  std::stable_partition(list.begin(), list.end(), [](const Comparison& c) { return c.is_guard(); });
  return list;
}

void add_exit_condition(UntilBlock& until, const Comparison& chosen) {
  if (std::find(until.conditions.begin(), until.conditions.end(), chosen) != until.conditions.end()) {
    throw Error(ErrorCode::DuplicateCondition, "'" + chosen.text() + "' is already an exit condition");
  }
  until.conditions.push_back(chosen);
  until.conditions = reorder_exit_conditions(std::move(until.conditions));
  until.placeholder = false;
}

namespace {

IfInstr& alternative_at(Program& program, const Path& path) {
  auto* iff = std::get_if<IfInstr>(&instruction_at(program, path).node);
  if (!iff) throw Error(ErrorCode::InvalidPath, path.text() + " is not an alternative", path.text());
  return *iff;
}

}  // namespace

void delete_line(Program& program, const Path& path) {
  if (!path.is_instruction()) {
    throw Error(ErrorCode::InvalidPath, path.text() + " does not designate an instruction", path.text());
  }
  auto& body = container_body(program, path.container());
  if (*path.index >= body.size()) throw Error(ErrorCode::InvalidPath, path.text() + " is out of range", path.text());
  body.erase(body.begin() + static_cast<std::ptrdiff_t>(*path.index));
}

void invert_conditional(Program& program, const Path& path) {
  IfInstr& iff = alternative_at(program, path);
  if (!iff.then_body.empty()) {
    throw Error(ErrorCode::InvertNonEmptyThen, "the then-branch of '" + iff.cond.text() + "' is not empty",
                path.text());
  }
  iff.cond = iff.cond.negated();
  iff.then_body = std::move(iff.else_body);
  iff.else_body.clear();
  iff.then_comment.clear();
  iff.else_comment.clear();
  iff.else_state = ElseState::None;
}

void add_else(Program& program, const Path& path) {
  IfInstr& iff = alternative_at(program, path);
  if (iff.else_state != ElseState::None) {
    throw Error(ErrorCode::ElsePresent, "'" + iff.cond.text() + "' already has an else clause", path.text());
  }
  iff.else_state = ElseState::Present;
  iff.else_comment = iff.cond.negated().text();
}

void remove_else(Program& program, const Path& path) {
  IfInstr& iff = alternative_at(program, path);
  if (iff.else_state == ElseState::None) {
    throw Error(ErrorCode::InvalidPath, "'" + iff.cond.text() + "' has no else clause", path.text());
  }
  if (!iff.else_body.empty()) {
    throw Error(ErrorCode::RemoveNonEmptyElse, "the else clause of '" + iff.cond.text() + "' holds instructions",
                path.text());
  }
  iff.else_state = ElseState::None;
  iff.else_comment.clear();
}

// ---------------------------------------------------------------------------
// Session

Session::Session(std::uint64_t seed) : ws_(seed) {}

Session::Session(Workspace ws, Program program) : ws_(std::move(ws)), program_(std::move(program)) {}

bool Session::emitting() const {
  if (!rec_.recording) return false;
  if (!paused()) return true;
  return !rec_.open_cases.empty() && rec_.open_cases.back().kind == OpenCase::Kind::Missing;
}

Session::Snapshot Session::snapshot() const {
  return {ws_, program_, rec_, exec_, inputs_, outputs_, events_.size(), exec_from_recorded_call_};
}

void Session::restore(Snapshot s) {
  ws_ = std::move(s.ws);
  program_ = std::move(s.program);
  rec_ = std::move(s.rec);
  exec_ = std::move(s.exec);
  inputs_ = std::move(s.inputs);
  outputs_ = std::move(s.outputs);
  events_.resize(s.events);
  exec_from_recorded_call_ = s.from_call;
}

ApplyResult Session::apply(const Action& action) {
  ApplyResult out;
  if (action.kind == ActionKind::Undo) {
    if (undo_.empty()) throw Error(ErrorCode::NothingToUndo, "no action to undo");
    restore(std::move(undo_.back()));
    undo_.pop_back();
    log_.push_back(action);
    return out;
  }
  Snapshot before = snapshot();
  try {
    dispatch(action, out);
  } catch (...) {
    restore(std::move(before));
    throw;
  }
  undo_.push_back(std::move(before));
  log_.push_back(action);
  return out;
}

void Session::require_name_free(const std::string& name) const {
  if (!is_identifier(name)) throw Error(ErrorCode::InvalidAction, "'" + name + "' is not a valid identifier");
  if (ws_.has_name(name) || program_.find(name)) {
    throw Error(ErrorCode::DuplicateName, "'" + name + "' is already declared");
  }
}

void Session::require_editable() const {
  if (paused()) throw Error(ErrorCode::SessionPaused, "execution is paused: " + exec_->pause->text());
  if (!rec_.open_cases.empty()) {
    throw Error(ErrorCode::CaseOpen, "the case of '" + rec_.open_cases.back().alternative.text() + "' is still open");
  }
}

Operand Session::operand(const std::string& text) const {
  Operand o = parse_operand(text);
  if (o.is_literal() && !ws_.has_literal(o.literal_value())) {
    throw Error(ErrorCode::UnknownLiteral, std::to_string(o.literal_value()) + " is not in the constant palette");
  }
  return o;
}

Ref Session::lvalue(const std::string& text) const { return parse_ref(text); }

void Session::emit(Instruction ins, ApplyResult& out) {
  if (!emitting()) return;
  if (!rec_.cursor) throw Error(ErrorCode::InvalidAction, "recording without an insertion point");
  Cursor& cur = *rec_.cursor;
  if (cur.container.block == BlockId::Until) {
    throw Error(ErrorCode::NotAnInstructionBlock, "Until holds exit conditions only", cur.container.text());
  }
  auto& body = container_body(program_, cur.container);
  if (cur.position > body.size()) throw Error(ErrorCode::InvalidPath, "insertion point past the end");
  body.insert(body.begin() + static_cast<std::ptrdiff_t>(cur.position), ins);
  ++cur.position;
  program_.find(cur.container.macro)->block(cur.container.block)->placeholder = false;
  out.emitted.push_back(std::move(ins));
}

void Session::manipulate(Instruction ins, ApplyResult& out) {
  if (const auto* a = std::get_if<Assign>(&ins.node)) {
    ws_.write(a->dst, Value::integer(eval_expression(a->rhs, ws_)));
  }
  emit(std::move(ins), out);
}

void Session::select(const Path& path) {
  const MacroDef* m = program_.find(path.macro);
  if (!m) throw Error(ErrorCode::InvalidPath, "no macro '" + path.macro + "'", path.text());
  if (path.block == BlockId::Until) {
    if (m->kind != MacroKind::Loop) throw Error(ErrorCode::InvalidPath, path.text() + " has no Until", path.text());
    rec_.cursor = Cursor{Path::to_block(m->name, BlockId::Until), m->until.conditions.size()};
    return;
  }
  if (path.is_instruction()) {
    (void)instruction_at(program_, path);
    rec_.cursor = Cursor{path.container(), *path.index + 1};
  } else {
    rec_.cursor = Cursor{path, container_body(program_, path).size()};
  }
}

void Session::start(ExecState st, ApplyResult& out) {
  exec_ = std::move(st);
  drive(out);
}

void Session::drive(ApplyResult& out, std::optional<Value> input) {
  while (exec_) {
    auto evs = step(*exec_, program_, ws_, input);
    input.reset();
    for (auto& e : evs) {
      if (e.kind == EventKind::OutputProduced) outputs_.push_back({e.message, e.value});
      out.events.push_back(e);
      events_.push_back(std::move(e));
    }
    switch (exec_->status) {
      case Status::Errored: {
        Error e = *exec_->error;
        exec_.reset();
        throw e;
      }
      case Status::Finished:
        exec_.reset();
        exec_from_recorded_call_ = false;
        return;
      case Status::Paused:
        if (exec_->pause->kind == PauseKind::InputRequest && !inputs_.empty()) {
          input = Value::integer(inputs_.front());
          inputs_.pop_front();
          continue;
        }
        on_pause(out);
        return;
      case Status::Running:
        continue;
    }
  }
}

void Session::on_pause(ApplyResult&) {
  const PauseReason& p = *exec_->pause;
  if (p.kind != PauseKind::MissingElse) return;
  const Path at = Path::parse(p.path);
  IfInstr& iff = alternative_at(program_, at);
  iff.else_state = ElseState::Present;
  rec_.open_cases.push_back({OpenCase::Kind::Missing, at, rec_.cursor, rec_.recording});
  rec_.recording = true;
  rec_.cursor = Cursor{at.branch(Branch::Else), 0};
}

void Session::call(const std::string& name, ApplyResult& out) {
  if (paused() && emitting()) {
    // Inside a missing case the call is recorded into the else branch.
  } else if (paused()) {
    throw Error(ErrorCode::SessionPaused, "execution is paused: " + exec_->pause->text());
  }
  const MacroDef* callee = program_.find(name);
  if (!callee) throw Error(ErrorCode::UnknownMacro, "no macro named '" + name + "'");
  const bool recorded = emitting();
  if (recorded) {
    const std::string host = rec_.cursor->container.macro;
    emit(Instruction{CallInstr{name}}, out);
    if (auto cyc = find_call_cycle(program_, host)) {
      throw Error(ErrorCode::RecursionForbidden, "calling '" + name + "' from '" + host + "' creates a cycle");
    }
  }
  if (program_.find(name)->is_empty()) return;
  if (exec_) {
    // A call demonstrated inside a missing case runs to completion on its own.
    RunResult r = run_macro(program_, ws_, name, exec_->options);
    if (r.state.status == Status::Errored) throw *r.state.error;
    if (r.state.status == Status::Paused) {
      throw Error(ErrorCode::SessionPaused, "'" + name + "' pauses while another execution is paused");
    }
    ws_ = std::move(r.workspace);
    for (auto& e : r.events) {
      if (e.kind == EventKind::OutputProduced) outputs_.push_back({e.message, e.value});
      out.events.push_back(e);
      events_.push_back(std::move(e));
    }
    return;
  }
  exec_from_recorded_call_ = recorded;
  start(start_macro(program_, name), out);
}

void Session::choose(const std::string& rel_text, ApplyResult& out) {
  if (!rec_.pending) throw Error(ErrorCode::NoPendingComparison, "no comparison to choose from");
  auto rel = parse_rel(rel_text);
  if (!rel) throw Error(ErrorCode::InvalidAction, "'" + rel_text + "' is not a relation");
  const PendingComparison pending = *rec_.pending;
  if (std::find(pending.candidates.begin(), pending.candidates.end(), *rel) == pending.candidates.end()) {
    throw Error(ErrorCode::NotACandidate, "'" + rel_text + "' does not hold for the compared values");
  }
  rec_.pending.reset();
  const Comparison cmp{pending.a, *rel, pending.b};
  if (!emitting()) return;
  const Cursor cur = *rec_.cursor;
  if (cur.container.block == BlockId::Until) {
    add_exit_condition(program_.find(cur.container.macro)->until, cmp);
    return;
  }
  IfInstr iff;
  iff.cond = cmp;
  iff.else_state = ElseState::ToDo;
  iff.else_comment = cmp.negated().text();
  emit(Instruction{std::move(iff)}, out);
  const Path at = cur.container.child(cur.position);
  rec_.open_cases.push_back({OpenCase::Kind::Then, at, Cursor{cur.container, cur.position + 1}, true});
  rec_.cursor = Cursor{at.branch(Branch::Then), 0};
}

void Session::end_case(ApplyResult& out) {
  if (rec_.open_cases.empty()) throw Error(ErrorCode::NoOpenCase, "no case is being demonstrated");
  const OpenCase c = rec_.open_cases.back();
  rec_.open_cases.pop_back();
  if (c.kind == OpenCase::Kind::Then) {
    rec_.cursor = c.resume_cursor;
    return;
  }
  IfInstr& iff = alternative_at(program_, c.alternative);
  if (iff.else_body.empty()) {
    iff.else_state = ElseState::None;
    iff.else_comment.clear();
  }
  rec_.recording = c.resume_recording;
  rec_.cursor = c.resume_cursor;
  rec_.pending.reset();
  resume(*exec_);
  drive(out);
}

void Session::dispatch(const Action& a, ApplyResult& out) {
  auto value_kind = [](const std::string& type) {
    if (type.empty() || type == "int") return ValueKind::Int;
    if (type == "char") return ValueKind::Char;
    throw Error(ErrorCode::InvalidAction, "unknown type '" + type + "'");
  };
  auto options = [&] {
    ExecOptions o;
    if (!a.mode.empty()) {
      auto m = parse_mode(a.mode);
      if (!m) throw Error(ErrorCode::InvalidAction, "unknown mode '" + a.mode + "'");
      o.mode = *m;
    }
    if (!a.detail.empty()) {
      auto d = parse_detail(a.detail);
      if (!d) throw Error(ErrorCode::InvalidAction, "unknown detail '" + a.detail + "'");
      o.detail = *d;
    }
    return o;
  };
  auto idle = [&](std::string_view what) {
    if (exec_) throw Error(ErrorCode::SessionPaused, "execution is paused: " + exec_->pause->text());
    if (rec_.recording) throw Error(ErrorCode::InvalidAction, "stop recording before " + std::string(what));
    require_editable();
  };

  switch (a.kind) {
    case ActionKind::DeclareVariable:
    case ActionKind::DeclareConstant:
      require_name_free(a.name);
      ws_.create(VariableSpec{a.name, value_kind(a.type), a.value.value_or(0), a.kind == ActionKind::DeclareConstant});
      return;
    case ActionKind::DeclareArray:
      require_name_free(a.name);
      ws_.create(ArraySpec{a.name, a.cells, a.length.value_or(10)});
      return;
    case ActionKind::DeclareIndex:
      require_name_free(a.name);
      ws_.create(IndexSpec{a.name, a.of, a.value.value_or(0)});
      return;
    case ActionKind::AddLiteral:
      ws_.add_literal(*a.value);
      return;
    case ActionKind::SetValue:
      ws_.write(lvalue(a.target), Value::integer(*a.value));
      return;
    case ActionKind::DefineMacro: {
      require_name_free(a.name);
      if (a.form.empty() || a.form == "simple") {
        program_.macros.push_back(MacroDef::simple(a.name, a.comment));
      } else if (a.form == "loop") {
        program_.macros.push_back(MacroDef::looping(a.name, a.comment));
      } else {
        throw Error(ErrorCode::InvalidAction, "unknown macro form '" + a.form + "'");
      }
      return;
    }
    case ActionKind::DragAssign:
      manipulate(Instruction{Assign{lvalue(a.dst), Expression::of(operand(a.src))}}, out);
      return;
    case ActionKind::ApplyOperator: {
      auto op = parse_arith_op(a.op);
      if (!op) throw Error(ErrorCode::InvalidAction, "'" + a.op + "' is not an operator");
      manipulate(Instruction{Assign{lvalue(a.dst), Expression::binary(operand(a.a), *op, operand(a.b))}}, out);
      return;
    }
    case ActionKind::SweepIncrement:
    case ActionKind::SweepDecrement: {
      const Ref dst = lvalue(a.dst);
      const Entity* e = ws_.find(dst.name);
      if (!e) throw Error(ErrorCode::UnknownName, "unknown name '" + dst.name + "'");
      const auto* s = std::get_if<Scalar>(e);
      const bool index = std::holds_alternative<IndexVariable>(*e);
      if (dst.kind != Ref::Kind::Name || !(index || (s && s->value.kind == ValueKind::Int))) {
        throw Error(ErrorCode::NotSweepable, "sweeps apply to integer variables and indexes only");
      }
      const ArithOp op = a.kind == ActionKind::SweepIncrement ? ArithOp::Add : ArithOp::Sub;
      manipulate(Instruction{Assign{dst, Expression::binary(Operand::of(dst), op, Operand::literal(1))}}, out);
      return;
    }
    case ActionKind::ReadGesture: {
      const Ref dst = lvalue(a.dst);
      ws_.write(dst, Value::integer(*a.input));
      emit(Instruction{ReadInstr{a.message.value_or("Read " + dst.text() + " "), dst}}, out);
      return;
    }
    case ActionKind::WriteGesture: {
      const Ref src = lvalue(a.src);
      const Value v = ws_.read(src);
      const std::string msg = a.message.value_or("Valeur de " + src.text() + " ");
      outputs_.push_back({msg, v});
      emit(Instruction{WriteInstr{msg, src}}, out);
      return;
    }
    case ActionKind::CallMacro:
      call(a.name, out);
      return;
    case ActionKind::Compare: {
      const Operand x = operand(a.a);
      const Operand y = operand(a.b);
      rec_.pending = PendingComparison{x, y, enumerate_true_relations(eval_operand(x, ws_), eval_operand(y, ws_))};
      return;
    }
    case ActionKind::ChooseCondition:
      choose(a.rel, out);
      return;
    case ActionKind::EndCaseMarker:
      end_case(out);
      return;
    case ActionKind::DefineExitCondition: {
      if (!emitting() || !rec_.cursor || rec_.cursor->container.block != BlockId::Until) {
        throw Error(ErrorCode::InvalidAction, "exit conditions are recorded into an Until block");
      }
      const Comparison c = parse_comparison(a.condition);
      (void)operand(c.left.text());
      (void)operand(c.right.text());
      if (!eval_comparison(c, ws_)) {
        throw Error(ErrorCode::ConditionFalse, "'" + c.text() + "' does not hold for the current values");
      }
      add_exit_condition(program_.find(rec_.cursor->container.macro)->until, c);
      return;
    }
    case ActionKind::SelectLine:
      require_editable();
      select(Path::parse(a.path));
      return;
    case ActionKind::DeleteLine: {
      require_editable();
      const Path p = Path::parse(a.path);
      delete_line(program_, p);
      if (rec_.cursor && rec_.cursor->container == p.container() && rec_.cursor->position > *p.index) {
        --rec_.cursor->position;
      } else if (rec_.cursor && rec_.cursor->container.nest.size() > p.nest.size() &&
                 rec_.cursor->container.macro == p.macro && rec_.cursor->container.block == p.block) {
        rec_.cursor = Cursor{p.container(), *p.index};
      }
      return;
    }
    case ActionKind::InvertConditional:
    case ActionKind::AddElse:
    case ActionKind::RemoveElse: {
      require_editable();
      const Path p = Path::parse(a.path);
      if (a.kind == ActionKind::InvertConditional) invert_conditional(program_, p);
      if (a.kind == ActionKind::AddElse) add_else(program_, p);
      if (a.kind == ActionKind::RemoveElse) remove_else(program_, p);
      if (rec_.cursor) {
        try {
          if (rec_.cursor->position > container_body(program_, rec_.cursor->container).size()) {
            rec_.cursor.reset();
          }
        } catch (const Error&) {
          rec_.cursor = Cursor{p.container(), *p.index + 1};
        }
      }
      return;
    }
    case ActionKind::BeginRecord: {
      require_editable();
      if (!a.path.empty()) select(Path::parse(a.path));
      if (!rec_.cursor) throw Error(ErrorCode::InvalidAction, "select a line before recording");
      MacroDef* m = program_.find(rec_.cursor->container.macro);
      if (rec_.cursor->container.block == BlockId::Until) {
        m->until.placeholder = false;
      } else {
        m->block(rec_.cursor->container.block)->placeholder = false;
      }
      rec_.recording = true;
      return;
    }
    case ActionKind::EndRecord:
      require_editable();
      rec_.recording = false;
      rec_.pending.reset();
      return;
    case ActionKind::RunMacro: {
      idle("running a macro");
      inputs_.assign(a.inputs.begin(), a.inputs.end());
      exec_from_recorded_call_ = false;
      start(start_macro(program_, a.name, options()), out);
      return;
    }
    case ActionKind::ExecSelection:
      idle("executing a selection");
      inputs_.clear();
      exec_from_recorded_call_ = false;
      start(start_selection(program_, ws_, Path::parse(a.path), options()), out);
      return;
    case ActionKind::Resume:
      if (!paused()) throw Error(ErrorCode::NotPaused, "execution is not paused");
      if (!rec_.open_cases.empty()) {
        throw Error(ErrorCode::CaseOpen, "close the missing case with EndCaseMarker");
      }
      resume(*exec_);
      drive(out);
      return;
    case ActionKind::ProvideInput:
      if (!paused() || exec_->pause->kind != PauseKind::InputRequest) {
        throw Error(ErrorCode::NotPaused, "no Read is waiting for input");
      }
      drive(out, Value::integer(*a.value));
      return;
    case ActionKind::Undo:
      return;
  }
}

}  // namespace agt

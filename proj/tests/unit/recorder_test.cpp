#include <gtest/gtest.h>

#include "agt/error.hpp"
#include "agt/parser.hpp"
#include "agt/printer.hpp"
#include "agt/recorder.hpp"
#include "oracles.hpp"

using namespace agt;

namespace {

ErrorCode code_of(Session& s, const Action& a) {
  try {
    (void)s.apply(a);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised by " << to_string(a.kind);
  return ErrorCode::InvalidAction;
}

Session with(std::initializer_list<Action> actions) {
  Session s;
  for (const auto& a : actions) (void)s.apply(a);
  return s;
}

const std::vector<Instruction>& do_body(const Session& s, const std::string& macro) {
  return s.program().find(macro)->do_block.body;
}

std::string body_text(const Session& s, const std::string& macro) {
  std::string out;
  for (const auto& i : do_body(s, macro)) out += instruction_text(i) + "\n";
  return out;
}

}  // namespace

TEST(Comparator, PresentationOrder) {
  using R = std::array<Rel, 3>;
  EXPECT_EQ(enumerate_true_relations(1, 2), (R{Rel::Lt, Rel::Ne, Rel::Le}));
  EXPECT_EQ(enumerate_true_relations(3, 2), (R{Rel::Gt, Rel::Ne, Rel::Ge}));
  EXPECT_EQ(enumerate_true_relations(2, 2), (R{Rel::Eq, Rel::Le, Rel::Ge}));
}

TEST(Comparator, NegationPairs) {
  EXPECT_EQ(negate(Rel::Lt), Rel::Ge);
  EXPECT_EQ(negate(Rel::Ge), Rel::Lt);
  EXPECT_EQ(negate(Rel::Le), Rel::Gt);
  EXPECT_EQ(negate(Rel::Gt), Rel::Le);
  EXPECT_EQ(negate(Rel::Eq), Rel::Ne);
  EXPECT_EQ(negate(Rel::Ne), Rel::Eq);
}

TEST(ExitConditions, GuardsMoveFirstAndDuplicatesAreRefused) {
  UntilBlock u;
  add_exit_condition(u, parse_comparison("t[j] <= t[k]"));
  add_exit_condition(u, parse_comparison("j < 0"));
  add_exit_condition(u, parse_comparison("t[k] == 3"));
  add_exit_condition(u, parse_comparison("k >= t.length"));
  std::vector<std::string> got;
  for (const auto& c : u.conditions) got.push_back(c.text());
  EXPECT_EQ(got, (std::vector<std::string>{"j < 0", "k >= t.length", "t[j] <= t[k]", "t[k] == 3"}));
  EXPECT_THROW(add_exit_condition(u, parse_comparison("j < 0")), Error);
}

TEST(Session, DeclarationsAndDuplicates) {
  Session s = with({Action::declare_variable("x", 3), Action::declare_array("t", {1, 2}),
                    Action::declare_index("i", "t", 1), Action::declare_constant("N", 4)});
  EXPECT_EQ(s.workspace().summary(), "x=3 t={1,2} i=1 N=4");
  EXPECT_EQ(code_of(s, Action::declare_variable("x")), ErrorCode::DuplicateName);
  EXPECT_EQ(code_of(s, Action::define_macro("x")), ErrorCode::DuplicateName);
  EXPECT_EQ(code_of(s, Action::declare_index("k", "x")), ErrorCode::UnknownArray);
  EXPECT_EQ(code_of(s, Action::declare_variable("if")), ErrorCode::InvalidAction);
}

TEST(Session, ManipulationOutsideRecordingEmitsNothing) {
  Session s = with({Action::declare_variable("x", 3), Action::declare_variable("y"), Action::define_macro("M")});
  const ApplyResult r = s.apply(Action::drag_assign("x", "y"));
  EXPECT_TRUE(r.emitted.empty());
  EXPECT_EQ(oracle::value_of(s.workspace(), "y"), 3);
  EXPECT_TRUE(do_body(s, "M").empty());
}

TEST(Session, RecordingEmitsWhatWasDone) {
  Session s = with({Action::declare_variable("x", 3), Action::declare_variable("y"), Action::add_literal(10),
                    Action::define_macro("M"), Action::begin_record("M/Do")});
  EXPECT_EQ(s.apply(Action::drag_assign("x", "y")).emitted.size(), 1u);
  (void)s.apply(Action::apply_operator("*", "y", "10", "x"));
  (void)s.apply(Action::sweep_decrement("y"));
  (void)s.apply(Action::write_gesture("x", "x vaut "));
  (void)s.apply(Action::read_gesture("y", 7, "y ? "));
  (void)s.apply(Action::end_record());
  EXPECT_EQ(body_text(s, "M"), "y = x ;\nx = y * 10 ;\ny = y - 1 ;\nWrite \"x vaut \" x ;\nRead \"y ? \" y ;\n");
  EXPECT_EQ(oracle::value_of(s.workspace(), "x"), 30);
  EXPECT_EQ(oracle::value_of(s.workspace(), "y"), 7);
  ASSERT_EQ(s.outputs().size(), 1u);
  EXPECT_EQ(s.outputs()[0].value.payload, 30);
}

TEST(Session, LiteralsMustComeFromThePalette) {
  Session s = with({Action::declare_variable("x"), Action::define_macro("M"), Action::begin_record("M/Do")});
  EXPECT_EQ(code_of(s, Action::drag_assign("5", "x")), ErrorCode::UnknownLiteral);
  (void)s.apply(Action::add_literal(5));
  (void)s.apply(Action::drag_assign("5", "x"));
  EXPECT_EQ(oracle::value_of(s.workspace(), "x"), 5);
}

TEST(Session, FailedActionsChangeNothing) {
  Session s = with({Action::declare_variable("x", 4), Action::declare_variable("z"), Action::declare_constant("K", 1),
                    Action::declare_array("t", {1, 2}), Action::declare_index("i", "t", 5), Action::define_macro("M"),
                    Action::begin_record("M/Do")});
  const Session before = s;
  EXPECT_EQ(code_of(s, Action::apply_operator("/", "x", "z", "x")), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of(s, Action::apply_operator("%", "x", "z", "x")), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of(s, Action::drag_assign("t[i]", "x")), ErrorCode::IndexOutOfBounds);
  EXPECT_EQ(code_of(s, Action::drag_assign("x", "K")), ErrorCode::ConstantWrite);
  EXPECT_EQ(code_of(s, Action::drag_assign("x", "t.length")), ErrorCode::ConstantWrite);
  EXPECT_EQ(code_of(s, Action::sweep_increment("t")), ErrorCode::NotSweepable);
  EXPECT_EQ(code_of(s, Action::choose_condition("<")), ErrorCode::NoPendingComparison);
  EXPECT_EQ(code_of(s, Action::end_case()), ErrorCode::NoOpenCase);
  EXPECT_EQ(s.program(), before.program());
  EXPECT_EQ(s.workspace(), before.workspace());
  EXPECT_EQ(s.recorder(), before.recorder());
  EXPECT_EQ(s.log().size(), before.log().size());
}

TEST(Session, UndoRestoresThePreviousState) {
  Session s = with({Action::declare_variable("x", 1), Action::define_macro("M"), Action::begin_record("M/Do")});
  const Session before = s;
  (void)s.apply(Action::sweep_increment("x"));
  (void)s.apply(Action::sweep_increment("x"));
  (void)s.apply(Action::undo());
  (void)s.apply(Action::undo());
  EXPECT_EQ(s.program(), before.program());
  EXPECT_EQ(s.workspace(), before.workspace());
  Session fresh;
  EXPECT_EQ(code_of(fresh, Action::undo()), ErrorCode::NothingToUndo);
}

TEST(Session, ComparatorBuildsAnAlternative) {
  Session s = with({Action::declare_variable("v", -3), Action::define_macro("A"), Action::begin_record("A/Do"),
                    Action::compare("v", "0")});
  ASSERT_TRUE(s.recorder().pending);
  EXPECT_EQ(code_of(s, Action::choose_condition(">")), ErrorCode::NotACandidate);
  (void)s.apply(Action::choose_condition("<"));
  (void)s.apply(Action::sweep_increment("v"));
  (void)s.apply(Action::end_case());
  (void)s.apply(Action::sweep_increment("v"));
  (void)s.apply(Action::end_record());
  const auto& body = do_body(s, "A");
  ASSERT_EQ(body.size(), 2u);
  const auto& iff = std::get<IfInstr>(body[0].node);
  EXPECT_EQ(iff.cond.text(), "v < 0");
  EXPECT_EQ(iff.else_state, ElseState::ToDo);
  EXPECT_EQ(iff.else_comment, "v >= 0");
  ASSERT_EQ(iff.then_body.size(), 1u);
  EXPECT_EQ(instruction_text(body[1]), "v = v + 1 ;");
}

TEST(Session, MissingCaseIsRecordedDuringThePause) {
  const Session s = oracle::replay(oracle::corpus_dir() / "alternative.actions");
  EXPECT_FALSE(s.paused());
  EXPECT_FALSE(s.recorder().recording);
  const auto& iff = std::get<IfInstr>(do_body(s, "Ajuste")[0].node);
  EXPECT_EQ(iff.else_state, ElseState::Present);
  ASSERT_EQ(iff.else_body.size(), 1u);
  EXPECT_EQ(instruction_text(iff.else_body[0]), "v = v - 1 ;");
}

TEST(Session, PausedSessionRefusesOtherWork) {
  std::vector<Action> actions;
  for (auto& l : parse_script(oracle::read_file(oracle::corpus_dir() / "alternative.actions"))) {
    actions.push_back(l.action);
  }
  Session s = oracle::replay_actions(actions, 10);
  ASSERT_TRUE(s.paused());
  EXPECT_TRUE(s.emitting());
  EXPECT_EQ(code_of(s, Action::run_macro("Ajuste")), ErrorCode::SessionPaused);
  EXPECT_EQ(code_of(s, Action::resume()), ErrorCode::CaseOpen);
  EXPECT_EQ(code_of(s, Action::provide_input(3)), ErrorCode::NotPaused);
}

TEST(Session, UntilRecordsExitConditions) {
  Session s = with({Action::declare_variable("x", 5), Action::define_macro("L", "loop"), Action::begin_record("L/Until"),
                    Action::compare("x", "0")});
  (void)s.apply(Action::choose_condition(">"));
  EXPECT_EQ(code_of(s, Action::define_exit_condition("x < 0")), ErrorCode::ConditionFalse);
  (void)s.apply(Action::define_exit_condition("x != 0"));
  EXPECT_EQ(code_of(s, Action::sweep_increment("x")), ErrorCode::NotAnInstructionBlock);
  const auto& until = s.program().find("L")->until.conditions;
  ASSERT_EQ(until.size(), 2u);
  EXPECT_EQ(until[0].text(), "x > 0");
  EXPECT_EQ(until[1].text(), "x != 0");
}

TEST(Session, CallsAreRecordedAndRun) {
  Session s = with({Action::declare_variable("x"), Action::define_macro("Inc"), Action::begin_record("Inc/Do"),
                    Action::sweep_increment("x"), Action::end_record(), Action::define_macro("Main"),
                    Action::begin_record("Main/Do")});
  (void)s.apply(Action::call_macro("Inc"));
  (void)s.apply(Action::call_macro("Inc"));
  EXPECT_EQ(oracle::value_of(s.workspace(), "x"), 3);
  EXPECT_EQ(body_text(s, "Main"), "Inc ;\nInc ;\n");
  (void)s.apply(Action::end_record());
  (void)s.apply(Action::begin_record("Inc/Do"));
  EXPECT_EQ(code_of(s, Action::call_macro("Main")), ErrorCode::RecursionForbidden);
  EXPECT_EQ(code_of(s, Action::call_macro("Nope")), ErrorCode::UnknownMacro);
}

TEST(Session, EmptyMacroCallPausesTheRun) {
  Session s = with({Action::declare_variable("x"), Action::define_macro("Stub"), Action::define_macro("Main"),
                    Action::begin_record("Main/Do"), Action::call_macro("Stub"), Action::sweep_increment("x"),
                    Action::end_record()});
  (void)s.apply(Action::run_macro("Main"));
  ASSERT_TRUE(s.paused());
  EXPECT_EQ(s.execution()->pause->kind, PauseKind::EmptyMacro);
  (void)s.apply(Action::resume());
  EXPECT_FALSE(s.paused());
  EXPECT_EQ(oracle::value_of(s.workspace(), "x"), 2);
}

TEST(Session, RunConsumesQueuedInputs) {
  const Session s = oracle::replay(oracle::corpus_dir() / "pgcd.actions");
  Session run = s;
  (void)run.apply(Action::run_macro("PGCD", {12, 18}));
  EXPECT_FALSE(run.paused());
  ASSERT_FALSE(run.outputs().empty());
  EXPECT_EQ(run.outputs().back().value.payload, 6);

  Session ask = s;
  (void)ask.apply(Action::run_macro("PGCD"));
  ASSERT_TRUE(ask.paused());
  EXPECT_EQ(ask.execution()->pause->kind, PauseKind::InputRequest);
  (void)ask.apply(Action::provide_input(21));
  (void)ask.apply(Action::provide_input(14));
  EXPECT_FALSE(ask.paused());
  EXPECT_EQ(ask.outputs().back().value.payload, 7);
}

TEST(Edits, DeleteInvertAndElse) {
  Program p = parse_program(
      "Define A\n    Do\n        if (x > 0) {\n        } else {\n            x = 0 ;\n        }\n        y = 1 ;\n    End\n");
  EXPECT_THROW(delete_line(p, Path::parse("A/Do/5")), Error);
  invert_conditional(p, Path::parse("A/Do/0"));
  const auto& iff = std::get<IfInstr>(p.macros[0].do_block.body[0].node);
  EXPECT_EQ(iff.cond.text(), "x <= 0");
  EXPECT_EQ(iff.then_body.size(), 1u);
  EXPECT_EQ(iff.else_state, ElseState::None);
  EXPECT_THROW(invert_conditional(p, Path::parse("A/Do/0")), Error);
  add_else(p, Path::parse("A/Do/0"));
  EXPECT_THROW(add_else(p, Path::parse("A/Do/0")), Error);
  remove_else(p, Path::parse("A/Do/0"));
  EXPECT_THROW(remove_else(p, Path::parse("A/Do/0")), Error);
  delete_line(p, Path::parse("A/Do/1"));
  EXPECT_EQ(p.macros[0].do_block.body.size(), 1u);
  EXPECT_THROW(invert_conditional(p, Path::parse("A/Do/0/then/0")), Error);
}

TEST(Edits, RemoveElseRefusesInstructions) {
  Program p = parse_program(
      "Define A\n    Do\n        if (x > 0) {\n            x = 1 ;\n        } else {\n            x = 0 ;\n        }\n    End\n");
  try {
    remove_else(p, Path::parse("A/Do/0"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RemoveNonEmptyElse);
  }
}

TEST(Session, LogReplaysToTheSameState) {
  const Session s = oracle::replay(oracle::corpus_dir() / "tri_selection.actions");
  const Session again = oracle::replay_actions(s.log());
  EXPECT_EQ(again.program(), s.program());
  EXPECT_EQ(again.workspace(), s.workspace());
}

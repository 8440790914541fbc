#include <gtest/gtest.h>

#include "agt/error.hpp"
#include "agt/parser.hpp"
#include "agt/printer.hpp"
#include "oracles.hpp"

using namespace agt;

namespace {

const char* kSource = R"(int x = 3 ;
const int N = 5 ;
char c = 65 ;
int t[3] = {1,2,3} ;
int r[4] ;
index i of t = 2 ;

// Adds N to x
Define Add
    Do
        x = x + N ;
        t[i] = t[0] * 2 ;
        Read "Valeur " x ;
        Write "x " x ;
    End

Define Count
    From
        i = 0 ;
    Until
        i >= t.length
        t[i] == x
    Loop
        i = i + 1 ;
        if (x < 0) {
            x = 0 ;
        } else {
            // x >= 0
            // TO DO
        }
    Terminate
        Add ;
    End
)";

}  // namespace

TEST(Parser, ParsesDeclarationsAndMacros) {
  const Source s = parse_source(kSource);
  ASSERT_EQ(s.declarations.size(), 6u);
  ASSERT_EQ(s.program.macros.size(), 2u);
  const MacroDef& add = s.program.macros[0];
  EXPECT_EQ(add.kind, MacroKind::Simple);
  EXPECT_EQ(add.comment, std::vector<std::string>{"Adds N to x"});
  EXPECT_EQ(add.do_block.body.size(), 4u);
  const MacroDef& count = s.program.macros[1];
  EXPECT_EQ(count.kind, MacroKind::Loop);
  ASSERT_EQ(count.until.conditions.size(), 2u);
  EXPECT_EQ(count.until.conditions[1].text(), "t[i] == x");
  const auto& alt = std::get<IfInstr>(count.loop.body[1].node);
  EXPECT_EQ(alt.else_state, ElseState::ToDo);
  EXPECT_EQ(alt.cond.text(), "x < 0");
  EXPECT_EQ(std::get<CallInstr>(count.terminate.body[0].node).name, "Add");
}

TEST(Parser, PrintIsAFixedPoint) {
  const Source s = parse_source(kSource);
  const std::string once = print_source(s);
  EXPECT_EQ(once, kSource);
  EXPECT_EQ(print_source(parse_source(once)), once);
}

TEST(Parser, CorpusProgramsRoundTrip) {
  for (const auto& entry : std::filesystem::directory_iterator(oracle::corpus_dir())) {
    if (entry.path().extension() != ".actions") continue;
    const Session s = oracle::replay(entry.path());
    const std::string text = print_program(s.program());
    EXPECT_EQ(parse_program(text), s.program()) << entry.path();
  }
}

TEST(Parser, PlaceholderBlocksSurvive) {
  MacroDef m = MacroDef::looping("L");
  Program p{{m}};
  const std::string text = print_program(p);
  EXPECT_NE(text.find("// ..."), std::string::npos);
  EXPECT_EQ(parse_program(text), p);
}

TEST(Parser, DiagnosticsCarryLineAndColumn) {
  const ParseResult r = parse("Define A\n    Do\n        x = ;\n    End\n");
  ASSERT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].line, 3u);
  EXPECT_NE(r.diagnostics[0].message.find("expected"), std::string::npos);
  try {
    (void)parse_program("Define A\n    Do\n        x = ;\n    End\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  }
}

TEST(Parser, RejectsMalformedPrograms) {
  for (const char* bad : {"Define\n", "Define A\n    Do\n        x = 1\n    End\n", "Define A\n    Do\n",
                          "Define A\n    Until\n    End\n", "Define A\n    Do\n        x = 1 + 2 + 3 ;\n    End\n",
                          "Define Do\n    Do\n    End\n"}) {
    EXPECT_FALSE(parse(bad).ok()) << bad;
  }
}

TEST(Parser, SingleItems) {
  EXPECT_EQ(parse_ref("t[i]"), Ref::indexed("t", "i"));
  EXPECT_EQ(parse_ref("t[3]"), Ref::cell("t", 3));
  EXPECT_EQ(parse_ref("t.length"), Ref::length("t"));
  EXPECT_EQ(parse_operand("-4"), Operand::literal(-4));
  const Comparison c = parse_comparison("t[j] <= t[k]");
  EXPECT_EQ(c.rel, Rel::Le);
  EXPECT_FALSE(c.is_guard());
  EXPECT_TRUE(parse_comparison("j < 0").is_guard());
  EXPECT_TRUE(parse_comparison("t[0] < t.length").is_guard());
}

TEST(Printer, InstructionText) {
  const Program p = parse_program(
      "Define A\n    Do\n        if (v <= 0) {\n            v = v + 1 ;\n        }\n        Write \"a \\\"b\\\"\" v ;\n    End\n");
  const auto& body = p.macros[0].do_block.body;
  EXPECT_EQ(instruction_text(body[0]), "if (v <= 0)");
  EXPECT_EQ(instruction_text(body[1]), "Write \"a \\\"b\\\"\" v ;");
}

TEST(Printer, SourceMapCoversEveryInstruction) {
  const Source s = parse_source(kSource);
  const PrintedProgram printed = print_program_mapped(s.program);
  auto covers = [&](const std::string& path) {
    for (const auto& span : printed.source_map) {
      if (span.path == path) return span.line_begin >= 1 && span.line_end >= span.line_begin;
    }
    return false;
  };
  for (const char* path : {"Add/Do/0", "Add/Do/3", "Count/From/0", "Count/Until/0", "Count/Until/1", "Count/Loop/0",
                           "Count/Loop/1", "Count/Loop/1/then/0", "Count/Terminate/0"}) {
    EXPECT_TRUE(covers(path)) << path;
  }
}

TEST(Paths, ParseAndPrint) {
  const Path p = Path::parse("Alt/Do/0/else/1");
  EXPECT_EQ(p.macro, "Alt");
  EXPECT_EQ(p.block, BlockId::Do);
  ASSERT_EQ(p.nest.size(), 1u);
  EXPECT_EQ(p.nest[0].branch, Branch::Else);
  EXPECT_EQ(p.index, 1u);
  EXPECT_EQ(p.text(), "Alt/Do/0/else/1");
  EXPECT_EQ(Path::parse("M/Loop").text(), "M/Loop");
  for (const char* bad : {"", "M", "M/Nope", "M/Do/x", "M/Do/0/maybe/1"}) {
    EXPECT_THROW((void)Path::parse(bad), Error) << bad;
  }
}

TEST(Paths, CallCycles) {
  const Program ok = parse_program("Define A\n    Do\n        B ;\n    End\n\nDefine B\n    Do\n    End\n");
  EXPECT_FALSE(find_call_cycle(ok));
  const Program bad =
      parse_program("Define A\n    Do\n        B ;\n    End\n\nDefine B\n    Do\n        A ;\n    End\n");
  EXPECT_TRUE(find_call_cycle(bad));
  EXPECT_EQ(callees(bad.macros[0]), std::vector<std::string>{"B"});
}

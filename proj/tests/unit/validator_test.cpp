#include <gtest/gtest.h>

#include "agt/parser.hpp"
#include "agt/validator.hpp"

using namespace agt;

namespace {

Workspace data() {
  Workspace ws;
  ws.create(VariableSpec{"x", ValueKind::Int, 0, false});
  ws.create(VariableSpec{"N", ValueKind::Int, 3, true});
  ws.create(ArraySpec{"t", std::vector<std::int64_t>{1, 2}, 0});
  ws.create(ArraySpec{"u", std::vector<std::int64_t>{1, 2}, 0});
  ws.create(IndexSpec{"i", "t", 0});
  return ws;
}

std::vector<DiagnosticKind> kinds(const std::string& body) {
  const Program p = parse_program("Define M\n    Do\n" + body + "    End\n");
  std::vector<DiagnosticKind> out;
  for (const auto& d : validate(p, data())) {
    if (d.fatal) out.push_back(d.kind);
  }
  return out;
}

}  // namespace

TEST(Validator, AcceptsWellFormedCode) {
  EXPECT_TRUE(kinds("        x = t[i] + N ;\n        t[i] = t.length ;\n").empty());
}

TEST(Validator, ReportsEachProblem) {
  EXPECT_EQ(kinds("        y = 1 ;\n"), std::vector{DiagnosticKind::UnknownName});
  EXPECT_EQ(kinds("        x = u[i] ;\n"), std::vector{DiagnosticKind::IndexArrayMismatch});
  EXPECT_EQ(kinds("        x = t[x] ;\n"), std::vector{DiagnosticKind::NotAnIndex});
  EXPECT_EQ(kinds("        x = x[0] ;\n"), std::vector{DiagnosticKind::NotAnArray});
  EXPECT_EQ(kinds("        x = t ;\n"), std::vector{DiagnosticKind::NotAScalar});
  EXPECT_EQ(kinds("        t.length = 1 ;\n"), std::vector{DiagnosticKind::LengthAssignment});
  EXPECT_EQ(kinds("        N = 1 ;\n"), std::vector{DiagnosticKind::ConstantAssignment});
  EXPECT_EQ(kinds("        M ;\n"), std::vector{DiagnosticKind::RecursionForbidden});
}

TEST(Validator, UndefinedCalleeIsOnlyAWarning) {
  const Program p = parse_program("Define M\n    Do\n        Later ;\n    End\n");
  const auto d = validate(p, data());
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::UndefinedMacro);
  EXPECT_FALSE(d[0].fatal);
}

TEST(Validator, MacroNamesMustBeUnique) {
  const Program dup = parse_program("Define A\n    Do\n    End\n\nDefine A\n    Do\n    End\n");
  ASSERT_FALSE(validate(dup, data()).empty());
  EXPECT_EQ(validate(dup, data())[0].kind, DiagnosticKind::DuplicateMacro);
  const Program clash = parse_program("Define x\n    Do\n    End\n");
  ASSERT_FALSE(validate(clash, data()).empty());
  EXPECT_EQ(validate(clash, data())[0].kind, DiagnosticKind::NameClash);
}

TEST(Validator, DiagnosticsNameThePath) {
  const Program p = parse_program("Define M\n    Do\n        x = 1 ;\n        y = 2 ;\n    End\n");
  const auto d = validate(p, data());
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].path, "M/Do/1");
  EXPECT_EQ(to_string(d[0].kind), "UnknownName");
}

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "agt/error.hpp"
#include "agt/parser.hpp"
#include "agt/transpiler.hpp"
#include "oracles.hpp"

using namespace agt;
namespace fs = std::filesystem;

namespace {

const std::vector<std::pair<std::string, std::string>> kPrograms = {
    {"add", "Add"},
    {"parite", "Parite"},
    {"pgcd", "PGCD"},
    {"factoriel", "Factoriel"},
    {"position_min", "PositionMin"},
    {"rech_min", "RechMin"},
    {"recherche_seq", "RechercheSeq"},
    {"decaler_a_droite", "DecalerADroite"},
    {"inserer_elt_ordre_i", "InsererEltOrdreI"},
    {"insere_elt", "InsereElt"},
    {"tri_insertion", "TriInsertion"},
    {"tri_selection", "TriSelection"},
    {"alternative", "Ajuste"},
};

std::string extension(Dialect d) {
  switch (d) {
    case Dialect::Agt: return ".agt";
    case Dialect::Python: return ".py";
    case Dialect::C: return ".c";
    case Dialect::Cpp: return ".cpp";
    case Dialect::Java: return ".java";
  }
  return "";
}

EmissionUnit emit(const std::string& script, const std::string& entry, Dialect d, Flavor f) {
  static std::map<std::string, Session> cache;
  auto it = cache.find(script);
  if (it == cache.end()) it = cache.emplace(script, oracle::replay(oracle::corpus_dir() / (script + ".actions"))).first;
  return transpile(it->second.program(), d, f, {entry, &it->second.workspace()});
}

void collect_paths(const std::vector<Instruction>& body, const Path& container, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    const Path p = container.child(i);
    out.push_back(p.text());
    if (const auto* f = std::get_if<IfInstr>(&body[i].node)) {
      collect_paths(f->then_body, p.branch(Branch::Then), out);
      collect_paths(f->else_body, p.branch(Branch::Else), out);
    }
  }
}

std::vector<std::string> instruction_paths(const Program& p) {
  std::vector<std::string> out;
  for (const auto& m : p.macros) {
    for (BlockId b : {BlockId::Do, BlockId::From, BlockId::Loop, BlockId::Terminate}) {
      if (const Block* blk = m.block(b)) collect_paths(blk->body, Path::to_block(m.name, b), out);
    }
  }
  return out;
}

bool have(const char* tool) {
  return std::system((std::string("command -v ") + tool + " >/dev/null 2>&1").c_str()) == 0;
}

fs::path scratch(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "agt_transpiler_test";
  fs::create_directories(dir);
  const fs::path file = dir / name;
  std::ofstream(file) << text;
  return file;
}

std::string run_capture(const std::string& command) {
  std::string out;
  if (FILE* p = popen(command.c_str(), "r")) {
    char buf[512];
    while (std::fgets(buf, sizeof buf, p)) out += buf;
    pclose(p);
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

}  // namespace

TEST(NegateUntil, ConjoinsNegationsInOrder) {
  const std::vector<Comparison> until = {parse_comparison("j < 0"), parse_comparison("t[j] <= t[k]")};
  const Continuation py = negate_until(until);
  EXPECT_EQ(py.text, "j >= 0 and t[j] > t[k]");
  ASSERT_EQ(py.spans.size(), 2u);
  EXPECT_EQ(py.text.substr(py.spans[1].begin, py.spans[1].end - py.spans[1].begin), "t[j] > t[k]");
  EXPECT_EQ(negate_until(until, Dialect::C).text, "j >= 0 && t[j] > t[k]");
  EXPECT_EQ(negate_until({parse_comparison("i >= t.length")}, Dialect::Python).text, "i < len(t)");
  EXPECT_EQ(negate_until({parse_comparison("i >= t.length")}, Dialect::Java).text, "i < t.length");
  EXPECT_EQ(negate_until({}, Dialect::Python).text, "True");
  EXPECT_EQ(negate_until({}, Dialect::C).text, "1");
  EXPECT_EQ(negate_until({}, Dialect::Java).text, "true");
}

TEST(Transpiler, DialectAndFlavorNames) {
  EXPECT_EQ(parse_dialect("python"), Dialect::Python);
  EXPECT_EQ(parse_dialect("cpp"), Dialect::Cpp);
  EXPECT_EQ(parse_flavor("export"), Flavor::Export);
  try {
    (void)parse_dialect("cobol");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownDialect);
  }
  try {
    (void)parse_flavor("minified");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFlavor);
  }
}

TEST(Transpiler, ReferenceListingsMatch) {
  const auto golden = [](const char* name) {
    return oracle::strip_trailing_whitespace(oracle::read_file(oracle::corpus_dir() / "golden" / name));
  };
  EXPECT_EQ(oracle::strip_trailing_whitespace(emit("insere_elt", "InsereElt", Dialect::Python, Flavor::Instrumented).text),
            golden("insere_elt_instrumented.py"));
  EXPECT_EQ(oracle::strip_trailing_whitespace(emit("tri_insertion", "TriInsertion", Dialect::Python, Flavor::Export).text),
            golden("tri_insertion_export.py"));
}

TEST(Transpiler, AddGoldensInEveryDialect) {
  for (Dialect d : {Dialect::Agt, Dialect::Python, Dialect::C, Dialect::Cpp, Dialect::Java}) {
    for (Flavor f : {Flavor::Instrumented, Flavor::Export}) {
      const std::string name = "add_" + std::string(to_string(f)) + extension(d);
      EXPECT_EQ(emit("add", "Add", d, f).text, oracle::read_file(oracle::corpus_dir() / "golden" / name)) << name;
    }
  }
}

TEST(Transpiler, ConditionMapLocatesNegatedConditions) {
  for (Dialect d : {Dialect::Agt, Dialect::Python, Dialect::C, Dialect::Cpp, Dialect::Java}) {
    const EmissionUnit u = emit("insere_elt", "InsereElt", d, Flavor::Instrumented);
    const auto lines = lines_of(u.text);
    ASSERT_EQ(u.condition_map.size(), 2u) << to_string(d);
    const std::vector<Comparison> until = {parse_comparison("j < 0"), parse_comparison("t[j] <= t[k]")};
    for (std::size_t i = 0; i < 2; ++i) {
      const ConditionSpan& c = u.condition_map[i];
      EXPECT_EQ(c.path, "InsereElt/Until/" + std::to_string(i));
      ASSERT_LE(c.line, lines.size());
      ASSERT_LE(c.column_end, lines[c.line - 1].size());
      const std::string span = lines[c.line - 1].substr(c.column_begin, c.column_end - c.column_begin);
      const Comparison expected = d == Dialect::Agt ? until[i] : until[i].negated();
      EXPECT_EQ(parse_comparison(span), expected) << to_string(d) << ": " << span;
    }
  }
}

TEST(Transpiler, SourceMapCoversEveryInstruction) {
  for (const auto& [script, entry] : kPrograms) {
    const Session s = oracle::replay(oracle::corpus_dir() / (script + ".actions"));
    const auto paths = instruction_paths(s.program());
    for (Dialect d : {Dialect::Agt, Dialect::Python, Dialect::C, Dialect::Cpp, Dialect::Java}) {
      const EmissionUnit u = transpile(s.program(), d, Flavor::Instrumented, {entry, &s.workspace()});
      const std::size_t n = lines_of(u.text).size();
      for (const auto& p : paths) {
        const auto it = std::find_if(u.source_map.begin(), u.source_map.end(),
                                     [&](const LineSpan& l) { return l.path == p; });
        ASSERT_NE(it, u.source_map.end()) << script << " " << to_string(d) << " " << p;
        EXPECT_GE(it->line_begin, 1u);
        EXPECT_LE(it->line_end, n);
        EXPECT_LE(it->line_begin, it->line_end);
      }
    }
  }
}

TEST(Transpiler, ExportInlinesCallsWithBrackets) {
  const EmissionUnit u = emit("tri_selection", "TriSelection", Dialect::Python, Flavor::Export);
  EXPECT_NE(u.text.find("# -> PlaceMin"), std::string::npos);
  EXPECT_NE(u.text.find("# <- PlaceMin"), std::string::npos);
  EXPECT_EQ(u.text.find("PlaceMin()"), std::string::npos);
  const EmissionUnit inst = emit("tri_selection", "TriSelection", Dialect::Python, Flavor::Instrumented);
  EXPECT_NE(inst.text.find("# Macro PlaceMin"), std::string::npos);
}

TEST(Transpiler, DivisionNoteOnlyWhenNeeded) {
  EXPECT_NE(emit("parite", "Parite", Dialect::Python, Flavor::Export).text.find("# Note:"), std::string::npos);
  EXPECT_EQ(emit("pgcd", "PGCD", Dialect::Python, Flavor::Export).text.find("# Note:"), std::string::npos);
}

TEST(Transpiler, Errors) {
  const Session s = oracle::replay(oracle::corpus_dir() / "add.actions");
  try {
    (void)transpile(s.program(), Dialect::Python, Flavor::Export, {"Nope", nullptr});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvedMacro);
  }
  const Program cyclic =
      parse_program("Define A\n    Do\n        B ;\n    End\n\nDefine B\n    Do\n        A ;\n    End\n");
  EXPECT_THROW((void)inline_macros(cyclic, "A"), Error);
  const Program dangling = parse_program("Define A\n    Do\n        Later ;\n    End\n");
  EXPECT_THROW((void)inline_macros(dangling, "A"), Error);
}

TEST(Transpiler, LoweringKeepsCallsUnexpanded) {
  const Session s = oracle::replay(oracle::corpus_dir() / "tri_insertion.actions");
  const FlatProgram lowered = lower_macro(s.program(), "TriInsertion");
  ASSERT_EQ(lowered.body.size(), 1u);
  const auto& loop = std::get<FlatLoop>(lowered.body[0].node);
  const auto& call = std::get<FlatCall>(loop.loop[0].node);
  EXPECT_EQ(call.name, "InsereElt");
  EXPECT_FALSE(call.expanded);
  const FlatProgram inlined = inline_macros(s.program(), "TriInsertion");
  EXPECT_TRUE(std::get<FlatCall>(std::get<FlatLoop>(inlined.body[0].node).loop[0].node).expanded);
}

TEST(Transpiler, GeneratedCodeCompiles) {
  const bool gcc = have("gcc");
  const bool gxx = have("g++");
  const bool python = have("python3");
  if (!gcc && !gxx && !python) GTEST_SKIP() << "no gcc, g++ or python3";
  for (const auto& [script, entry] : kPrograms) {
    for (Flavor f : {Flavor::Instrumented, Flavor::Export}) {
      const std::string tag = script + "_" + std::string(to_string(f));
      if (gcc) {
        const fs::path c = scratch(tag + ".c", emit(script, entry, Dialect::C, f).text);
        EXPECT_EQ(std::system(("gcc -std=c99 -fsyntax-only -Werror=implicit-function-declaration " + c.string()).c_str()), 0)
            << c;
      }
      if (gxx) {
        const fs::path cpp = scratch(tag + ".cpp", emit(script, entry, Dialect::Cpp, f).text);
        EXPECT_EQ(std::system(("g++ -std=c++17 -fsyntax-only " + cpp.string()).c_str()), 0) << cpp;
      }
      if (python) {
        const fs::path py = scratch(tag + ".py", emit(script, entry, Dialect::Python, f).text);
        EXPECT_EQ(std::system(("python3 -m py_compile " + py.string()).c_str()), 0) << py;
      }
    }
  }
}

TEST(Transpiler, JavaOutputIsStructurallySound) {
  for (const auto& [script, entry] : kPrograms) {
    for (Flavor f : {Flavor::Instrumented, Flavor::Export}) {
      const std::string text = emit(script, entry, Dialect::Java, f).text;
      EXPECT_NE(text.find("public class Program {"), std::string::npos) << script;
      EXPECT_NE(text.find("public static void main(String[] args)"), std::string::npos) << script;
      int depth = 0;
      int parens = 0;
      for (const auto& raw : lines_of(text)) {
        std::string line = raw.substr(0, raw.find("//"));
        for (char c : line) {
          depth += c == '{' ? 1 : c == '}' ? -1 : 0;
          parens += c == '(' ? 1 : c == ')' ? -1 : 0;
        }
        EXPECT_GE(depth, 0) << script << ": " << raw;
        while (!line.empty() && line.back() == ' ') line.pop_back();
        const auto start = line.find_first_not_of(' ');
        if (start == std::string::npos || line.starts_with("import")) continue;
        const char last = line.back();
        EXPECT_TRUE(last == ';' || last == '{' || last == '}') << script << ": " << raw;
      }
      EXPECT_EQ(depth, 0) << script;
      EXPECT_EQ(parens, 0) << script;
    }
  }
}

TEST(Transpiler, GeneratedProgramsComputeTheSameResult) {
  if (!have("python3") || !have("gcc")) GTEST_SKIP() << "needs python3 and gcc";
  const std::string py = scratch("pgcd_run.py", emit("pgcd", "PGCD", Dialect::Python, Flavor::Export).text).string();
  EXPECT_NE(run_capture("printf '45\\n60\\n' | python3 " + py).find("PGCD 15"), std::string::npos);
  const fs::path c = scratch("pgcd_run.c", emit("pgcd", "PGCD", Dialect::C, Flavor::Export).text);
  const fs::path bin = c.parent_path() / "pgcd_run";
  ASSERT_EQ(std::system(("gcc -std=c99 -o " + bin.string() + " " + c.string()).c_str()), 0);
  EXPECT_NE(run_capture("printf '45\\n60\\n' | " + bin.string()).find("PGCD 15"), std::string::npos);
}

TEST(Transpiler, MapJsonShape) {
  const Json j = emit("insere_elt", "InsereElt", Dialect::Python, Flavor::Instrumented).map_json();
  EXPECT_EQ(j["dialect"], "python");
  EXPECT_EQ(j["flavor"], "instrumented");
  EXPECT_TRUE(j["source_map"].is_array());
  ASSERT_EQ(j["condition_map"].size(), 2u);
  EXPECT_EQ(j["condition_map"][0]["path"], "InsereElt/Until/0");
  EXPECT_TRUE(j["condition_map"][0].contains("column_begin"));
}

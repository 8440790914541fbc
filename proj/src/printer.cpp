#include "agt/printer.hpp"

#include "agt/overloaded.hpp"

namespace agt {

namespace {

constexpr std::string_view kIndent = "    ";

std::string comment_line(const std::string& text) { return text.empty() ? "//" : "// " + text; }

class Emitter {
 public:
  void line(std::size_t depth, std::string_view text) {
    for (std::size_t i = 0; i < depth; ++i) out_ += kIndent;
    out_ += text;
    out_ += '\n';
    ++lines_;
  }

  [[nodiscard]] std::size_t next_line() const { return lines_ + 1; }
  void map(const Path& path, std::size_t begin) { spans_.push_back({path.text(), begin, lines_}); }

  void body(const std::vector<Instruction>& body, const Path& container, std::size_t depth) {
    for (std::size_t i = 0; i < body.size(); ++i) instruction(body[i], container.child(i), depth);
  }

  void instruction(const Instruction& ins, const Path& path, std::size_t depth) {
    const std::size_t begin = next_line();
    if (const auto* iff = std::get_if<IfInstr>(&ins.node)) {
      line(depth, "if (" + iff->cond.text() + ") {");
      if (!iff->then_comment.empty()) line(depth + 1, comment_line(iff->then_comment));
      body(iff->then_body, path.branch(Branch::Then), depth + 1);
      if (iff->else_state != ElseState::None) {
        line(depth, "} else {");
        if (!iff->else_comment.empty()) line(depth + 1, comment_line(iff->else_comment));
        if (iff->else_state == ElseState::ToDo) line(depth + 1, "// TO DO");
        body(iff->else_body, path.branch(Branch::Else), depth + 1);
      }
      line(depth, "}");
    } else {
      line(depth, instruction_text(ins));
    }
    map(path, begin);
  }

  void block(const MacroDef& m, BlockId id) {
    line(1, keyword(id));
    const Block& b = *m.block(id);
    if (b.placeholder && b.body.empty()) line(2, "// ...");
    body(b.body, Path::to_block(m.name, id), 2);
  }

  void macro(const MacroDef& m) {
    for (const auto& c : m.comment) line(0, comment_line(c));
    line(0, "Define " + m.name);
    if (m.kind == MacroKind::Simple) {
      block(m, BlockId::Do);
    } else {
      block(m, BlockId::From);
      line(1, "Until");
      if (m.until.placeholder && m.until.conditions.empty()) line(2, "// ...");
      for (std::size_t i = 0; i < m.until.conditions.size(); ++i) {
        const std::size_t begin = next_line();
        line(2, m.until.conditions[i].text());
        map(Path::to_block(m.name, BlockId::Until).child(i), begin);
      }
      block(m, BlockId::Loop);
      block(m, BlockId::Terminate);
    }
    line(1, "End");
  }

  void blank() {
    out_ += '\n';
    ++lines_;
  }

  std::string out_;
  std::size_t lines_ = 0;
  std::vector<LineSpan> spans_;
};

}  // namespace

std::string quote(std::string_view message) {
  std::string out = "\"";
  for (char c : message) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string instruction_text(const Instruction& instruction) {
  return std::visit(overloaded{
                        [](const Assign& a) { return a.dst.text() + " = " + a.rhs.text() + " ;"; },
                        [](const ReadInstr& r) { return "Read " + quote(r.message) + " " + r.dst.text() + " ;"; },
                        [](const WriteInstr& w) { return "Write " + quote(w.message) + " " + w.src.text() + " ;"; },
                        [](const CallInstr& c) { return c.name + " ;"; },
                        [](const IfInstr& i) { return "if (" + i.cond.text() + ")"; },
                    },
                    instruction.node);
}

std::string print_declaration(const EntitySpec& spec) {
  return std::visit(overloaded{
                        [](const VariableSpec& s) {
                          std::string type = s.kind == ValueKind::Char ? "char" : "int";
                          if (s.constant) return "const " + type + " " + s.name + " = " + std::to_string(s.initial) + " ;";
                          if (s.initial != 0) return type + " " + s.name + " = " + std::to_string(s.initial) + " ;";
                          return type + " " + s.name + " ;";
                        },
                        [](const ArraySpec& s) {
                          std::string len = std::to_string(s.cells ? s.cells->size() : s.length);
                          if (!s.cells) return "int " + s.name + "[" + len + "] ;";
                          std::string cells;
                          for (std::size_t i = 0; i < s.cells->size(); ++i) {
                            if (i) cells += ',';
                            cells += std::to_string((*s.cells)[i]);
                          }
                          return "int " + s.name + "[" + len + "] = {" + cells + "} ;";
                        },
                        [](const IndexSpec& s) {
                          std::string out = "index " + s.name + " of " + s.array;
                          if (s.initial != 0) out += " = " + std::to_string(s.initial);
                          return out + " ;";
                        },
                    },
                    spec);
}

std::string print_macro(const MacroDef& macro) {
  Emitter e;
  e.macro(macro);
  return e.out_;
}

PrintedProgram print_program_mapped(const Program& program) {
  Emitter e;
  for (std::size_t i = 0; i < program.macros.size(); ++i) {
    if (i) e.blank();
    e.macro(program.macros[i]);
  }
  return {std::move(e.out_), std::move(e.spans_)};
}

std::string print_program(const Program& program) { return print_program_mapped(program).text; }

std::string print_source(const Source& source) {
  std::string out;
  for (const auto& d : source.declarations) out += print_declaration(d) + "\n";
  if (!source.declarations.empty() && !source.program.macros.empty()) out += "\n";
  return out + print_program(source.program);
}

}  // namespace agt

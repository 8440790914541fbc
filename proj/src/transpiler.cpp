#include "agt/transpiler.hpp"

#include <algorithm>

#include "agt/error.hpp"
#include "agt/overloaded.hpp"

namespace agt {

std::string_view to_string(Dialect d) {
  switch (d) {
    case Dialect::Agt: return "agt";
    case Dialect::Python: return "python";
    case Dialect::C: return "c";
    case Dialect::Cpp: return "cpp";
    case Dialect::Java: return "java";
  }
  return "agt";
}

std::string_view to_string(Flavor f) { return f == Flavor::Export ? "export" : "instrumented"; }

Dialect parse_dialect(std::string_view s) {
  for (Dialect d : {Dialect::Agt, Dialect::Python, Dialect::C, Dialect::Cpp, Dialect::Java}) {
    if (to_string(d) == s) return d;
  }
  throw Error(ErrorCode::UnknownDialect, "unknown dialect '" + std::string(s) + "'");
}

Flavor parse_flavor(std::string_view s) {
  if (s == "instrumented") return Flavor::Instrumented;
  if (s == "export") return Flavor::Export;
  throw Error(ErrorCode::UnknownFlavor, "unknown flavor '" + std::string(s) + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Dialect vocabulary

std::string operand_text(const Operand& o, Dialect d) {
  if (o.is_literal()) return std::to_string(o.literal_value());
  const Ref& r = o.ref();
  if (r.kind != Ref::Kind::Length) return r.text();
  switch (d) {
    case Dialect::Python: return "len(" + r.name + ")";
    case Dialect::C: return r.name + "_length";
    case Dialect::Cpp: return "(int) " + r.name + ".size()";
    case Dialect::Java:
    case Dialect::Agt: return r.text();
  }
  return r.text();
}

std::string comparison_text(const Comparison& c, Dialect d) {
  return operand_text(c.left, d) + " " + std::string(symbol(c.rel)) + " " + operand_text(c.right, d);
}

std::string expression_text(const Expression& e, Dialect d) {
  std::string s = operand_text(e.first, d);
  if (!e.op) return s;
  std::string op(symbol(*e.op));
  if (d == Dialect::Python && *e.op == ArithOp::Div) op = "//";
  return s + " " + op + " " + operand_text(e.second, d);
}

std::string_view and_word(Dialect d) { return d == Dialect::Python ? " and " : " && "; }

std::string_view true_word(Dialect d) {
  switch (d) {
    case Dialect::Python: return "True";
    case Dialect::C: return "1";
    default: return "true";
  }
}

std::string string_literal(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace

Continuation negate_until(const std::vector<Comparison>& until, Dialect dialect) {
  Continuation c;
  if (until.empty()) {
    c.text = true_word(dialect);
    return c;
  }
  for (const auto& cond : until) {
    if (!c.text.empty()) c.text += and_word(dialect);
    c.conjuncts.push_back(cond.negated());
    const std::size_t begin = c.text.size();
    c.text += comparison_text(c.conjuncts.back(), dialect);
    c.spans.push_back({begin, c.text.size()});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Lowering

namespace {

class Lowerer {
 public:
  Lowerer(const Program& program, bool expand) : program_(program), expand_(expand) {}

  FlatProgram macro(std::string_view name) {
    const MacroDef* m = find(name, "");
    FlatProgram fp{m->name, m->comment, body_of(*m)};
    return fp;
  }

 private:
  const MacroDef* find(std::string_view name, const std::string& at) const {
    const MacroDef* m = program_.find(name);
    if (!m) throw Error(ErrorCode::UnresolvedMacro, "no macro named '" + std::string(name) + "'", at);
    return m;
  }

  std::vector<FlatNode> body_of(const MacroDef& m) {
    if (std::find(stack_.begin(), stack_.end(), m.name) != stack_.end()) {
      throw Error(ErrorCode::RecursionForbidden, "macro '" + m.name + "' calls itself");
    }
    stack_.push_back(m.name);
    std::vector<FlatNode> out;
    if (m.kind == MacroKind::Simple) {
      out = block(m.do_block.body, Path::to_block(m.name, BlockId::Do));
    } else {
      FlatLoop loop;
      loop.macro = m.name;
      loop.from = block(m.from.body, Path::to_block(m.name, BlockId::From));
      loop.until = m.until.conditions;
      loop.loop = block(m.loop.body, Path::to_block(m.name, BlockId::Loop));
      loop.terminate = block(m.terminate.body, Path::to_block(m.name, BlockId::Terminate));
      out.push_back({std::move(loop), {}});
    }
    stack_.pop_back();
    return out;
  }

  std::vector<FlatNode> block(const std::vector<Instruction>& body, const Path& container) {
    std::vector<FlatNode> out;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Path at = container.child(i);
      out.push_back(node(body[i], at));
    }
    return out;
  }

  FlatNode node(const Instruction& ins, const Path& at) {
    const std::string origin = at.text();
    return std::visit(
        overloaded{
            [&](const Assign& a) { return FlatNode{a, origin}; },
            [&](const ReadInstr& r) { return FlatNode{r, origin}; },
            [&](const WriteInstr& w) { return FlatNode{w, origin}; },
            [&](const CallInstr& c) {
              const MacroDef* callee = find(c.name, origin);
              FlatCall fc{callee->name, callee->role(), expand_, {}};
              if (expand_) fc.body = body_of(*callee);
              return FlatNode{std::move(fc), origin};
            },
            [&](const IfInstr& i) {
              FlatIf fi{i.cond, i.then_comment, block(i.then_body, at.branch(Branch::Then)), i.else_state,
                        i.else_comment, {}};
              if (i.else_state != ElseState::None) fi.else_body = block(i.else_body, at.branch(Branch::Else));
              return FlatNode{std::move(fi), origin};
            },
        },
        ins.node);
  }

  const Program& program_;
  bool expand_;
  std::vector<std::string> stack_;
};

}  // namespace

FlatProgram lower_macro(const Program& program, std::string_view name) { return Lowerer(program, false).macro(name); }

FlatProgram inline_macros(const Program& program, std::string_view entry) {
  return Lowerer(program, true).macro(entry);
}

// ---------------------------------------------------------------------------
// Emission

namespace {

bool uses_division(const std::vector<FlatNode>& body);

bool uses_division(const FlatNode& n) {
  return std::visit(overloaded{
                        [](const Assign& a) { return a.rhs.op == ArithOp::Div || a.rhs.op == ArithOp::Mod; },
                        [](const FlatIf& i) { return uses_division(i.then_body) || uses_division(i.else_body); },
                        [](const FlatLoop& l) {
                          return uses_division(l.from) || uses_division(l.loop) || uses_division(l.terminate);
                        },
                        [](const FlatCall& c) { return uses_division(c.body); },
                        [](const auto&) { return false; },
                    },
                    n.node);
}

bool uses_division(const std::vector<FlatNode>& body) {
  return std::any_of(body.begin(), body.end(), [](const FlatNode& n) { return uses_division(n); });
}

class Emitter {
 public:
  Emitter(Dialect d, Flavor f) : d_(d), f_(f) {}

  void line(int indent, const std::string& text) {
    lines_.push_back(text.empty() ? std::string() : std::string(static_cast<std::size_t>(indent) * 4, ' ') + text);
  }
  void blank() { lines_.emplace_back(); }
  void comment(int indent, const std::string& text) {
    const std::string mark = d_ == Dialect::Python ? "#" : "//";
    line(indent, text.empty() ? mark : mark + " " + text);
  }
  void comments(int indent, const std::vector<std::string>& text) {
    for (const auto& t : text) comment(indent, t);
  }

  /// Emits a statement list; returns how many statements it produced.
  std::size_t block(const std::vector<FlatNode>& body, int indent) {
    std::size_t n = 0;
    for (const auto& node : body) n += emit(node, indent);
    return n;
  }

  void body_block(const std::vector<FlatNode>& body, int indent) {
    if (block(body, indent) == 0 && d_ == Dialect::Python) line(indent, "pass");
  }

  void loop(const FlatLoop& l, int indent) {
    const bool instrumented = f_ == Flavor::Instrumented;
    const bool py = d_ == Dialect::Python;
    if (instrumented) comment(indent, "Initialisation");
    block(l.from, indent);
    if (instrumented) {
      comment(indent, "Conditions de sortie :");
      for (const auto& c : l.until) comment(indent, "Sortir si " + comparison_text(c, d_));
      comment(indent, "");
    }
    const Continuation cont = negate_until(l.until, d_);
    const std::string head = std::string(static_cast<std::size_t>(indent) * 4, ' ') + "while (";
    lines_.push_back(head + cont.text + (py ? ") :" : ") {"));
    for (std::size_t i = 0; i < cont.spans.size(); ++i) {
      conditions_.push_back({l.macro + "/Until/" + std::to_string(i), lines_.size(), head.size() + cont.spans[i].begin,
                             head.size() + cont.spans[i].end});
    }
    if (instrumented) comment(py ? indent : indent + 1, "Corps de boucle");
    body_block(l.loop, indent + 1);
    if (!py) line(indent, "}");
    if (instrumented) comment(indent, "Terminaison");
    block(l.terminate, indent);
  }

  std::size_t emit(const FlatNode& n, int indent) {
    const std::size_t first = lines_.size() + 1;
    const std::size_t count = std::visit(
        overloaded{
            [&](const Assign& a) {
              line(indent, a.dst.text() + " = " + expression_text(a.rhs, d_) + end());
              return std::size_t{1};
            },
            [&](const ReadInstr& r) {
              line(indent, read_text(r));
              return std::size_t{1};
            },
            [&](const WriteInstr& w) {
              line(indent, write_text(w));
              return std::size_t{1};
            },
            [&](const FlatIf& i) {
              alternative(i, indent);
              return std::size_t{1};
            },
            [&](const FlatLoop& l) {
              loop(l, indent);
              return std::size_t{1};
            },
            [&](const FlatCall& c) {
              if (!c.expanded) {
                line(indent, c.name + "()" + end());
                return std::size_t{1};
              }
              comment(indent, "-> " + c.name + ":" + (c.role.empty() ? "" : " " + c.role));
              const std::size_t inner = block(c.body, indent);
              comment(indent, "<- " + c.name);
              return inner;
            },
        },
        n.node);
    if (!n.origin.empty()) map_.push_back({n.origin, first, lines_.size()});
    return count;
  }

  void alternative(const FlatIf& i, int indent) {
    const bool py = d_ == Dialect::Python;
    line(indent, "if (" + comparison_text(i.cond, d_) + (py ? ") :" : ") {"));
    if (!i.then_comment.empty()) comment(indent + 1, i.then_comment);
    body_block(i.then_body, indent + 1);
    if (i.else_state == ElseState::None) {
      if (!py) line(indent, "}");
      return;
    }
    line(indent, py ? "else :" : "} else {");
    if (!i.else_comment.empty()) comment(indent + 1, i.else_comment);
    if (i.else_state == ElseState::ToDo) comment(indent + 1, "TO DO");
    body_block(i.else_body, indent + 1);
    if (!py) line(indent, "}");
  }

  [[nodiscard]] std::string end() const { return d_ == Dialect::Python ? "" : ";"; }

  [[nodiscard]] std::string read_text(const ReadInstr& r) const {
    const std::string dst = r.dst.text();
    const std::string msg = string_literal(r.message);
    switch (d_) {
      case Dialect::Python: return dst + " = int(input(" + msg + "))";
      case Dialect::C: return "printf(\"%s\", " + msg + "); scanf(\"%d\", &" + dst + ");";
      case Dialect::Cpp: return "std::cout << " + msg + "; std::cin >> " + dst + ";";
      case Dialect::Java: return "System.out.print(" + msg + "); " + dst + " = in.nextInt();";
      case Dialect::Agt: break;
    }
    return {};
  }

  [[nodiscard]] std::string write_text(const WriteInstr& w) const {
    const std::string src = operand_text(Operand::of(w.src), d_);
    const std::string msg = string_literal(w.message);
    switch (d_) {
      case Dialect::Python: return "print(" + msg + " + str(" + src + "))";
      case Dialect::C: return "printf(\"%s%d\\n\", " + msg + ", " + src + ");";
      case Dialect::Cpp: return "std::cout << " + msg + " << " + src + " << std::endl;";
      case Dialect::Java: return "System.out.println(" + msg + " + " + src + ");";
      case Dialect::Agt: break;
    }
    return {};
  }

  EmissionUnit finish() {
    EmissionUnit u;
    u.dialect = d_;
    u.flavor = f_;
    for (const auto& l : lines_) u.text += l + "\n";
    u.source_map = std::move(map_);
    u.condition_map = std::move(conditions_);
    return u;
  }

  [[nodiscard]] std::size_t size() const { return lines_.size(); }

 private:
  Dialect d_;
  Flavor f_;
  std::vector<std::string> lines_;
  std::vector<LineSpan> map_;
  std::vector<ConditionSpan> conditions_;
};

constexpr std::string_view kDivisionNote =
    "Note: // and % round toward negative infinity, AGT division truncates toward zero";

// Global declarations for the C-like dialects.
void globals(Emitter& e, Dialect d, const Workspace* ws, int indent) {
  if (!ws) return;
  bool any = false;
  for (const Entity& ent : ws->entities()) {
    any = true;
    std::visit(overloaded{
                   [&](const Scalar& s) {
                     const bool k = s.mutability == Mutability::Constant;
                     const std::string v = std::to_string(s.value.payload);
                     if (d == Dialect::Java) {
                       e.line(indent, std::string(k ? "static final int " : "static int ") + s.name + " = " + v + ";");
                     } else {
                       e.line(indent, std::string(k ? "const int " : "int ") + s.name + " = " + v + ";");
                     }
                   },
                   [&](const ArrayObject& a) {
                     std::string cells;
                     for (std::size_t i = 0; i < a.cells.size(); ++i) {
                       cells += (i ? ", " : "") + std::to_string(a.cells[i]);
                     }
                     const std::string n = std::to_string(a.cells.size());
                     switch (d) {
                       case Dialect::C:
                         e.line(indent, "int " + a.name + "[" + (a.cells.empty() ? "1" : n) + "] = {" +
                                            (a.cells.empty() ? "0" : cells) + "};");
                         e.line(indent, "const int " + a.name + "_length = " + n + ";");
                         break;
                       case Dialect::Cpp: e.line(indent, "std::vector<int> " + a.name + " = {" + cells + "};"); break;
                       default: e.line(indent, "static int[] " + a.name + " = {" + cells + "};");
                     }
                   },
                   [&](const IndexVariable& i) {
                     e.line(indent, std::string(d == Dialect::Java ? "static int " : "int ") + i.name + " = " +
                                        std::to_string(i.value) + ";");
                   },
               },
               ent);
  }
  if (any) e.blank();
}

void macro_section(Emitter& e, const FlatProgram& fp, const MacroDef& m, int indent) {
  if (m.kind == MacroKind::Simple) {
    e.comment(indent, "Code");
    e.block(fp.body, indent);
  } else {
    e.block(fp.body, indent);
  }
  e.comment(indent, "");
}

EmissionUnit emit_python(const Program& program, Flavor flavor, const std::string& entry) {
  Emitter e(Dialect::Python, flavor);
  if (flavor == Flavor::Export) {
    const FlatProgram fp = inline_macros(program, entry);
    if (uses_division(fp.body)) e.comment(0, std::string(kDivisionNote));
    e.comments(0, fp.comment);
    e.block(fp.body, 0);
    return e.finish();
  }
  std::vector<FlatProgram> lowered;
  bool division = false;
  for (const auto& m : program.macros) {
    lowered.push_back(lower_macro(program, m.name));
    division = division || uses_division(lowered.back().body);
  }
  if (division) e.comment(0, std::string(kDivisionNote));
  for (std::size_t i = 0; i < program.macros.size(); ++i) {
    if (i > 0) e.blank();
    e.comment(0, "Macro " + program.macros[i].name);
    e.comments(0, program.macros[i].comment);
    macro_section(e, lowered[i], program.macros[i], 0);
  }
  return e.finish();
}

EmissionUnit emit_c_like(const Program& program, Dialect d, Flavor flavor, const std::string& entry,
                         const Workspace* ws) {
  Emitter e(d, flavor);
  const bool java = d == Dialect::Java;
  const int base = java ? 1 : 0;
  switch (d) {
    case Dialect::C: e.line(0, "#include <stdio.h>"); break;
    case Dialect::Cpp:
      e.line(0, "#include <iostream>");
      e.line(0, "#include <vector>");
      break;
    default: e.line(0, "import java.util.Scanner;");
  }
  e.blank();
  if (java) {
    e.line(0, "public class Program {");
    e.line(1, "static Scanner in = new Scanner(System.in);");
  }
  globals(e, d, ws, base);
  const std::string main_head = java ? "public static void main(String[] args) {" : "int main(void) {";
  const std::string main_head_cpp = "int main() {";
  auto open_main = [&] { e.line(base, d == Dialect::Cpp ? main_head_cpp : main_head); };
  auto close_main = [&] {
    if (!java) e.line(base + 1, "return 0;");
    e.line(base, "}");
    if (java) e.line(0, "}");
  };

  if (flavor == Flavor::Export) {
    const FlatProgram fp = inline_macros(program, entry);
    open_main();
    e.comments(base + 1, fp.comment);
    e.block(fp.body, base + 1);
    close_main();
    return e.finish();
  }

  if (!java && !program.macros.empty()) {
    for (const auto& m : program.macros) e.line(0, "void " + m.name + (d == Dialect::C ? "(void);" : "();"));
    e.blank();
  }
  for (const auto& m : program.macros) {
    const FlatProgram fp = lower_macro(program, m.name);
    e.comment(base, "Macro " + m.name);
    e.comments(base, m.comment);
    if (java) {
      e.line(base, "static void " + m.name + "() {");
    } else {
      e.line(base, "void " + m.name + (d == Dialect::C ? "(void) {" : "() {"));
    }
    macro_section(e, fp, m, base + 1);
    e.line(base, "}");
    e.blank();
  }
  open_main();
  if (!entry.empty()) e.line(base + 1, entry + "();");
  close_main();
  return e.finish();
}

EmissionUnit emit_agt(const Program& program, Flavor flavor) {
  EmissionUnit u;
  u.dialect = Dialect::Agt;
  u.flavor = flavor;
  PrintedProgram p = print_program_mapped(program);
  u.text = std::move(p.text);
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start < u.text.size()) {
      const std::size_t nl = u.text.find('\n', start);
      lines.push_back(u.text.substr(start, nl - start));
      start = nl == std::string::npos ? u.text.size() : nl + 1;
    }
  }
  for (auto& span : p.source_map) {
    if (span.path.find("/Until/") != std::string::npos) {
      const std::string& l = lines.at(span.line_begin - 1);
      const std::size_t begin = l.find_first_not_of(' ');
      u.condition_map.push_back({span.path, span.line_begin, begin, l.size()});
    } else {
      u.source_map.push_back(std::move(span));
    }
  }
  return u;
}

}  // namespace

EmissionUnit transpile(const Program& program, Dialect dialect, Flavor flavor, const TranspileOptions& options) {
  std::string entry = options.entry;
  if (entry.empty() && !program.macros.empty()) entry = program.macros.back().name;
  if (!entry.empty() && !program.find(entry)) {
    throw Error(ErrorCode::UnresolvedMacro, "no macro named '" + entry + "'");
  }
  if (flavor == Flavor::Export && entry.empty()) throw Error(ErrorCode::UnresolvedMacro, "no macro to export");
  for (const auto& m : program.macros) {
    for (const auto& c : callees(m)) {
      if (!program.find(c)) throw Error(ErrorCode::UnresolvedMacro, "'" + m.name + "' calls unknown macro '" + c + "'");
    }
  }
  switch (dialect) {
    case Dialect::Agt: return emit_agt(program, flavor);
    case Dialect::Python: return emit_python(program, flavor, entry);
    default: return emit_c_like(program, dialect, flavor, entry, options.workspace);
  }
}

Json EmissionUnit::map_json() const {
  Json j;
  j["dialect"] = std::string(to_string(dialect));
  j["flavor"] = std::string(to_string(flavor));
  Json sm = Json::array();
  for (const auto& s : source_map) {
    sm.push_back({{"path", s.path}, {"line_begin", s.line_begin}, {"line_end", s.line_end}});
  }
  j["source_map"] = std::move(sm);
  Json cm = Json::array();
  for (const auto& c : condition_map) {
    cm.push_back({{"path", c.path}, {"line", c.line}, {"column_begin", c.column_begin}, {"column_end", c.column_end}});
  }
  j["condition_map"] = std::move(cm);
  return j;
}

}  // namespace agt

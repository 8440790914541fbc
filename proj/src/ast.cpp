#include "agt/ast.hpp"

#include <functional>
#include <map>

#include "agt/overloaded.hpp"

namespace agt {

std::string_view symbol(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
    case ArithOp::Mod: return "%";
  }
  return "?";
}

std::optional<ArithOp> parse_arith_op(std::string_view s) {
  if (s == "+") return ArithOp::Add;
  if (s == "-") return ArithOp::Sub;
  if (s == "*") return ArithOp::Mul;
  if (s == "/") return ArithOp::Div;
  if (s == "%") return ArithOp::Mod;
  return std::nullopt;
}

std::string Expression::text() const {
  if (!op) return first.text();
  return first.text() + " " + std::string(symbol(*op)) + " " + second.text();
}

std::string_view symbol(Rel rel) {
  switch (rel) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "==";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
    case Rel::Ne: return "!=";
  }
  return "?";
}

std::optional<Rel> parse_rel(std::string_view s) {
  for (Rel r : kAllRelations) {
    if (symbol(r) == s) return r;
  }
  return std::nullopt;
}

Rel negate(Rel rel) {
  switch (rel) {
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Eq: return Rel::Ne;
    case Rel::Gt: return Rel::Le;
    case Rel::Ge: return Rel::Lt;
    case Rel::Ne: return Rel::Eq;
  }
  return rel;
}

bool holds(Rel rel, std::int64_t a, std::int64_t b) {
  switch (rel) {
    case Rel::Lt: return a < b;
    case Rel::Le: return a <= b;
    case Rel::Eq: return a == b;
    case Rel::Gt: return a > b;
    case Rel::Ge: return a >= b;
    case Rel::Ne: return a != b;
  }
  return false;
}

std::string Comparison::text() const {
  return left.text() + " " + std::string(symbol(rel)) + " " + right.text();
}

bool Comparison::is_guard() const {
  auto indexed = [](const Operand& o) { return !o.is_literal() && o.ref().kind == Ref::Kind::IndexedCell; };
  return !indexed(left) && !indexed(right);
}

std::string_view keyword(BlockId b) {
  switch (b) {
    case BlockId::Do: return "Do";
    case BlockId::From: return "From";
    case BlockId::Until: return "Until";
    case BlockId::Loop: return "Loop";
    case BlockId::Terminate: return "Terminate";
  }
  return "?";
}

std::optional<BlockId> parse_block_id(std::string_view s) {
  for (BlockId b : {BlockId::Do, BlockId::From, BlockId::Until, BlockId::Loop, BlockId::Terminate}) {
    if (keyword(b) == s) return b;
  }
  return std::nullopt;
}

MacroDef MacroDef::simple(std::string name, std::vector<std::string> comment) {
  MacroDef m;
  m.name = std::move(name);
  m.comment = std::move(comment);
  m.kind = MacroKind::Simple;
  return m;
}

MacroDef MacroDef::looping(std::string name, std::vector<std::string> comment) {
  MacroDef m = simple(std::move(name), std::move(comment));
  m.kind = MacroKind::Loop;
  return m;
}

const Block* MacroDef::block(BlockId id) const {
  if (kind == MacroKind::Simple) return id == BlockId::Do ? &do_block : nullptr;
  switch (id) {
    case BlockId::From: return &from;
    case BlockId::Loop: return &loop;
    case BlockId::Terminate: return &terminate;
    default: return nullptr;
  }
}

Block* MacroDef::block(BlockId id) { return const_cast<Block*>(std::as_const(*this).block(id)); }

bool MacroDef::has_block(BlockId id) const {
  return block(id) != nullptr || (kind == MacroKind::Loop && id == BlockId::Until);
}

bool MacroDef::is_empty() const {
  if (kind == MacroKind::Simple) return do_block.body.empty();
  return from.body.empty() && until.conditions.empty() && loop.body.empty() && terminate.body.empty();
}

std::string MacroDef::role() const {
  for (const auto& line : comment) {
    if (line.find_first_not_of(' ') != std::string::npos) return line;
  }
  return {};
}

const MacroDef* Program::find(std::string_view name) const {
  for (const auto& m : macros) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

MacroDef* Program::find(std::string_view name) { return const_cast<MacroDef*>(std::as_const(*this).find(name)); }

// ---------------------------------------------------------------------------
// Paths

Path Path::branch(Branch b) const {
  if (!index) throw Error(ErrorCode::InvalidPath, text() + " does not designate an instruction");
  Path p{macro, block, nest, std::nullopt};
  p.nest.push_back({*index, b});
  return p;
}

std::string Path::text() const {
  std::string out = macro + "/" + std::string(keyword(block));
  for (const auto& s : nest) {
    out += "/" + std::to_string(s.index) + (s.branch == Branch::Then ? "/then" : "/else");
  }
  if (index) out += "/" + std::to_string(*index);
  return out;
}

Path Path::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto slash = text.find('/', start);
    parts.emplace_back(text.substr(start, slash == std::string_view::npos ? slash : slash - start));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  auto bad = [&] { return Error(ErrorCode::InvalidPath, "malformed path '" + std::string(text) + "'"); };
  if (parts.size() < 2 || parts[0].empty()) throw bad();
  auto block = parse_block_id(parts[1]);
  if (!block) throw bad();
  Path p = to_block(parts[0], *block);
  auto number = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw bad();
    return static_cast<std::size_t>(std::stoull(s));
  };
  for (std::size_t i = 2; i < parts.size(); i += 2) {
    std::size_t idx = number(parts[i]);
    if (i + 1 == parts.size()) {
      p.index = idx;
      break;
    }
    if (parts[i + 1] == "then") {
      p.nest.push_back({idx, Branch::Then});
    } else if (parts[i + 1] == "else") {
      p.nest.push_back({idx, Branch::Else});
    } else {
      throw bad();
    }
  }
  return p;
}

namespace {

template <class P>
auto& resolve_container(P& program, const Path& path) {
  auto* macro = program.find(path.macro);
  if (!macro) throw Error(ErrorCode::InvalidPath, "no macro '" + path.macro + "' for " + path.text());
  auto* block = macro->block(path.block);
  if (!block) throw Error(ErrorCode::InvalidPath, path.text() + " does not name an instruction block");
  auto* body = &block->body;
  for (const auto& step : path.nest) {
    if (step.index >= body->size()) throw Error(ErrorCode::InvalidPath, path.text() + " is out of range");
    auto* iff = std::get_if<IfInstr>(&(*body)[step.index].node);
    if (!iff) throw Error(ErrorCode::InvalidPath, path.text() + " descends into a non-alternative");
    if (step.branch == Branch::Then) {
      body = &iff->then_body;
    } else {
      if (iff->else_state == ElseState::None) {
        throw Error(ErrorCode::InvalidPath, path.text() + " names a missing else clause");
      }
      body = &iff->else_body;
    }
  }
  return *body;
}

}  // namespace

std::vector<Instruction>& container_body(Program& program, const Path& container) {
  return resolve_container(program, container);
}

const std::vector<Instruction>& container_body(const Program& program, const Path& container) {
  return resolve_container(program, container);
}

Instruction& instruction_at(Program& program, const Path& path) {
  if (!path.index) throw Error(ErrorCode::InvalidPath, path.text() + " does not designate an instruction");
  auto& body = container_body(program, path.container());
  if (*path.index >= body.size()) throw Error(ErrorCode::InvalidPath, path.text() + " is out of range");
  return body[*path.index];
}

const Instruction& instruction_at(const Program& program, const Path& path) {
  if (!path.index) throw Error(ErrorCode::InvalidPath, path.text() + " does not designate an instruction");
  const auto& body = container_body(program, path.container());
  if (*path.index >= body.size()) throw Error(ErrorCode::InvalidPath, path.text() + " is out of range");
  return body[*path.index];
}

namespace {

void collect_calls(const std::vector<Instruction>& body, std::vector<std::string>& out) {
  for (const auto& ins : body) {
    std::visit(overloaded{
                   [&](const CallInstr& c) { out.push_back(c.name); },
                   [&](const IfInstr& i) {
                     collect_calls(i.then_body, out);
                     collect_calls(i.else_body, out);
                   },
                   [](const auto&) {},
               },
               ins.node);
  }
}

}  // namespace

std::vector<std::string> callees(const MacroDef& macro) {
  std::vector<std::string> out;
  if (macro.kind == MacroKind::Simple) {
    collect_calls(macro.do_block.body, out);
  } else {
    collect_calls(macro.from.body, out);
    collect_calls(macro.loop.body, out);
    collect_calls(macro.terminate.body, out);
  }
  return out;
}

namespace {

std::optional<std::string> cycle_search(const Program& program, const std::vector<const MacroDef*>& roots) {
  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> marks;
  std::optional<std::string> found;
  std::function<void(const MacroDef&)> visit = [&](const MacroDef& m) {
    marks[m.name] = Mark::Grey;
    for (const auto& callee : callees(m)) {
      if (found) return;
      const MacroDef* target = program.find(callee);
      if (!target) continue;
      Mark mark = marks.count(callee) ? marks[callee] : Mark::White;
      if (mark == Mark::Grey) {
        found = callee;
        return;
      }
      if (mark == Mark::White) visit(*target);
    }
    marks[m.name] = Mark::Black;
  };
  for (const MacroDef* m : roots) {
    if (found) break;
    if (!marks.count(m->name)) visit(*m);
  }
  return found;
}

}  // namespace

std::optional<std::string> find_call_cycle(const Program& program) {
  std::vector<const MacroDef*> roots;
  for (const auto& m : program.macros) roots.push_back(&m);
  return cycle_search(program, roots);
}

std::optional<std::string> find_call_cycle(const Program& program, std::string_view root) {
  const MacroDef* m = program.find(root);
  if (!m) return std::nullopt;
  return cycle_search(program, {m});
}

}  // namespace agt

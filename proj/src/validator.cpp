#include "agt/validator.hpp"

#include <set>

#include "agt/overloaded.hpp"

namespace agt {

std::string_view to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::UnknownName: return "UnknownName";
    case DiagnosticKind::IndexArrayMismatch: return "IndexArrayMismatch";
    case DiagnosticKind::NotAnIndex: return "NotAnIndex";
    case DiagnosticKind::NotAnArray: return "NotAnArray";
    case DiagnosticKind::NotAScalar: return "NotAScalar";
    case DiagnosticKind::UndefinedMacro: return "UndefinedMacro";
    case DiagnosticKind::LengthAssignment: return "LengthAssignment";
    case DiagnosticKind::ConstantAssignment: return "ConstantAssignment";
    case DiagnosticKind::RecursionForbidden: return "RecursionForbidden";
    case DiagnosticKind::DuplicateMacro: return "DuplicateMacro";
    case DiagnosticKind::NameClash: return "NameClash";
  }
  return "?";
}

namespace {

class Checker {
 public:
  Checker(const Program& p, const Workspace& ws) : program_(p), ws_(ws) {}

  std::vector<Diagnostic> run() {
    std::set<std::string> seen;
    for (const auto& m : program_.macros) {
      if (!seen.insert(m.name).second) {
        add(DiagnosticKind::DuplicateMacro, m.name, "macro '" + m.name + "' is defined twice");
      }
      if (ws_.has_name(m.name)) {
        add(DiagnosticKind::NameClash, m.name, "macro '" + m.name + "' shares its name with a data entity");
      }
      if (m.kind == MacroKind::Simple) {
        body(m.do_block.body, Path::to_block(m.name, BlockId::Do));
      } else {
        body(m.from.body, Path::to_block(m.name, BlockId::From));
        const Path until = Path::to_block(m.name, BlockId::Until);
        for (std::size_t i = 0; i < m.until.conditions.size(); ++i) {
          comparison(m.until.conditions[i], until.child(i));
        }
        body(m.loop.body, Path::to_block(m.name, BlockId::Loop));
        body(m.terminate.body, Path::to_block(m.name, BlockId::Terminate));
      }
    }
    if (auto cyc = find_call_cycle(program_)) {
      add(DiagnosticKind::RecursionForbidden, *cyc, "macro '" + *cyc + "' lies on a call cycle");
    }
    return std::move(out_);
  }

 private:
  void add(DiagnosticKind k, std::string path, std::string msg, bool fatal = true) {
    out_.push_back({k, std::move(path), std::move(msg), fatal});
  }

  void body(const std::vector<Instruction>& instrs, const Path& container) {
    for (std::size_t i = 0; i < instrs.size(); ++i) {
      const Path p = container.child(i);
      std::visit(overloaded{
                     [&](const Assign& a) {
                       lvalue(a.dst, p);
                       operand(a.rhs.first, p);
                       if (a.rhs.op) operand(a.rhs.second, p);
                     },
                     [&](const ReadInstr& r) { lvalue(r.dst, p); },
                     [&](const WriteInstr& w) { ref(w.src, p); },
                     [&](const CallInstr& c) {
                       if (!program_.find(c.name)) {
                         add(DiagnosticKind::UndefinedMacro, p.text(), "call to undefined macro '" + c.name + "'",
                             false);
                       }
                     },
                     [&](const IfInstr& f) {
                       comparison(f.cond, p);
                       body(f.then_body, p.branch(Branch::Then));
                       if (f.else_state == ElseState::Present) body(f.else_body, p.branch(Branch::Else));
                     },
                 },
                 instrs[i].node);
    }
  }

  void comparison(const Comparison& c, const Path& p) {
    operand(c.left, p);
    operand(c.right, p);
  }

  void operand(const Operand& o, const Path& p) {
    if (!o.is_literal()) ref(o.ref(), p);
  }

  void lvalue(const Ref& r, const Path& p) {
    if (!ref(r, p)) return;
    if (r.kind == Ref::Kind::Length) {
      add(DiagnosticKind::LengthAssignment, p.text(), "'" + r.text() + "' is read-only");
      return;
    }
    if (r.kind == Ref::Kind::Name) {
      const auto* s = std::get_if<Scalar>(ws_.find(r.name));
      if (s && s->mutability == Mutability::Constant) {
        add(DiagnosticKind::ConstantAssignment, p.text(), "'" + r.name + "' is a constant");
      }
    }
  }

  bool ref(const Ref& r, const Path& p) {
    const Entity* e = ws_.find(r.name);
    if (!e) {
      add(DiagnosticKind::UnknownName, p.text(), "unknown name '" + r.name + "'");
      return false;
    }
    if (r.kind == Ref::Kind::Name) {
      if (std::holds_alternative<ArrayObject>(*e)) {
        add(DiagnosticKind::NotAScalar, p.text(), "'" + r.name + "' is an array");
        return false;
      }
      return true;
    }
    if (!std::holds_alternative<ArrayObject>(*e)) {
      add(DiagnosticKind::NotAnArray, p.text(), "'" + r.name + "' is not an array");
      return false;
    }
    if (r.kind == Ref::Kind::IndexedCell) {
      const Entity* ie = ws_.find(r.index);
      if (!ie) {
        add(DiagnosticKind::UnknownName, p.text(), "unknown index '" + r.index + "'");
        return false;
      }
      const auto* idx = std::get_if<IndexVariable>(ie);
      if (!idx) {
        add(DiagnosticKind::NotAnIndex, p.text(), "'" + r.index + "' is not an index variable");
        return false;
      }
      if (idx->target != r.name) {
        add(DiagnosticKind::IndexArrayMismatch, p.text(),
            "index '" + idx->name + "' is bound to '" + idx->target + "', not '" + r.name + "'");
        return false;
      }
    }
    return true;
  }

  const Program& program_;
  const Workspace& ws_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Program& program, const Workspace& ws) { return Checker(program, ws).run(); }

}  // namespace agt

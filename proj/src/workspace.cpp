#include "agt/workspace.hpp"

#include "agt/overloaded.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace agt {

namespace {

std::string join_cells(const std::vector<std::int64_t>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cells[i]);
  }
  return out;
}

const char* type_name(ValueKind k) { return k == ValueKind::Char ? "char" : "int"; }

}  // namespace

const std::string& entity_name(const Entity& e) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, e);
}

Workspace::Workspace(std::uint64_t seed) : seed_(seed), rng_(seed) {}

std::int64_t Workspace::draw() {
  ++draws_;
  // Modulo keeps the mapping identical on every standard library.
  return static_cast<std::int64_t>(rng_() % 101);
}

void Workspace::skip_draws(std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) draw();
}

bool Workspace::has_name(std::string_view name) const { return find(name) != nullptr; }

const Entity* Workspace::find(std::string_view name) const {
  auto it = std::find_if(entities_.begin(), entities_.end(),
                         [&](const Entity& e) { return entity_name(e) == name; });
  return it == entities_.end() ? nullptr : &*it;
}

Entity* Workspace::find_mut(std::string_view name) {
  return const_cast<Entity*>(std::as_const(*this).find(name));
}

const ArrayObject* Workspace::find_array(std::string_view name) const {
  const Entity* e = find(name);
  return e ? std::get_if<ArrayObject>(e) : nullptr;
}

const IndexVariable* Workspace::find_index(std::string_view name) const {
  const Entity* e = find(name);
  return e ? std::get_if<IndexVariable>(e) : nullptr;
}

bool Workspace::has_literal(std::int64_t v) const {
  return std::find(literals_.begin(), literals_.end(), v) != literals_.end();
}

void Workspace::add_literal(std::int64_t v) {
  if (!has_literal(v)) literals_.push_back(v);
}

void Workspace::create(const EntitySpec& spec) {
  const std::string& name = std::visit([](const auto& s) -> const std::string& { return s.name; }, spec);
  if (!is_identifier(name)) throw Error(ErrorCode::InvalidAction, "'" + name + "' is not a valid identifier");
  if (has_name(name)) throw Error(ErrorCode::DuplicateName, "'" + name + "' is already declared");

  std::visit(overloaded{
                 [&](const VariableSpec& s) {
                   Value v = s.kind == ValueKind::Char ? Value::character(s.initial) : Value::integer(s.initial);
                   entities_.emplace_back(
                       Scalar{s.name, v, s.constant ? Mutability::Constant : Mutability::Mutable});
                 },
                 [&](const ArraySpec& s) {
                   ArrayObject a{s.name, {}};
                   if (s.cells) {
                     a.cells = *s.cells;
                   } else {
                     a.cells.reserve(s.length);
                     for (std::size_t i = 0; i < s.length; ++i) a.cells.push_back(draw());
                   }
                   entities_.emplace_back(std::move(a));
                 },
                 [&](const IndexSpec& s) {
                   if (!find_array(s.array)) {
                     throw Error(ErrorCode::UnknownArray, "index '" + s.name + "' refers to undeclared array '" +
                                                              s.array + "'");
                   }
                   entities_.emplace_back(IndexVariable{s.name, s.array, s.initial});
                 },
             },
             spec);
}

std::int64_t Workspace::cell_position(const Ref& ref, const ArrayObject& array) const {
  const auto length = static_cast<std::int64_t>(array.cells.size());
  if (ref.kind == Ref::Kind::Cell) {
    if (ref.position < 0 || ref.position >= length) {
      throw Error(ErrorCode::IndexOutOfBounds, ref.text() + " is outside " + array.name + "[0.." +
                                                   std::to_string(length - 1) + "]");
    }
    return ref.position;
  }
  const IndexVariable* idx = find_index(ref.index);
  if (!idx) {
    if (has_name(ref.index)) throw Error(ErrorCode::NotAnIndex, "'" + ref.index + "' is not an index variable");
    throw Error(ErrorCode::UnknownName, "unknown index '" + ref.index + "'");
  }
  if (idx->target != array.name) {
    throw Error(ErrorCode::NotAnIndex, "index '" + idx->name + "' is bound to '" + idx->target + "', not '" +
                                           array.name + "'");
  }
  if (idx->value < 0 || idx->value >= length) {
    throw Error(ErrorCode::IndexOutOfBounds, ref.text() + " with " + idx->name + " = " + std::to_string(idx->value) +
                                                 " is outside " + array.name + "[0.." + std::to_string(length - 1) +
                                                 "]");
  }
  return idx->value;
}

Value Workspace::read(const Ref& ref) const {
  const Entity* e = find(ref.name);
  if (!e) throw Error(ErrorCode::UnknownName, "unknown name '" + ref.name + "'");
  switch (ref.kind) {
    case Ref::Kind::Name:
      if (const auto* s = std::get_if<Scalar>(e)) return s->value;
      if (const auto* i = std::get_if<IndexVariable>(e)) return Value::integer(i->value);
      throw Error(ErrorCode::NotAScalar, "'" + ref.name + "' is an array; name a cell or its length");
    case Ref::Kind::Length:
    case Ref::Kind::Cell:
    case Ref::Kind::IndexedCell: {
      const auto* a = std::get_if<ArrayObject>(e);
      if (!a) throw Error(ErrorCode::NotAnArray, "'" + ref.name + "' is not an array");
      if (ref.kind == Ref::Kind::Length) return Value::integer(static_cast<std::int64_t>(a->cells.size()));
      return Value::integer(a->cells[static_cast<std::size_t>(cell_position(ref, *a))]);
    }
  }
  throw Error(ErrorCode::UnknownName, ref.text());
}

Change Workspace::write(const Ref& ref, Value v) {
  Entity* e = find_mut(ref.name);
  if (!e) throw Error(ErrorCode::UnknownName, "unknown name '" + ref.name + "'");
  switch (ref.kind) {
    case Ref::Kind::Name: {
      if (auto* s = std::get_if<Scalar>(e)) {
        if (s->mutability == Mutability::Constant) {
          throw Error(ErrorCode::ConstantWrite, "'" + s->name + "' is a constant");
        }
        Value next = s->value.kind == ValueKind::Char ? Value::character(v.payload) : Value::integer(v.payload);
        Change c{ref.text(), s->value, next};
        s->value = next;
        return c;
      }
      if (auto* i = std::get_if<IndexVariable>(e)) {
        Change c{ref.text(), Value::integer(i->value), Value::integer(v.payload)};
        i->value = v.payload;
        return c;
      }
      throw Error(ErrorCode::NotAScalar, "'" + ref.name + "' is an array; name a cell");
    }
    case Ref::Kind::Length:
      throw Error(ErrorCode::ConstantWrite, "'" + ref.text() + "' is a constant");
    case Ref::Kind::Cell:
    case Ref::Kind::IndexedCell: {
      auto* a = std::get_if<ArrayObject>(e);
      if (!a) throw Error(ErrorCode::NotAnArray, "'" + ref.name + "' is not an array");
      auto& cell = a->cells[static_cast<std::size_t>(cell_position(ref, *a))];
      Change c{ref.text(), Value::integer(cell), Value::integer(v.payload)};
      cell = v.payload;
      return c;
    }
  }
  throw Error(ErrorCode::UnknownName, ref.text());
}

IndexStatus Workspace::index_status(std::string_view index) const {
  const IndexVariable* idx = find_index(index);
  if (!idx) throw Error(ErrorCode::UnknownName, "unknown index '" + std::string(index) + "'");
  const ArrayObject* a = find_array(idx->target);
  const auto length = static_cast<std::int64_t>(a->cells.size());
  return (idx->value >= 0 && idx->value < length) ? IndexStatus::InBounds : IndexStatus::OutOfBounds;
}

std::string Workspace::declarations(bool with_values) const {
  std::ostringstream out;
  for (const Entity& e : entities_) {
    std::visit(overloaded{
                   [&](const Scalar& s) {
                     if (s.mutability == Mutability::Constant) {
                       out << "const " << type_name(s.value.kind) << ' ' << s.name << " = " << s.value.payload
                           << " ;\n";
                     } else if (with_values) {
                       out << type_name(s.value.kind) << ' ' << s.name << " = " << s.value.payload << " ;\n";
                     } else {
                       out << type_name(s.value.kind) << ' ' << s.name << " ;\n";
                     }
                   },
                   [&](const ArrayObject& a) {
                     out << "int " << a.name << '[' << a.cells.size() << "] = {" << join_cells(a.cells) << "} ;\n";
                   },
                   [&](const IndexVariable& i) {
                     out << "index " << i.name << " of " << i.target;
                     if (with_values) out << " = " << i.value;
                     out << " ;\n";
                   },
               },
               e);
  }
  return out.str();
}

std::string Workspace::summary() const {
  std::string out;
  for (const Entity& e : entities_) {
    if (!out.empty()) out += ' ';
    std::visit(overloaded{
                   [&](const Scalar& s) { out += s.name + '=' + std::to_string(s.value.payload); },
                   [&](const ArrayObject& a) { out += a.name + "={" + join_cells(a.cells) + '}'; },
                   [&](const IndexVariable& i) { out += i.name + '=' + std::to_string(i.value); },
               },
               e);
  }
  return out;
}

}  // namespace agt

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "agt/value.hpp"

namespace agt {

enum class Mutability : std::uint8_t { Mutable, Constant };

struct Scalar {
  std::string name;
  Value value;
  Mutability mutability = Mutability::Mutable;
  friend bool operator==(const Scalar&, const Scalar&) = default;
};

struct ArrayObject {
  std::string name;
  std::vector<std::int64_t> cells;
  friend bool operator==(const ArrayObject&, const ArrayObject&) = default;
};

/// Bound to one array for its whole lifetime. The value may sit outside the
/// array bounds; only dereferencing is forbidden then.
struct IndexVariable {
  std::string name;
  std::string target;
  std::int64_t value = 0;
  friend bool operator==(const IndexVariable&, const IndexVariable&) = default;
};

using Entity = std::variant<Scalar, ArrayObject, IndexVariable>;

[[nodiscard]] const std::string& entity_name(const Entity& e);

struct VariableSpec {
  std::string name;
  ValueKind kind = ValueKind::Int;
  std::int64_t initial = 0;
  bool constant = false;
};

/// Without explicit cells the array gets `length` values drawn uniformly from
/// [0, 100] with the workspace generator.
struct ArraySpec {
  std::string name;
  std::optional<std::vector<std::int64_t>> cells;
  std::size_t length = 10;
};

struct IndexSpec {
  std::string name;
  std::string array;
  std::int64_t initial = 0;
};

using EntitySpec = std::variant<VariableSpec, ArraySpec, IndexSpec>;

enum class IndexStatus : std::uint8_t { InBounds, OutOfBounds };

/// One stored value that changed.
struct Change {
  std::string target;
  Value before;
  Value after;
  friend bool operator==(const Change&, const Change&) = default;
};

class Workspace {
 public:
  explicit Workspace(std::uint64_t seed = 0);

  void create(const EntitySpec& spec);

  [[nodiscard]] Value read(const Ref& ref) const;
  Change write(const Ref& ref, Value v);
  [[nodiscard]] IndexStatus index_status(std::string_view index) const;

  [[nodiscard]] bool has_name(std::string_view name) const;
  [[nodiscard]] const Entity* find(std::string_view name) const;
  [[nodiscard]] const ArrayObject* find_array(std::string_view name) const;
  [[nodiscard]] const IndexVariable* find_index(std::string_view name) const;
  [[nodiscard]] std::span<const Entity> entities() const { return entities_; }

  /// Literal-constant palette; starts as {-1, 0, 1}.
  [[nodiscard]] const std::vector<std::int64_t>& literals() const { return literals_; }
  [[nodiscard]] bool has_literal(std::int64_t v) const;
  void add_literal(std::int64_t v);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t draws() const { return draws_; }
  /// Fast-forward the generator, used when restoring a saved workspace.
  void skip_draws(std::uint64_t n);

  /// Declaration listing, one entity per line. With `with_values`, scalars and
  /// indexes carry their current value as an initializer.
  [[nodiscard]] std::string declarations(bool with_values = false) const;
  /// Compact single-line rendering of every value, e.g. `q=0 t={1,2} i=1`.
  [[nodiscard]] std::string summary() const;

  friend bool operator==(const Workspace& a, const Workspace& b) {
    return a.entities_ == b.entities_ && a.literals_ == b.literals_ && a.seed_ == b.seed_ && a.draws_ == b.draws_;
  }

 private:
  Entity* find_mut(std::string_view name);
  std::int64_t cell_position(const Ref& ref, const ArrayObject& array) const;
  std::int64_t draw();

  std::vector<Entity> entities_;
  std::vector<std::int64_t> literals_{-1, 0, 1};
  std::uint64_t seed_ = 0;
  std::uint64_t draws_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace agt

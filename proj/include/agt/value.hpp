#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "agt/error.hpp"

namespace agt {

inline constexpr std::string_view kKeywords[] = {
    "Define", "Do", "End", "From", "Until", "Loop", "Terminate", "if", "else", "Read", "Write",
    "int", "char", "const", "index", "of", "and", "or", "not", "length"};

/// Letters, digits and underscore, not starting with a digit, not a keyword.
inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s.front())) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  for (auto kw : kKeywords) {
    if (s == kw) return false;
  }
  return true;
}

enum class ValueKind : std::uint8_t { Int, Char };

/// A stored datum. Char payloads are code points in [0, 255]; glyphs are
/// never inferred.
struct Value {
  ValueKind kind = ValueKind::Int;
  std::int64_t payload = 0;

  static constexpr Value integer(std::int64_t v) noexcept { return {ValueKind::Int, v}; }
  static Value character(std::int64_t code) {
    if (code < 0 || code > 255) {
      throw Error(ErrorCode::CharRange, "char code point " + std::to_string(code) + " outside [0, 255]");
    }
    return {ValueKind::Char, code};
  }

  friend bool operator==(const Value&, const Value&) = default;
};

/// The places a program can name. `Name` covers variables, named constants and
/// index variables alike; the workspace decides which one it is.
struct Ref {
  enum class Kind : std::uint8_t { Name, Cell, IndexedCell, Length };

  Kind kind = Kind::Name;
  std::string name;        // variable / array name
  std::string index;       // IndexedCell: index variable name
  std::int64_t position = 0;  // Cell: literal position

  static Ref named(std::string n) { return {Kind::Name, std::move(n), {}, 0}; }
  static Ref cell(std::string array, std::int64_t pos) { return {Kind::Cell, std::move(array), {}, pos}; }
  static Ref indexed(std::string array, std::string idx) { return {Kind::IndexedCell, std::move(array), std::move(idx), 0}; }
  static Ref length(std::string array) { return {Kind::Length, std::move(array), {}, 0}; }

  [[nodiscard]] std::string text() const {
    switch (kind) {
      case Kind::Name: return name;
      case Kind::Cell: return name + "[" + std::to_string(position) + "]";
      case Kind::IndexedCell: return name + "[" + index + "]";
      case Kind::Length: return name + ".length";
    }
    return name;
  }

  friend bool operator==(const Ref&, const Ref&) = default;
};

}  // namespace agt

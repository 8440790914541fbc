#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agt {

enum class ErrorCode {
  // workspace
  DuplicateName,
  UnknownArray,
  UnknownName,
  UnknownLiteral,
  NotAScalar,
  NotAnArray,
  NotAnIndex,
  IndexOutOfBounds,
  ConstantWrite,
  CharRange,
  // arithmetic
  DivisionByZero,
  Overflow,
  // execution
  UnknownMacro,
  StepLimit,
  NotPaused,
  SessionPaused,
  InputRequired,
  WrongMacroKind,
  // language
  SyntaxError,
  RecursionForbidden,
  // recorder
  NoPendingComparison,
  NotACandidate,
  ConditionFalse,
  DuplicateCondition,
  NotAnInstructionBlock,
  NotSweepable,
  NoOpenCase,
  CaseOpen,
  NothingToUndo,
  InvalidPath,
  InvertNonEmptyThen,
  RemoveNonEmptyElse,
  ElsePresent,
  // transpiler / persistence / scripts
  UnknownDialect,
  UnknownFlavor,
  UnresolvedMacro,
  MalformedDocument,
  VersionUnsupported,
  InvalidAction,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownArray: return "UnknownArray";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::UnknownLiteral: return "UnknownLiteral";
    case ErrorCode::NotAScalar: return "NotAScalar";
    case ErrorCode::NotAnArray: return "NotAnArray";
    case ErrorCode::NotAnIndex: return "NotAnIndex";
    case ErrorCode::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorCode::ConstantWrite: return "ConstantWrite";
    case ErrorCode::CharRange: return "CharRange";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnknownMacro: return "UnknownMacro";
    case ErrorCode::StepLimit: return "StepLimit";
    case ErrorCode::NotPaused: return "NotPaused";
    case ErrorCode::SessionPaused: return "SessionPaused";
    case ErrorCode::InputRequired: return "InputRequired";
    case ErrorCode::WrongMacroKind: return "WrongMacroKind";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::RecursionForbidden: return "RecursionForbidden";
    case ErrorCode::NoPendingComparison: return "NoPendingComparison";
    case ErrorCode::NotACandidate: return "NotACandidate";
    case ErrorCode::ConditionFalse: return "ConditionFalse";
    case ErrorCode::DuplicateCondition: return "DuplicateCondition";
    case ErrorCode::NotAnInstructionBlock: return "NotAnInstructionBlock";
    case ErrorCode::NotSweepable: return "NotSweepable";
    case ErrorCode::NoOpenCase: return "NoOpenCase";
    case ErrorCode::CaseOpen: return "CaseOpen";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::InvertNonEmptyThen: return "InvertNonEmptyThen";
    case ErrorCode::RemoveNonEmptyElse: return "RemoveNonEmptyElse";
    case ErrorCode::ElsePresent: return "ElsePresent";
    case ErrorCode::UnknownDialect: return "UnknownDialect";
    case ErrorCode::UnknownFlavor: return "UnknownFlavor";
    case ErrorCode::UnresolvedMacro: return "UnresolvedMacro";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::InvalidAction: return "InvalidAction";
  }
  return "UnknownError";
}

/// Every engine failure. `path` is the instruction path (textual form) when
/// the failure happened while executing a program, empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, std::string path = {})
      : std::runtime_error(compose(code, detail, path)),
        code_(code),
        detail_(std::move(detail)),
        path_(std::move(path)) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }
  [[nodiscard]] const std::string& path() const noexcept { return path_; }

  [[nodiscard]] Error at(std::string path) const { return Error(code_, detail_, std::move(path)); }

 private:
  static std::string compose(ErrorCode code, const std::string& detail, const std::string& path) {
    std::string out(to_string(code));
    if (!detail.empty()) out += ": " + detail;
    if (!path.empty()) out += " (at " + path + ")";
    return out;
  }

  ErrorCode code_;
  std::string detail_;
  std::string path_;
};

}  // namespace agt

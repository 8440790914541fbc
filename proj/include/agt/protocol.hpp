#pragma once

#include "agt/action.hpp"
#include "agt/error.hpp"
#include "agt/interpreter.hpp"
#include "agt/recorder.hpp"

namespace agt {

/// Structured records shared by `--json` output and the workbench.
[[nodiscard]] Json event_json(const ExecEvent& e);
[[nodiscard]] Json output_json(const Output& o);
[[nodiscard]] Json error_json(const Error& e);
[[nodiscard]] Json apply_json(const ApplyResult& r);

}  // namespace agt

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "agt/parser.hpp"
#include "agt/persistence.hpp"
#include "agt/printer.hpp"
#include "agt/protocol.hpp"
#include "agt/recorder.hpp"
#include "agt/transpiler.hpp"

namespace {

using agt::Error;
using agt::ErrorCode;
using agt::Json;

constexpr int kRuntimeError = 1;
constexpr int kInputError = 2;

struct Failure {
  int code;
  std::string message;
  Json record;
};

struct Globals {
  std::optional<std::uint64_t> seed;
  bool json = false;

  [[nodiscard]] std::uint64_t effective_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("AGT_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw Failure{kInputError, "AGT_SEED is not a number: " + std::string(env), {}};
      }
    }
    return 0;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInputError, "cannot read " + path, {}};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kInputError, "cannot write " + path, {}};
  out << text;
}

bool ends_with(const std::string& s, std::string_view suffix) { return s.ends_with(suffix); }

Failure input_failure(const Error& e, const std::string& prefix = {}) {
  Json rec = agt::error_json(e);
  return Failure{kInputError, prefix + e.what(), rec};
}

/// Replays a script into a fresh session; `each` sees every applied action.
agt::Session replay(const std::string& path, std::uint64_t seed,
                    const std::function<void(const agt::ScriptLine&, const agt::ApplyResult&)>& each = {}) {
  std::vector<agt::ScriptLine> lines;
  try {
    lines = agt::parse_script(read_file(path));
  } catch (const Error& e) {
    throw input_failure(e);
  }
  agt::Session session(seed);
  for (const auto& line : lines) {
    try {
      const auto result = session.apply(line.action);
      if (each) each(line, result);
    } catch (const Error& e) {
      Failure f = input_failure(e, "line " + std::to_string(line.line) + ": ");
      f.record["line"] = line.line;
      f.record["action"] = std::string(agt::to_string(line.action.kind));
      throw f;
    }
  }
  return session;
}

/// A session from a `.agts` document, an `.actions` script or AGT source.
agt::SessionDocument open_session(const std::string& path, std::uint64_t seed) {
  if (ends_with(path, ".actions")) return agt::capture(replay(path, seed), true);
  const std::string text = read_file(path);
  try {
    if (ends_with(path, ".agts")) return agt::load(text);
    const agt::Source source = agt::parse_source(text);
    agt::SessionDocument doc;
    doc.workspace = agt::Workspace(seed);
    for (const auto& spec : source.declarations) doc.workspace.create(spec);
    doc.program = source.program;
    return doc;
  } catch (const Error& e) {
    throw input_failure(e, path + ": ");
  }
}

std::vector<std::int64_t> parse_inputs(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kInputError, "--inputs: '" + item + "' is not an integer", {}};
    }
  }
  return out;
}

void print_json(const Json& j) { std::cout << j.dump() << "\n"; }

// ---------------------------------------------------------------------------

int cmd_replay(const Globals& g, const std::string& script, const std::string& save_path, bool with_decls) {
  agt::Session session = replay(script, g.effective_seed(), [&](const agt::ScriptLine& line, const agt::ApplyResult& r) {
    if (!g.json) return;
    Json rec{{"line", line.line}, {"action", std::string(agt::to_string(line.action.kind))}};
    const Json applied = agt::apply_json(r);
    rec["emitted"] = applied.at("emitted");
    rec["events"] = applied.at("events");
    print_json(rec);
  });
  if (!save_path.empty()) write_text(save_path, agt::save(agt::capture(session, true)));
  std::string text = agt::print_program(session.program());
  if (with_decls) text = session.workspace().declarations(true) + (text.empty() ? "" : "\n" + text);
  if (g.json) {
    Json outputs = Json::array();
    for (const auto& o : session.outputs()) outputs.push_back(agt::output_json(o));
    print_json({{"program", text}, {"workspace", session.workspace().summary()}, {"outputs", outputs},
                {"paused", session.paused()}});
  } else {
    std::cout << text;
  }
  return 0;
}

int cmd_run(const Globals& g, const std::string& path, const std::string& macro, const std::string& mode,
            const std::string& detail, const std::string& granularity, const std::string& inputs, bool trace,
            std::size_t step_limit) {
  const agt::SessionDocument doc = open_session(path, g.effective_seed());
  agt::ExecOptions options;
  options.step_limit = step_limit;
  if (auto m = agt::parse_mode(mode)) {
    options.mode = *m;
  } else {
    throw Failure{kInputError, "unknown mode '" + mode + "'", {}};
  }
  if (auto d = agt::parse_detail(detail)) {
    options.detail = *d;
  } else {
    throw Failure{kInputError, "unknown detail '" + detail + "'", {}};
  }
  if (auto gr = agt::parse_granularity(granularity)) {
    options.granularity = *gr;
  } else {
    throw Failure{kInputError, "unknown granularity '" + granularity + "'", {}};
  }
  if (!doc.program.find(macro)) {
    throw Failure{kInputError, "UnknownMacro: no macro named '" + macro + "'",
                  agt::error_json(Error(ErrorCode::UnknownMacro, "no macro named '" + macro + "'"))};
  }
  const auto in = parse_inputs(inputs);
  const agt::RunResult r =
      agt::run_macro(doc.program, doc.workspace, macro, options, std::deque<std::int64_t>(in.begin(), in.end()));

  const bool show_events = trace || options.detail == agt::Detail::Summary;
  if (g.json) {
    for (const auto& e : r.events) {
      if (show_events || e.kind == agt::EventKind::OutputProduced || e.kind == agt::EventKind::Paused ||
          e.kind == agt::EventKind::Error) {
        print_json(agt::event_json(e));
      }
    }
  } else if (show_events) {
    for (const auto& e : r.events) std::cout << e.text() << "\n";
  } else {
    for (const auto& o : r.outputs) std::cout << o.message << o.value.payload << "\n";
  }

  if (r.state.status == agt::Status::Paused) {
    std::cerr << "PausedUnresolved: " << r.state.pause->text() << "\n";
    return kRuntimeError;
  }
  if (r.state.status == agt::Status::Errored) {
    std::cerr << "error: " << r.state.error->what() << "\n";
    return kRuntimeError;
  }
  return 0;
}

int cmd_transpile(const Globals& g, const std::string& path, const std::string& dialect, const std::string& flavor,
                  const std::string& entry, const std::string& out, const std::string& map) {
  agt::Dialect d{};
  agt::Flavor f{};
  try {
    d = agt::parse_dialect(dialect);
    f = agt::parse_flavor(flavor);
  } catch (const Error& e) {
    throw input_failure(e);
  }
  const agt::SessionDocument doc = open_session(path, g.effective_seed());
  agt::EmissionUnit unit;
  try {
    unit = agt::transpile(doc.program, d, f, {entry, &doc.workspace});
  } catch (const Error& e) {
    throw input_failure(e);
  }
  if (!map.empty()) write_text(map, unit.map_json().dump(2) + "\n");
  if (g.json) {
    Json rec = unit.map_json();
    rec["text"] = unit.text;
    print_json(rec);
    if (!out.empty()) write_text(out, unit.text);
  } else {
    write_text(out, unit.text);
  }
  return 0;
}

int cmd_fmt(const Globals& g, const std::string& path, bool in_place) {
  std::string text;
  if (ends_with(path, ".agt")) {
    try {
      text = agt::print_source(agt::parse_source(read_file(path)));
    } catch (const Error& e) {
      throw input_failure(e, path + ": ");
    }
  } else {
    const auto doc = open_session(path, g.effective_seed());
    text = agt::print_program(doc.program);
  }
  if (in_place) {
    write_text(path, text);
  } else if (g.json) {
    print_json({{"program", text}});
  } else {
    std::cout << text;
  }
  return 0;
}

int cmd_url(const Globals& g, const std::string& target, bool decode, const std::string& base, const std::string& out) {
  if (decode) {
    std::string text;
    try {
      text = agt::save(agt::load(agt::url_document(target)));
    } catch (const Error& e) {
      throw input_failure(e);
    }
    write_text(out, text);
    return 0;
  }
  const auto doc = open_session(target, g.effective_seed());
  const std::string url = agt::encode_url(doc, base);
  if (g.json) {
    print_json({{"url", url}});
  } else {
    write_text(out, url + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AlgoTouch engine: replay action scripts, run macros, transpile and share programs", "agt"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed for array contents (falls back to AGT_SEED, then 0)");
  app.add_flag("--json", g.json, "Structured JSON records on stdout");

  std::string script, session, macro, save_path, mode = "direct", detail = "detailed", granularity = "instruction";
  std::string inputs, dialect, flavor = "instrumented", entry, out, map, base(agt::kDefaultBaseUrl);
  bool with_decls = false, trace = false, in_place = false, decode = false;
  std::size_t step_limit = agt::ExecOptions{}.step_limit;

  auto* replay_cmd = app.add_subcommand("replay", "Apply an action script and print the resulting AGT program");
  replay_cmd->add_option("script", script, "Action script (.actions)")->required();
  replay_cmd->add_option("--save", save_path, "Write the session document (.agts) here");
  replay_cmd->add_flag("--declarations", with_decls, "Print declarations before the macros");

  auto* run_cmd = app.add_subcommand("run", "Run a macro and print its outputs");
  run_cmd->add_option("session", session, "Session (.agts, .agt or .actions)")->required();
  run_cmd->add_option("macro", macro, "Macro to run")->required();
  run_cmd->add_option("--mode", mode, "construction | direct | animation");
  run_cmd->add_option("--detail", detail, "detailed | summary");
  run_cmd->add_option("--granularity", granularity, "instruction | block");
  run_cmd->add_option("--inputs", inputs, "Comma-separated values for Read instructions");
  run_cmd->add_flag("--trace", trace, "Print the event trace");
  run_cmd->add_option("--step-limit", step_limit, "Maximum number of steps");

  auto* transpile_cmd = app.add_subcommand("transpile", "Emit the program in another language");
  auto* export_cmd = app.add_subcommand("export", "Emit the entry macro with every call inlined");
  for (auto* cmd : {transpile_cmd, export_cmd}) {
    cmd->add_option("session", session, "Session (.agts, .agt or .actions)")->required();
    cmd->add_option("--dialect", dialect, "agt | python | c | cpp | java")->required();
    cmd->add_option("--entry", entry, "Entry macro (default: the last one)");
    cmd->add_option("--out", out, "Output file (default: stdout)");
    cmd->add_option("--map", map, "Write the source and condition maps here as JSON");
  }
  transpile_cmd->add_option("--flavor", flavor, "instrumented | export");

  auto* fmt_cmd = app.add_subcommand("fmt", "Print AGT source in canonical form");
  fmt_cmd->add_option("file", session, "AGT source, session document or action script")->required();
  fmt_cmd->add_flag("--in-place", in_place, "Rewrite the file");

  auto* url_cmd = app.add_subcommand("url", "Encode a session as a shareable URL, or decode one");
  url_cmd->add_option("target", session, "Session to encode, or URL with --decode")->required();
  url_cmd->add_flag("--decode", decode, "Decode the prog parameter of a URL into a session document");
  url_cmd->add_option("--base", base, "Base URL");
  url_cmd->add_option("--out", out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*replay_cmd) return cmd_replay(g, script, save_path, with_decls);
    if (*run_cmd) return cmd_run(g, session, macro, mode, detail, granularity, inputs, trace, step_limit);
    if (*transpile_cmd) return cmd_transpile(g, session, dialect, flavor, entry, out, map);
    if (*export_cmd) return cmd_transpile(g, session, dialect, "export", entry, out, map);
    if (*fmt_cmd) return cmd_fmt(g, session, in_place);
    if (*url_cmd) return cmd_url(g, session, decode, base, out);
  } catch (const Failure& f) {
    if (g.json && !f.record.is_null()) {
      print_json(f.record);
    }
    std::cerr << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}

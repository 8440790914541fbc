#include "agt/persistence.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cctype>

#include "agt/error.hpp"
#include "agt/overloaded.hpp"
#include "agt/parser.hpp"
#include "agt/printer.hpp"
#include "agt/recorder.hpp"

namespace agt {

namespace {

const std::array<std::string_view, 9> kKnownFields = {"format",  "version", "seed",    "draws", "palette",
                                                      "entities", "program", "actions", "ui"};

[[noreturn]] void malformed(const std::string& detail) { throw Error(ErrorCode::MalformedDocument, detail); }

Json entity_json(const Entity& e) {
  return std::visit(overloaded{
                        [](const Scalar& s) {
                          return Json{{"kind", "variable"},
                                      {"name", s.name},
                                      {"type", s.value.kind == ValueKind::Char ? "char" : "int"},
                                      {"value", s.value.payload},
                                      {"constant", s.mutability == Mutability::Constant}};
                        },
                        [](const ArrayObject& a) { return Json{{"kind", "array"}, {"name", a.name}, {"cells", a.cells}}; },
                        [](const IndexVariable& i) {
                          return Json{{"kind", "index"}, {"name", i.name}, {"of", i.target}, {"value", i.value}};
                        },
                    },
                    e);
}

template <typename T>
T field(const Json& j, std::string_view key, std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string(where) + ": missing field '" + std::string(key) + "'");
  try {
    return it->template get<T>();
  } catch (const Json::exception&) {
    malformed(std::string(where) + ": field '" + std::string(key) + "' has the wrong type");
  }
}

EntitySpec entity_spec(const Json& j) {
  if (!j.is_object()) malformed("entities: each entry must be an object");
  const auto kind = field<std::string>(j, "kind", "entity");
  const auto name = field<std::string>(j, "name", "entity");
  if (kind == "variable") {
    const auto type = field<std::string>(j, "type", name);
    if (type != "int" && type != "char") malformed(name + ": unknown type '" + type + "'");
    return VariableSpec{name, type == "char" ? ValueKind::Char : ValueKind::Int, field<std::int64_t>(j, "value", name),
                        field<bool>(j, "constant", name)};
  }
  if (kind == "array") {
    auto cells = field<std::vector<std::int64_t>>(j, "cells", name);
    const std::size_t n = cells.size();
    return ArraySpec{name, std::move(cells), n};
  }
  if (kind == "index") return IndexSpec{name, field<std::string>(j, "of", name), field<std::int64_t>(j, "value", name)};
  malformed(name + ": unknown entity kind '" + kind + "'");
}

}  // namespace

SessionDocument capture(const Session& session, bool with_actions) {
  SessionDocument doc{session.workspace(), session.program(), std::nullopt, Json::object(), Json::object()};
  if (with_actions) doc.actions = session.log();
  return doc;
}

std::string save(const SessionDocument& doc) {
  Json j;
  j["format"] = "agts";
  j["version"] = kDocumentVersion;
  j["seed"] = doc.workspace.seed();
  j["draws"] = doc.workspace.draws();
  j["palette"] = doc.workspace.literals();
  Json entities = Json::array();
  for (const Entity& e : doc.workspace.entities()) entities.push_back(entity_json(e));
  j["entities"] = std::move(entities);
  j["program"] = print_program(doc.program);
  if (doc.actions) {
    Json actions = Json::array();
    for (const auto& a : *doc.actions) actions.push_back(a.to_json());
    j["actions"] = std::move(actions);
  }
  j["ui"] = doc.ui;
  for (const auto& [k, v] : doc.extra.items()) j[k] = v;
  return j.dump(2) + "\n";
}

SessionDocument load(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed("invalid JSON at byte " + std::to_string(e.byte));
  }
  if (!j.is_object()) malformed("the document must be a JSON object");
  if (field<std::string>(j, "format", "document") != "agts") malformed("not an agts document");
  const int version = field<int>(j, "version", "document");
  if (version != kDocumentVersion) {
    throw Error(ErrorCode::VersionUnsupported, "document version " + std::to_string(version) + " is not supported");
  }

  SessionDocument doc;
  try {
    doc.workspace = Workspace(field<std::uint64_t>(j, "seed", "document"));
    doc.workspace.skip_draws(field<std::uint64_t>(j, "draws", "document"));
    for (std::int64_t v : field<std::vector<std::int64_t>>(j, "palette", "document")) doc.workspace.add_literal(v);
    const Json& entities = j.at("entities");
    if (!entities.is_array()) malformed("entities must be an array");
    for (const Json& e : entities) doc.workspace.create(entity_spec(e));
    doc.program = parse_program(field<std::string>(j, "program", "document"));
    if (auto it = j.find("actions"); it != j.end()) {
      if (!it->is_array()) malformed("actions must be an array");
      std::vector<Action> actions;
      for (const Json& a : *it) actions.push_back(Action::from_json(a));
      doc.actions = std::move(actions);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedDocument) throw;
    malformed(std::string(to_string(e.code())) + ": " + e.detail());
  } catch (const Json::exception& e) {
    malformed(e.what());
  }
  if (auto it = j.find("ui"); it != j.end()) doc.ui = *it;
  for (const auto& [k, v] : j.items()) {
    if (std::find(kKnownFields.begin(), kKnownFields.end(), k) == kKnownFields.end()) doc.extra[k] = v;
  }
  return doc;
}

// ---------------------------------------------------------------------------
// URLs

std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

std::string percent_decode(std::string_view s) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out += ' ';
    } else if (s[i] == '%') {
      if (i + 2 >= s.size()) malformed("truncated percent escape");
      const int hi = hex(s[i + 1]);
      const int lo = hex(s[i + 2]);
      if (hi < 0 || lo < 0) malformed("invalid percent escape");
      out += static_cast<char>(hi * 16 + lo);
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

namespace {
constexpr std::string_view kB64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
}

std::string base64url_encode(std::string_view bytes) {
  std::string out;
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const auto n = (std::uint32_t(std::uint8_t(bytes[i])) << 16) | (std::uint32_t(std::uint8_t(bytes[i + 1])) << 8) |
                   std::uint8_t(bytes[i + 2]);
    for (int s = 18; s >= 0; s -= 6) out += kB64[(n >> s) & 63];
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const auto n = std::uint32_t(std::uint8_t(bytes[i])) << 16;
    out += kB64[(n >> 18) & 63];
    out += kB64[(n >> 12) & 63];
  } else if (rest == 2) {
    const auto n = (std::uint32_t(std::uint8_t(bytes[i])) << 16) | (std::uint32_t(std::uint8_t(bytes[i + 1])) << 8);
    out += kB64[(n >> 18) & 63];
    out += kB64[(n >> 12) & 63];
    out += kB64[(n >> 6) & 63];
  }
  return out;
}

std::string base64url_decode(std::string_view text) {
  std::string out;
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    int pos = -1;
    if (c >= 'A' && c <= 'Z') pos = c - 'A';
    if (c >= 'a' && c <= 'z') pos = c - 'a' + 26;
    if (c >= '0' && c <= '9') pos = c - '0' + 52;
    if (c == '-') pos = 62;
    if (c == '_') pos = 63;
    if (pos < 0) malformed("invalid base64url character");
    acc = (acc << 6) | static_cast<std::uint32_t>(pos);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out += static_cast<char>((acc >> bits) & 0xFF);
    }
  }
  if (bits >= 6) malformed("truncated base64url data");
  return out;
}

std::string deflate(std::string_view bytes) {
  uLongf size = compressBound(static_cast<uLong>(bytes.size()));
  std::string out(size, '\0');
  if (compress2(reinterpret_cast<Bytef*>(out.data()), &size, reinterpret_cast<const Bytef*>(bytes.data()),
                static_cast<uLong>(bytes.size()), Z_BEST_COMPRESSION) != Z_OK) {
    malformed("compression failed");
  }
  out.resize(size);
  return out;
}

std::string inflate(std::string_view bytes) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) malformed("decompression failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  std::string out;
  std::array<char, 16384> buf{};
  int rc = Z_OK;
  while (rc == Z_OK) {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = ::inflate(&zs, Z_NO_FLUSH);
    out.append(buf.data(), buf.size() - zs.avail_out);
  }
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) malformed("corrupt compressed document");
  return out;
}

std::string encode_url(const SessionDocument& doc, std::string_view base) {
  const std::string text = save(doc);
  std::string value = text.size() > kCompressThreshold ? "z." + base64url_encode(deflate(text)) : percent_encode(text);
  const char sep = base.find('?') == std::string_view::npos ? '?' : '&';
  return std::string(base) + sep + std::string(kUrlParameter) + "=" + value;
}

std::string url_document(std::string_view url) {
  const std::string text(url);
  const auto q = text.find('?');
  if (q != std::string::npos) {
    std::string query = text.substr(q + 1);
    query = query.substr(0, query.find('#'));
    std::size_t start = 0;
    while (start <= query.size()) {
      const auto amp = std::min(query.find('&', start), query.size());
      const std::string param = query.substr(start, amp - start);
      const auto eq = param.find('=');
      if (eq != std::string::npos && param.substr(0, eq) == kUrlParameter) {
        const std::string value = param.substr(eq + 1);
        if (value.starts_with("z.")) return inflate(base64url_decode(value.substr(2)));
        return percent_decode(value);
      }
      start = amp + 1;
    }
  }
  malformed("MissingParam: the URL has no '" + std::string(kUrlParameter) + "' parameter");
}

SessionDocument decode_url(std::string_view url) { return load(url_document(url)); }

}  // namespace agt

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agt/action.hpp"
#include "agt/ast.hpp"
#include "agt/workspace.hpp"

namespace agt {

class Session;

inline constexpr int kDocumentVersion = 1;
inline constexpr std::string_view kDefaultBaseUrl = "http://localhost/algotouch/index.html";
inline constexpr std::string_view kUrlParameter = "prog";
/// Documents longer than this are deflated before being put in a URL.
inline constexpr std::size_t kCompressThreshold = 512;

/// A saved session. `ui` and `extra` (unknown top-level fields) are carried
/// through untouched.
struct SessionDocument {
  Workspace workspace;
  Program program;
  std::optional<std::vector<Action>> actions;
  Json ui = Json::object();
  Json extra = Json::object();

  friend bool operator==(const SessionDocument&, const SessionDocument&) = default;
};

[[nodiscard]] SessionDocument capture(const Session& session, bool with_actions = false);

[[nodiscard]] std::string save(const SessionDocument& doc);
/// Throws MalformedDocument (with the byte position when the JSON itself is
/// broken) or VersionUnsupported.
[[nodiscard]] SessionDocument load(std::string_view text);

[[nodiscard]] std::string encode_url(const SessionDocument& doc, std::string_view base = kDefaultBaseUrl);
/// The document text carried by the `prog` parameter. Throws MalformedDocument.
[[nodiscard]] std::string url_document(std::string_view url);
[[nodiscard]] SessionDocument decode_url(std::string_view url);

[[nodiscard]] std::string percent_encode(std::string_view s);
[[nodiscard]] std::string percent_decode(std::string_view s);
[[nodiscard]] std::string base64url_encode(std::string_view bytes);
[[nodiscard]] std::string base64url_decode(std::string_view text);
[[nodiscard]] std::string deflate(std::string_view bytes);
[[nodiscard]] std::string inflate(std::string_view bytes);

}  // namespace agt

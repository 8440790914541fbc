#include <gtest/gtest.h>

#include "agt/error.hpp"
#include "agt/persistence.hpp"
#include "agt/recorder.hpp"
#include "oracles.hpp"

using namespace agt;

namespace {

SessionDocument sample(bool with_actions = true) {
  return capture(oracle::replay(oracle::corpus_dir() / "tri_insertion.actions"), with_actions);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidAction;
}

}  // namespace

TEST(Persistence, SaveLoadIsIdentity) {
  const SessionDocument doc = sample();
  const std::string text = save(doc);
  EXPECT_EQ(load(text), doc);
  EXPECT_EQ(save(load(text)), text);
  const Json j = Json::parse(text);
  EXPECT_EQ(j["format"], "agts");
  EXPECT_EQ(j["version"], 1);
  EXPECT_TRUE(j["program"].is_string());
  EXPECT_TRUE(j["actions"].is_array());
}

TEST(Persistence, LoadedSessionReplaysToTheSameProgram) {
  const SessionDocument doc = load(save(sample()));
  const Session again = oracle::replay_actions(*doc.actions);
  EXPECT_EQ(again.program(), doc.program);
  EXPECT_EQ(again.workspace(), doc.workspace);
}

TEST(Persistence, UnknownFieldsAreKept) {
  Json j = Json::parse(save(sample(false)));
  j["ui"] = Json{{"theme", "dark"}, {"zoom", 2}};
  j["plugin"] = Json{{"state", Json::array({1, 2})}};
  const SessionDocument doc = load(j.dump());
  EXPECT_EQ(doc.ui["theme"], "dark");
  EXPECT_EQ(doc.extra["plugin"]["state"], Json::array({1, 2}));
  const Json back = Json::parse(save(doc));
  EXPECT_EQ(back["ui"]["theme"], "dark");
  EXPECT_EQ(back["plugin"], j["plugin"]);
}

TEST(Persistence, BrokenDocumentsAreRejected) {
  const std::string text = save(sample());
  try {
    (void)load(text.substr(0, text.size() / 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedDocument);
    EXPECT_NE(e.detail().find("byte"), std::string::npos);
  }
  Json j = Json::parse(text);
  j["version"] = 2;
  EXPECT_EQ(code_of([&] { (void)load(j.dump()); }), ErrorCode::VersionUnsupported);
  j = Json::parse(text);
  j["format"] = "other";
  EXPECT_EQ(code_of([&] { (void)load(j.dump()); }), ErrorCode::MalformedDocument);
  j = Json::parse(text);
  j.erase("entities");
  EXPECT_EQ(code_of([&] { (void)load(j.dump()); }), ErrorCode::MalformedDocument);
  j = Json::parse(text);
  j["program"] = "Define\n";
  EXPECT_EQ(code_of([&] { (void)load(j.dump()); }), ErrorCode::MalformedDocument);
  EXPECT_EQ(code_of([&] { (void)load("[]"); }), ErrorCode::MalformedDocument);
}

TEST(Persistence, RandomArraysReloadWithTheirDraws) {
  Session s(42);
  (void)s.apply(Action::declare_random_array("t", 8));
  const SessionDocument doc = load(save(capture(s)));
  EXPECT_EQ(doc.workspace, s.workspace());
  Session more(doc.workspace, doc.program);
  (void)more.apply(Action::declare_random_array("u", 4));
  (void)s.apply(Action::declare_random_array("u", 4));
  EXPECT_EQ(more.workspace(), s.workspace());
}

TEST(Url, SmallDocumentsArePercentEncoded) {
  Session s;
  (void)s.apply(Action::declare_variable("x", 1));
  const SessionDocument doc = capture(s);
  ASSERT_LE(save(doc).size(), kCompressThreshold);
  const std::string url = encode_url(doc);
  EXPECT_TRUE(url.starts_with(std::string(kDefaultBaseUrl) + "?prog=%7B"));
  EXPECT_EQ(decode_url(url), doc);
}

TEST(Url, LargeDocumentsAreCompressed) {
  const SessionDocument doc = sample();
  const std::string url = encode_url(doc, "https://example.org/app?lang=fr");
  EXPECT_NE(url.find("?lang=fr&prog=z."), std::string::npos);
  EXPECT_LT(url.size(), save(doc).size());
  EXPECT_EQ(decode_url(url + "#top"), doc);
}

TEST(Url, MissingOrBrokenParameter) {
  try {
    (void)decode_url("http://localhost/index.html?lang=fr");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedDocument);
    EXPECT_TRUE(e.detail().starts_with("MissingParam"));
  }
  EXPECT_EQ(code_of([] { (void)decode_url("http://h/?prog=%7"); }), ErrorCode::MalformedDocument);
  EXPECT_EQ(code_of([] { (void)decode_url("http://h/?prog=z.!!"); }), ErrorCode::MalformedDocument);
  EXPECT_EQ(code_of([] { (void)decode_url("http://h/?prog=z.AAAA"); }), ErrorCode::MalformedDocument);
}

TEST(Url, Codecs) {
  EXPECT_EQ(percent_encode("a b/é"), "a%20b%2F%C3%A9");
  EXPECT_EQ(percent_decode("a%20b%2F%C3%A9"), "a b/é");
  EXPECT_EQ(percent_decode("a+b"), "a b");
  for (const std::string s : {"", "f", "fo", "foo", "foob", "fooba", "foobar"}) {
    EXPECT_EQ(base64url_decode(base64url_encode(s)), s);
  }
  EXPECT_EQ(base64url_encode("\xfb\xff"), "-_8");
  const std::string big(5000, 'a');
  EXPECT_EQ(inflate(deflate(big)), big);
  EXPECT_LT(deflate(big).size(), 100u);
}

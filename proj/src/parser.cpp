#include "agt/parser.hpp"

#include <cctype>
#include <charconv>

namespace agt {

namespace {

enum class Tok : std::uint8_t { Ident, Number, String, Comment, Symbol, Eof };

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct SyntaxFailure {
  ParseDiagnostic diagnostic;
};

[[noreturn]] void fail_at(const Token& t, std::string message) {
  throw SyntaxFailure{{t.line, t.column, std::move(message)}};
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Eof: return "end of input";
    case Tok::Comment: return "comment";
    case Tok::String: return "string";
    default: return "'" + t.text + "'";
  }
}

std::string trim_right(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  return s;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (c == '/' && peek(1) == '/') {
        advance(2);
        std::string text;
        while (pos_ < src_.size() && src_[pos_] != '\n') text += advance(1);
        text = trim_right(text);
        if (!text.empty() && text.front() == ' ') text.erase(0, 1);
        t.kind = Tok::Comment;
        t.text = text;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text += advance(1);
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance(1);
      } else if (c == '"') {
        t.kind = Tok::String;
        advance(1);
        while (true) {
          if (pos_ >= src_.size() || src_[pos_] == '\n') fail_at(t, "unterminated string");
          char d = advance(1)[0];
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= src_.size()) fail_at(t, "unterminated string");
            d = advance(1)[0];
          }
          t.text += d;
        }
      } else {
        t.kind = Tok::Symbol;
        static constexpr std::string_view kTwo[] = {"<=", ">=", "==", "!=", "&&", "||"};
        std::string two(src_.substr(pos_, 2));
        bool matched = false;
        for (auto s : kTwo) {
          if (two == s) {
            t.text = two;
            advance(2);
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (std::string_view("=;(){}[].,+-*/%<>!").find(c) == std::string_view::npos) {
            fail_at(t, std::string("unexpected character '") + c + "'");
          }
          t.text = advance(1);
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  std::string advance(std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      char c = src_[pos_++];
      s += c;
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
    return s;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_block_keyword(const Token& t) {
  return t.kind == Tok::Ident && (parse_block_id(t.text).has_value() || t.text == "End");
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Source source() {
    Source out;
    std::vector<std::string> pending;
    while (!at_eof()) {
      if (cur().kind == Tok::Comment) {
        pending.push_back(take().text);
      } else if (is_word("Define")) {
        out.program.macros.push_back(macro(std::move(pending)));
        pending.clear();
      } else if (is_word("int") || is_word("char") || is_word("const") || is_word("index")) {
        if (!out.program.macros.empty()) fail_at(cur(), "declarations must precede macro definitions");
        pending.clear();
        out.declarations.push_back(declaration());
      } else {
        fail_at(cur(), "expected declaration or 'Define', found " + describe(cur()));
      }
    }
    return out;
  }

  Comparison lone_comparison() {
    Comparison c = comparison();
    expect_eof();
    return c;
  }

  Operand lone_operand() {
    Operand o = operand();
    expect_eof();
    return o;
  }

  Ref lone_ref() {
    Ref r = ref();
    expect_eof();
    return r;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_eof() const { return cur().kind == Tok::Eof; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_word(std::string_view w) const { return cur().kind == Tok::Ident && cur().text == w; }
  bool is_sym(std::string_view s) const { return cur().kind == Tok::Symbol && cur().text == s; }

  void expect_eof() {
    if (!at_eof()) fail_at(cur(), "expected end of input, found " + describe(cur()));
  }

  Token expect_sym(std::string_view s) {
    if (!is_sym(s)) fail_at(cur(), "expected '" + std::string(s) + "', found " + describe(cur()));
    return take();
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) fail_at(cur(), "expected '" + std::string(w) + "', found " + describe(cur()));
    take();
  }

  std::string identifier() {
    if (cur().kind != Tok::Ident || !is_identifier(cur().text)) {
      fail_at(cur(), "expected identifier, found " + describe(cur()));
    }
    return take().text;
  }

  std::int64_t number() {
    bool negative = false;
    if (is_sym("-")) {
      take();
      negative = true;
    }
    if (cur().kind != Tok::Number) fail_at(cur(), "expected integer literal, found " + describe(cur()));
    const Token t = take();
    std::string digits = (negative ? "-" : "") + t.text;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || p != digits.data() + digits.size()) fail_at(t, "integer literal out of range");
    return v;
  }

  EntitySpec declaration() {
    if (is_word("const")) {
      take();
      ValueKind kind = ValueKind::Int;
      if (is_word("char")) {
        kind = ValueKind::Char;
      } else if (!is_word("int")) {
        fail_at(cur(), "expected 'int' or 'char', found " + describe(cur()));
      }
      take();
      std::string name = identifier();
      expect_sym("=");
      std::int64_t v = number();
      expect_sym(";");
      return VariableSpec{name, kind, v, true};
    }
    if (is_word("index")) {
      take();
      std::string name = identifier();
      expect_word("of");
      std::string array = identifier();
      std::int64_t v = 0;
      if (is_sym("=")) {
        take();
        v = number();
      }
      expect_sym(";");
      return IndexSpec{name, array, v};
    }
    const bool is_char = is_word("char");
    take();
    std::string name = identifier();
    if (is_sym("[")) {
      if (is_char) fail_at(cur(), "arrays hold integers only");
      take();
      const Token len_tok = cur();
      std::int64_t len = number();
      if (len < 0) fail_at(len_tok, "array length must be non-negative");
      expect_sym("]");
      ArraySpec spec{name, std::nullopt, static_cast<std::size_t>(len)};
      if (is_sym("=")) {
        take();
        const Token brace = expect_sym("{");
        std::vector<std::int64_t> cells;
        if (!is_sym("}")) {
          cells.push_back(number());
          while (is_sym(",")) {
            take();
            cells.push_back(number());
          }
        }
        expect_sym("}");
        if (cells.size() != static_cast<std::size_t>(len)) {
          fail_at(brace, "array '" + name + "' declares " + std::to_string(len) + " cells but lists " +
                             std::to_string(cells.size()));
        }
        spec.cells = std::move(cells);
      }
      expect_sym(";");
      return spec;
    }
    std::int64_t v = 0;
    if (is_sym("=")) {
      take();
      v = number();
    }
    expect_sym(";");
    return VariableSpec{name, is_char ? ValueKind::Char : ValueKind::Int, v, false};
  }

  MacroDef macro(std::vector<std::string> comment) {
    expect_word("Define");
    std::string name = identifier();
    skip_stray_comments();
    if (is_word("Do")) {
      MacroDef m = MacroDef::simple(name, std::move(comment));
      take();
      m.do_block = block();
      expect_word("End");
      return m;
    }
    if (!is_word("From")) fail_at(cur(), "expected 'Do' or 'From', found " + describe(cur()));
    MacroDef m = MacroDef::looping(name, std::move(comment));
    take();
    m.from = block();
    expect_word("Until");
    m.until = until();
    expect_word("Loop");
    m.loop = block();
    expect_word("Terminate");
    m.terminate = block();
    expect_word("End");
    return m;
  }

  void skip_stray_comments() {
    while (cur().kind == Tok::Comment) {
      if (!cur().text.empty() && cur().text != "...") fail_at(cur(), "unexpected comment before block keyword");
      take();
    }
  }

  Block block() {
    Block b;
    bool seen_placeholder = false;
    while (!is_block_keyword(cur())) {
      if (at_eof()) fail_at(cur(), "expected 'End', found end of input");
      if (cur().kind == Tok::Comment) {
        if (cur().text != "...") fail_at(cur(), "only the '// ...' placeholder may appear as a block comment");
        take();
        seen_placeholder = true;
        continue;
      }
      b.body.push_back(instruction());
    }
    b.placeholder = seen_placeholder && b.body.empty();
    return b;
  }

  UntilBlock until() {
    UntilBlock u;
    bool seen_placeholder = false;
    while (!is_block_keyword(cur())) {
      if (at_eof()) fail_at(cur(), "expected 'Loop', found end of input");
      if (cur().kind == Tok::Comment) {
        if (cur().text != "...") fail_at(cur(), "only the '// ...' placeholder may appear in Until");
        take();
        seen_placeholder = true;
        continue;
      }
      u.conditions.push_back(comparison());
    }
    u.placeholder = seen_placeholder && u.conditions.empty();
    return u;
  }

  Instruction instruction() {
    if (is_word("Read") || is_word("Write")) {
      const bool read = cur().text == "Read";
      take();
      if (cur().kind != Tok::String) fail_at(cur(), "expected message string, found " + describe(cur()));
      std::string msg = take().text;
      Ref r = ref();
      expect_sym(";");
      if (read) return {ReadInstr{msg, r}};
      return {WriteInstr{msg, r}};
    }
    if (is_word("if")) return {alternative()};
    if (cur().kind == Tok::Ident && ahead(1).kind == Tok::Symbol && ahead(1).text == ";") {
      std::string name = identifier();
      take();
      return {CallInstr{name}};
    }
    Ref dst = ref();
    expect_sym("=");
    Expression e = expression();
    expect_sym(";");
    return {Assign{dst, e}};
  }

  IfInstr alternative() {
    expect_word("if");
    expect_sym("(");
    IfInstr out;
    out.cond = comparison();
    expect_sym(")");
    expect_sym("{");
    branch(out.then_comment, out.then_body, nullptr);
    expect_sym("}");
    if (is_word("else")) {
      take();
      expect_sym("{");
      bool todo = false;
      branch(out.else_comment, out.else_body, &todo);
      expect_sym("}");
      out.else_state = todo ? ElseState::ToDo : ElseState::Present;
    }
    return out;
  }

  void branch(std::string& comment, std::vector<Instruction>& body, bool* todo) {
    bool has_comment = false;
    while (!is_sym("}")) {
      if (at_eof()) fail_at(cur(), "expected '}', found end of input");
      if (cur().kind == Tok::Comment) {
        if (todo && cur().text == "TO DO" && body.empty() && !*todo) {
          *todo = true;
        } else if (!has_comment && body.empty() && !(todo && *todo)) {
          comment = cur().text;
          has_comment = true;
        } else {
          fail_at(cur(), "unexpected comment inside alternative");
        }
        take();
        continue;
      }
      if (todo && *todo) fail_at(cur(), "a '// TO DO' branch cannot hold instructions");
      body.push_back(instruction());
    }
  }

  Expression expression() {
    Operand a = operand();
    if (cur().kind == Tok::Symbol) {
      if (auto op = parse_arith_op(cur().text)) {
        take();
        Operand b = operand();
        if (cur().kind == Tok::Symbol && parse_arith_op(cur().text)) {
          fail_at(cur(), "operators are binary: at most one per assignment");
        }
        return Expression::binary(std::move(a), *op, std::move(b));
      }
    }
    return Expression::of(std::move(a));
  }

  Comparison comparison() {
    Operand a = operand();
    if (cur().kind != Tok::Symbol || !parse_rel(cur().text)) {
      fail_at(cur(), "expected one of < <= == > >= !=, found " + describe(cur()));
    }
    Rel rel = *parse_rel(take().text);
    Operand b = operand();
    if (is_sym("&&") || is_sym("||") || is_sym("!") || is_word("and") || is_word("or") || is_word("not")) {
      fail_at(cur(), "boolean connectives are not part of AGT; list exit conditions one per line");
    }
    return {std::move(a), rel, std::move(b)};
  }

  Operand operand() {
    if (is_word("and") || is_word("or") || is_word("not") || is_sym("!")) {
      fail_at(cur(), "boolean connectives are not part of AGT");
    }
    if (cur().kind == Tok::Number || is_sym("-")) return Operand::literal(number());
    return Operand::of(ref());
  }

  Ref ref() {
    std::string name = identifier();
    if (is_sym("[")) {
      take();
      Ref r;
      if (cur().kind == Tok::Number || is_sym("-")) {
        r = Ref::cell(name, number());
      } else {
        std::string idx = identifier();
        if (cur().kind == Tok::Symbol && parse_arith_op(cur().text)) {
          fail_at(cur(), "a cell is addressed by one index variable or a literal position");
        }
        r = Ref::indexed(name, idx);
      }
      expect_sym("]");
      return r;
    }
    if (is_sym(".")) {
      take();
      expect_word("length");
      return Ref::length(name);
    }
    return Ref::named(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <class F>
auto guarded(std::string_view text, F&& f) {
  try {
    Parser p(Lexer(text).run());
    return f(p);
  } catch (const SyntaxFailure& e) {
    throw Error(ErrorCode::SyntaxError, e.diagnostic.text());
  }
}

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult r;
  try {
    Parser p(Lexer(text).run());
    r.source = p.source();
  } catch (const SyntaxFailure& e) {
    r.diagnostics.push_back(e.diagnostic);
  }
  return r;
}

Source parse_source(std::string_view text) {
  ParseResult r = parse(text);
  if (!r.ok()) throw Error(ErrorCode::SyntaxError, r.diagnostics.front().text());
  return std::move(*r.source);
}

Program parse_program(std::string_view text) { return parse_source(text).program; }

Comparison parse_comparison(std::string_view text) {
  return guarded(text, [](Parser& p) { return p.lone_comparison(); });
}

Operand parse_operand(std::string_view text) {
  return guarded(text, [](Parser& p) { return p.lone_operand(); });
}

Ref parse_ref(std::string_view text) {
  return guarded(text, [](Parser& p) { return p.lone_ref(); });
}

}  // namespace agt

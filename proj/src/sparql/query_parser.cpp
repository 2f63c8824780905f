#include <algorithm>
#include <cctype>
#include <set>

#include "ontokms/error.hpp"
#include "ontokms/rdf/vocabulary.hpp"
#include "ontokms/sparql/query.hpp"

namespace ontokms::sparql {

namespace {

enum class Tok { Iri, PName, Var, String, LangTag, Integer, Word, Punct, Caret, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool is_name_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_name_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
}

bool is_valid_var_name(std::string_view name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name[0]);
  if (!std::isalpha(first) && first != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      const std::size_t line = line_, col = column_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      out.push_back(next(line, col));
    }
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    }
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next(std::size_t line, std::size_t col) {
    const char c = peek();
    if (c == '<') {
      advance();
      std::string iri;
      while (peek() != '>') {
        if (pos_ >= text_.size()) fail("unterminated IRI");
        if (std::isspace(static_cast<unsigned char>(peek())) || peek() == '<') {
          fail("illegal character in IRI");
        }
        iri += peek();
        advance();
      }
      advance();
      return {Tok::Iri, iri, line, col};
    }
    if (c == '?' || c == '$') {
      advance();
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        name += peek();
        advance();
      }
      if (!is_valid_var_name(name)) {
        throw ParseError("invalid variable name '" + name + "'", line, col);
      }
      return {Tok::Var, name, line, col};
    }
    if (c == '"' || c == '\'') return string_token(line, col);
    if (c == '@') {
      advance();
      std::string tag;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-') {
        tag += static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
        advance();
      }
      if (!rdf::is_valid_lang_tag(tag)) {
        throw ParseError("invalid language tag '" + tag + "'", line, col);
      }
      return {Tok::LangTag, tag, line, col};
    }
    if (c == '^' && peek(1) == '^') {
      advance();
      advance();
      return {Tok::Caret, "^^", line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      return {Tok::Integer, digits, line, col};
    }
    if (is_name_start(static_cast<unsigned char>(c)) || c == ':') {
      std::string word;
      while (is_name_char(static_cast<unsigned char>(peek()))) {
        word += peek();
        advance();
      }
      if (peek() == ':') {
        word += ':';
        advance();
        while (is_name_char(static_cast<unsigned char>(peek())) || peek() == ':') {
          word += peek();
          advance();
        }
        while (word.back() == '.') {
          word.pop_back();
          --pos_;
          --column_;
        }
        return {Tok::PName, word, line, col};
      }
      while (!word.empty() && word.back() == '.') {
        word.pop_back();
        --pos_;
        --column_;
      }
      return {Tok::Word, word, line, col};
    }
    if (std::string_view("{}().,;*=").find(c) != std::string_view::npos) {
      advance();
      return {Tok::Punct, std::string(1, c), line, col};
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Token string_token(std::size_t line, std::size_t col) {
    const char quote = peek();
    advance();
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      const char c = peek();
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\n') fail("newline in string");
      if (c == '\\') {
        advance();
        switch (peek()) {
          case 't': value += '\t'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'b': value += '\b'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          default: fail("invalid escape sequence");
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    return {Tok::String, value, line, col};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class QueryParser {
 public:
  explicit QueryParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Query run() {
    prologue();
    select_clause();
    where_clause();
    modifiers();
    if (cur().kind != Tok::End) fail("unexpected trailing input '" + cur().text + "'");
    check_variables();
    return std::move(query_);
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token* at = nullptr) const {
    const Token& t = at ? *at : cur();
    throw ParseError(message, t.line, t.column);
  }

  const Token& cur() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  bool is_keyword(std::string_view kw) const {
    return cur().kind == Tok::Word && upper(cur().text) == kw;
  }
  bool is_punct(char c) const {
    return cur().kind == Tok::Punct && cur().text[0] == c;
  }
  void expect_punct(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw)) fail("expected " + std::string(kw));
    ++pos_;
  }

  void prologue() {
    while (true) {
      if (is_keyword("PREFIX")) {
        ++pos_;
        const Token& name = take();
        if (name.kind != Tok::PName || name.text.back() != ':' ||
            name.text.find(':') != name.text.size() - 1) {
          fail("expected prefix name ending in ':'", &name);
        }
        const Token& iri = take();
        if (iri.kind != Tok::Iri) fail("expected IRI in PREFIX", &iri);
        query_.prefixes[name.text.substr(0, name.text.size() - 1)] = iri.text;
      } else if (is_keyword("BASE")) {
        ++pos_;
        const Token& iri = take();
        if (iri.kind != Tok::Iri) fail("expected IRI in BASE", &iri);
        base_ = iri.text;
      } else {
        return;
      }
    }
  }

  void select_clause() {
    expect_keyword("SELECT");
    if (is_keyword("DISTINCT")) {
      ++pos_;
      query_.distinct = true;
    }
    if (is_punct('*')) {
      ++pos_;
      query_.select_all = true;
      return;
    }
    while (cur().kind == Tok::Var) {
      select_tokens_.push_back(pos_);
      const std::string& name = take().text;
      if (std::find(query_.select_vars.begin(), query_.select_vars.end(), name) ==
          query_.select_vars.end()) {
        query_.select_vars.push_back(name);
      }
    }
    if (query_.select_vars.empty()) fail("expected '*' or variables after SELECT");
  }

  void where_clause() {
    if (is_keyword("WHERE")) ++pos_;
    expect_punct('{');
    while (!is_punct('}')) {
      if (cur().kind == Tok::End) fail("unterminated group, expected '}'");
      if (is_keyword("FILTER")) {
        ++pos_;
        filter();
        continue;
      }
      triples_block();
      if (is_punct('.')) ++pos_;
    }
    ++pos_;
  }

  void triples_block() {
    const PatternSlot subject = slot(false);
    while (true) {
      const PatternSlot predicate = verb();
      while (true) {
        const PatternSlot object = slot(true);
        query_.patterns.push_back({subject, predicate, object});
        if (!is_punct(',')) break;
        ++pos_;
      }
      if (!is_punct(';')) break;
      while (is_punct(';')) ++pos_;
      if (is_punct('.') || is_punct('}')) break;
    }
  }

  PatternSlot verb() {
    if (cur().kind == Tok::Word && cur().text == "a") {
      ++pos_;
      return rdf::Term::iri(std::string(rdf::vocab::kRdfType));
    }
    return slot(false);
  }

  rdf::Term iri_from(const Token& t) {
    std::string value;
    if (t.kind == Tok::Iri) {
      value = base_.empty() ? t.text : resolve(t.text);
    } else {
      const std::size_t colon = t.text.find(':');
      const std::string prefix = t.text.substr(0, colon);
      auto it = query_.prefixes.find(prefix);
      if (it == query_.prefixes.end()) fail("unknown prefix '" + prefix + ":'", &t);
      value = it->second + t.text.substr(colon + 1);
    }
    if (!rdf::is_valid_iri(value)) fail("invalid IRI '" + value + "'", &t);
    return rdf::Term::iri(value);
  }

  std::string resolve(const std::string& ref) const {
    if (ref.find(':') != std::string::npos) return ref;
    return base_ + ref;
  }

  PatternSlot slot(bool allow_literal) {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Var:
        return Variable{t.text};
      case Tok::Iri:
      case Tok::PName:
        return iri_from(t);
      case Tok::String: {
        if (!allow_literal) fail("literal is only allowed in object position", &t);
        if (cur().kind == Tok::LangTag) return rdf::Term::literal(t.text, take().text);
        if (cur().kind == Tok::Caret) {
          ++pos_;
          const Token& dt = take();
          if (dt.kind != Tok::Iri && dt.kind != Tok::PName) fail("expected datatype IRI", &dt);
          return rdf::Term::literal(t.text + "^^" + iri_from(dt).canonical());
        }
        return rdf::Term::literal(t.text);
      }
      default:
        fail(t.kind == Tok::End ? "unexpected end of query"
                                : "unexpected token '" + t.text + "'",
             &t);
    }
  }

  std::string filter_variable() {
    if (cur().kind == Tok::Word && upper(cur().text) == "STR") {
      ++pos_;
      expect_punct('(');
      std::string v = filter_variable();
      expect_punct(')');
      return v;
    }
    const Token& t = take();
    if (t.kind != Tok::Var) fail("expected variable", &t);
    filter_tokens_.push_back(&t - tokens_.data());
    return t.text;
  }

  std::string string_arg() {
    const Token& t = take();
    if (t.kind != Tok::String) fail("expected string literal", &t);
    return t.text;
  }

  void filter() {
    const bool parenthesized = is_punct('(');
    if (parenthesized) ++pos_;
    if (is_keyword("REGEX")) {
      ++pos_;
      expect_punct('(');
      RegexFilter f;
      f.variable = filter_variable();
      expect_punct(',');
      const Token& pattern_token = cur();
      f.pattern = string_arg();
      if (is_punct(',')) {
        ++pos_;
        const Token& flags_token = cur();
        f.flags = string_arg();
        if (f.flags.find_first_not_of('i') != std::string::npos) {
          fail("unsupported regex flags '" + f.flags + "' (only 'i')", &flags_token);
        }
      }
      expect_punct(')');
      auto options = std::regex::ECMAScript;
      if (!f.flags.empty()) options |= std::regex::icase;
      try {
        f.compiled = std::make_shared<const std::regex>(f.pattern, options);
      } catch (const std::regex_error& e) {
        fail("invalid regex '" + f.pattern + "': " + e.what(), &pattern_token);
      }
      query_.filters.emplace_back(std::move(f));
    } else if (is_keyword("LANG")) {
      ++pos_;
      expect_punct('(');
      LangFilter f;
      f.variable = filter_variable();
      expect_punct(')');
      expect_punct('=');
      const Token& tag_token = cur();
      f.tag = string_arg();
      std::transform(f.tag.begin(), f.tag.end(), f.tag.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (!f.tag.empty() && !rdf::is_valid_lang_tag(f.tag)) {
        fail("invalid language tag '" + f.tag + "'", &tag_token);
      }
      query_.filters.emplace_back(std::move(f));
    } else {
      fail("unsupported filter expression (expected regex(...) or lang(...) = \"tag\")");
    }
    if (parenthesized) expect_punct(')');
  }

  std::size_t integer() {
    const Token& t = take();
    if (t.kind != Tok::Integer) fail("expected non-negative integer", &t);
    try {
      return static_cast<std::size_t>(std::stoull(t.text));
    } catch (const std::exception&) {
      fail("integer out of range", &t);
    }
  }

  void modifiers() {
    bool seen_limit = false, seen_offset = false;
    while (true) {
      if (is_keyword("LIMIT") && !seen_limit) {
        ++pos_;
        query_.limit = integer();
        seen_limit = true;
      } else if (is_keyword("OFFSET") && !seen_offset) {
        ++pos_;
        query_.offset = integer();
        seen_offset = true;
      } else {
        return;
      }
    }
  }

  void check_variables() {
    std::set<std::string> known;
    for (const auto& v : query_.pattern_variables()) known.insert(v);
    for (std::size_t index : select_tokens_) {
      if (!known.count(tokens_[index].text)) {
        fail("selected variable ?" + tokens_[index].text + " does not occur in any pattern",
             &tokens_[index]);
      }
    }
    for (std::size_t index : filter_tokens_) {
      if (!known.count(tokens_[index].text)) {
        fail("filter variable ?" + tokens_[index].text + " does not occur in any pattern",
             &tokens_[index]);
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string base_;
  std::vector<std::size_t> select_tokens_;
  std::vector<std::size_t> filter_tokens_;
  Query query_;
};

}  // namespace

int TriplePattern::bound_count() const {
  return static_cast<int>(std::holds_alternative<rdf::Term>(subject)) +
         static_cast<int>(std::holds_alternative<rdf::Term>(predicate)) +
         static_cast<int>(std::holds_alternative<rdf::Term>(object));
}

std::vector<std::string> Query::pattern_variables() const {
  std::vector<std::string> out;
  auto add = [&](const PatternSlot& s) {
    if (const auto* v = std::get_if<Variable>(&s)) {
      if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    }
  };
  for (const auto& p : patterns) {
    add(p.subject);
    add(p.predicate);
    add(p.object);
  }
  return out;
}

std::vector<std::string> Query::projection() const {
  return select_all ? pattern_variables() : select_vars;
}

Query parse_query(std::string_view text) {
  return QueryParser(Lexer(text).run()).run();
}

}  // namespace ontokms::sparql

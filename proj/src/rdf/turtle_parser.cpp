#include <algorithm>
#include <cctype>
#include <map>
#include <string>

#include "ontokms/error.hpp"
#include "ontokms/rdf/turtle.hpp"
#include "ontokms/rdf/vocabulary.hpp"

namespace ontokms::rdf {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool has_scheme(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    const char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  return false;
}

std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const bool absolute = !path.empty() && path[0] == '/';
  std::string_view rest = absolute ? path.substr(1) : path;
  bool trailing_slash = false;
  while (i <= rest.size()) {
    const std::size_t j = std::min(rest.find('/', i), rest.size());
    const std::string_view seg = rest.substr(i, j - i);
    const bool last = j == rest.size();
    if (seg == ".") {
      trailing_slash = last;
    } else if (seg == "..") {
      if (!out.empty()) out.pop_back();
      trailing_slash = last;
    } else {
      out.emplace_back(seg);
      trailing_slash = false;
    }
    i = j + 1;
  }
  std::string result = absolute ? "/" : "";
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k > 0) result += '/';
    result += out[k];
  }
  if (trailing_slash && !result.empty() && result.back() != '/') result += '/';
  return result;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_pname_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view base, bool strict)
      : text_(text), base_(base), strict_(strict) {}

  std::vector<Triple> run() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(triples_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  bool at_end() const { return pos_ >= text_.size(); }
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
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c) fail(std::string("expected ") + what);
    advance();
  }

  bool starts_with_keyword(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    if (lower(text_.substr(pos_, kw.size())) != lower(kw)) return false;
    const char after = pos_ + kw.size() < text_.size() ? text_[pos_ + kw.size()] : ' ';
    return !is_pname_char(static_cast<unsigned char>(after)) && after != ':';
  }

  void statement() {
    if (peek() == '@') {
      if (strict_) fail("directives are not allowed in N-Triples");
      advance();
      std::string kw;
      while (std::isalpha(static_cast<unsigned char>(peek()))) {
        kw += peek();
        advance();
      }
      if (kw == "prefix") {
        prefix_decl();
        expect('.', "'.' after @prefix");
      } else if (kw == "base") {
        skip_ws();
        base_ = iri_ref();
        expect('.', "'.' after @base");
      } else {
        fail("unknown directive '@" + kw + "'");
      }
      return;
    }
    if (!strict_ && starts_with_keyword("PREFIX")) {
      for (int i = 0; i < 6; ++i) advance();
      prefix_decl();
      return;
    }
    if (!strict_ && starts_with_keyword("BASE")) {
      for (int i = 0; i < 4; ++i) advance();
      skip_ws();
      base_ = iri_ref();
      return;
    }
    triples();
    expect('.', "'.' at end of statement");
  }

  void prefix_decl() {
    skip_ws();
    std::string name;
    while (is_pname_char(static_cast<unsigned char>(peek()))) {
      name += peek();
      advance();
    }
    if (peek() != ':') fail("expected ':' in prefix declaration");
    advance();
    skip_ws();
    prefixes_[name] = iri_ref();
  }

  void triples() {
    const Term subject = subject_term();
    skip_ws();
    while (true) {
      const Term predicate = verb();
      while (true) {
        skip_ws();
        Term object = object_term();
        triples_.push_back(Triple{subject, predicate, std::move(object)});
        skip_ws();
        if (peek() == ',' && !strict_) {
          advance();
          continue;
        }
        break;
      }
      skip_ws();
      if (peek() == ';' && !strict_) {
        while (peek() == ';') {
          advance();
          skip_ws();
        }
        if (peek() == '.' || peek() == ']' || at_end()) break;
        continue;
      }
      break;
    }
  }

  void reject_unsupported() {
    const char c = peek();
    if (c == '[' || (c == '_' && peek(1) == ':')) fail("blank nodes are not supported");
    if (c == '(') fail("collections are not supported");
  }

  Term subject_term() {
    skip_ws();
    reject_unsupported();
    if (peek() == '"' || peek() == '\'') fail("literal is not allowed as subject");
    return iri_term();
  }

  Term verb() {
    skip_ws();
    if (!strict_ && peek() == 'a') {
      const char next = peek(1);
      if (next == ' ' || next == '\t' || next == '\n' || next == '\r' ||
          next == '<' || next == '"' || next == '\'') {
        advance();
        return Term::iri(std::string(vocab::kRdfType));
      }
    }
    reject_unsupported();
    if (peek() == '"' || peek() == '\'') fail("literal is not allowed as predicate");
    return iri_term();
  }

  Term object_term() {
    reject_unsupported();
    const char c = peek();
    if (c == '"' || c == '\'') return literal();
    if (!strict_ && (std::isdigit(static_cast<unsigned char>(c)) || c == '+' ||
                     c == '-' || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))))) {
      return numeric();
    }
    if (!strict_ && (starts_with_keyword("true") || starts_with_keyword("false"))) {
      std::string word = peek() == 't' ? "true" : "false";
      for (std::size_t i = 0; i < word.size(); ++i) advance();
      return Term::literal(word + "^^<" + std::string(vocab::kXsdNs) + "boolean>");
    }
    return iri_term();
  }

  Term iri_term() {
    if (at_end()) fail("unexpected end of input, expected IRI");
    if (peek() == '<') {
      const std::size_t line = line_, col = column_;
      std::string iri = iri_ref();
      return make_iri(std::move(iri), line, col);
    }
    if (strict_) fail("expected '<' (prefixed names are not allowed in N-Triples)");
    return prefixed_name();
  }

  Term make_iri(std::string value, std::size_t line, std::size_t col) {
    if (!is_valid_iri(value)) throw ParseError("invalid IRI '" + value + "'", line, col);
    return Term::iri(std::move(value));
  }

  std::string iri_ref() {
    if (peek() != '<') fail("expected '<'");
    advance();
    std::string raw;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      const char c = peek();
      if (c == '>') break;
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<') {
        fail("illegal character in IRI");
      }
      if (c == '\\') {
        advance();
        const char e = peek();
        if (e != 'u' && e != 'U') fail("invalid escape in IRI");
        advance();
        append_utf8(raw, hex_code_point(e == 'u' ? 4 : 8));
        continue;
      }
      raw += c;
      advance();
    }
    advance();
    return resolve_iri(base_, raw);
  }

  Term prefixed_name() {
    const std::size_t line = line_, col = column_;
    std::string prefix;
    while (is_pname_char(static_cast<unsigned char>(peek()))) {
      prefix += peek();
      advance();
    }
    if (peek() != ':') {
      if (prefix.empty()) fail("unexpected character '" + std::string(1, peek()) + "'");
      throw ParseError("expected prefixed name, got '" + prefix + "'", line, col);
    }
    advance();
    std::string local;
    while (true) {
      const char c = peek();
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        local += peek();
        advance();
      } else if (is_pname_char(static_cast<unsigned char>(c)) || c == ':' || c == '%') {
        local += c;
        advance();
      } else {
        break;
      }
    }
    // A trailing '.' terminates the statement rather than the name.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
      --column_;
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) {
      throw ParseError("undefined prefix '" + prefix + ":'", line, col);
    }
    return make_iri(it->second + local, line, col);
  }

  char32_t hex_code_point(int digits) {
    char32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      const char h = peek();
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail("invalid hex escape");
      cp = cp * 16 + static_cast<char32_t>(
                         std::isdigit(static_cast<unsigned char>(h))
                             ? h - '0'
                             : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
      advance();
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point");
    return cp;
  }

  std::string string_body() {
    const char quote = peek();
    if (strict_ && quote != '"') fail("expected '\"'");
    const bool long_form = !strict_ && peek(1) == quote && peek(2) == quote;
    for (int i = 0; i < (long_form ? 3 : 1); ++i) advance();
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated string literal");
      const char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          advance();
          advance();
          advance();
          break;
        }
      } else {
        if (c == quote) {
          advance();
          break;
        }
        if (c == '\n' || c == '\r') fail("newline in string literal");
      }
      if (c == '\\') {
        advance();
        const char e = peek();
        switch (e) {
          case 't': value += '\t'; break;
          case 'b': value += '\b'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'u':
          case 'U':
            advance();
            append_utf8(value, hex_code_point(e == 'u' ? 4 : 8));
            continue;
          default: fail("invalid escape sequence");
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    return value;
  }

  Term literal() {
    std::string value = string_body();
    if (peek() == '@') {
      const std::size_t line = line_, col = column_;
      advance();
      std::string tag;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-') {
        tag += peek();
        advance();
      }
      tag = lower(tag);
      if (!is_valid_lang_tag(tag)) {
        throw ParseError("invalid language tag '" + tag + "'", line, col);
      }
      return Term::literal(std::move(value), std::move(tag));
    }
    if (peek() == '^' && peek(1) == '^') {
      advance();
      advance();
      const Term datatype = iri_term();
      return Term::literal(value + "^^" + datatype.canonical());
    }
    return Term::literal(std::move(value));
  }

  Term numeric() {
    std::string lexical;
    bool decimal = false, exponent = false;
    if (peek() == '+' || peek() == '-') {
      lexical += peek();
      advance();
    }
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      lexical += peek();
      advance();
    }
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      decimal = true;
      lexical += '.';
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        lexical += peek();
        advance();
      }
    }
    if (peek() == 'e' || peek() == 'E') {
      exponent = true;
      lexical += peek();
      advance();
      if (peek() == '+' || peek() == '-') {
        lexical += peek();
        advance();
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        lexical += peek();
        advance();
      }
    }
    if (lexical.empty() || lexical == "+" || lexical == "-") fail("malformed number");
    const char* type = exponent ? "double" : decimal ? "decimal" : "integer";
    return Term::literal(lexical + "^^<" + std::string(vocab::kXsdNs) + type + ">");
  }

  std::string_view text_;
  std::string base_;
  bool strict_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::map<std::string, std::string> prefixes_;
  std::vector<Triple> triples_;
};

}  // namespace

std::optional<Syntax> syntax_from_name(std::string_view name) {
  const std::string n = lower(name);
  if (n == "turtle" || n == "ttl") return Syntax::Turtle;
  if (n == "ntriples" || n == "nt" || n == "n-triples") return Syntax::NTriples;
  return std::nullopt;
}

std::optional<Syntax> syntax_from_path(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".ttl") return Syntax::Turtle;
  if (ext == ".nt") return Syntax::NTriples;
  return std::nullopt;
}

std::string_view media_type(Syntax syntax) {
  return syntax == Syntax::Turtle ? "text/turtle" : "application/n-triples";
}

std::string resolve_iri(std::string_view base, std::string_view ref) {
  if (base.empty() || has_scheme(ref)) return std::string(ref);

  const std::size_t colon = base.find(':');
  const std::string_view scheme = base.substr(0, colon);
  std::string_view rest = base.substr(colon + 1);
  std::string_view authority;
  bool has_authority = false;
  if (rest.substr(0, 2) == "//") {
    has_authority = true;
    const std::size_t end = rest.find_first_of("/?#", 2);
    authority = rest.substr(2, (end == std::string_view::npos ? rest.size() : end) - 2);
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
  }
  const std::size_t frag = rest.find('#');
  const std::string_view no_frag = rest.substr(0, frag);
  const std::size_t query = no_frag.find('?');
  const std::string_view path = no_frag.substr(0, query);

  std::string prefix = std::string(scheme) + ":";
  if (has_authority) prefix += "//" + std::string(authority);

  if (ref.substr(0, 2) == "//") return std::string(scheme) + ":" + std::string(ref);
  if (ref.empty()) return prefix + std::string(no_frag);
  if (ref[0] == '#') return prefix + std::string(no_frag) + std::string(ref);
  if (ref[0] == '?') return prefix + std::string(path) + std::string(ref);

  std::string_view ref_path = ref;
  std::string_view suffix;
  const std::size_t cut = ref.find_first_of("?#");
  if (cut != std::string_view::npos) {
    ref_path = ref.substr(0, cut);
    suffix = ref.substr(cut);
  }
  std::string merged;
  if (ref_path[0] == '/') {
    merged = std::string(ref_path);
  } else if (has_authority && path.empty()) {
    merged = "/" + std::string(ref_path);
  } else {
    const std::size_t slash = path.rfind('/');
    merged = (slash == std::string_view::npos ? std::string{}
                                              : std::string(path.substr(0, slash + 1))) +
             std::string(ref_path);
  }
  return prefix + remove_dot_segments(merged) + std::string(suffix);
}

std::vector<Triple> parse_turtle(std::string_view text, std::string_view base) {
  return Parser(text, base, false).run();
}

std::vector<Triple> parse_ntriples(std::string_view text) {
  return Parser(text, {}, true).run();
}

std::vector<Triple> parse_rdf(std::string_view text, Syntax syntax,
                              std::string_view base) {
  return syntax == Syntax::Turtle ? parse_turtle(text, base) : parse_ntriples(text);
}

}  // namespace ontokms::rdf

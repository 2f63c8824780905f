#include "ontokms/rdf/term.hpp"

#include <algorithm>
#include <cctype>

#include "ontokms/error.hpp"

namespace ontokms::rdf {

namespace {

bool is_iri_forbidden(unsigned char c) {
  return c == '<' || c == '>' || c == ' ' || c == '\t' || c == '\n' ||
         c == '\r' || c == '\f' || c == '\v';
}

bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_valid_iri(std::string_view value) noexcept {
  return !value.empty() &&
         std::none_of(value.begin(), value.end(), [](char c) {
           return is_iri_forbidden(static_cast<unsigned char>(c));
         });
}

bool is_valid_lang_tag(std::string_view tag) noexcept {
  if (tag.size() < 2 || !is_lower_alpha(tag[0]) || !is_lower_alpha(tag[1])) {
    return false;
  }
  std::size_t i = 2;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    std::size_t j = i + 1;
    while (j < tag.size() && (is_lower_alpha(tag[j]) || is_digit(tag[j]))) ++j;
    const std::size_t len = j - i - 1;
    if (len < 2 || len > 8) return false;
    i = j;
  }
  return true;
}

std::string escape_literal(std::string_view raw) {
  std::string out;
  out.reserve(raw.size() + 2);
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

Term::Term(Kind kind, std::string value, std::string lang)
    : kind_(kind), value_(std::move(value)), lang_(std::move(lang)) {
  if (kind_ == Kind::Iri) {
    canonical_.reserve(value_.size() + 2);
    canonical_ += '<';
    canonical_ += value_;
    canonical_ += '>';
  } else {
    canonical_ = '"' + escape_literal(value_) + '"';
    if (!lang_.empty()) {
      canonical_ += '@';
      canonical_ += lang_;
    }
  }
}

Term Term::iri(std::string value) {
  if (!is_valid_iri(value)) {
    throw Error(ErrorCode::Validation, "invalid IRI '" + value + "'",
                {{"iri", value}});
  }
  return Term(Kind::Iri, std::move(value), {});
}

Term Term::literal(std::string value, std::string lang) {
  std::transform(lang.begin(), lang.end(), lang.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (!lang.empty() && !is_valid_lang_tag(lang)) {
    throw Error(ErrorCode::Validation, "invalid language tag '" + lang + "'",
                {{"lang", lang}});
  }
  return Term(Kind::Literal, std::move(value), std::move(lang));
}

void check_triple(const Triple& t) {
  if (!t.subject.is_iri()) {
    throw Error(ErrorCode::Validation,
                "triple subject must be an IRI, got " + t.subject.canonical());
  }
  if (!t.predicate.is_iri()) {
    throw Error(ErrorCode::Validation,
                "triple predicate must be an IRI, got " +
                    t.predicate.canonical());
  }
}

std::string to_ntriples_line(const Triple& t) {
  std::string line;
  line.reserve(t.subject.canonical().size() + t.predicate.canonical().size() +
               t.object.canonical().size() + 4);
  line += t.subject.canonical();
  line += ' ';
  line += t.predicate.canonical();
  line += ' ';
  line += t.object.canonical();
  line += " .";
  return line;
}

}  // namespace ontokms::rdf

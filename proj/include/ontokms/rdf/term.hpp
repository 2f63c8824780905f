#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ontokms::rdf {

/// An RDF node: an IRI or a (possibly language-tagged) literal.
///
/// Every Term carries its canonical N-Triples encoding (`<iri>` or
/// `"escaped"@lang`). Equality and ordering are defined on that encoding, so
/// sorting Terms sorts them in code-point order of their serialized form.
class Term {
 public:
  enum class Kind : std::uint8_t { Iri, Literal };

  /// Throws Error(Validation) when `value` is empty or contains whitespace or
  /// angle brackets.
  static Term iri(std::string value);
  /// `lang` is lowercased; throws Error(Validation) unless it is empty or
  /// matches `[a-z]{2}(-[a-z0-9]{2,8})*`.
  static Term literal(std::string value, std::string lang = {});

  Kind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == Kind::Iri; }
  bool is_literal() const noexcept { return kind_ == Kind::Literal; }
  const std::string& value() const noexcept { return value_; }
  const std::string& lang() const noexcept { return lang_; }
  const std::string& canonical() const noexcept { return canonical_; }

  friend bool operator==(const Term& a, const Term& b) noexcept {
    return a.canonical_ == b.canonical_;
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    return a.canonical_.compare(b.canonical_) <=> 0;
  }

 private:
  Term(Kind kind, std::string value, std::string lang);

  Kind kind_;
  std::string value_;
  std::string lang_;
  std::string canonical_;
};

bool is_valid_iri(std::string_view value) noexcept;
bool is_valid_lang_tag(std::string_view tag) noexcept;

/// N-Triples string escaping: `\\`, `"`, LF and CR become ECHARs; everything
/// else is emitted as raw UTF-8.
std::string escape_literal(std::string_view raw);

/// A statement. Subject and predicate must be IRIs; TripleStore::insert
/// enforces this.
struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Throws Error(Validation) when subject or predicate is a literal.
void check_triple(const Triple& t);

/// `<s> <p> <o> .` without trailing newline.
std::string to_ntriples_line(const Triple& t);

}  // namespace ontokms::rdf

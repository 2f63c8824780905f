#include "ontokms/search/inverted_index.hpp"

#include <algorithm>
#include <cmath>

#include "ontokms/search/levenshtein.hpp"
#include "ontokms/search/tokenizer.hpp"

namespace ontokms::search {

namespace {

constexpr std::size_t kSnippetLength = 120;

}  // namespace

std::string_view to_string(DocKind kind) {
  switch (kind) {
    case DocKind::ConceptLabel: return "ConceptLabel";
    case DocKind::ConceptComment: return "ConceptComment";
    case DocKind::Record: return "Record";
  }
  return "Record";
}

std::string DocRef::canonical() const {
  std::string out = std::string(to_string(kind)) + " " + owner;
  if (!lang.empty()) out += "@" + lang;
  return out;
}

void InvertedIndex::index_doc(const DocRef& doc, std::string_view text) {
  remove_doc(doc);
  DocEntry entry;
  entry.text = std::string(text);
  for (auto& token : tokenize(text)) {
    ++entry.terms[std::move(token)];
    ++entry.length;
  }
  for (const auto& [token, count] : entry.terms) postings_[token][doc] = count;
  docs_.emplace(doc, std::move(entry));
}

void InvertedIndex::remove_doc(const DocRef& doc) {
  auto it = docs_.find(doc);
  if (it == docs_.end()) return;
  for (const auto& [token, count] : it->second.terms) {
    auto p = postings_.find(token);
    p->second.erase(doc);
    if (p->second.empty()) postings_.erase(p);
  }
  docs_.erase(it);
}

void InvertedIndex::remove_owner(DocKind kind, std::string_view owner) {
  std::vector<DocRef> doomed;
  for (auto it = docs_.lower_bound(DocRef{kind, std::string(owner), {}});
       it != docs_.end() && it->first.kind == kind && it->first.owner == owner; ++it) {
    doomed.push_back(it->first);
  }
  for (const auto& doc : doomed) remove_doc(doc);
}

void InvertedIndex::clear() {
  postings_.clear();
  docs_.clear();
}

std::size_t InvertedIndex::df(const std::string& token) const {
  auto it = postings_.find(token);
  return it == postings_.end() ? 0 : it->second.size();
}

std::uint32_t InvertedIndex::tf(const std::string& token, const DocRef& doc) const {
  auto it = postings_.find(token);
  if (it == postings_.end()) return 0;
  auto d = it->second.find(doc);
  return d == it->second.end() ? 0 : d->second;
}

std::size_t InvertedIndex::doc_length(const DocRef& doc) const {
  auto it = docs_.find(doc);
  return it == docs_.end() ? 0 : it->second.length;
}

const std::string* InvertedIndex::text(const DocRef& doc) const {
  auto it = docs_.find(doc);
  return it == docs_.end() ? nullptr : &it->second.text;
}

std::vector<DocRef> InvertedIndex::docs() const {
  std::vector<DocRef> out;
  out.reserve(docs_.size());
  for (const auto& [doc, entry] : docs_) out.push_back(doc);
  return out;
}

std::vector<std::string> InvertedIndex::vocabulary() const {
  std::vector<std::string> out;
  out.reserve(postings_.size());
  for (const auto& [token, docs] : postings_) out.push_back(token);
  return out;
}

std::vector<SearchHit> InvertedIndex::search(std::string_view query,
                                             const SearchOptions& options) const {
  const double n = static_cast<double>(docs_.size());
  std::map<DocRef, double> scores;
  for (const auto& token : tokenize(query)) {
    auto it = postings_.find(token);
    if (it == postings_.end()) continue;
    const double idf = std::log(n / static_cast<double>(it->second.size()));
    for (const auto& [doc, count] : it->second) {
      if (options.lang && doc.lang != *options.lang) continue;
      if (options.kinds && !options.kinds->count(doc.kind)) continue;
      scores[doc] += static_cast<double>(count) * idf;
    }
  }
  std::vector<SearchHit> hits;
  hits.reserve(scores.size());
  for (const auto& [doc, score] : scores) hits.push_back({doc, score, {}});
  // `scores` is ordered by DocRef, so a stable sort on score alone yields the
  // (score desc, DocRef asc) order.
  std::stable_sort(hits.begin(), hits.end(),
                   [](const SearchHit& a, const SearchHit& b) { return a.score > b.score; });
  if (hits.size() > options.k) hits.resize(options.k);
  for (auto& hit : hits) hit.snippet = truncate_utf8(docs_.at(hit.doc).text, kSnippetLength);
  return hits;
}

SuggestionList InvertedIndex::suggest(std::string_view query, std::size_t max_distance,
                                      std::size_t k) const {
  SuggestionList out;
  std::set<std::string> seen;
  for (const auto& token : tokenize(query)) {
    if (!seen.insert(token).second || postings_.count(token)) continue;
    const std::u32string needle = to_code_points(token);
    TokenSuggestions entry{token, {}};
    for (const auto& [candidate, docs] : postings_) {
      const std::u32string other = to_code_points(candidate);
      const std::size_t gap =
          needle.size() > other.size() ? needle.size() - other.size() : other.size() - needle.size();
      if (gap > max_distance) continue;
      const std::size_t d = levenshtein(needle, other);
      if (d <= max_distance) entry.candidates.push_back({candidate, d});
    }
    // Candidates arrive in token order; stable sort by distance keeps it as the
    // tie-break.
    std::stable_sort(entry.candidates.begin(), entry.candidates.end(),
                     [](const Suggestion& a, const Suggestion& b) { return a.distance < b.distance; });
    if (entry.candidates.size() > k) entry.candidates.resize(k);
    out.push_back(std::move(entry));
  }
  return out;
}

nlohmann::json InvertedIndex::to_json() const {
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& [doc, entry] : docs_) {
    docs.push_back({{"doc", doc.canonical()}, {"length", entry.length}, {"text", entry.text}});
  }
  nlohmann::json postings = nlohmann::json::object();
  for (const auto& [token, refs] : postings_) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& [doc, count] : refs) row.push_back({doc.canonical(), count});
    postings[token] = std::move(row);
  }
  return {{"doc_count", docs_.size()}, {"docs", docs}, {"postings", postings}};
}

nlohmann::json to_json(const SearchHit& hit) {
  nlohmann::json doc = {{"kind", to_string(hit.doc.kind)}, {"owner", hit.doc.owner}};
  doc["lang"] = hit.doc.lang.empty() ? nlohmann::json() : nlohmann::json(hit.doc.lang);
  return {{"doc", doc}, {"score", hit.score}, {"snippet", hit.snippet}};
}

nlohmann::json to_json(const SuggestionList& suggestions) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& entry : suggestions) {
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& c : entry.candidates) {
      candidates.push_back({{"token", c.token}, {"distance", c.distance}});
    }
    out.push_back({{"token", entry.query_token}, {"candidates", candidates}});
  }
  return out;
}

}  // namespace ontokms::search

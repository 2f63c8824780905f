#include "ontokms/kb/knowledge_base.hpp"

#include <map>
#include <system_error>

#include "ontokms/error.hpp"
#include "ontokms/onto/seed.hpp"
#include "ontokms/rdf/serializer.hpp"
#include "ontokms/rdf/vocabulary.hpp"
#include "ontokms/sparql/query.hpp"

namespace ontokms::kb {

namespace fs = std::filesystem;
using rdf::Term;

namespace {

void ensure_writable_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::Io, "cannot create data directory '" + dir.string() + "'",
                {{"path", dir.string()}});
  }
  const fs::path probe = dir / ".write-probe";
  rdf::write_file(probe, "");
  fs::remove(probe, ec);
}

}  // namespace

std::vector<std::pair<search::DocRef, std::string>> concept_documents(
    const rdf::TripleStore& store, const std::string& iri) {
  static const Term type = Term::iri(std::string(rdf::vocab::kRdfType));
  static const Term owl_class = Term::iri(std::string(rdf::vocab::kOwlClass));
  static const Term label = Term::iri(std::string(rdf::vocab::kRdfsLabel));
  static const Term comment = Term::iri(std::string(rdf::vocab::kRdfsComment));

  std::vector<std::pair<search::DocRef, std::string>> out;
  if (!rdf::is_valid_iri(iri)) return out;
  const Term subject = Term::iri(iri);
  if (!store.contains({subject, type, owl_class})) return out;
  for (const auto& [predicate, kind] :
       {std::pair{label, search::DocKind::ConceptLabel},
        std::pair{comment, search::DocKind::ConceptComment}}) {
    std::map<std::string, std::string> by_lang;
    // match() yields objects in canonical order for a fixed (s, p).
    for (const auto& t : store.match(subject, predicate, std::nullopt)) {
      if (!t.object.is_literal()) continue;
      std::string& text = by_lang[t.object.lang()];
      if (!text.empty()) text += ' ';
      text += t.object.value();
    }
    for (auto& [lang, text] : by_lang) out.push_back({{kind, iri, lang}, std::move(text)});
  }
  return out;
}

KnowledgeBase::KnowledgeBase(std::string base_iri)
    : ontology_(store_, log_, std::move(base_iri)) {
  ontology_.set_listener([this](const std::string& iri) { reindex_concept(iri); });
}

KnowledgeBase::KnowledgeBase(const fs::path& data_dir, std::string base_iri)
    : data_dir_((ensure_writable_dir(data_dir), data_dir)),
      log_(data_dir / kChangeLogFile),
      ontology_(store_, log_, std::move(base_iri)) {
  ontology_.set_listener([this](const std::string& iri) { reindex_concept(iri); });
  if (fs::exists(file(kSnapshotFile))) store_ = rdf::load_snapshot(file(kSnapshotFile));
  if (fs::exists(file(kRecordsFile))) {
    catalog_ = ingest::RecordCatalog::from_jsonl(rdf::read_file(file(kRecordsFile)));
  }
  rebuild_index();
}

void KnowledgeBase::reindex_concept(const std::string& iri) {
  index_.remove_owner(search::DocKind::ConceptLabel, iri);
  index_.remove_owner(search::DocKind::ConceptComment, iri);
  for (const auto& [doc, text] : concept_documents(store_, iri)) index_.index_doc(doc, text);
}

search::InvertedIndex KnowledgeBase::build_index() const {
  search::InvertedIndex index;
  for (const auto& iri : ontology_.concept_ids()) {
    for (const auto& [doc, text] : concept_documents(store_, iri)) index.index_doc(doc, text);
  }
  for (const auto& [id, record] : catalog_.records()) {
    index.index_doc({search::DocKind::Record, id, {}}, record.text);
  }
  return index;
}

void KnowledgeBase::persist(bool records_changed) {
  if (!data_dir_) return;
  rdf::save_snapshot(store_, file(kSnapshotFile));
  if (records_changed) rdf::write_file(file(kRecordsFile), catalog_.to_jsonl());
}

std::size_t KnowledgeBase::seed() {
  if (!store_.empty()) {
    throw Error(ErrorCode::Conflict, "refusing to seed a non-empty store",
                {{"triples", store_.size()}});
  }
  const rdf::TripleStore seed = onto::generate_seed(base_iri());
  for (const auto& t : seed.triples()) store_.insert(t);
  rebuild_index();
  if (data_dir_) rdf::save_snapshot(seed, file(kSeedFile));
  persist(false);
  return seed.size();
}

onto::Concept KnowledgeBase::create_concept(const onto::Concept& request) {
  auto c = ontology_.create_concept(request);
  persist(false);
  return c;
}

onto::Concept KnowledgeBase::move_concept(std::string_view id,
                                          const std::set<std::string>& parents) {
  auto c = ontology_.move_concept(id, parents);
  persist(false);
  return c;
}

std::size_t KnowledgeBase::delete_concept(std::string_view id, onto::DeleteMode mode) {
  const std::size_t removed = ontology_.delete_concept(id, mode);
  persist(false);
  return removed;
}

onto::Concept KnowledgeBase::rename_concept(std::string_view id, std::string_view new_id) {
  auto c = ontology_.rename_concept(id, new_id);
  persist(false);
  return c;
}

onto::Concept KnowledgeBase::annotate_concept(std::string_view id, const onto::LangMap& labels,
                                              const onto::LangMap& comments) {
  auto c = ontology_.annotate_concept(id, labels, comments);
  persist(false);
  return c;
}

std::size_t KnowledgeBase::import_rdf(std::string_view text, rdf::Syntax syntax,
                                      std::string_view source) {
  const auto triples = rdf::parse_rdf(text, syntax, {});
  const std::size_t added = ontology_.import_triples(triples, source);
  persist(false);
  return added;
}

std::string KnowledgeBase::export_rdf(rdf::Syntax syntax) const {
  return rdf::serialize(store_, syntax);
}

ingest::IngestReport KnowledgeBase::ingest(std::string_view content, ingest::RecordFormat format,
                                           std::string_view source) {
  const auto rows = ingest::parse_records(content, format);
  ingest::IngestReport report = catalog_.ingest(rows, index_);
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) records.push_back(ingest::to_json(r));
  log_.append(onto::ChangeOp::Import, std::string(kIngestSubject),
              {{"before", nullptr},
               {"after", {{"records", records}}},
               {"source", source},
               {"accepted", report.accepted},
               {"rejected", report.rejected}});
  persist(true);
  return report;
}

std::vector<search::SearchHit> KnowledgeBase::search(std::string_view q,
                                                     const search::SearchOptions& options) const {
  return index_.search(q, options);
}

search::SuggestionList KnowledgeBase::suggest(std::string_view q) const {
  return index_.suggest(q);
}

std::vector<ingest::ConceptSuggestion> KnowledgeBase::suggest_concepts(std::string_view text,
                                                                       std::size_t k) const {
  return ingest::suggest_concepts(index_, text, k);
}

sparql::ResultTable KnowledgeBase::query(std::string_view text) const {
  const sparql::Query q = sparql::parse_query(text);
  return sparql::to_table(q, sparql::evaluate(store_, q));
}

onto::ValidationReport KnowledgeBase::validate() const {
  return onto::validate(store_, base_iri());
}

nav::GraphView KnowledgeBase::neighborhood(std::string_view id, std::size_t depth,
                                           std::string_view lang) const {
  return nav::neighborhood(store_, resolve_id(id), depth, lang);
}

std::vector<std::vector<std::string>> KnowledgeBase::paths_to_root(std::string_view id) const {
  return nav::path_to_root(store_, resolve_id(id));
}

void KnowledgeBase::replay(const onto::ChangeRecord& record) {
  if (record.op == onto::ChangeOp::Import && record.subject == kIngestSubject) {
    std::string jsonl;
    for (const auto& r : record.detail.at("after").at("records")) jsonl += r.dump() + "\n";
    ingest(jsonl, ingest::RecordFormat::Jsonl, record.detail.value("source", ""));
    return;
  }
  ontology_.replay(record);
  persist(false);
}

std::unique_ptr<KnowledgeBase> KnowledgeBase::from_log(
    const rdf::TripleStore& baseline, const std::vector<onto::ChangeRecord>& records,
    std::string base_iri) {
  auto kb = std::make_unique<KnowledgeBase>(std::move(base_iri));
  for (const auto& t : baseline.triples()) kb->store_.insert(t);
  kb->rebuild_index();
  for (const auto& r : records) kb->replay(r);
  return kb;
}

}  // namespace ontokms::kb

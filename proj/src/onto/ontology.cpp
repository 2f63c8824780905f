#include "ontokms/onto/ontology.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "ontokms/error.hpp"
#include "ontokms/rdf/turtle.hpp"
#include "ontokms/rdf/vocabulary.hpp"

namespace ontokms::onto {

namespace {

using rdf::Term;
using rdf::Triple;

const Term& type_term() {
  static const Term t = Term::iri(std::string(rdf::vocab::kRdfType));
  return t;
}
const Term& class_term() {
  static const Term t = Term::iri(std::string(rdf::vocab::kOwlClass));
  return t;
}
const Term& subclass_term() {
  static const Term t = Term::iri(std::string(rdf::vocab::kRdfsSubClassOf));
  return t;
}
const Term& label_term() {
  static const Term t = Term::iri(std::string(rdf::vocab::kRdfsLabel));
  return t;
}
const Term& comment_term() {
  static const Term t = Term::iri(std::string(rdf::vocab::kRdfsComment));
  return t;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

LangMap lang_map_from_json(const nlohmann::json& json, const char* field) {
  LangMap out;
  if (json.is_null()) return out;
  if (!json.is_object()) {
    throw Error(ErrorCode::Validation, std::string("'") + field + "' must be an object");
  }
  for (const auto& [lang, value] : json.items()) {
    if (!value.is_string()) {
      throw Error(ErrorCode::Validation,
                  std::string("'") + field + "." + lang + "' must be a string");
    }
    out[lang] = value.get<std::string>();
  }
  return out;
}

Term iri_or_validation_error(const std::string& value) {
  if (!rdf::is_valid_iri(value)) {
    throw Error(ErrorCode::Validation, "invalid concept id '" + value + "'",
                {{"id", value}});
  }
  return Term::iri(value);
}

}  // namespace

nlohmann::json to_json(const Concept& c) {
  return {{"id", c.id},
          {"parents", c.parents},
          {"labels", c.labels},
          {"comments", c.comments}};
}

Concept concept_from_json(const nlohmann::json& json) {
  if (!json.is_object()) throw Error(ErrorCode::Validation, "concept must be a JSON object");
  Concept c;
  const auto id = json.find("id");
  if (id == json.end() || !id->is_string()) {
    throw Error(ErrorCode::Validation, "concept 'id' must be a string");
  }
  c.id = id->get<std::string>();
  if (auto p = json.find("parents"); p != json.end() && !p->is_null()) {
    if (!p->is_array()) throw Error(ErrorCode::Validation, "'parents' must be an array");
    for (const auto& parent : *p) {
      if (!parent.is_string()) {
        throw Error(ErrorCode::Validation, "'parents' entries must be strings");
      }
      c.parents.insert(parent.get<std::string>());
    }
  }
  c.labels = lang_map_from_json(json.value("labels", nlohmann::json()), "labels");
  c.comments = lang_map_from_json(json.value("comments", nlohmann::json()), "comments");
  return c;
}

std::optional<DeleteMode> delete_mode_from_string(std::string_view name) {
  if (name == "refuse_if_children") return DeleteMode::RefuseIfChildren;
  if (name == "reparent_children") return DeleteMode::ReparentChildren;
  return std::nullopt;
}

std::string_view to_string(DeleteMode mode) {
  return mode == DeleteMode::RefuseIfChildren ? "refuse_if_children" : "reparent_children";
}

Ontology::Ontology(rdf::TripleStore& store, ChangeLog& log, std::string base_iri)
    : store_(store), log_(log), base_iri_(std::move(base_iri)) {}

std::string Ontology::resolve_id(std::string_view id) const {
  if (id.find(':') != std::string_view::npos) return std::string(id);
  return base_iri_ + std::string(id);
}

std::vector<std::string> Ontology::root_ids() const {
  std::vector<std::string> out;
  for (auto name : kRootNames) out.push_back(base_iri_ + std::string(name));
  return out;
}

bool Ontology::is_root(std::string_view iri) const {
  for (auto name : kRootNames) {
    if (iri.size() == base_iri_.size() + name.size() && iri.substr(0, base_iri_.size()) == base_iri_ &&
        iri.substr(base_iri_.size()) == name) {
      return true;
    }
  }
  return false;
}

bool Ontology::is_concept(std::string_view iri) const {
  if (!rdf::is_valid_iri(iri)) return false;
  return store_.contains(Triple{Term::iri(std::string(iri)), type_term(), class_term()});
}

std::optional<Concept> Ontology::find(std::string_view iri) const {
  if (!is_concept(iri)) return std::nullopt;
  Concept c;
  c.id = std::string(iri);
  for (const Triple& t : store_.match(Term::iri(c.id), std::nullopt, std::nullopt)) {
    if (t.predicate == subclass_term() && t.object.is_iri()) {
      c.parents.insert(t.object.value());
    } else if (t.object.is_literal() && t.predicate == label_term()) {
      c.labels.try_emplace(t.object.lang(), t.object.value());
    } else if (t.object.is_literal() && t.predicate == comment_term()) {
      c.comments.try_emplace(t.object.lang(), t.object.value());
    }
  }
  return c;
}

Concept Ontology::get(std::string_view iri) const {
  auto c = find(iri);
  if (!c) {
    throw Error(ErrorCode::NotFound, "unknown concept '" + std::string(iri) + "'",
                {{"id", iri}});
  }
  return *c;
}

std::vector<std::string> Ontology::concept_ids() const {
  std::vector<std::string> out;
  for (const Triple& t : store_.match(std::nullopt, type_term(), class_term())) {
    out.push_back(t.subject.value());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Ontology::parents(std::string_view iri) const {
  std::vector<std::string> out;
  if (!rdf::is_valid_iri(iri)) return out;
  for (const Triple& t : store_.match(Term::iri(std::string(iri)), subclass_term(), std::nullopt)) {
    if (t.object.is_iri()) out.push_back(t.object.value());
  }
  return out;
}

std::vector<std::string> Ontology::children(std::string_view iri) const {
  std::vector<std::string> out;
  if (!rdf::is_valid_iri(iri)) return out;
  for (const Triple& t : store_.match(std::nullopt, subclass_term(), Term::iri(std::string(iri)))) {
    out.push_back(t.subject.value());
  }
  return out;
}

bool Ontology::has_ancestor(std::string_view iri, std::string_view ancestor) const {
  std::unordered_set<std::string> seen{std::string(iri)};
  std::deque<std::string> queue{std::string(iri)};
  while (!queue.empty()) {
    const std::string current = std::move(queue.front());
    queue.pop_front();
    if (current == ancestor) return true;
    for (auto& p : parents(current)) {
      if (seen.insert(p).second) queue.push_back(std::move(p));
    }
  }
  return false;
}

void Ontology::notify(const std::string& iri) const {
  if (listener_) listener_(iri);
}

void Ontology::check_annotations(const LangMap& labels, const LangMap& comments,
                                 bool require_all) const {
  auto check = [&](const LangMap& values, const char* what) {
    for (const auto& [lang, text] : values) {
      if (std::find(kLanguages.begin(), kLanguages.end(), lang) == kLanguages.end()) {
        throw Error(ErrorCode::Validation,
                    std::string(what) + " language must be en or pt, got '" + lang + "'",
                    {{"field", what}, {"lang", lang}});
      }
      if (is_blank(text)) {
        throw Error(ErrorCode::Validation,
                    std::string(what) + " '" + lang + "' must not be empty",
                    {{"field", what}, {"lang", lang}});
      }
    }
    if (require_all) {
      for (auto lang : kLanguages) {
        if (!values.count(std::string(lang))) {
          throw Error(ErrorCode::Validation,
                      std::string(what) + " '" + std::string(lang) + "' is required",
                      {{"field", what}, {"lang", lang}});
        }
      }
    }
  };
  check(labels, "label");
  check(comments, "comment");
}

void Ontology::set_annotations(const std::string& iri, std::string_view predicate,
                               const LangMap& values) {
  const Term subject = Term::iri(iri);
  const Term pred = Term::iri(std::string(predicate));
  for (const auto& [lang, text] : values) {
    for (const Triple& t : store_.match(subject, pred, std::nullopt)) {
      if (t.object.is_literal() && t.object.lang() == lang) store_.remove(t);
    }
    store_.insert(Triple{subject, pred, Term::literal(text, lang)});
  }
}

Concept Ontology::create_concept(const Concept& request) {
  const Term id = iri_or_validation_error(request.id);
  if (is_concept(request.id)) {
    throw Error(ErrorCode::Conflict, "concept '" + request.id + "' already exists",
                {{"id", request.id}});
  }
  const bool root = is_root(request.id);
  if (root && !request.parents.empty()) {
    throw Error(ErrorCode::Validation, "root concept '" + request.id + "' cannot have parents");
  }
  if (!root && request.parents.empty()) {
    throw Error(ErrorCode::Validation, "concept '" + request.id + "' needs at least one parent");
  }
  for (const auto& parent : request.parents) {
    if (parent == request.id) {
      throw Error(ErrorCode::Cycle, "concept '" + request.id + "' cannot be its own parent",
                  {{"id", request.id}, {"parent", parent}});
    }
    if (!is_concept(parent)) {
      throw Error(ErrorCode::Validation, "unknown parent '" + parent + "'",
                  {{"parent", parent}});
    }
    if (has_ancestor(parent, request.id)) {
      throw Error(ErrorCode::Cycle,
                  "parent '" + parent + "' already descends from '" + request.id + "'",
                  {{"id", request.id}, {"parent", parent}});
    }
  }
  check_annotations(request.labels, request.comments, true);

  store_.insert(Triple{id, type_term(), class_term()});
  for (const auto& parent : request.parents) {
    store_.insert(Triple{id, subclass_term(), Term::iri(parent)});
  }
  set_annotations(request.id, rdf::vocab::kRdfsLabel, request.labels);
  set_annotations(request.id, rdf::vocab::kRdfsComment, request.comments);

  Concept created = get(request.id);
  log_.append(ChangeOp::Create, created.id, {{"before", nullptr}, {"after", to_json(created)}});
  notify(created.id);
  return created;
}

Concept Ontology::move_concept(std::string_view id_view, const std::set<std::string>& new_parents) {
  const std::string id(id_view);
  const Concept before = get(id);
  if (is_root(id)) {
    throw Error(ErrorCode::Validation, "root concept '" + id + "' cannot be moved", {{"id", id}});
  }
  if (new_parents.empty()) {
    throw Error(ErrorCode::Validation, "concept '" + id + "' needs at least one parent");
  }
  for (const auto& parent : new_parents) {
    if (!is_concept(parent)) {
      throw Error(ErrorCode::Validation, "unknown parent '" + parent + "'", {{"parent", parent}});
    }
    if (has_ancestor(parent, id)) {
      throw Error(ErrorCode::Cycle,
                  "moving '" + id + "' under '" + parent + "' would create a cycle",
                  {{"id", id}, {"parent", parent}});
    }
  }
  const Term subject = Term::iri(id);
  for (const auto& old : before.parents) {
    if (!new_parents.count(old)) store_.remove(Triple{subject, subclass_term(), Term::iri(old)});
  }
  for (const auto& parent : new_parents) {
    store_.insert(Triple{subject, subclass_term(), Term::iri(parent)});
  }
  Concept after = get(id);
  log_.append(ChangeOp::Move, id,
              {{"before", {{"parents", before.parents}}}, {"after", {{"parents", after.parents}}}});
  return after;
}

std::size_t Ontology::delete_concept(std::string_view id_view, DeleteMode mode) {
  const std::string id(id_view);
  const Concept before = get(id);
  if (is_root(id)) {
    throw Error(ErrorCode::Conflict, "root concept '" + id + "' cannot be deleted", {{"id", id}});
  }
  const std::vector<std::string> kids = children(id);
  if (mode == DeleteMode::RefuseIfChildren && !kids.empty()) {
    throw Error(ErrorCode::Conflict,
                "concept '" + id + "' has " + std::to_string(kids.size()) + " children",
                {{"id", id}, {"children", kids}});
  }
  const Term term = Term::iri(id);
  if (mode == DeleteMode::ReparentChildren) {
    for (const auto& child : kids) {
      for (const auto& parent : before.parents) {
        store_.insert(Triple{Term::iri(child), subclass_term(), Term::iri(parent)});
      }
    }
  }
  std::size_t removed = 0;
  for (const Triple& t : store_.match(term, std::nullopt, std::nullopt)) {
    removed += store_.remove(t) ? 1 : 0;
  }
  for (const Triple& t : store_.match(std::nullopt, std::nullopt, term)) {
    removed += store_.remove(t) ? 1 : 0;
  }
  log_.append(ChangeOp::Delete, id,
              {{"before", to_json(before)},
               {"after", nullptr},
               {"mode", to_string(mode)},
               {"removed", removed}});
  notify(id);
  return removed;
}

Concept Ontology::rename_concept(std::string_view id_view, std::string_view new_id_view) {
  const std::string id(id_view);
  const std::string new_id(new_id_view);
  const Concept before = get(id);
  const Term new_term = iri_or_validation_error(new_id);
  if (is_root(id) || is_root(new_id)) {
    throw Error(ErrorCode::Conflict, "root concepts cannot be renamed", {{"id", id}});
  }
  if (new_id == id) {
    throw Error(ErrorCode::Conflict, "concept is already named '" + id + "'", {{"id", id}});
  }
  if (store_.count(new_term, std::nullopt, std::nullopt) != 0 ||
      store_.count(std::nullopt, std::nullopt, new_term) != 0 ||
      store_.count(std::nullopt, new_term, std::nullopt) != 0) {
    throw Error(ErrorCode::Conflict, "IRI '" + new_id + "' is already in use", {{"id", new_id}});
  }
  const Term old_term = Term::iri(id);
  auto swap = [&](const Term& t) -> const Term& { return t == old_term ? new_term : t; };
  std::vector<Triple> affected = store_.match(old_term, std::nullopt, std::nullopt);
  for (auto& t : store_.match(std::nullopt, old_term, std::nullopt)) affected.push_back(t);
  for (auto& t : store_.match(std::nullopt, std::nullopt, old_term)) affected.push_back(t);
  for (const Triple& t : affected) store_.remove(t);
  for (const Triple& t : affected) {
    store_.insert(Triple{swap(t.subject), swap(t.predicate), swap(t.object)});
  }
  Concept after = get(new_id);
  log_.append(ChangeOp::Rename, id, {{"before", {{"id", id}}}, {"after", {{"id", new_id}}}});
  notify(id);
  notify(new_id);
  return after;
}

Concept Ontology::annotate_concept(std::string_view id_view, const LangMap& labels,
                                   const LangMap& comments) {
  const std::string id(id_view);
  const Concept before = get(id);
  check_annotations(labels, comments, false);
  if (labels.empty() && comments.empty()) {
    throw Error(ErrorCode::Validation, "no annotations given", {{"id", id}});
  }
  set_annotations(id, rdf::vocab::kRdfsLabel, labels);
  set_annotations(id, rdf::vocab::kRdfsComment, comments);
  Concept after = get(id);
  log_.append(ChangeOp::Annotate, id,
              {{"before", {{"labels", before.labels}, {"comments", before.comments}}},
               {"after", {{"labels", after.labels}, {"comments", after.comments}}},
               {"set", {{"labels", labels}, {"comments", comments}}}});
  notify(id);
  return after;
}

std::size_t Ontology::import_triples(const std::vector<rdf::Triple>& triples,
                                     std::string_view source) {
  for (const Triple& t : triples) rdf::check_triple(t);
  rdf::TripleStore added;
  for (const Triple& t : triples) {
    if (!store_.contains(t)) added.insert(t);
  }
  for (const Triple& t : added.triples()) store_.insert(t);
  std::string ntriples;
  for (const Triple& t : added.triples()) ntriples += rdf::to_ntriples_line(t) + "\n";
  log_.append(ChangeOp::Import, std::string(kImportSubject),
              {{"before", nullptr},
               {"after", {{"ntriples", ntriples}}},
               {"source", source},
               {"added", added.size()}});
  std::set<std::string> touched;
  for (const Triple& t : added.triples()) touched.insert(t.subject.value());
  for (const auto& iri : touched) notify(iri);
  return added.size();
}

void Ontology::replay(const ChangeRecord& record) {
  const auto& after = record.detail.contains("after") ? record.detail.at("after")
                                                      : nlohmann::json();
  switch (record.op) {
    case ChangeOp::Create:
      create_concept(concept_from_json(after));
      break;
    case ChangeOp::Move: {
      std::set<std::string> parents = after.at("parents").get<std::set<std::string>>();
      move_concept(record.subject, parents);
      break;
    }
    case ChangeOp::Delete: {
      const auto mode = delete_mode_from_string(record.detail.at("mode").get<std::string>());
      if (!mode) throw Error(ErrorCode::Validation, "unknown delete mode in change record");
      delete_concept(record.subject, *mode);
      break;
    }
    case ChangeOp::Rename:
      rename_concept(record.subject, after.at("id").get<std::string>());
      break;
    case ChangeOp::Annotate:
      annotate_concept(record.subject,
                       record.detail.at("set").at("labels").get<LangMap>(),
                       record.detail.at("set").at("comments").get<LangMap>());
      break;
    case ChangeOp::Import:
      if (after.is_object() && after.contains("ntriples")) {
        import_triples(rdf::parse_ntriples(after.at("ntriples").get<std::string>()),
                       record.detail.value("source", ""));
      }
      break;
  }
}

}  // namespace ontokms::onto

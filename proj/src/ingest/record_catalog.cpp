#include "ontokms/ingest/record_catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <set>

#include "ontokms/error.hpp"

namespace ontokms::ingest {

namespace {

constexpr std::array<std::string_view, 5> kColumns{"record_id", "table", "field", "text",
                                                   "patient_ref"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

ParsedRow check(std::size_t row, AnnotationRecord record) {
  if (is_blank(record.record_id)) return {row, std::nullopt, "empty record_id"};
  if (is_blank(record.text)) return {row, std::nullopt, "empty text"};
  return {row, std::move(record), {}};
}

ParsedRow parse_json_row(std::size_t row, std::string_view line) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    return {row, std::nullopt, "malformed json"};
  }
  if (!json.is_object()) return {row, std::nullopt, "row is not a JSON object"};
  AnnotationRecord record;
  std::string* targets[] = {&record.record_id, &record.table, &record.field, &record.text};
  for (std::size_t i = 0; i < 4; ++i) {
    auto it = json.find(std::string(kColumns[i]));
    if (it == json.end()) return {row, std::nullopt, "missing field '" + std::string(kColumns[i]) + "'"};
    if (!it->is_string()) {
      return {row, std::nullopt, "field '" + std::string(kColumns[i]) + "' must be a string"};
    }
    *targets[i] = it->get<std::string>();
  }
  if (auto it = json.find("patient_ref"); it != json.end() && !it->is_null()) {
    if (!it->is_string()) return {row, std::nullopt, "field 'patient_ref' must be a string"};
    record.patient_ref = it->get<std::string>();
  }
  return check(row, std::move(record));
}

// RFC 4180 records; quoted fields may span lines. Returns the fields of each
// non-blank record, or an error string for an unterminated quote.
struct CsvRecord {
  std::vector<std::string> fields;
  std::string error;
};

std::vector<CsvRecord> split_csv(std::string_view content) {
  std::vector<CsvRecord> out;
  CsvRecord current;
  std::string field;
  bool in_quotes = false, field_started = false, record_has_content = false;
  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (record_has_content) out.push_back(std::move(current));
    current = {};
    record_has_content = false;
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
      record_has_content = true;
    } else if (c == ',') {
      end_field();
      record_has_content = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') ++i;
      end_record();
    } else {
      field += c;
      field_started = true;
      record_has_content = true;
    }
  }
  if (in_quotes) {
    current.error = "unterminated quoted field";
    record_has_content = true;
  }
  end_record();
  return out;
}

std::vector<ParsedRow> parse_csv(std::string_view content) {
  std::vector<CsvRecord> records = split_csv(content);
  if (records.empty()) {
    throw Error(ErrorCode::Validation, "CSV input has no header row");
  }
  const auto& header = records.front().fields;
  std::array<std::size_t, 5> position{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    auto it = std::find_if(header.begin(), header.end(),
                           [&](const std::string& h) { return lower(h) == kColumns[c]; });
    if (it == header.end()) {
      throw Error(ErrorCode::Validation,
                  "CSV header is missing column '" + std::string(kColumns[c]) + "'",
                  {{"column", kColumns[c]}});
    }
    position[c] = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<ParsedRow> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (!rec.error.empty()) {
      out.push_back({r, std::nullopt, rec.error});
      continue;
    }
    if (rec.fields.size() != header.size()) {
      out.push_back({r, std::nullopt,
                     "expected " + std::to_string(header.size()) + " columns, got " +
                         std::to_string(rec.fields.size())});
      continue;
    }
    AnnotationRecord record{rec.fields[position[0]], rec.fields[position[1]],
                            rec.fields[position[2]], rec.fields[position[3]], std::nullopt};
    if (!rec.fields[position[4]].empty()) record.patient_ref = rec.fields[position[4]];
    out.push_back(check(r, std::move(record)));
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const AnnotationRecord& record) {
  return {{"record_id", record.record_id},
          {"table", record.table},
          {"field", record.field},
          {"text", record.text},
          {"patient_ref", record.patient_ref ? nlohmann::json(*record.patient_ref) : nlohmann::json()}};
}

std::optional<RecordFormat> record_format_from_name(std::string_view name) {
  const std::string n = lower(name);
  if (n == "jsonl" || n == "json") return RecordFormat::Jsonl;
  if (n == "csv") return RecordFormat::Csv;
  return std::nullopt;
}

std::optional<RecordFormat> record_format_from_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  return ext.empty() ? std::nullopt : record_format_from_name(ext.substr(1));
}

std::vector<ParsedRow> parse_records(std::string_view content, RecordFormat format) {
  if (format == RecordFormat::Csv) return parse_csv(content);
  std::vector<ParsedRow> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    const std::size_t end = std::min(content.find('\n', start), content.size());
    std::string_view line = content.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!is_blank(line)) out.push_back(parse_json_row(line_no, line));
    if (end == content.size()) break;
    start = end + 1;
  }
  return out;
}

nlohmann::json to_json(const IngestReport& report) {
  nlohmann::json reasons = nlohmann::json::array();
  for (const auto& r : report.reasons) reasons.push_back({{"row", r.row}, {"reason", r.reason}});
  return {{"accepted", report.accepted}, {"rejected", report.rejected}, {"reasons", reasons}};
}

bool RecordCatalog::contains(std::string_view record_id) const {
  return records_.find(record_id) != records_.end();
}

const AnnotationRecord* RecordCatalog::find(std::string_view record_id) const {
  auto it = records_.find(record_id);
  return it == records_.end() ? nullptr : &it->second;
}

IngestReport RecordCatalog::ingest(const std::vector<ParsedRow>& rows,
                                   search::InvertedIndex& index) {
  IngestReport report;
  for (const auto& row : rows) {
    if (!row.record) {
      ++report.rejected;
      report.reasons.push_back({row.row, row.error});
      continue;
    }
    const AnnotationRecord& record = *row.record;
    if (contains(record.record_id)) {
      ++report.rejected;
      report.reasons.push_back({row.row, "duplicate record_id '" + record.record_id + "'"});
      continue;
    }
    records_.emplace(record.record_id, record);
    index.index_doc({search::DocKind::Record, record.record_id, {}}, record.text);
    ++report.accepted;
    report.records.push_back(record);
  }
  return report;
}

bool RecordCatalog::remove(std::string_view record_id, search::InvertedIndex& index) {
  auto it = records_.find(record_id);
  if (it == records_.end()) return false;
  index.remove_doc({search::DocKind::Record, it->first, {}});
  records_.erase(it);
  return true;
}

void RecordCatalog::clear(search::InvertedIndex& index) {
  for (const auto& [id, record] : records_) index.remove_doc({search::DocKind::Record, id, {}});
  records_.clear();
}

std::string RecordCatalog::to_jsonl() const {
  std::string out;
  for (const auto& [id, record] : records_) out += to_json(record).dump() + "\n";
  return out;
}

RecordCatalog RecordCatalog::from_jsonl(std::string_view content) {
  RecordCatalog catalog;
  for (const auto& row : parse_records(content, RecordFormat::Jsonl)) {
    if (!row.record) {
      throw Error(ErrorCode::Validation,
                  "record catalog line " + std::to_string(row.row) + ": " + row.error);
    }
    catalog.records_.emplace(row.record->record_id, *row.record);
  }
  return catalog;
}

std::vector<ConceptSuggestion> suggest_concepts(const search::InvertedIndex& index,
                                                std::string_view text, std::size_t k) {
  search::SearchOptions options;
  options.kinds = std::set<search::DocKind>{search::DocKind::ConceptLabel};
  options.k = std::numeric_limits<std::size_t>::max();
  std::map<std::string, double> per_concept;
  for (const auto& hit : index.search(text, options)) per_concept[hit.doc.owner] += hit.score;

  std::vector<ConceptSuggestion> out;
  for (const auto& [iri, score] : per_concept) out.push_back({iri, score});
  std::stable_sort(out.begin(), out.end(), [](const ConceptSuggestion& a, const ConceptSuggestion& b) {
    return a.score > b.score;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace ontokms::ingest

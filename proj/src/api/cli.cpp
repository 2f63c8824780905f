#include "ontokms/api/cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ontokms/api/service.hpp"
#include "ontokms/kb/knowledge_base.hpp"
#include "ontokms/rdf/serializer.hpp"

namespace ontokms::api {

namespace {

struct Settings {
  std::string data_dir = "data";
  std::string base_iri = std::string(onto::kDefaultBaseIri);
  std::string default_lang = "en";
  std::string host = "127.0.0.1";
  int port = 8080;
  bool seed = false;
  std::string static_dir;

  std::string file;
  std::string format;
  std::vector<std::string> words;
  std::string lang;
  std::size_t k = 10;
  std::uint64_t since = 0;
};

std::string read_input(const std::string& file, std::istream& in) {
  if (file != "-") return rdf::read_file(file);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_suggestions(const search::SuggestionList& list, std::ostream& out) {
  out << "suggestions:\n";
  if (list.empty()) out << "  (none)\n";
  for (const auto& entry : list) {
    out << "  " << entry.query_token << ":";
    if (entry.candidates.empty()) out << " (none)";
    for (const auto& c : entry.candidates) out << " " << c.token << " (" << c.distance << ")";
    out << "\n";
  }
}

int serve(kb::KnowledgeBase& kb, const Settings& s, std::ostream& out) {
  // Handle SIGINT/SIGTERM on a dedicated thread instead of in a handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ServiceOptions options{s.default_lang, std::nullopt};
  if (!s.static_dir.empty()) options.static_dir = s.static_dir;
  Service service(kb, options);
  const int port = service.bind(s.host, s.port);
  out << "listening on http://" << s.host << ":" << port << " (data dir " << s.data_dir << ", "
      << kb.ontology().concept_ids().size() << " concepts)" << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  });
  service.listen();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
  out << "stopped" << std::endl;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Settings s;
  CLI::App app{"Bilingual epilepsy ontology knowledge base: RDF store, SPARQL, search and HTTP API",
               "ontokms"};
  app.require_subcommand(1);
  app.add_option("--data-dir", s.data_dir, "Directory holding store.nt, changes.jsonl, records.jsonl")
      ->envname("ONTOKMS_DATA_DIR")
      ->capture_default_str();
  app.add_option("--base-iri", s.base_iri, "Namespace for local concept ids")
      ->envname("ONTOKMS_BASE_IRI")
      ->capture_default_str();
  app.add_option("--default-lang", s.default_lang, "Label language when none is requested")
      ->envname("ONTOKMS_DEFAULT_LANG")
      ->check(CLI::IsMember({"en", "pt"}))
      ->capture_default_str();

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--port", s.port, "TCP port (0 picks a free one)")
      ->envname("ONTOKMS_PORT")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--host", s.host, "Address to bind")->envname("ONTOKMS_HOST")->capture_default_str();
  serve_cmd->add_flag("--seed", s.seed, "Install the bundled ontology first (store must be empty)")
      ->envname("ONTOKMS_SEED");
  serve_cmd->add_option("--static-dir", s.static_dir, "Serve these files under /ui")
      ->envname("ONTOKMS_STATIC_DIR");

  auto* seed_cmd = app.add_subcommand("seed", "Install the bundled ontology into an empty store");

  auto* import_cmd = app.add_subcommand("import", "Import a Turtle or N-Triples file");
  import_cmd->add_option("file", s.file, "Input file (.ttl or .nt), or - for stdin")->required();
  import_cmd->add_option("--format", s.format, "turtle or ntriples (default: by extension)");

  auto* export_cmd = app.add_subcommand("export", "Write the store as Turtle or N-Triples");
  export_cmd->add_option("file", s.file, "Output file, or - for stdout")->required();
  export_cmd->add_option("--format", s.format, "turtle or ntriples (default: by extension, else turtle)");

  auto* validate_cmd = app.add_subcommand("validate", "Check hierarchy and annotation consistency");

  auto* search_cmd = app.add_subcommand("search", "Full-text search over labels, comments and records");
  search_cmd->add_option("query", s.words, "Query text")->required();
  search_cmd->add_option("--lang", s.lang, "Only documents in this language")
      ->check(CLI::IsMember({"en", "pt"}));
  search_cmd->add_option("-k", s.k, "Number of hits")->check(CLI::PositiveNumber)->capture_default_str();

  auto* query_cmd = app.add_subcommand("query", "Run a SPARQL SELECT query");
  query_cmd->add_option("file", s.file, "Query file, or - for stdin")->required();

  auto* ingest_cmd = app.add_subcommand("ingest", "Ingest annotation records (JSONL or CSV)");
  ingest_cmd->add_option("file", s.file, "Input file (.jsonl or .csv)")->required();
  ingest_cmd->add_option("--format", s.format, "jsonl or csv (default: by extension)");

  auto* changes_cmd = app.add_subcommand("changes", "Print change records as JSON lines");
  changes_cmd->add_option("--since", s.since, "Only records after this sequence number")
      ->capture_default_str();

  std::vector<char*> argv;
  std::vector<std::string> owned(args);
  for (auto& a : owned) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    kb::KnowledgeBase kb(std::filesystem::path(s.data_dir), s.base_iri);

    if (serve_cmd->parsed()) {
      if (s.seed) kb.seed();
      return serve(kb, s, out);
    }
    if (seed_cmd->parsed()) {
      const std::size_t triples = kb.seed();
      out << "seeded " << kb.ontology().concept_ids().size() << " concepts (" << triples
          << " triples) into " << s.data_dir << "\n";
      return kExitOk;
    }
    if (import_cmd->parsed()) {
      std::optional<rdf::Syntax> syntax =
          s.format.empty() ? rdf::syntax_from_path(s.file) : rdf::syntax_from_name(s.format);
      if (!syntax) {
        err << "error: cannot tell the RDF format of '" << s.file << "'; use --format\n";
        return kExitUsage;
      }
      const std::size_t added = kb.import_rdf(read_input(s.file, in), *syntax, s.file);
      out << "imported " << added << " new triples (" << kb.store().size() << " total)\n";
      return kExitOk;
    }
    if (export_cmd->parsed()) {
      std::optional<rdf::Syntax> syntax = rdf::Syntax::Turtle;
      if (!s.format.empty()) {
        syntax = rdf::syntax_from_name(s.format);
      } else if (auto by_path = rdf::syntax_from_path(s.file)) {
        syntax = by_path;
      }
      if (!syntax) {
        err << "error: unknown format '" << s.format << "'\n";
        return kExitUsage;
      }
      const std::string text = kb.export_rdf(*syntax);
      if (s.file == "-") {
        out << text;
      } else {
        rdf::write_file(s.file, text);
        out << "exported " << kb.store().size() << " triples to " << s.file << "\n";
      }
      return kExitOk;
    }
    if (validate_cmd->parsed()) {
      const auto report = kb.validate();
      out << onto::to_text(report);
      return report.ok() ? kExitOk : kExitDomainError;
    }
    if (search_cmd->parsed()) {
      std::string q;
      for (const auto& w : s.words) q += (q.empty() ? "" : " ") + w;
      search::SearchOptions options;
      if (!s.lang.empty()) options.lang = s.lang;
      options.k = s.k;
      const auto hits = kb.search(q, options);
      if (hits.empty()) {
        out << "no results for \"" << q << "\"\n";
        print_suggestions(kb.suggest(q), out);
        return kExitOk;
      }
      for (const auto& hit : hits) {
        out << std::fixed << std::setprecision(4) << hit.score << "  " << hit.doc.canonical()
            << "\n    " << hit.snippet << "\n";
      }
      return kExitOk;
    }
    if (query_cmd->parsed()) {
      const auto table = kb.query(read_input(s.file, in));
      for (std::size_t i = 0; i < table.variables.size(); ++i) {
        out << (i ? "\t" : "") << "?" << table.variables[i];
      }
      out << "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
        out << "\n";
      }
      return kExitOk;
    }
    if (ingest_cmd->parsed()) {
      std::optional<ingest::RecordFormat> format =
          s.format.empty() ? ingest::record_format_from_path(s.file)
                           : ingest::record_format_from_name(s.format);
      if (!format) {
        err << "error: cannot tell the record format of '" << s.file << "'; use --format\n";
        return kExitUsage;
      }
      const auto report = kb.ingest(read_input(s.file, in), *format, s.file);
      out << "accepted " << report.accepted << ", rejected " << report.rejected << "\n";
      for (const auto& r : report.reasons) out << "  row " << r.row << ": " << r.reason << "\n";
      return kExitOk;
    }
    if (changes_cmd->parsed()) {
      for (const auto& r : kb.changes(s.since)) out << onto::to_json(r).dump() << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace ontokms::api

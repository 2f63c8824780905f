#include "ontokms/api/service.hpp"

#include <charconv>
#include <mutex>
#include <shared_mutex>
#include <sys/socket.h>

#include "httplib.h"
#include "ontokms/rdf/serializer.hpp"

namespace ontokms::api {

namespace {

using nlohmann::json;
using Request = httplib::Request;
using Response = httplib::Response;

void send_json(Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

std::size_t size_param(const Request& req, const char* name, std::size_t fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string text = req.get_param_value(name);
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorCode::Validation,
                "query parameter '" + std::string(name) + "' must be a non-negative integer",
                {{"parameter", name}, {"value", text}});
  }
  return value;
}

std::string lang_param(const Request& req, const std::string& fallback) {
  const std::string lang = req.has_param("lang") ? req.get_param_value("lang") : fallback;
  for (auto allowed : onto::kLanguages) {
    if (lang == allowed) return lang;
  }
  throw Error(ErrorCode::Validation, "unsupported language '" + lang + "'", {{"lang", lang}});
}

json parse_json_body(const Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "request body is not valid JSON", {{"byte", e.byte}});
  }
}

std::set<std::string> id_list(const kb::KnowledgeBase& kb, const json& value, const char* field) {
  if (!value.is_array()) {
    throw Error(ErrorCode::Validation, "'" + std::string(field) + "' must be an array of ids");
  }
  std::set<std::string> out;
  for (const auto& v : value) {
    if (!v.is_string()) {
      throw Error(ErrorCode::Validation, "'" + std::string(field) + "' entries must be strings");
    }
    out.insert(kb.resolve_id(v.get<std::string>()));
  }
  return out;
}

onto::LangMap lang_map(const json& body, const char* field) {
  if (!body.contains(field)) return {};
  const json& value = body.at(field);
  if (!value.is_object()) {
    throw Error(ErrorCode::Validation, "'" + std::string(field) + "' must be an object");
  }
  onto::LangMap out;
  for (const auto& [lang, text] : value.items()) {
    if (!text.is_string()) {
      throw Error(ErrorCode::Validation, "'" + std::string(field) + "." + lang + "' must be a string");
    }
    out[lang] = text.get<std::string>();
  }
  return out;
}

/// Uploaded document: raw body, a multipart `file` part, or a server-side
/// `path` parameter.
struct Upload {
  std::string content;
  std::string name;  // file name when known, used for format detection
};

Upload read_upload(const Request& req) {
  if (req.has_param("path")) {
    const std::string path = req.get_param_value("path");
    return {rdf::read_file(path), path};
  }
  if (req.is_multipart_form_data()) {
    if (!req.has_file("file")) {
      throw Error(ErrorCode::Validation, "multipart upload needs a 'file' part");
    }
    const auto part = req.get_file_value("file");
    return {part.content, part.filename};
  }
  return {req.body, {}};
}

std::string content_type(const Request& req) {
  std::string type = req.get_header_value("Content-Type");
  if (auto semi = type.find(';'); semi != std::string::npos) type.resize(semi);
  return type;
}

rdf::Syntax rdf_syntax(const Request& req, const Upload& upload) {
  if (req.has_param("format")) {
    const std::string name = req.get_param_value("format");
    if (auto syntax = rdf::syntax_from_name(name)) return *syntax;
    throw Error(ErrorCode::Validation, "unknown RDF format '" + name + "'", {{"format", name}});
  }
  if (!upload.name.empty()) {
    if (auto syntax = rdf::syntax_from_path(upload.name)) return *syntax;
  }
  const std::string type = content_type(req);
  if (type == rdf::media_type(rdf::Syntax::Turtle)) return rdf::Syntax::Turtle;
  if (type == rdf::media_type(rdf::Syntax::NTriples)) return rdf::Syntax::NTriples;
  throw Error(ErrorCode::Validation,
              "cannot tell the RDF format; pass ?format=turtle|ntriples or a matching Content-Type");
}

ingest::RecordFormat record_format(const Request& req, const Upload& upload) {
  if (req.has_param("format")) {
    const std::string name = req.get_param_value("format");
    if (auto format = ingest::record_format_from_name(name)) return *format;
    throw Error(ErrorCode::Validation, "unknown record format '" + name + "'", {{"format", name}});
  }
  if (!upload.name.empty()) {
    if (auto format = ingest::record_format_from_path(upload.name)) return *format;
  }
  const std::string type = content_type(req);
  if (type == "text/csv") return ingest::RecordFormat::Csv;
  if (type == "application/x-ndjson" || type == "application/jsonl") {
    return ingest::RecordFormat::Jsonl;
  }
  throw Error(ErrorCode::Validation,
              "cannot tell the record format; pass ?format=jsonl|csv or a matching Content-Type");
}

json to_json(const sparql::ResultTable& table) {
  return {{"variables", table.variables}, {"rows", table.rows}};
}

}  // namespace

json envelope(json payload) { return {{"data", std::move(payload)}}; }

json error_envelope(ErrorCode code, const std::string& message, const json& detail) {
  return {{"error", {{"code", to_string(code)}, {"message", message}, {"detail", detail}}}};
}

struct Service::Impl {
  kb::KnowledgeBase& kb;
  ServiceOptions options;
  httplib::Server server;
  std::shared_mutex mutex;
  bool bound = false;

  Impl(kb::KnowledgeBase& k, ServiceOptions o) : kb(k), options(std::move(o)) {
    // Only SO_REUSEADDR: SO_REUSEPORT would let a second instance share a busy port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    routes();
  }

  template <class Lock, class F>
  httplib::Server::Handler wrap(F body, int success = 200) {
    return [this, body, success](const Request& req, Response& res) {
      try {
        Lock lock(mutex);
        body(req, res);
      } catch (const Error& e) {
        send_json(res, http_status(e.code()), error_envelope(e.code(), e.what(), e.detail()));
        return;
      } catch (const std::exception& e) {
        send_json(res, http_status(ErrorCode::Io), error_envelope(ErrorCode::Io, e.what()));
        return;
      }
      if (res.status == -1) res.status = success;
    };
  }

  template <class F>
  httplib::Server::Handler read(F f) {
    return wrap<std::shared_lock<std::shared_mutex>>(
        [f](const Request& req, Response& res) { send_json(res, 200, envelope(f(req))); });
  }

  template <class F>
  httplib::Server::Handler write(F f, int status = 200) {
    return wrap<std::unique_lock<std::shared_mutex>>(
        [f, status](const Request& req, Response& res) {
          send_json(res, status, envelope(f(req)));
        });
  }

  std::string id_from(const Request& req) const { return kb.resolve_id(req.matches[1].str()); }

  json patch(const Request& req) {
    const std::string id = id_from(req);
    const json body = parse_json_body(req);
    if (!body.is_object()) throw Error(ErrorCode::Validation, "request body must be a JSON object");
    for (const auto& [key, value] : body.items()) {
      if (key != "id" && key != "parents" && key != "labels" && key != "comments") {
        throw Error(ErrorCode::Validation, "unknown field '" + key + "'", {{"field", key}});
      }
    }
    const bool rename = body.contains("id");
    const bool move = body.contains("parents");
    const bool annotate = body.contains("labels") || body.contains("comments");
    if (rename + move + annotate != 1) {
      throw Error(ErrorCode::Validation,
                  "PATCH takes exactly one of: 'id' (rename), 'parents' (move), "
                  "'labels'/'comments' (annotate)");
    }
    onto::Concept c;
    if (rename) {
      if (!body.at("id").is_string()) throw Error(ErrorCode::Validation, "'id' must be a string");
      c = kb.rename_concept(id, kb.resolve_id(body.at("id").get<std::string>()));
    } else if (move) {
      c = kb.move_concept(id, id_list(kb, body.at("parents"), "parents"));
    } else {
      c = kb.annotate_concept(id, lang_map(body, "labels"), lang_map(body, "comments"));
    }
    return onto::to_json(c);
  }

  void routes() {
    server.Get("/health", read([this](const Request&) {
      return json{{"status", "ok"},
                  {"concepts", kb.ontology().concept_ids().size()},
                  {"triples", kb.store().size()},
                  {"last_change", kb.log().last_seq()}};
    }));

    server.Get("/concepts", read([this](const Request&) { return json(kb.ontology().concept_ids()); }));

    server.Get(R"(/concepts/(.+)/neighborhood)", read([this](const Request& req) {
      const auto view = kb.neighborhood(id_from(req), size_param(req, "depth", 1),
                                        lang_param(req, options.default_lang));
      return nav::to_json(view);
    }));

    server.Get(R"(/concepts/(.+)/paths)", read([this](const Request& req) {
      return json(kb.paths_to_root(id_from(req)));
    }));

    server.Get(R"(/concepts/(.+))", read([this](const Request& req) {
      return onto::to_json(kb.ontology().get(id_from(req)));
    }));

    server.Post("/concepts", write(
                                 [this](const Request& req) {
                                   const json body = parse_json_body(req);
                                   onto::Concept c = onto::concept_from_json(body);
                                   c.id = kb.resolve_id(c.id);
                                   if (body.contains("parents")) {
                                     c.parents = id_list(kb, body.at("parents"), "parents");
                                   }
                                   return onto::to_json(kb.create_concept(c));
                                 },
                                 201));

    server.Patch(R"(/concepts/(.+))", write([this](const Request& req) { return patch(req); }));

    server.Delete(R"(/concepts/(.+))", write([this](const Request& req) {
      const std::string name =
          req.has_param("mode") ? req.get_param_value("mode") : "refuse_if_children";
      const auto mode = onto::delete_mode_from_string(name);
      if (!mode) {
        throw Error(ErrorCode::Validation, "unknown delete mode '" + name + "'", {{"mode", name}});
      }
      const std::string id = id_from(req);
      const std::size_t removed = kb.delete_concept(id, *mode);
      return json{{"id", id}, {"mode", name}, {"removed", removed}};
    }));

    server.Get("/search", read([this](const Request& req) {
      const std::string q = req.get_param_value("q");
      search::SearchOptions opts;
      if (req.has_param("lang")) opts.lang = lang_param(req, options.default_lang);
      opts.k = size_param(req, "k", 10);
      if (opts.k == 0) throw Error(ErrorCode::Validation, "'k' must be at least 1");
      json hits = json::array();
      for (const auto& hit : kb.search(q, opts)) hits.push_back(search::to_json(hit));
      json suggestions = hits.empty() ? search::to_json(kb.suggest(q)) : json::array();
      return json{{"query", q}, {"hits", hits}, {"suggestions", suggestions}};
    }));

    server.Get("/suggest", read([this](const Request& req) {
      const std::string q = req.get_param_value("q");
      json concepts = json::array();
      for (const auto& s : kb.suggest_concepts(q, size_param(req, "k", 5))) {
        concepts.push_back({{"id", s.concept_iri}, {"score", s.score}});
      }
      return json{{"query", q}, {"tokens", search::to_json(kb.suggest(q))}, {"concepts", concepts}};
    }));

    server.Post("/query", read([this](const Request& req) {
      std::string text = req.body;
      if (content_type(req) == "application/json") {
        const json body = parse_json_body(req);
        if (!body.is_object() || !body.contains("query") || !body.at("query").is_string()) {
          throw Error(ErrorCode::Validation, "JSON body needs a string 'query'");
        }
        text = body.at("query").get<std::string>();
      }
      return to_json(kb.query(text));
    }));

    server.Post("/ingest", write([this](const Request& req) {
      const Upload upload = read_upload(req);
      const auto format = record_format(req, upload);
      return ingest::to_json(
          kb.ingest(upload.content, format, upload.name.empty() ? "http" : upload.name));
    }));

    server.Post("/import", write([this](const Request& req) {
      const Upload upload = read_upload(req);
      const auto syntax = rdf_syntax(req, upload);
      const std::size_t added =
          kb.import_rdf(upload.content, syntax, upload.name.empty() ? "http" : upload.name);
      return json{{"added", added}, {"triples", kb.store().size()}};
    }));

    server.Get("/export", wrap<std::shared_lock<std::shared_mutex>>([this](const Request& req,
                                                                           Response& res) {
      const std::string name = req.has_param("format") ? req.get_param_value("format") : "turtle";
      const auto syntax = rdf::syntax_from_name(name);
      if (!syntax) {
        throw Error(ErrorCode::Validation, "unknown RDF format '" + name + "'", {{"format", name}});
      }
      res.status = 200;
      res.set_content(kb.export_rdf(*syntax), std::string(rdf::media_type(*syntax)));
    }));

    server.Get("/changes", read([this](const Request& req) {
      json out = json::array();
      for (const auto& r : kb.changes(size_param(req, "since", 0))) out.push_back(onto::to_json(r));
      return out;
    }));

    server.Get("/validate", read([this](const Request&) { return onto::to_json(kb.validate()); }));

    if (options.static_dir) server.set_mount_point("/ui", options.static_dir->string());

    server.set_error_handler([](const Request& req, Response& res) {
      if (res.status == 404 && res.body.empty()) {
        send_json(res, 404,
                  error_envelope(ErrorCode::NotFound, "no route for " + req.method + " " + req.path));
      }
    });
  }
};

Service::Service(kb::KnowledgeBase& kb, ServiceOptions options)
    : impl_(std::make_unique<Impl>(kb, std::move(options))) {}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound < 0) {
    throw Error(ErrorCode::Io,
                "cannot listen on " + host + ":" + std::to_string(port) +
                    " (address in use or not available)",
                {{"host", host}, {"port", port}});
  }
  impl_->bound = true;
  return bound;
}

void Service::listen() {
  if (!impl_->bound) throw Error(ErrorCode::Io, "service is not bound to a port");
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool Service::running() const { return impl_->server.is_running(); }

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace ontokms::api

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "ontokms/error.hpp"
#include "ontokms/kb/knowledge_base.hpp"

namespace ontokms::api {

struct ServiceOptions {
  std::string default_lang = "en";
  /// Served under `/ui` when set.
  std::optional<std::filesystem::path> static_dir;
};

/// `{"data": payload}`
nlohmann::json envelope(nlohmann::json payload);
/// `{"error": {"code", "message", "detail"}}`
nlohmann::json error_envelope(ErrorCode code, const std::string& message,
                              const nlohmann::json& detail = nullptr);

/// HTTP/JSON front end over a KnowledgeBase. Mutating requests take an
/// exclusive lock; reads share it.
class Service {
 public:
  Service(kb::KnowledgeBase& kb, ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the listening socket; port 0 picks a free one. Returns the bound
  /// port. Throws Error(Io) when the address is unavailable.
  int bind(const std::string& host, int port);
  /// Serves until stop(); requires a successful bind().
  void listen();
  void stop();
  bool running() const;
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ontokms::api

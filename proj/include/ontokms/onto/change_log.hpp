#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ontokms::onto {

enum class ChangeOp { Create, Rename, Annotate, Move, Delete, Import };

std::string_view to_string(ChangeOp op);
std::optional<ChangeOp> change_op_from_string(std::string_view name);

struct ChangeRecord {
  std::uint64_t seq = 0;
  std::string timestamp;  // UTC, ISO-8601 with milliseconds
  ChangeOp op = ChangeOp::Create;
  std::string subject;
  nlohmann::json detail;  // {"before": ..., "after": ..., op-specific extras}
};

nlohmann::json to_json(const ChangeRecord& record);
ChangeRecord change_record_from_json(const nlohmann::json& json);

/// Append-only, gapless sequence of change records. When backed by a file
/// (`changes.jsonl`), existing records are loaded on construction and every
/// append writes one JSON line and flushes.
class ChangeLog {
 public:
  ChangeLog() = default;
  /// Throws Error(Io) when the file cannot be read or opened for append, and
  /// Error(Validation) when it holds malformed or non-gapless records.
  explicit ChangeLog(std::filesystem::path file);

  const ChangeRecord& append(ChangeOp op, std::string subject, nlohmann::json detail);

  /// Records with seq > `since_seq`, in order.
  std::vector<ChangeRecord> since(std::uint64_t since_seq) const;
  const std::vector<ChangeRecord>& records() const noexcept { return records_; }
  std::uint64_t last_seq() const noexcept {
    return records_.empty() ? 0 : records_.back().seq;
  }
  std::size_t size() const noexcept { return records_.size(); }

 private:
  std::optional<std::filesystem::path> file_;
  std::vector<ChangeRecord> records_;
};

std::string utc_timestamp_now();

}  // namespace ontokms::onto

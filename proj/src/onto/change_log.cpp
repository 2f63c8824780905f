#include "ontokms/onto/change_log.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "ontokms/error.hpp"

namespace ontokms::onto {

namespace {

constexpr std::array<std::string_view, 6> kOpNames{"Create", "Rename", "Annotate",
                                                    "Move",   "Delete", "Import"};

}  // namespace

std::string_view to_string(ChangeOp op) { return kOpNames[static_cast<std::size_t>(op)]; }

std::optional<ChangeOp> change_op_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kOpNames.size(); ++i) {
    if (kOpNames[i] == name) return static_cast<ChangeOp>(i);
  }
  return std::nullopt;
}

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch()) % 1000;
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(ms.count()));
  return buf;
}

nlohmann::json to_json(const ChangeRecord& record) {
  return {{"seq", record.seq},
          {"timestamp", record.timestamp},
          {"op", to_string(record.op)},
          {"subject", record.subject},
          {"detail", record.detail}};
}

ChangeRecord change_record_from_json(const nlohmann::json& json) {
  try {
    ChangeRecord r;
    r.seq = json.at("seq").get<std::uint64_t>();
    r.timestamp = json.at("timestamp").get<std::string>();
    const auto op = change_op_from_string(json.at("op").get<std::string>());
    if (!op) throw Error(ErrorCode::Validation, "unknown change op");
    r.op = *op;
    r.subject = json.at("subject").get<std::string>();
    r.detail = json.value("detail", nlohmann::json());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Validation, std::string("malformed change record: ") + e.what());
  }
}

ChangeLog::ChangeLog(std::filesystem::path file) : file_(std::move(file)) {
  std::error_code ec;
  if (!std::filesystem::exists(*file_, ec)) return;
  std::ifstream in(*file_);
  if (!in) throw Error(ErrorCode::Io, "cannot read change log '" + file_->string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ChangeRecord record;
    try {
      record = change_record_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Validation, "change log line " + std::to_string(line_no) +
                                             ": " + e.what());
    }
    if (record.seq != last_seq() + 1) {
      throw Error(ErrorCode::Validation,
                  "change log line " + std::to_string(line_no) + ": expected seq " +
                      std::to_string(last_seq() + 1) + ", got " + std::to_string(record.seq));
    }
    records_.push_back(std::move(record));
  }
}

const ChangeRecord& ChangeLog::append(ChangeOp op, std::string subject,
                                      nlohmann::json detail) {
  ChangeRecord record{last_seq() + 1, utc_timestamp_now(), op, std::move(subject),
                      std::move(detail)};
  if (file_) {
    std::ofstream out(*file_, std::ios::app);
    out << to_json(record).dump() << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "cannot append to '" + file_->string() + "'");
  }
  records_.push_back(std::move(record));
  return records_.back();
}

std::vector<ChangeRecord> ChangeLog::since(std::uint64_t since_seq) const {
  // seq is gapless from 1, so the first record with seq > since_seq sits at
  // index since_seq.
  if (since_seq >= records_.size()) return {};
  return {records_.begin() + static_cast<std::ptrdiff_t>(since_seq), records_.end()};
}

}  // namespace ontokms::onto

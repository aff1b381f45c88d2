// SPDX-License-Identifier: Apache-2.0
//
// Captured tweet records, one JSON object per line:
//
//   {"id": "...", "text": "...", "author_id": "...", "author_name": "...",
//    "followers": 0, "retweet_count": 0, "source": "...",
//    "created_at": "2016-01-01T00:00:00Z", "retweet_of": "..."}
//
// `id` and `text` are required. Numeric ids are accepted and stored as their
// decimal string. Missing counters default to 0, missing strings to "".
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "versescan/error.hpp"

namespace versescan {

struct TweetRecord {
  std::string id;
  std::string text;
  std::string author_id;
  std::string author_name;
  std::uint64_t followers = 0;
  std::uint64_t retweet_count = 0;
  std::string source_app;
  std::string created_at;
  std::optional<std::string> retweet_of;
};

inline nlohmann::ordered_json to_json(const TweetRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["text"] = r.text;
  j["author_id"] = r.author_id;
  j["author_name"] = r.author_name;
  j["followers"] = r.followers;
  j["retweet_count"] = r.retweet_count;
  j["source"] = r.source_app;
  j["created_at"] = r.created_at;
  if (r.retweet_of) j["retweet_of"] = *r.retweet_of;
  return j;
}

namespace detail {

inline std::string id_field(const nlohmann::json& j, const char* field, std::size_t line_no, bool required) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) {
    if (required) throw SchemaViolation(line_no, field, "missing");
    return {};
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_unsigned()) return std::to_string(it->get<std::uint64_t>());
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) return std::to_string(it->get<std::int64_t>());
  throw SchemaViolation(line_no, field, "expected string or non-negative integer id");
}

inline std::string string_field(const nlohmann::json& j, const char* field, std::size_t line_no, bool required) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) {
    if (required) throw SchemaViolation(line_no, field, "missing");
    return {};
  }
  if (!it->is_string()) throw SchemaViolation(line_no, field, "expected string");
  return it->get<std::string>();
}

inline std::uint64_t count_field(const nlohmann::json& j, const char* field, std::size_t line_no) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return 0;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer()) {
    const auto v = it->get<std::int64_t>();
    if (v < 0) throw SchemaViolation(line_no, field, "negative count");
    return static_cast<std::uint64_t>(v);
  }
  throw SchemaViolation(line_no, field, "expected non-negative integer");
}

}  // namespace detail

/// Parses one record line. Throws SchemaViolation.
inline TweetRecord parse_record(std::string_view line, std::size_t line_no) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaViolation(line_no, "<record>", "not a JSON object");
  TweetRecord r;
  r.id = detail::id_field(j, "id", line_no, true);
  if (r.id.empty()) throw SchemaViolation(line_no, "id", "empty");
  r.text = detail::string_field(j, "text", line_no, true);
  r.author_id = detail::id_field(j, "author_id", line_no, false);
  r.author_name = detail::string_field(j, "author_name", line_no, false);
  r.followers = detail::count_field(j, "followers", line_no);
  r.retweet_count = detail::count_field(j, "retweet_count", line_no);
  r.source_app = detail::string_field(j, "source", line_no, false);
  r.created_at = detail::string_field(j, "created_at", line_no, false);
  std::string parent = detail::id_field(j, "retweet_of", line_no, false);
  if (!parent.empty()) r.retweet_of = std::move(parent);
  return r;
}

struct ReadOptions {
  /// Abort on the first schema violation instead of skipping the line.
  bool strict = false;
};

/// Sequential reader over a record stream. Malformed lines are skipped and
/// remembered in violations() unless strict. Duplicate ids count as a
/// violation of field "id".
class RecordReader {
 public:
  RecordReader(std::istream& in, ReadOptions options = {}) : in_(&in), options_(options) {}

  std::optional<TweetRecord> next() {
    std::string line;
    while (std::getline(*in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        TweetRecord r = parse_record(line, line_no_);
        if (!seen_.insert(r.id).second) throw SchemaViolation(line_no_, "id", "duplicate id " + r.id);
        last_line_ = line_no_;
        return r;
      } catch (const SchemaViolation& e) {
        if (options_.strict) throw;
        violations_.push_back(e);
      }
    }
    return std::nullopt;
  }

  /// Line number of the record most recently returned by next().
  std::size_t line_no() const { return last_line_; }
  const std::vector<SchemaViolation>& violations() const { return violations_; }

 private:
  std::istream* in_;
  ReadOptions options_;
  std::size_t line_no_ = 0;
  std::size_t last_line_ = 0;
  std::unordered_set<std::string> seen_;
  std::vector<SchemaViolation> violations_;
};

struct RecordSet {
  std::vector<TweetRecord> records;
  std::vector<SchemaViolation> violations;
};

inline RecordSet read_records(std::istream& in, ReadOptions options = {}) {
  RecordReader reader(in, options);
  RecordSet out;
  while (auto r = reader.next()) out.records.push_back(std::move(*r));
  out.violations = reader.violations();
  return out;
}

inline RecordSet read_records(const std::filesystem::path& path, ReadOptions options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string());
  return read_records(in, options);
}

}  // namespace versescan

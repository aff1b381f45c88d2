// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "versescan/corpus.hpp"
#include "versescan/error.hpp"
#include "versescan/matcher.hpp"
#include "versescan/normalizer.hpp"
#include "versescan/records.hpp"

namespace versescan {

/// Recitation phrases used to pre-select candidate tweets.
inline constexpr std::array<std::string_view, 7> kDefaultKeyPhrases = {
    "بسم الله الرحمن الرحيم", "صدق الله العظيم", "قوله تعالى", "قال تعالى",
    "قال المولى",             "قال عز وجل",      "قال في كتابه",
};

namespace detail {

// Reads a one-item-per-line config file; '#' starts a comment line.
inline std::vector<std::string> read_config_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string());
  std::vector<std::string> out;
  std::string line;
  for (bool first = true; std::getline(in, line); first = false) {
    if (first) strip_bom(line);
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

inline bool contains_run(std::span<const std::string> hay, std::span<const std::string> needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

/// Key phrases, stored as normalized token sequences.
class KeyPhraseSet {
 public:
  KeyPhraseSet() = default;

  template <class Range>
  explicit KeyPhraseSet(const Range& phrases) {
    for (const auto& p : phrases) add(p);
  }

  static KeyPhraseSet defaults() { return KeyPhraseSet(kDefaultKeyPhrases); }

  static KeyPhraseSet load(const std::filesystem::path& path) {
    return KeyPhraseSet(detail::read_config_lines(path));
  }

  void add(std::string_view phrase) {
    auto tokens = normalize_tokens(phrase);
    if (!tokens.empty()) phrases_.push_back(std::move(tokens));
  }

  std::span<const std::vector<std::string>> phrases() const { return phrases_; }
  bool empty() const { return phrases_.empty(); }

  /// True when some sentence of `text` contains a phrase as a token run.
  bool matches(std::string_view text) const {
    if (phrases_.empty()) return false;
    const NormalizedText nt = split_sentences(text);
    for (std::size_t s = 0; s < nt.sentence_count(); ++s) {
      for (const auto& p : phrases_)
        if (detail::contains_run(nt.sentence(s), p)) return true;
    }
    return false;
  }

 private:
  std::vector<std::vector<std::string>> phrases_;
};

/// Lazy filter over any range of TweetRecord.
template <std::ranges::viewable_range R>
auto keyphrase_filter(R&& records, const KeyPhraseSet& phrases) {
  return std::forward<R>(records) |
         std::views::filter([&phrases](const TweetRecord& r) { return phrases.matches(r.text); });
}

inline std::vector<TweetRecord> keyphrase_filter_copy(std::span<const TweetRecord> records,
                                                      const KeyPhraseSet& phrases) {
  std::vector<TweetRecord> out;
  for (const TweetRecord& r : keyphrase_filter(records, phrases)) out.push_back(r);
  return out;
}

/// Client applications known to post verses on a user's behalf.
class AppRegistry {
 public:
  AppRegistry() = default;
  explicit AppRegistry(std::vector<std::string> identifiers) {
    for (auto& id : identifiers) add(id);
  }

  static AppRegistry defaults() { return AppRegistry({"du3a", "zad-muslim", "alathkar"}); }
  static AppRegistry load(const std::filesystem::path& path) { return AppRegistry(detail::read_config_lines(path)); }

  void add(std::string_view id) {
    auto t = detail::trim(id);
    if (!t.empty()) ids_.push_back(detail::ascii_lower(t));
  }

  std::span<const std::string> identifiers() const { return ids_; }

  /// Case-insensitive: the source contains a registered identifier.
  bool matches(std::string_view source_app) const {
    if (source_app.empty()) return false;
    const std::string src = detail::ascii_lower(source_app);
    return std::any_of(ids_.begin(), ids_.end(),
                       [&](const std::string& id) { return src.find(id) != std::string::npos; });
  }

 private:
  std::vector<std::string> ids_;
};

inline bool detect_app_tweet(const TweetRecord& record, const AppRegistry& registry) {
  return registry.matches(record.source_app);
}

struct RetweetFoldReport {
  /// Retweet records seen, dangling ones included.
  std::size_t explicit_retweets = 0;
  std::size_t dangling_retweets = 0;
};

/// Drops explicit retweet records, crediting them to their parent. A parent's
/// counter becomes max(observed retweet_count, explicit retweets seen), since
/// the observed counter already includes any retweets that were captured.
/// Retweets whose parent is missing are dropped and counted as dangling.
inline std::vector<TweetRecord> fold_retweets(std::vector<TweetRecord> records, RetweetFoldReport* report = nullptr) {
  std::unordered_map<std::string, std::uint64_t> explicit_counts;
  std::unordered_set<std::string> originals;
  for (const TweetRecord& r : records)
    if (!r.retweet_of) originals.insert(r.id);
  RetweetFoldReport rep;
  for (const TweetRecord& r : records) {
    if (!r.retweet_of) continue;
    ++rep.explicit_retweets;
    if (originals.contains(*r.retweet_of))
      ++explicit_counts[*r.retweet_of];
    else
      ++rep.dangling_retweets;
  }
  std::vector<TweetRecord> out;
  out.reserve(originals.size());
  for (TweetRecord& r : records) {
    if (r.retweet_of) continue;
    if (auto it = explicit_counts.find(r.id); it != explicit_counts.end())
      r.retweet_count = std::max(r.retweet_count, it->second);
    out.push_back(std::move(r));
  }
  if (report != nullptr) *report = rep;
  return out;
}

enum class WeightMode { Volume, Count };

inline std::optional<WeightMode> parse_weight_mode(std::string_view s) {
  if (s == "volume") return WeightMode::Volume;
  if (s == "count") return WeightMode::Count;
  return std::nullopt;
}

/// Reach of a tweet: itself plus its retweets (Volume), or just 1 (Count).
constexpr std::uint64_t tweet_weight(const TweetRecord& r, WeightMode mode = WeightMode::Volume) {
  return mode == WeightMode::Volume ? 1 + r.retweet_count : 1;
}

/// Runs extract_verses over every record, sharding across `threads` workers.
/// Output order follows input order regardless of thread count.
inline std::vector<MatchList> extract_all(const MatchIndex& index, std::span<const TweetRecord> records,
                                          const MatchOptions& options = {}, unsigned threads = 1) {
  std::vector<MatchList> out(records.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, records.size()))));
  if (threads == 1) {
    for (std::size_t i = 0; i < records.size(); ++i) out[i] = extract_verses(index, records[i].text, options);
    return out;
  }
  std::vector<std::jthread> workers;
  const std::size_t chunk = (records.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = std::min(records.size(), b + chunk);
    if (b >= e) break;
    workers.emplace_back([&, b, e] {
      for (std::size_t i = b; i < e; ++i) out[i] = extract_verses(index, records[i].text, options);
    });
  }
  return out;
}

struct MatchedTweet {
  TweetRecord record;
  MatchList matches;
};

/// Volume and retweet statistics of one tweet set.
struct DatasetStats {
  std::size_t account_count = 0;
  std::uint64_t tweet_count = 0;
  std::uint64_t verse_count = 0;
  std::uint64_t tweet_volume = 0;
  std::uint64_t verse_volume = 0;
  std::uint64_t retweets = 0;
  std::uint64_t retweeted_tweets = 0;

  double verses_per_tweet() const {
    return tweet_count == 0 ? 0.0 : static_cast<double>(verse_count) / static_cast<double>(tweet_count);
  }
  double retweets_per_tweet() const {
    return tweet_count == 0 ? 0.0 : static_cast<double>(retweets) / static_cast<double>(tweet_count);
  }
  double fraction_retweeted() const {
    return tweet_count == 0 ? 0.0 : static_cast<double>(retweeted_tweets) / static_cast<double>(tweet_count);
  }
  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

/// Order-independent accumulator behind DatasetStats; shards merge with merge().
class StatsAccumulator {
 public:
  void add(const TweetRecord& r, std::size_t match_count) {
    accounts_.insert(r.author_id);
    stats_.tweet_count += 1;
    stats_.verse_count += match_count;
    stats_.tweet_volume += 1 + r.retweet_count;
    stats_.verse_volume += match_count * (1 + r.retweet_count);
    stats_.retweets += r.retweet_count;
    stats_.retweeted_tweets += r.retweet_count > 0 ? 1 : 0;
  }

  void merge(const StatsAccumulator& other) {
    accounts_.insert(other.accounts_.begin(), other.accounts_.end());
    stats_.tweet_count += other.stats_.tweet_count;
    stats_.verse_count += other.stats_.verse_count;
    stats_.tweet_volume += other.stats_.tweet_volume;
    stats_.verse_volume += other.stats_.verse_volume;
    stats_.retweets += other.stats_.retweets;
    stats_.retweeted_tweets += other.stats_.retweeted_tweets;
  }

  DatasetStats stats() const {
    DatasetStats s = stats_;
    s.account_count = accounts_.size();
    return s;
  }

 private:
  std::unordered_set<std::string> accounts_;
  DatasetStats stats_;
};

/// Verse-validated tweets split into human- and app-posted sets.
struct DatasetPartition {
  std::vector<MatchedTweet> human_tweets;
  std::vector<MatchedTweet> app_tweets;
  DatasetStats human;
  DatasetStats app;
  /// Records that carried no verse.
  std::size_t unvalidated = 0;
};

/// Keeps records with at least one verse match and splits them by source
/// application. Input order is preserved inside each side.
inline DatasetPartition partition(std::span<const TweetRecord> records, std::span<const MatchList> matches,
                                  const AppRegistry& apps) {
  DatasetPartition out;
  StatsAccumulator human, app;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const MatchList& ml = matches[i];
    if (!ml.validated()) {
      ++out.unvalidated;
      continue;
    }
    const bool is_app = detect_app_tweet(records[i], apps);
    (is_app ? app : human).add(records[i], ml.matches.size());
    (is_app ? out.app_tweets : out.human_tweets).push_back(MatchedTweet{records[i], ml});
  }
  out.human = human.stats();
  out.app = app.stats();
  return out;
}

inline DatasetPartition partition(std::span<const TweetRecord> records, const MatchIndex& index,
                                  const AppRegistry& apps, const MatchOptions& options = {}, unsigned threads = 1) {
  const auto matches = extract_all(index, records, options, threads);
  return partition(records, matches, apps);
}

}  // namespace versescan

// SPDX-License-Identifier: Apache-2.0
//
// End-to-end commands behind the CLI. Each command reads its inputs, writes
// its outputs under PipelineConfig::out_dir, and returns a small summary.
// Output bytes depend only on inputs and configuration (no clocks, no
// absolute output paths), so reruns are byte-identical.
#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "versescan/analytics.hpp"
#include "versescan/artifact.hpp"
#include "versescan/corpus.hpp"
#include "versescan/error.hpp"
#include "versescan/hash.hpp"
#include "versescan/ingest.hpp"
#include "versescan/match_file.hpp"
#include "versescan/matcher.hpp"
#include "versescan/records.hpp"

namespace versescan {

namespace fs = std::filesystem;

/// Invalid flag combination; the CLI reports it with exit code 2.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

struct PipelineConfig {
  std::optional<fs::path> corpus;
  CorpusFormat corpus_format = CorpusFormat::TanzilPipe;
  bool allow_incomplete_corpus = false;
  std::optional<fs::path> categories;
  /// Prebuilt artifact from build-index; used instead of corpus/categories.
  std::optional<fs::path> index;
  std::optional<fs::path> apps;
  std::optional<fs::path> phrases;
  std::optional<fs::path> labels;
  std::size_t min_tokens = kDefaultMinTokens;
  /// Required for min_tokens below the default.
  bool allow_short_matches = false;
  WeightMode weight_mode = WeightMode::Volume;
  bool distinct_verses = false;
  fs::path out_dir = ".";
  std::uint64_t seed = 0;
  bool strict = false;
  unsigned threads = 1;
  std::size_t top_n = 10;
  std::size_t top_accounts = 500;

  void validate() const {
    if (min_tokens < 2) throw ConfigError("--min-tokens must be at least 2");
    if (min_tokens < kDefaultMinTokens && !allow_short_matches)
      throw ConfigError("--min-tokens below 3 requires --allow-short");
    if (top_n == 0) throw ConfigError("--top must be at least 1");
    if (top_accounts == 0) throw ConfigError("--top-accounts must be at least 1");
    if (threads == 0) throw ConfigError("--threads must be at least 1");
  }

  MatchOptions match_options() const { return MatchOptions{min_tokens}; }
};

namespace detail {

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot write");
  return out;
}

inline void write_json(const fs::path& path, const nlohmann::ordered_json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

inline nlohmann::ordered_json config_echo(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  auto opt = [](const std::optional<fs::path>& p) -> nlohmann::ordered_json {
    return p ? nlohmann::ordered_json(p->generic_string()) : nlohmann::ordered_json(nullptr);
  };
  j["corpus"] = opt(c.corpus);
  j["categories"] = opt(c.categories);
  j["index"] = opt(c.index);
  j["apps"] = opt(c.apps);
  j["phrases"] = opt(c.phrases);
  j["labels"] = opt(c.labels);
  j["min_tokens"] = c.min_tokens;
  j["weight_mode"] = c.weight_mode == WeightMode::Volume ? "volume" : "count";
  j["distinct_verses"] = c.distinct_verses;
  j["seed"] = c.seed;
  j["strict"] = c.strict;
  j["top_n"] = c.top_n;
  j["top_accounts"] = c.top_accounts;
  return j;
}

inline nlohmann::ordered_json input_hashes(std::initializer_list<std::optional<fs::path>> paths) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& p : paths)
    if (p) j[p->generic_string()] = sha256_file(*p);
  return j;
}

inline nlohmann::ordered_json stats_json(const DatasetStats& s) {
  nlohmann::ordered_json j;
  j["accounts"] = s.account_count;
  j["tweets"] = s.tweet_count;
  j["verses"] = s.verse_count;
  j["tweets_volume"] = s.tweet_volume;
  j["verses_volume"] = s.verse_volume;
  j["verses_per_tweet"] = s.verses_per_tweet();
  j["retweets_per_tweet"] = s.retweets_per_tweet();
  j["fraction_retweeted"] = s.fraction_retweeted();
  return j;
}

}  // namespace detail

/// Corpus from --index, or from --corpus plus optional --categories.
inline QuranCorpus load_configured_corpus(const PipelineConfig& config) {
  if (config.index) return read_index_artifact(*config.index);
  if (!config.corpus) throw ConfigError("either --index or --corpus is required");
  QuranCorpus corpus = load_corpus(*config.corpus, {config.corpus_format, config.allow_incomplete_corpus});
  if (config.categories) corpus = load_categories(*config.categories, corpus);
  return corpus;
}

inline AppRegistry configured_apps(const PipelineConfig& c) {
  return c.apps ? AppRegistry::load(*c.apps) : AppRegistry::defaults();
}

inline KeyPhraseSet configured_phrases(const PipelineConfig& c) {
  return c.phrases ? KeyPhraseSet::load(*c.phrases) : KeyPhraseSet::defaults();
}

/// Records with their input line numbers, retweet records folded away.
struct LoadedTweets {
  std::vector<TweetRecord> records;
  std::vector<std::size_t> lines;
  std::size_t read = 0;
  std::vector<SchemaViolation> violations;
  RetweetFoldReport folding;
};

inline LoadedTweets load_tweets(const fs::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string());
  RecordReader reader(in, ReadOptions{strict});
  std::vector<TweetRecord> all;
  std::unordered_map<std::string, std::size_t> line_of;
  while (auto r = reader.next()) {
    line_of[r->id] = reader.line_no();
    all.push_back(std::move(*r));
  }
  LoadedTweets out;
  out.read = all.size();
  out.violations = reader.violations();
  out.records = fold_retweets(std::move(all), &out.folding);
  out.lines.reserve(out.records.size());
  for (const auto& r : out.records) out.lines.push_back(line_of[r.id]);
  return out;
}

struct BuildIndexSummary {
  ArtifactInfo artifact;
  std::size_t verses = 0;
  int suras = 0;
  std::array<CategoryCount, kCategoryCount> categories{};
};

/// Category table as printed by build-index and written to categories.tsv.
inline std::string format_category_table(const std::array<CategoryCount, kCategoryCount>& counts) {
  std::string out = "category\tcount\tpercent\n";
  for (Category c : kAllCategories) {
    const auto& cc = counts[index_of(c)];
    out += std::string(name_of(c)) + "\t" + std::to_string(cc.count) + "\t" + detail::fixed(cc.percent, 1) + "\n";
  }
  return out;
}

inline BuildIndexSummary cmd_build_index(const PipelineConfig& config) {
  config.validate();
  if (!config.corpus) throw ConfigError("--corpus is required");
  PipelineConfig source = config;
  source.index.reset();
  const QuranCorpus corpus = load_configured_corpus(source);
  fs::create_directories(config.out_dir);
  BuildIndexSummary s;
  s.artifact = write_index_artifact(corpus, config.out_dir / "index.vsx");
  s.verses = corpus.size();
  s.suras = corpus.sura_count();
  s.categories = category_counts(corpus);
  auto out = detail::open_output(config.out_dir / "categories.tsv");
  out << format_category_table(s.categories);
  return s;
}

struct FilterSummary {
  std::size_t read = 0;
  std::size_t passed = 0;
  std::size_t violations = 0;
};

/// Writes records containing a key phrase to <out>/filtered.jsonl.
inline FilterSummary cmd_filter(const PipelineConfig& config, const fs::path& input) {
  config.validate();
  const KeyPhraseSet phrases = configured_phrases(config);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw IoError(input.string());
  fs::create_directories(config.out_dir);
  auto out = detail::open_output(config.out_dir / "filtered.jsonl");
  RecordReader reader(in, ReadOptions{config.strict});
  FilterSummary s;
  while (auto r = reader.next()) {
    ++s.read;
    if (!phrases.matches(r->text)) continue;
    ++s.passed;
    out << to_json(*r).dump() << '\n';
  }
  s.violations = reader.violations().size();
  return s;
}

struct ExtractSummary {
  std::size_t records_read = 0;
  std::size_t schema_violations = 0;
  std::size_t tweets = 0;
  std::size_t validated_tweets = 0;
  std::size_t verse_occurrences = 0;
  std::size_t full_matches = 0;
  std::size_t fragment_matches = 0;
};

/// Matches every tweet and writes <out>/matches.tsv and
/// <out>/extract_summary.json.
inline ExtractSummary cmd_extract(const PipelineConfig& config, const fs::path& input) {
  config.validate();
  const QuranCorpus corpus = load_configured_corpus(config);
  const MatchIndex index(corpus);
  const LoadedTweets tweets = load_tweets(input, config.strict);
  const auto lists = extract_all(index, tweets.records, config.match_options(), config.threads);

  fs::create_directories(config.out_dir);
  auto out = detail::open_output(config.out_dir / "matches.tsv");
  write_match_header(out);
  ExtractSummary s;
  s.records_read = tweets.read;
  s.schema_violations = tweets.violations.size();
  s.tweets = tweets.records.size();
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const TweetRecord& r = tweets.records[i];
    if (lists[i].validated()) ++s.validated_tweets;
    for (const MatchResult& m : lists[i].matches) {
      write_match_row(out, MatchRow{tweets.lines[i], r.id, r.author_id, m.verse, m.kind, m.sentence_index,
                                    m.matched_span, index.categories(m.verse), tweet_weight(r, config.weight_mode)});
      ++s.verse_occurrences;
      ++(m.kind == MatchKind::Full ? s.full_matches : s.fragment_matches);
    }
  }

  nlohmann::ordered_json j;
  j["command"] = "extract";
  j["config"] = detail::config_echo(config);
  j["input_hashes"] = detail::input_hashes({input, config.index, config.corpus, config.categories});
  j["records_read"] = s.records_read;
  j["schema_violations"] = s.schema_violations;
  j["explicit_retweets"] = tweets.folding.explicit_retweets;
  j["dangling_retweets"] = tweets.folding.dangling_retweets;
  j["tweets"] = s.tweets;
  j["validated_tweets"] = s.validated_tweets;
  j["verse_occurrences"] = s.verse_occurrences;
  j["full_matches"] = s.full_matches;
  j["fragment_matches"] = s.fragment_matches;
  detail::write_json(config.out_dir / "extract_summary.json", j);
  return s;
}

/// Validated tweets from a match file joined back to their tweet records.
struct JoinedMatches {
  std::vector<TweetRecord> records;        // one per validated tweet, match-file order
  std::vector<WeightedTweet> weighted;     // parallel to records
  std::size_t unjoined_tweets = 0;         // match-file tweets missing from the tweet file
};

inline JoinedMatches join_matches(std::span<const MatchRow> rows, const LoadedTweets& tweets, WeightMode mode) {
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < tweets.records.size(); ++i) by_id.emplace(tweets.records[i].id, i);
  JoinedMatches out;
  for (WeightedTweet& t : tweets_from_rows(rows)) {
    auto it = by_id.find(t.tweet_id);
    if (it == by_id.end()) {
      ++out.unjoined_tweets;
      continue;
    }
    const TweetRecord& r = tweets.records[it->second];
    t.author_id = r.author_id;
    t.weight = static_cast<double>(tweet_weight(r, mode));
    out.records.push_back(r);
    out.weighted.push_back(std::move(t));
  }
  return out;
}

struct AnalyzeSummary {
  DatasetStats human;
  DatasetStats app;
  std::optional<double> correlation;
  std::size_t unjoined_tweets = 0;
  std::size_t unlabeled_tweets = 0;
  bool grouped = false;
};

/// Writes the report bundle under <out>: partition.tsv,
/// category_distribution.tsv, grouped_distribution.tsv (with labels),
/// top_full.tsv, top_fragment.tsv, retweet_histogram.tsv,
/// influential_accounts.tsv and summary.json.
inline AnalyzeSummary cmd_analyze(const PipelineConfig& config, const fs::path& match_file, const fs::path& tweet_file) {
  config.validate();
  const auto rows = load_match_file(match_file);
  const LoadedTweets tweets = load_tweets(tweet_file, config.strict);
  JoinedMatches joined = join_matches(rows, tweets, config.weight_mode);
  if (joined.weighted.empty()) throw EmptyDataset();

  std::optional<QuranCorpus> corpus;
  if (config.index || config.corpus) corpus = load_configured_corpus(config);
  const AppRegistry apps = configured_apps(config);
  const DistributionOptions dist_opt{config.distinct_verses};

  std::vector<TweetRecord> human_records, app_records;
  std::vector<WeightedTweet> human_w, app_w;
  StatsAccumulator human_acc, app_acc;
  for (std::size_t i = 0; i < joined.records.size(); ++i) {
    const bool is_app = detect_app_tweet(joined.records[i], apps);
    (is_app ? app_acc : human_acc).add(joined.records[i], joined.weighted[i].hits.size());
    (is_app ? app_records : human_records).push_back(joined.records[i]);
    (is_app ? app_w : human_w).push_back(joined.weighted[i]);
  }

  AnalyzeSummary s;
  s.human = human_acc.stats();
  s.app = app_acc.stats();
  s.unjoined_tweets = joined.unjoined_tweets;
  fs::create_directories(config.out_dir);

  std::optional<LabelTable> labels;
  if (config.labels) labels = load_labels(*config.labels);

  // Partition statistics, plus per-label rows over human tweets.
  {
    auto out = detail::open_output(config.out_dir / "partition.tsv");
    out << "dataset\taccounts\ttweets\tverses\ttweets_volume\tverses_volume\tverses_per_tweet\tretweets_per_tweet\t"
           "fraction_retweeted\n";
    auto row = [&](const std::string& name, const DatasetStats& st) {
      out << name << '\t' << st.account_count << '\t' << st.tweet_count << '\t' << st.verse_count << '\t'
          << st.tweet_volume << '\t' << st.verse_volume << '\t' << detail::fixed(st.verses_per_tweet()) << '\t'
          << detail::fixed(st.retweets_per_tweet()) << '\t' << detail::fixed(st.fraction_retweeted()) << '\n';
    };
    row("human", s.human);
    row("app", s.app);
    if (labels) {
      std::map<std::string, StatsAccumulator> by_label;
      for (std::size_t i = 0; i < human_records.size(); ++i) {
        auto it = labels->find(human_records[i].author_id);
        if (it != labels->end()) by_label[it->second.to_string()].add(human_records[i], human_w[i].hits.size());
      }
      for (auto& [name, acc] : by_label) row(name, acc.stats());
    }
  }

  // Category distribution: Quran baseline against human, app and all tweets.
  {
    auto safe_dist = [&](std::span<const WeightedTweet> ts) -> std::optional<CategoryDistribution> {
      try {
        return category_distribution(ts, dist_opt);
      } catch (const EmptyDataset&) {
        return std::nullopt;
      }
    };
    const auto human_d = safe_dist(human_w);
    const auto app_d = safe_dist(app_w);
    const auto all_d = category_distribution(joined.weighted, dist_opt);
    std::optional<std::array<CategoryCount, kCategoryCount>> base;
    if (corpus) base = category_counts(*corpus);

    auto out = detail::open_output(config.out_dir / "category_distribution.tsv");
    out << "category\tquran_count\tquran_percent\thuman_volume\thuman_percent\tapp_volume\tapp_percent\tall_volume\t"
           "all_percent\n";
    auto cell = [&](const std::optional<CategoryDistribution>& d, std::size_t i) {
      return d ? detail::fixed(d->volume[i], 3) + "\t" + detail::fixed(d->percent[i], 4) : std::string("\t");
    };
    for (Category c : kAllCategories) {
      const std::size_t i = index_of(c);
      out << name_of(c) << '\t';
      if (base)
        out << (*base)[i].count << '\t' << detail::fixed((*base)[i].percent, 4);
      else
        out << '\t';
      out << '\t' << cell(human_d, i) << '\t' << cell(app_d, i) << '\t' << cell(all_d, i) << '\n';
    }
  }

  // Per-group distributions.
  if (labels) {
    const GroupedDistribution g = grouped_by_label(human_w, *labels, dist_opt);
    s.unlabeled_tweets = g.unjoined;
    s.grouped = true;
    auto out = detail::open_output(config.out_dir / "grouped_distribution.tsv");
    out << "group\tcategory\tvolume\tpercent\n";
    for (const auto& [group, d] : g.groups)
      for (Category c : kAllCategories)
        out << group << '\t' << name_of(c) << '\t' << detail::fixed(d.volume[index_of(c)], 3) << '\t'
            << detail::fixed(d.percent[index_of(c)], 4) << '\n';
  }

  // Leaderboards over human tweets.
  auto write_board = [&](const fs::path& path, KindFilter filter) {
    const VerseLeaderboard board = top_verses(human_w, filter, config.top_n, dist_opt);
    auto out = detail::open_output(path);
    out << "rank\tsura\tayah\tkind\tweighted_count\toccurrences\tcategories\n";
    std::size_t rank = 0;
    for (const auto& e : board.entries) {
      CategorySet cats;
      if (corpus)
        if (const Verse* v = corpus->find(e.verse)) cats = v->categories;
      out << ++rank << '\t' << e.verse.sura << '\t' << e.verse.ayah << '\t' << to_string(e.kind) << '\t'
          << detail::fixed(e.weighted_count, 3) << '\t' << e.occurrences << '\t' << cats.to_string() << '\n';
    }
  };
  write_board(config.out_dir / "top_full.tsv", KindFilter::Full);
  write_board(config.out_dir / "top_fragment.tsv", KindFilter::Fragment);

  // Retweet histograms and power-law fits.
  nlohmann::ordered_json hist_json;
  {
    auto out = detail::open_output(config.out_dir / "retweet_histogram.tsv");
    out << "dataset\tretweet_count\ttweets\n";
    for (auto [name, recs] : {std::pair<const char*, const std::vector<TweetRecord>*>{"human", &human_records},
                              {"app", &app_records}}) {
      const RetweetHistogram h = retweet_histogram(std::span<const TweetRecord>(*recs));
      for (auto [k, f] : h.frequency) out << name << '\t' << k << '\t' << f << '\n';
      nlohmann::ordered_json hj;
      hj["tweets"] = h.total;
      hj["fraction_retweeted"] = h.fraction_retweeted();
      try {
        const PowerLawFit fit = fit_loglog(h);
        hj["loglog_slope"] = fit.slope;
        hj["loglog_points"] = fit.points;
      } catch (const DegenerateInput&) {
        hj["loglog_slope"] = nullptr;
      }
      hist_json[name] = hj;
    }
  }

  // Influential accounts and the follower/retweet correlation, human side.
  nlohmann::ordered_json corr_json;
  {
    std::vector<AccountProfile> accounts = build_account_profiles(std::span<const TweetRecord>(human_records));
    if (labels) attach_labels(accounts, *labels);
    try {
      s.correlation = follower_retweet_correlation(accounts);
      corr_json = *s.correlation;
    } catch (const DegenerateInput&) {
      corr_json = nullptr;
    }
    const auto top = select_influential(accounts, config.top_accounts);
    auto out = detail::open_output(config.out_dir / "influential_accounts.tsv");
    out << "rank\tauthor_id\tauthor_name\ttweets\tretweets_received\tfollowers\tlabel\n";
    std::size_t rank = 0;
    for (const auto& a : top)
      out << ++rank << '\t' << detail::tsv_safe(a.author_id) << '\t' << detail::tsv_safe(a.author_name) << '\t'
          << a.tweet_count << '\t' << a.total_retweets_received << '\t' << a.followers << '\t'
          << (a.imported_label ? a.imported_label->to_string() : "") << '\n';
  }

  nlohmann::ordered_json j;
  j["command"] = "analyze";
  j["config"] = detail::config_echo(config);
  j["input_hashes"] = detail::input_hashes({match_file, tweet_file, config.index, config.corpus, config.categories,
                                            config.apps, config.labels});
  j["human"] = detail::stats_json(s.human);
  j["app"] = detail::stats_json(s.app);
  j["retweets"] = hist_json;
  j["follower_retweet_correlation"] = corr_json;
  j["unjoined_match_tweets"] = s.unjoined_tweets;
  j["unlabeled_tweets"] = s.unlabeled_tweets;
  j["schema_violations"] = tweets.violations.size();
  detail::write_json(config.out_dir / "summary.json", j);
  return s;
}

struct SampleSummary {
  std::size_t full = 0;
  std::size_t fragment = 0;
  bool full_short = false;
  bool fragment_short = false;
};

/// Seeded review sample written to <out>/review_sample.tsv.
inline SampleSummary cmd_sample(const PipelineConfig& config, const fs::path& match_file, const fs::path& tweet_file,
                                std::size_t n_full, std::size_t n_fragment) {
  config.validate();
  const auto rows = load_match_file(match_file);
  const LoadedTweets tweets = load_tweets(tweet_file, config.strict);
  const JoinedMatches joined = join_matches(rows, tweets, config.weight_mode);
  const ReviewSample sample = sample_for_review(joined.weighted, n_full, n_fragment, config.seed);

  fs::create_directories(config.out_dir);
  auto out = detail::open_output(config.out_dir / "review_sample.tsv");
  out << "pool\ttweet_id\tverses\ttext\n";
  auto emit = [&](const char* pool, std::span<const std::size_t> picks) {
    for (std::size_t i : picks) {
      std::string refs;
      for (const VerseHit& h : joined.weighted[i].hits) {
        if (!refs.empty()) refs += ' ';
        refs += h.verse.to_string() + (h.kind == MatchKind::Full ? "" : "~");
      }
      out << pool << '\t' << detail::tsv_safe(joined.records[i].id) << '\t' << refs << '\t'
          << detail::tsv_safe(joined.records[i].text) << '\n';
    }
  };
  emit("full", sample.full);
  emit("fragment", sample.fragment);
  return SampleSummary{sample.full.size(), sample.fragment.size(), sample.full_short, sample.fragment_short};
}

}  // namespace versescan

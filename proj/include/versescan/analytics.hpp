// SPDX-License-Identifier: Apache-2.0
//
// Corpus analytics over matched tweets. Every aggregate is a fold with an
// associative accumulator, so results do not depend on tweet order.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "versescan/category.hpp"
#include "versescan/corpus.hpp"
#include "versescan/error.hpp"
#include "versescan/ingest.hpp"
#include "versescan/matcher.hpp"

namespace versescan {

/// One verse occurrence inside a tweet, with the verse's categories attached.
struct VerseHit {
  VerseRef verse;
  MatchKind kind = MatchKind::Fragment;
  std::size_t sentence_index = 0;
  CategorySet categories;
};

/// A validated tweet reduced to what the analyses need.
struct WeightedTweet {
  std::string tweet_id;
  std::string author_id;
  double weight = 1.0;
  std::vector<VerseHit> hits;
};

inline WeightedTweet make_weighted(const TweetRecord& r, const MatchList& ml, const MatchIndex& index,
                                   WeightMode mode = WeightMode::Volume) {
  WeightedTweet t{r.id, r.author_id, static_cast<double>(tweet_weight(r, mode)), {}};
  t.hits.reserve(ml.matches.size());
  for (const MatchResult& m : ml.matches)
    t.hits.push_back(VerseHit{m.verse, m.kind, m.sentence_index, index.categories(m.verse)});
  return t;
}

inline std::vector<WeightedTweet> make_weighted(std::span<const MatchedTweet> tweets, const MatchIndex& index,
                                                WeightMode mode = WeightMode::Volume) {
  std::vector<WeightedTweet> out;
  out.reserve(tweets.size());
  for (const MatchedTweet& t : tweets) out.push_back(make_weighted(t.record, t.matches, index, mode));
  return out;
}

struct DistributionOptions {
  /// Split each sentence's weight equally among the verses it matched,
  /// instead of crediting every matched verse with the full weight.
  bool distinct_verses = false;
};

/// Share of weighted verse volume falling in each category:
/// percent_i = volume_i / total_volume * 100. Multi-label verses count in
/// each of their categories, so percentages may sum past 100.
struct CategoryDistribution {
  std::array<double, kCategoryCount> volume{};
  double total_volume = 0.0;
  std::array<double, kCategoryCount> percent{};

  double share(Category c) const { return percent[index_of(c)]; }

  void add(CategorySet cats, double w) {
    total_volume += w;
    for (Category c : kAllCategories)
      if (cats.contains(c)) volume[index_of(c)] += w;
  }

  void merge(const CategoryDistribution& o) {
    total_volume += o.total_volume;
    for (std::size_t i = 0; i < kCategoryCount; ++i) volume[i] += o.volume[i];
  }

  void finish() {
    for (std::size_t i = 0; i < kCategoryCount; ++i)
      percent[i] = total_volume > 0 ? volume[i] / total_volume * 100.0 : 0.0;
  }
};

namespace detail {

// Calls f(hit, share) for every hit; in distinct mode, share is the tweet
// weight divided by the number of hits from the same sentence.
template <class F>
void for_each_weighted_hit(const WeightedTweet& t, const DistributionOptions& opt, F&& f) {
  if (!opt.distinct_verses) {
    for (const VerseHit& h : t.hits) f(h, t.weight);
    return;
  }
  std::map<std::size_t, std::size_t> per_sentence;
  for (const VerseHit& h : t.hits) ++per_sentence[h.sentence_index];
  for (const VerseHit& h : t.hits) f(h, t.weight / static_cast<double>(per_sentence[h.sentence_index]));
}

}  // namespace detail

inline CategoryDistribution category_distribution(std::span<const WeightedTweet> tweets,
                                                  const DistributionOptions& options = {}) {
  CategoryDistribution d;
  std::size_t hits = 0;
  for (const WeightedTweet& t : tweets) {
    hits += t.hits.size();
    detail::for_each_weighted_hit(t, options, [&](const VerseHit& h, double w) { d.add(h.categories, w); });
  }
  if (hits == 0) throw EmptyDataset();
  d.finish();
  return d;
}

/// Category distribution of the Quran itself, every verse weighted 1.
inline CategoryDistribution quran_baseline(const QuranCorpus& corpus) {
  CategoryDistribution d;
  for (const Verse& v : corpus.verses()) d.add(v.categories, 1.0);
  d.finish();
  return d;
}

enum class KindFilter { Full, Fragment, Both };

inline std::optional<KindFilter> parse_kind_filter(std::string_view s) {
  if (s == "full") return KindFilter::Full;
  if (s == "fragment") return KindFilter::Fragment;
  if (s == "both") return KindFilter::Both;
  return std::nullopt;
}

struct LeaderboardEntry {
  VerseRef verse;
  MatchKind kind = MatchKind::Full;
  double weighted_count = 0.0;
  std::uint64_t occurrences = 0;
};

/// Sorted by weighted count descending; ties by (sura, ayah), then Full
/// before Fragment.
struct VerseLeaderboard {
  std::vector<LeaderboardEntry> entries;
};

inline VerseLeaderboard top_verses(std::span<const WeightedTweet> tweets, KindFilter filter, std::size_t n,
                                   const DistributionOptions& options = {}) {
  std::map<std::pair<VerseRef, MatchKind>, LeaderboardEntry> acc;
  for (const WeightedTweet& t : tweets) {
    detail::for_each_weighted_hit(t, options, [&](const VerseHit& h, double w) {
      if (filter == KindFilter::Full && h.kind != MatchKind::Full) return;
      if (filter == KindFilter::Fragment && h.kind != MatchKind::Fragment) return;
      auto& e = acc[{h.verse, h.kind}];
      e.verse = h.verse;
      e.kind = h.kind;
      e.weighted_count += w;
      e.occurrences += 1;
    });
  }
  VerseLeaderboard board;
  board.entries.reserve(acc.size());
  for (auto& [key, e] : acc) board.entries.push_back(e);
  // acc is already in (verse, kind) order, so a stable sort on count keeps the tie order.
  std::stable_sort(board.entries.begin(), board.entries.end(),
                   [](const LeaderboardEntry& a, const LeaderboardEntry& b) { return a.weighted_count > b.weighted_count; });
  if (board.entries.size() > n) board.entries.resize(n);
  return board;
}

/// Exact retweet-count histogram.
struct RetweetHistogram {
  std::map<std::uint64_t, std::uint64_t> frequency;
  std::uint64_t total = 0;

  double fraction_retweeted() const {
    if (total == 0) return 0.0;
    auto it = frequency.find(0);
    const std::uint64_t zero = it == frequency.end() ? 0 : it->second;
    return 1.0 - static_cast<double>(zero) / static_cast<double>(total);
  }

  /// (retweet_count, frequency) pairs usable on log-log axes: counts >= 1.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> loglog_points() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (auto [k, f] : frequency)
      if (k >= 1 && f >= 1) out.emplace_back(k, f);
    return out;
  }
};

inline RetweetHistogram retweet_histogram(std::span<const std::uint64_t> retweet_counts) {
  RetweetHistogram h;
  for (std::uint64_t c : retweet_counts) ++h.frequency[c];
  h.total = retweet_counts.size();
  return h;
}

inline RetweetHistogram retweet_histogram(std::span<const TweetRecord> tweets) {
  RetweetHistogram h;
  for (const TweetRecord& t : tweets) ++h.frequency[t.retweet_count];
  h.total = tweets.size();
  return h;
}

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Bins rarer than this are left out of the fit: the log of a small count is
/// biased and flattens the tail.
inline constexpr std::uint64_t kDefaultMinBinFrequency = 10;

/// Ordinary least squares of log(frequency) on log(retweet_count) over bins
/// with retweet_count >= 1 and frequency >= min_frequency.
inline PowerLawFit fit_loglog(const RetweetHistogram& h, std::uint64_t min_frequency = kDefaultMinBinFrequency) {
  std::vector<double> xs, ys;
  for (auto [k, f] : h.loglog_points()) {
    if (f < min_frequency) continue;
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(static_cast<double>(f)));
  }
  if (xs.size() < 2) throw DegenerateInput("log-log fit needs at least two populated bins");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= n, my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw DegenerateInput("log-log fit needs distinct retweet counts");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = xs.size();
  return fit;
}

/// Pearson product-moment correlation, single pass with running co-moments.
inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DegenerateInput("correlation inputs differ in length");
  if (x.size() < 2) throw DegenerateInput("correlation needs at least two points");
  double mx = 0, my = 0, m2x = 0, m2y = 0, cxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    mx += dx / n;
    my += dy / n;
    m2x += dx * (x[i] - mx);
    m2y += dy * (y[i] - my);
    cxy += dx * (y[i] - my);
  }
  if (m2x <= 0 || m2y <= 0) throw DegenerateInput("correlation undefined for zero variance");
  return std::clamp(cxy / std::sqrt(m2x * m2y), -1.0, 1.0);
}

enum class AccountType { Personal, Page };
enum class ContentType { RCE, General };

struct AccountLabel {
  AccountType main = AccountType::Personal;
  ContentType secondary = ContentType::General;

  std::string to_string() const {
    return std::string(main == AccountType::Personal ? "Personal" : "Page") + "-" +
           (secondary == ContentType::RCE ? "RCE" : "General");
  }
  friend bool operator==(const AccountLabel&, const AccountLabel&) = default;
};

struct AccountProfile {
  std::string author_id;
  std::string author_name;
  std::uint64_t tweet_count = 0;
  std::uint64_t total_retweets_received = 0;
  std::uint64_t followers = 0;
  std::optional<AccountLabel> imported_label;
};

/// One profile per author over the given (verse-validated) tweets, sorted by
/// author_id. Followers and name come from the author's last tweet in input
/// order.
inline std::vector<AccountProfile> build_account_profiles(std::span<const TweetRecord> tweets) {
  std::map<std::string, AccountProfile> acc;
  for (const TweetRecord& t : tweets) {
    auto& p = acc[t.author_id];
    p.author_id = t.author_id;
    p.author_name = t.author_name;
    p.tweet_count += 1;
    p.total_retweets_received += t.retweet_count;
    p.followers = t.followers;
  }
  std::vector<AccountProfile> out;
  out.reserve(acc.size());
  for (auto& [id, p] : acc) out.push_back(std::move(p));
  return out;
}

inline std::vector<AccountProfile> build_account_profiles(std::span<const MatchedTweet> tweets) {
  std::vector<TweetRecord> records;
  records.reserve(tweets.size());
  for (const auto& t : tweets) records.push_back(t.record);
  return build_account_profiles(std::span<const TweetRecord>(records));
}

/// The k accounts with the most retweets received; ties by author_id.
inline std::vector<AccountProfile> select_influential(std::span<const AccountProfile> accounts, std::size_t k) {
  std::vector<AccountProfile> out(accounts.begin(), accounts.end());
  std::sort(out.begin(), out.end(), [](const AccountProfile& a, const AccountProfile& b) {
    if (a.total_retweets_received != b.total_retweets_received)
      return a.total_retweets_received > b.total_retweets_received;
    return a.author_id < b.author_id;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

/// Pearson correlation between retweets received and followers, per account.
inline double follower_retweet_correlation(std::span<const AccountProfile> accounts) {
  std::vector<double> rt, fol;
  rt.reserve(accounts.size());
  fol.reserve(accounts.size());
  for (const auto& a : accounts) {
    rt.push_back(static_cast<double>(a.total_retweets_received));
    fol.push_back(static_cast<double>(a.followers));
  }
  return pearson(rt, fol);
}

using LabelTable = std::unordered_map<std::string, AccountLabel>;

/// Parses `author_id,main_label,secondary_label` rows (Personal|Page,
/// RCE|General, case-insensitive). A non-numeric, unrecognized first row is
/// treated as a header.
inline LabelTable parse_labels(std::istream& in) {
  LabelTable out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) detail::strip_bom(line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty() || line.front() == '#') continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    while (true) {
      const auto c = rest.find(',');
      cells.push_back(detail::trim(rest.substr(0, c)));
      if (c == std::string_view::npos) break;
      rest = rest.substr(c + 1);
    }
    if (cells.size() != 3) throw MalformedLine(line_no, "expected author_id,main_label,secondary_label");
    const std::string main = detail::ascii_lower(cells[1]);
    const std::string sec = detail::ascii_lower(cells[2]);
    AccountLabel label;
    if (main == "personal")
      label.main = AccountType::Personal;
    else if (main == "page")
      label.main = AccountType::Page;
    else if (line_no == 1 || out.empty())
      continue;  // header
    else
      throw MalformedLine(line_no, "main label must be Personal or Page");
    if (sec == "rce")
      label.secondary = ContentType::RCE;
    else if (sec == "general")
      label.secondary = ContentType::General;
    else
      throw MalformedLine(line_no, "secondary label must be RCE or General");
    out[std::string(cells[0])] = label;
  }
  return out;
}

inline LabelTable load_labels(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_labels(in);
}

inline void attach_labels(std::span<AccountProfile> accounts, const LabelTable& labels) {
  for (auto& a : accounts) {
    if (auto it = labels.find(a.author_id); it != labels.end()) a.imported_label = it->second;
  }
}

enum class GroupKey { Dataset, AccountLabel };

inline GroupKey parse_group_key(std::string_view s) {
  if (s == "dataset") return GroupKey::Dataset;
  if (s == "label" || s == "account-label") return GroupKey::AccountLabel;
  throw UnknownGroupKey(std::string(s));
}

struct GroupedDistribution {
  std::map<std::string, CategoryDistribution> groups;
  /// Tweets the key function could not place in any group.
  std::size_t unjoined = 0;
};

/// One distribution per group. `key_of` maps a tweet to its group name, or
/// std::nullopt when the tweet has no group (counted in `unjoined`).
template <class KeyFn>
GroupedDistribution grouped_distribution(std::span<const WeightedTweet> tweets, KeyFn&& key_of,
                                         const DistributionOptions& options = {}) {
  std::map<std::string, std::vector<WeightedTweet>> buckets;
  GroupedDistribution out;
  for (const WeightedTweet& t : tweets) {
    std::optional<std::string> key = key_of(t);
    if (!key) {
      ++out.unjoined;
      continue;
    }
    buckets[*key].push_back(t);
  }
  for (auto& [key, ts] : buckets) {
    bool any = std::any_of(ts.begin(), ts.end(), [](const WeightedTweet& t) { return !t.hits.empty(); });
    if (any) out.groups.emplace(key, category_distribution(ts, options));
  }
  return out;
}

/// Groups by imported account label; tweets by unlabeled authors are unjoined.
inline GroupedDistribution grouped_by_label(std::span<const WeightedTweet> tweets, const LabelTable& labels,
                                            const DistributionOptions& options = {}) {
  return grouped_distribution(
      tweets,
      [&](const WeightedTweet& t) -> std::optional<std::string> {
        auto it = labels.find(t.author_id);
        if (it == labels.end()) return std::nullopt;
        return it->second.to_string();
      },
      options);
}

/// Deterministic sampler: mt19937_64 with unbiased bounded draws done by hand,
/// so output does not depend on the standard library's distributions.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng_();
    while (x >= limit);
    return x % bound;
  }

  /// k distinct picks from [0, n), in ascending order.
  std::vector<std::size_t> pick(std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    k = std::min(k, n);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
  }

 private:
  std::mt19937_64 rng_;
};

struct ReviewSample {
  /// Indices into the input tweets.
  std::vector<std::size_t> full;
  std::vector<std::size_t> fragment;
  /// Set when fewer tweets were available than requested.
  bool full_short = false;
  bool fragment_short = false;
};

/// Draws tweets for manual precision review. The full pool holds tweets
/// with at least one Full match; the fragment pool holds the rest.
inline ReviewSample sample_for_review(std::span<const WeightedTweet> tweets, std::size_t n_full,
                                      std::size_t n_fragment, std::uint64_t seed) {
  std::vector<std::size_t> full_pool, frag_pool;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    const auto& hits = tweets[i].hits;
    if (hits.empty()) continue;
    const bool has_full =
        std::any_of(hits.begin(), hits.end(), [](const VerseHit& h) { return h.kind == MatchKind::Full; });
    (has_full ? full_pool : frag_pool).push_back(i);
  }
  SeededSampler sampler(seed);
  ReviewSample s;
  for (std::size_t i : sampler.pick(full_pool.size(), n_full)) s.full.push_back(full_pool[i]);
  for (std::size_t i : sampler.pick(frag_pool.size(), n_fragment)) s.fragment.push_back(frag_pool[i]);
  s.full_short = full_pool.size() < n_full;
  s.fragment_short = frag_pool.size() < n_fragment;
  return s;
}

}  // namespace versescan

// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "versescan/versescan.hpp"

using namespace versescan;
using namespace versescan::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<std::string> slice(const std::vector<std::string>& v, std::size_t b, std::size_t n) {
  return {v.begin() + static_cast<long>(b), v.begin() + static_cast<long>(b + n)};
}

bool same_results(const std::vector<MatchResult>& a, const std::vector<MatchResult>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].verse != b[i].verse || a[i].kind != b[i].kind || a[i].matched_span != b[i].matched_span) return false;
  return true;
}

// Filler vocabulary for decoy text: everyday words plus Quran tokens.
std::vector<std::string> decoy_vocabulary() {
  std::vector<std::string> words = {"صباح", "الخير", "يا", "جماعه", "اليوم", "الجو", "جميل", "رمضان", "كريم",
                                    "دعاء", "اللهم", "امين", "شكرا", "لكم", "مساء", "النور", "جمعه", "مباركه"};
  std::set<std::string> seen(words.begin(), words.end());
  const auto verses = full_corpus().verses();
  for (std::size_t i = 0; i < verses.size(); i += 3)
    for (const auto& t : verses[i].norm_tokens)
      if (seen.insert(t).second) words.push_back(t);
  return words;
}

// ---------------------------------------------------------------------------

Outcome corpus_integrity() {
  Stopwatch sw;
  const QuranCorpus c = load_corpus(quran_path());
  const double t = sw.seconds();
  bool ayahs_ok = true;
  for (int s = 1; s <= kSuraCount; ++s)
    ayahs_ok = ayahs_ok && c.ayah_count(s) == static_cast<std::size_t>(canonical_ayah_count(s));
  const bool ok = c.size() == 6236 && c.sura_count() == 114 && ayahs_ok && t < 5.0;
  return {ok, fmt("%zu verses, %d suras, per-sura counts %s, load %.3f s (limit 5 s)", c.size(), c.sura_count(),
                  ayahs_ok ? "canonical" : "WRONG", t)};
}

Outcome baseline_distribution() {
  std::istringstream in(reference_category_csv());
  const CategoryDistribution d = quran_baseline(parse_categories(in, full_corpus()));
  double worst = 0;
  std::string worst_name;
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    const double err = std::abs(d.percent[i] - kReferenceCategoryPercents[i]);
    if (err > worst) worst = err, worst_name = std::string(kCategoryNames[i]);
  }
  return {worst <= 0.05,
          fmt("HereafterUnseens %.2f%%, Jihad %.2f%%, General %.2f%%; max deviation %.4f pp (%s), limit 0.05",
              d.share(Category::HereafterUnseens), d.share(Category::Jihad), d.share(Category::General), worst,
              worst_name.c_str())};
}

Outcome matcher_oracle() {
  Stopwatch sw;
  // 70 verses spread over the book plus 30 from a sura with a repeated refrain.
  std::vector<VerseRef> refs;
  const auto all = full_corpus().verses();
  for (std::size_t i = 0; i < 70; ++i) refs.push_back(all[i * 89].ref);
  for (int a = 1; a <= 30; ++a) refs.push_back({55, a});
  const QuranCorpus fixture = excerpt_corpus(refs);
  const MatchIndex index(fixture);
  const auto fv = fixture.verses();

  std::mt19937_64 rng(3000);
  std::vector<std::string> vocab;
  for (const auto& v : fv) vocab.insert(vocab.end(), v.norm_tokens.begin(), v.norm_tokens.end());

  std::size_t disagreements = 0, probes = 0, with_matches = 0;
  for (int i = 0; i < 5000; ++i) {
    std::vector<std::string> q;
    const auto& vt = fv[uniform(rng, 0, fv.size() - 1)].norm_tokens;
    switch (i % 4) {
      case 0:
      case 1: {  // contiguous extract, 1..15 tokens
        const std::size_t len = std::min(uniform(rng, 1, 15), vt.size());
        q = slice(vt, uniform(rng, 0, vt.size() - len), len);
        break;
      }
      case 2: {  // shuffled negative
        const std::size_t len = std::min(uniform(rng, 3, 15), vt.size());
        q = slice(vt, uniform(rng, 0, vt.size() - len), len);
        std::shuffle(q.begin(), q.end(), rng);
        if (uniform(rng, 0, 1)) q.push_back(vocab[uniform(rng, 0, vocab.size() - 1)]);
        break;
      }
      default: {  // suffix of one verse followed by prefix of another
        const auto& wt = fv[uniform(rng, 0, fv.size() - 1)].norm_tokens;
        const std::size_t a = uniform(rng, 1, std::min<std::size_t>(vt.size(), 8));
        const std::size_t b = uniform(rng, 1, std::min<std::size_t>(wt.size(), 8));
        q = slice(vt, vt.size() - a, a);
        const auto head = slice(wt, 0, b);
        q.insert(q.end(), head.begin(), head.end());
      }
    }
    for (std::size_t min_tokens : {std::size_t{1}, kDefaultMinTokens}) {
      const auto got = match_sentence(index, q, {min_tokens});
      const auto want = brute_force_match(fixture, q, min_tokens);
      ++probes;
      with_matches += want.empty() ? 0 : 1;
      if (!same_results(got, want)) ++disagreements;
    }
  }
  const double t = sw.seconds();
  return {disagreements == 0 && t < 30.0,
          fmt("%zu-verse fixture, %zu probe evaluations (%zu with matches), %zu disagreements, %.2f s (limit 30 s)",
              fixture.size(), probes, with_matches, disagreements, t)};
}

Outcome minimum_length() {
  const MatchIndex index(full_corpus());
  std::size_t two_token_probes = 0, two_token_hits = 0;
  for (const Verse& v : full_corpus().verses()) {
    for (std::size_t i = 0; i + 2 <= v.norm_tokens.size(); ++i) {
      ++two_token_probes;
      two_token_hits += match_sentence(index, slice(v.norm_tokens, i, 2)).size();
    }
  }
  const std::string short_verse = full_corpus().at({112, 2}).raw_text;
  const std::size_t short_hits = extract_verses(index, short_verse).matches.size();

  std::mt19937_64 rng(1000);
  const auto vocab = decoy_vocabulary();
  const auto verses = full_corpus().verses();
  std::size_t found = 0;
  constexpr std::size_t kPlants = 1000;
  for (std::size_t p = 0; p < kPlants; ++p) {
    const Verse* v;
    do v = &verses[uniform(rng, 0, verses.size() - 1)];
    while (v->norm_tokens.size() < 3);
    const std::size_t len = uniform(rng, 3, std::min<std::size_t>(v->norm_tokens.size(), 15));
    const auto plant = slice(v->norm_tokens, uniform(rng, 0, v->norm_tokens.size() - len), len);
    std::string text = "@user ";
    for (std::size_t k = uniform(rng, 0, 12); k > 0; --k) text += vocab[uniform(rng, 0, vocab.size() - 1)] + " ";
    text += uniform(rng, 0, 1) ? ": " : "\n";
    text += join(plant);
    text += uniform(rng, 0, 1) ? ". " : "\n";
    for (std::size_t k = uniform(rng, 0, 12); k > 0; --k) text += vocab[uniform(rng, 0, vocab.size() - 1)] + " ";
    text += "#quran";
    const MatchList ml = extract_verses(index, text);
    bool hit = false;
    for (const auto& m : ml.matches) hit = hit || m.verse == v->ref;
    found += hit ? 1 : 0;
  }
  const bool ok = two_token_hits == 0 && short_hits == 0 && found == kPlants;
  return {ok, fmt("%zu two-token probes -> %zu matches; 112:2 -> %zu matches; planted extracts found %zu/%zu",
                  two_token_probes, two_token_hits, short_hits, found, kPlants)};
}

Outcome eq1_fixture() {
  // A=112:1 {God}, B=113:1 {Jihad, Worship}, C=114:1 {Muhammad},
  // D=48:1 {ShariaLaw, Worship, Sins}, E=108:1 {General}.
  std::istringstream cats("112,1,God\n113,1,Jihad;Worship\n114,1,Muhammad\n48,1,ShariaLaw;Worship;Sins\n");
  const QuranCorpus corpus = parse_categories(cats, excerpt_corpus({{112, 1}, {113, 1}, {114, 1}, {48, 1}, {108, 1}}));
  const MatchIndex index(corpus);
  auto raw = [&](int s, int a) { return full_corpus().at({s, a}).raw_text; };
  const std::string A = raw(112, 1), B = raw(113, 1), C = raw(114, 1), D = raw(48, 1), E = raw(108, 1);

  const std::vector<TweetRecord> records = {
      tweet("t1", A, "u1", 0),           tweet("t2", B, "u2", 4),
      tweet("t3", A + "\n" + C, "u3", 1), tweet("t4", "قال تعالى: " + D, "u1", 0),
      tweet("t5", B + ". " + B, "u4", 9), tweet("t6", E, "u5", 2),
      tweet("t7", C + "\n" + D, "u6", 0), tweet("t8", A, "u2", 3),
      tweet("t9", "لا اله الا الله", "u7", 0), tweet("t10", D + "\n" + E, "u8", 5),
  };
  const DatasetPartition p = partition(records, index, AppRegistry::defaults());
  const auto weighted = make_weighted(p.human_tweets, index);
  const CategoryDistribution d = category_distribution(weighted);

  // Weights 1 + retweets: 1,5,2,1,10,3,1,4,-,6. Volumes by hand:
  // God = t1 1 + t3 2 + t8 4 = 7; Jihad = t2 5 + t5 20 = 25;
  // Worship = B 25 + D (t4 1 + t7 1 + t10 6) = 33; Muhammad = t3 2 + t7 1 = 3;
  // ShariaLaw = Sins = 8; General = t6 3 + t10 6 = 9; total = 52.
  std::array<double, kCategoryCount> expect{};
  expect[index_of(Category::God)] = 7;
  expect[index_of(Category::Jihad)] = 25;
  expect[index_of(Category::Worship)] = 33;
  expect[index_of(Category::Muhammad)] = 3;
  expect[index_of(Category::ShariaLaw)] = 8;
  expect[index_of(Category::Sins)] = 8;
  expect[index_of(Category::General)] = 9;
  constexpr double kTotal = 52;

  bool exact = d.total_volume == kTotal && p.unvalidated == 1;
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    exact = exact && d.volume[i] == expect[i];
    exact = exact && std::abs(d.percent[i] - expect[i] * 100.0 / kTotal) <= 1e-12;
  }

  auto scaled = weighted;
  for (auto& t : scaled) t.weight *= 7;
  const CategoryDistribution d7 = category_distribution(scaled);
  const bool invariant = d7.percent == d.percent && d7.total_volume == 7 * kTotal;
  return {exact && invariant, fmt("total volume %.0f (want 52), Worship %.4f%% (want 63.4615%%), God %.4f%%; "
                                  "distribution %s; x7 weights %s",
                                  d.total_volume, d.share(Category::Worship), d.share(Category::God),
                                  exact ? "exact" : "MISMATCH", invariant ? "bit-identical" : "DIFFERENT")};
}

Outcome partition_arithmetic() {
  const MatchIndex index(full_corpus());
  // Plant pool: verses of >= 5 tokens that no other verse contains.
  std::vector<const Verse*> pool;
  for (const Verse& v : full_corpus().verses())
    if (v.norm_tokens.size() >= 5 && brute_force_match(full_corpus(), v.norm_tokens).size() == 1) pool.push_back(&v);

  std::mt19937_64 rng(6000);
  const auto vocab = decoy_vocabulary();
  const char* app_sources[] = {"du3a.org", "Zad-Muslim", "alathkar app"};
  const char* human_sources[] = {"Twitter for iPhone", "Twitter for Android", "Twitter Web Client"};

  struct Expect {
    std::set<std::string> accounts;
    DatasetStats s;
  } human, app;
  std::vector<TweetRecord> records;
  std::set<std::string> validated_ids;
  for (int i = 0; i < 5000; ++i) {
    const bool is_app = uniform(rng, 0, 4) == 0;
    const std::size_t k = uniform(rng, 0, 3);
    const std::uint64_t rt = uniform(rng, 0, 3) == 0 ? uniform(rng, 1, 50) : 0;
    std::string text;
    for (std::size_t j = 0; j < k; ++j) text += pool[uniform(rng, 0, pool.size() - 1)]->raw_text + "\n";
    for (std::size_t j = uniform(rng, 1, 6); j > 0; --j) text += vocab[uniform(rng, 0, 17)] + " ";
    const std::string author = (is_app ? "app" : "h") + std::to_string(uniform(rng, 0, 400));
    records.push_back(tweet("id" + std::to_string(i), text, author, rt,
                            is_app ? app_sources[i % 3] : human_sources[i % 3]));
    if (k == 0) continue;
    validated_ids.insert(records.back().id);
    Expect& e = is_app ? app : human;
    e.accounts.insert(author);
    e.s.tweet_count += 1;
    e.s.verse_count += k;
    e.s.tweet_volume += 1 + rt;
    e.s.verse_volume += k * (1 + rt);
    e.s.retweets += rt;
    e.s.retweeted_tweets += rt > 0;
  }
  human.s.account_count = human.accounts.size();
  app.s.account_count = app.accounts.size();

  const DatasetPartition p = partition(records, index, AppRegistry::defaults());
  std::set<std::string> h_ids, a_ids;
  for (const auto& t : p.human_tweets) h_ids.insert(t.record.id);
  for (const auto& t : p.app_tweets) a_ids.insert(t.record.id);
  std::set<std::string> both;
  std::set_intersection(h_ids.begin(), h_ids.end(), a_ids.begin(), a_ids.end(), std::inserter(both, both.end()));
  std::set<std::string> uni(h_ids);
  uni.insert(a_ids.begin(), a_ids.end());

  const bool stats_ok = p.human == human.s && p.app == app.s;
  const bool avg_ok =
      p.human.verses_per_tweet() == static_cast<double>(human.s.verse_count) / static_cast<double>(human.s.tweet_count) &&
      p.app.verses_per_tweet() == static_cast<double>(app.s.verse_count) / static_cast<double>(app.s.tweet_count);
  const bool sets_ok = both.empty() && uni == validated_ids && h_ids.size() == p.human_tweets.size() &&
                       a_ids.size() == p.app_tweets.size() &&
                       p.human_tweets.size() + p.app_tweets.size() + p.unvalidated == records.size();
  return {stats_ok && avg_ok && sets_ok,
          fmt("human %llu tweets/%llu verses/%llu volume, app %llu tweets/%llu verses; stats %s, averages %s, "
              "sets %s",
              (unsigned long long)p.human.tweet_count, (unsigned long long)p.human.verse_count,
              (unsigned long long)p.human.tweet_volume, (unsigned long long)p.app.tweet_count,
              (unsigned long long)p.app.verse_count, stats_ok ? "exact" : "MISMATCH", avg_ok ? "exact" : "MISMATCH",
              sets_ok ? "disjoint+exhaustive" : "BROKEN")};
}

Outcome zipf_property() {
  constexpr std::size_t kTweets = 100000;
  constexpr double kZero = 0.78;
  constexpr int kSupport = 100;
  std::string detail;
  bool ok = true;
  for (double s : {1.5, 2.0, 2.5}) {
    std::vector<double> w;
    for (int k = 1; k <= kSupport; ++k) w.push_back(std::pow(k, -s));
    std::discrete_distribution<int> tail(w.begin(), w.end());
    std::bernoulli_distribution retweeted(1.0 - kZero);
    std::mt19937_64 rng(7000 + static_cast<std::uint64_t>(s * 10));
    std::vector<TweetRecord> recs;
    recs.reserve(kTweets);
    for (std::size_t i = 0; i < kTweets; ++i) {
      TweetRecord r;
      r.id = std::to_string(i);
      r.retweet_count = retweeted(rng) ? static_cast<std::uint64_t>(tail(rng) + 1) : 0;
      recs.push_back(std::move(r));
    }
    const RetweetHistogram h = retweet_histogram(recs);
    const PowerLawFit fit = fit_loglog(h);
    const double frac = h.fraction_retweeted();
    const bool this_ok = std::abs(fit.slope + s) <= 0.2 && std::abs(frac - (1.0 - kZero)) <= 0.01;
    ok = ok && this_ok;
    detail += fmt("%ss=%.1f slope %.3f over %zu bins, retweeted %.2f%% (want 22%%)", detail.empty() ? "" : "; ", s,
                  fit.slope, fit.points, frac * 100);
  }
  return {ok, detail};
}

Outcome correlation() {
  std::vector<double> x(1000), up(1000), down(1000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Integers, so the linear relation holds exactly in floating point.
    x[i] = static_cast<double>(i) * 37 + 5;
    up[i] = 3 * x[i] + 2;
    down[i] = -2 * x[i] + 7;
  }
  const double r_up = pearson(x, up), r_down = pearson(x, down);

  std::mt19937_64 rng(8000);
  std::lognormal_distribution<double> heavy(2.0, 1.5);
  std::normal_distribution<double> noise(0, 1);
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> a(200 + trial), b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = heavy(rng), b[i] = 0.05 * a[i] + heavy(rng) + noise(rng);
    worst = std::max(worst, std::abs(pearson(a, b) - two_pass_pearson(a, b)));
  }
  const bool ok = r_up == 1.0 && r_down == -1.0 && worst <= 1e-12;
  return {ok, fmt("linear fixtures %.17g / %.17g; max |single-pass - two-pass| %.3g over 500 random sets (limit 1e-12)",
                  r_up, r_down, worst)};
}

// Synthetic tweets: 10-30 tokens, about a third carrying a verse extract.
std::string synthetic_tweets(std::size_t n, std::uint64_t seed, double* avg_tokens = nullptr) {
  std::mt19937_64 rng(seed);
  const auto vocab = decoy_vocabulary();
  const auto verses = full_corpus().verses();
  const char* sources[] = {"Twitter for iPhone", "Twitter for Android", "du3a.org", "Twitter Web Client"};
  std::string out;
  std::size_t tokens = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t target = uniform(rng, 10, 30);
    std::string text;
    std::size_t used = 0;
    if (uniform(rng, 0, 2) == 0) {
      const auto& vt = verses[uniform(rng, 0, verses.size() - 1)].norm_tokens;
      const std::size_t len = std::min(vt.size(), uniform(rng, 3, 10));
      text = join(slice(vt, uniform(rng, 0, vt.size() - len), len)) + "\n";
      used = len;
    }
    for (; used < target; ++used) {
      text += vocab[uniform(rng, 0, vocab.size() - 1)];
      text += uniform(rng, 0, 9) == 0 ? ". " : " ";
    }
    tokens += used;
    const std::uint64_t rt = uniform(rng, 0, 4) == 0 ? uniform(rng, 1, 200) : 0;
    out += record_line(tweet(std::to_string(i), text, "u" + std::to_string(uniform(rng, 0, n / 5)), rt,
                             sources[uniform(rng, 0, 3)], uniform(rng, 0, 100000)));
  }
  if (avg_tokens) *avg_tokens = static_cast<double>(tokens) / static_cast<double>(n);
  return out;
}

Outcome throughput() {
  const fs::path dir = temp_dir("vs-throughput");
  double avg = 0;
  write_file(dir / "tweets.jsonl", synthetic_tweets(100000, 9000, &avg));
  PipelineConfig c;
  c.corpus = quran_path();
  c.out_dir = dir / "out";
  c.threads = 1;
  Stopwatch sw;
  const ExtractSummary s = cmd_extract(c, dir / "tweets.jsonl");
  const double t = sw.seconds();
  fs::remove_all(dir);
  return {s.tweets >= 100000 && avg >= 19.0 && avg <= 21.0 && t < 60.0,
          fmt("%zu tweets (avg %.1f tokens), %zu validated, %zu verse occurrences in %.2f s single-threaded "
              "(%.0f tweets/s; limit 60 s)",
              s.tweets, avg, s.validated_tweets, s.verse_occurrences, t, static_cast<double>(s.tweets) / t)};
}

Outcome determinism() {
  const fs::path dir = temp_dir("vs-determinism");
  write_file(dir / "tweets.jsonl", synthetic_tweets(5000, 10000));
  write_file(dir / "categories.csv", reference_category_csv());
  std::string labels;
  for (int u = 0; u < 1000; u += 3)
    labels += "u" + std::to_string(u) + "," + (u % 2 ? "Personal" : "Page") + "," + (u % 5 ? "RCE" : "General") + "\n";
  write_file(dir / "labels.csv", labels);

  auto run = [&](const fs::path& out, unsigned threads) {
    PipelineConfig c;
    c.corpus = quran_path();
    c.categories = dir / "categories.csv";
    c.out_dir = out;
    cmd_build_index(c);
    PipelineConfig x = c;
    x.corpus.reset();
    x.categories.reset();
    x.index = dir / "index.vsx";
    fs::copy_file(out / "index.vsx", x.index.value(), fs::copy_options::overwrite_existing);
    x.threads = threads;
    cmd_extract(x, dir / "tweets.jsonl");
    fs::copy_file(out / "matches.tsv", dir / "matches.tsv", fs::copy_options::overwrite_existing);
    x.labels = dir / "labels.csv";
    x.seed = 42;
    cmd_analyze(x, dir / "matches.tsv", dir / "tweets.jsonl");
    cmd_sample(x, dir / "matches.tsv", dir / "tweets.jsonl", 100, 100);
  };
  run(dir / "a", 1);
  run(dir / "b", 4);

  std::size_t files = 0, differing = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) {
    ++files;
    const fs::path other = dir / "b" / e.path().filename();
    if (!fs::exists(other) || read_file(e.path()) != read_file(other)) ++differing;
  }
  std::size_t files_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "b")) ++files_b;
  fs::remove_all(dir);
  return {files >= 12 && files == files_b && differing == 0,
          fmt("%zu bundle files per run (1 vs 4 extract threads), %zu differ", files, differing)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "corpus integrity", corpus_integrity},
      {2, "baseline distribution", baseline_distribution},
      {3, "matcher oracle equivalence", matcher_oracle},
      {4, "minimum-length rule and planted precision", minimum_length},
      {5, "weighted category percentage fixture", eq1_fixture},
      {6, "partition arithmetic", partition_arithmetic},
      {7, "power-law retweet fit", zipf_property},
      {8, "correlation", correlation},
      {9, "extract throughput", throughput},
      {10, "end-to-end determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}

// SPDX-License-Identifier: Apache-2.0
//
// versescan: find Quran verses in captured tweets and analyze them.
//
// Exit codes: 0 success, 1 empty result, 2 bad input or usage.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "versescan/versescan.hpp"

namespace {

using versescan::PipelineConfig;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitEmpty = 1;
constexpr int kExitInput = 2;

struct Flags {
  std::string corpus, categories, index, apps, phrases, labels;
  std::string corpus_format = "tanzil-pipe";
  std::string weight_mode = "volume";
  std::string out = ".";
  std::string input, matches, tweets;
  std::size_t n_full = 100, n_fragment = 100;
  PipelineConfig config;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--corpus", f.corpus, "Quran text, one verse per line (sura|ayah|text)");
  cmd->add_option("--corpus-format", f.corpus_format, "Corpus format: tanzil-pipe or tsv");
  cmd->add_flag("--allow-incomplete", f.config.allow_incomplete_corpus, "Accept a corpus with fewer than 6236 verses");
  cmd->add_option("--categories", f.categories, "Category CSV: sura,ayah,category[;category...]");
  cmd->add_option("--index", f.index, "Index artifact written by build-index");
  cmd->add_option("--apps", f.apps, "App registry, one identifier per line");
  cmd->add_option("--phrases", f.phrases, "Key phrases, one per line");
  cmd->add_option("--min-tokens", f.config.min_tokens, "Shortest sentence matched against verses");
  cmd->add_flag("--allow-short", f.config.allow_short_matches, "Permit --min-tokens below 3");
  cmd->add_option("--weight-mode", f.weight_mode, "volume (1 + retweets) or count")
      ->check(CLI::IsMember({"volume", "count"}));
  cmd->add_flag("--distinct-verses", f.config.distinct_verses,
                "Split a sentence's weight across all verses it matched");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--seed", f.config.seed, "Random seed for sampling");
  cmd->add_flag("--strict", f.config.strict, "Abort on the first malformed record");
  cmd->add_option("--threads", f.config.threads, "Worker threads for extraction");
}

void finish_config(Flags& f) {
  auto opt = [](const std::string& s) { return s.empty() ? std::optional<fs::path>{} : std::optional<fs::path>(s); };
  f.config.corpus = opt(f.corpus);
  f.config.categories = opt(f.categories);
  f.config.index = opt(f.index);
  f.config.apps = opt(f.apps);
  f.config.phrases = opt(f.phrases);
  f.config.labels = opt(f.labels);
  f.config.out_dir = f.out;
  const auto fmt = versescan::parse_corpus_format(f.corpus_format);
  if (!fmt) throw versescan::ConfigError("unknown corpus format '" + f.corpus_format + "'");
  f.config.corpus_format = *fmt;
  f.config.weight_mode = *versescan::parse_weight_mode(f.weight_mode);
}

int run_build_index(Flags& f) {
  const auto s = versescan::cmd_build_index(f.config);
  std::cout << "verses\t" << s.verses << "\nsuras\t" << s.suras << "\nsha256\t" << s.artifact.sha256 << "\n\n"
            << versescan::format_category_table(s.categories);
  return kExitOk;
}

int run_filter(Flags& f) {
  const auto s = versescan::cmd_filter(f.config, f.input);
  std::cout << "read\t" << s.read << "\npassed\t" << s.passed << "\nskipped_malformed\t" << s.violations << '\n';
  return s.passed == 0 ? kExitEmpty : kExitOk;
}

int run_extract(Flags& f) {
  const auto s = versescan::cmd_extract(f.config, f.input);
  std::cout << "records\t" << s.records_read << "\ntweets\t" << s.tweets << "\nvalidated_tweets\t"
            << s.validated_tweets << "\nverse_occurrences\t" << s.verse_occurrences << "\nfull\t" << s.full_matches
            << "\nfragment\t" << s.fragment_matches << "\nskipped_malformed\t" << s.schema_violations << '\n';
  return s.validated_tweets == 0 ? kExitEmpty : kExitOk;
}

int run_analyze(Flags& f) {
  const auto s = versescan::cmd_analyze(f.config, f.matches, f.tweets);
  std::cout << "human_tweets\t" << s.human.tweet_count << "\napp_tweets\t" << s.app.tweet_count << '\n';
  if (s.correlation) std::cout << "follower_retweet_correlation\t" << *s.correlation << '\n';
  if (s.unjoined_tweets) std::cerr << "warning: " << s.unjoined_tweets << " matched tweets missing from tweet file\n";
  if (s.grouped && s.unlabeled_tweets)
    std::cerr << "warning: " << s.unlabeled_tweets << " human tweets by unlabeled accounts\n";
  return kExitOk;
}

int run_sample(Flags& f) {
  const auto s = versescan::cmd_sample(f.config, f.matches, f.tweets, f.n_full, f.n_fragment);
  std::cout << "full\t" << s.full << "\nfragment\t" << s.fragment << '\n';
  if (s.full_short) std::cerr << "warning: fewer full-verse tweets than requested\n";
  if (s.fragment_short) std::cerr << "warning: fewer fragment tweets than requested\n";
  return s.full + s.fragment == 0 ? kExitEmpty : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Find Quran verses in tweets and analyze their spread"};
  app.require_subcommand(1);
  Flags f;

  auto* build = app.add_subcommand("build-index", "Load and categorize the corpus, write index.vsx");
  add_common(build, f);

  auto* filter = app.add_subcommand("filter", "Keep records containing a key phrase");
  add_common(filter, f);
  filter->add_option("--in", f.input, "Tweet records (JSON lines)")->required();

  auto* extract = app.add_subcommand("extract", "Match verses in tweet records, write matches.tsv");
  add_common(extract, f);
  extract->add_option("--in", f.input, "Tweet records (JSON lines)")->required();

  auto* analyze = app.add_subcommand("analyze", "Build the report bundle from matches.tsv");
  add_common(analyze, f);
  analyze->add_option("--matches", f.matches, "matches.tsv from extract")->required();
  analyze->add_option("--tweets", f.tweets, "Tweet records the matches came from")->required();
  analyze->add_option("--labels", f.labels, "Account labels: author_id,main_label,secondary_label");
  analyze->add_option("--top", f.config.top_n, "Leaderboard length");
  analyze->add_option("--top-accounts", f.config.top_accounts, "Influential accounts to list");

  auto* sample = app.add_subcommand("sample", "Draw a seeded review sample of matched tweets");
  add_common(sample, f);
  sample->add_option("--matches", f.matches, "matches.tsv from extract")->required();
  sample->add_option("--tweets", f.tweets, "Tweet records the matches came from")->required();
  sample->add_option("--n-full", f.n_full, "Tweets with a full verse");
  sample->add_option("--n-fragment", f.n_fragment, "Tweets with fragments only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    finish_config(f);
    if (*build) return run_build_index(f);
    if (*filter) return run_filter(f);
    if (*extract) return run_extract(f);
    if (*analyze) return run_analyze(f);
    if (*sample) return run_sample(f);
  } catch (const versescan::EmptyDataset& e) {
    std::cerr << "versescan: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const versescan::InputError& e) {
    std::cerr << "versescan: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "versescan: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

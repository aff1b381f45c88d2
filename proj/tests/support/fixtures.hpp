// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "versescan/category.hpp"
#include "versescan/corpus.hpp"
#include "versescan/records.hpp"

#ifndef VERSESCAN_DATA_DIR
#error "VERSESCAN_DATA_DIR must point at the repository data/ directory"
#endif

namespace versescan::testing {

inline std::filesystem::path data_dir() { return VERSESCAN_DATA_DIR; }
inline std::filesystem::path quran_path() { return data_dir() / "quran-imlaei.txt"; }

/// The full corpus, loaded once per test binary.
inline const QuranCorpus& full_corpus() {
  static const QuranCorpus corpus = load_corpus(quran_path());
  return corpus;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(std::string_view prefix) {
  static std::uint64_t counter = 0;
  const auto ts = std::chrono::steady_clock::now().time_since_epoch().count();
  auto p = std::filesystem::temp_directory_path() /
           (std::string(prefix) + "-" + std::to_string(ts) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline void write_file(const std::filesystem::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Corpus text (sura|ayah|text lines) for the given refs, taken from the full corpus.
inline std::string corpus_excerpt(const std::vector<VerseRef>& refs) {
  std::string out;
  for (VerseRef r : refs) {
    const Verse& v = full_corpus().at(r);
    out += std::to_string(r.sura) + "|" + std::to_string(r.ayah) + "|" + v.raw_text + "\n";
  }
  return out;
}

inline QuranCorpus excerpt_corpus(const std::vector<VerseRef>& refs) {
  std::istringstream in(corpus_excerpt(refs));
  return parse_corpus(in, {CorpusFormat::TanzilPipe, true});
}

/// Verse counts per category from the reference category table (13 expert
/// categories; the remaining 1,324 verses are General).
inline constexpr std::array<std::size_t, kCategoryCount> kReferenceCategoryCounts = {
    1701, 1581, 684, 487, 397, 388, 337, 331, 330, 326, 322, 98, 71, 1324};

/// Reference percentages, one decimal as published.
inline constexpr std::array<double, kCategoryCount> kReferenceCategoryPercents = {
    27.3, 25.4, 11.0, 7.8, 6.4, 6.2, 5.4, 5.3, 5.3, 5.2, 5.2, 1.6, 1.1, 21.2};

/// A category CSV that reproduces the reference counts on the full corpus:
/// the 13 expert labels are dealt round-robin over the first 4,912 verses,
/// so each verse gets at least one label and no verse repeats a label.
inline std::string reference_category_csv() {
  const auto verses = full_corpus().verses();
  constexpr std::size_t kCategorized = 4912;
  std::vector<std::vector<Category>> per_verse(kCategorized);
  std::size_t j = 0;
  for (std::size_t c = 0; c + 1 < kCategoryCount; ++c)
    for (std::size_t k = 0; k < kReferenceCategoryCounts[c]; ++k, ++j)
      per_verse[j % kCategorized].push_back(kAllCategories[c]);
  std::string out = "sura,ayah,categories\n";
  for (std::size_t i = 0; i < kCategorized; ++i) {
    out += std::to_string(verses[i].ref.sura) + "," + std::to_string(verses[i].ref.ayah) + ",";
    for (std::size_t k = 0; k < per_verse[i].size(); ++k) {
      if (k) out += ';';
      out += name_of(per_verse[i][k]);
    }
    out += '\n';
  }
  return out;
}

inline std::string record_line(const TweetRecord& r) { return to_json(r).dump() + "\n"; }

inline TweetRecord tweet(std::string id, std::string text, std::string author = "a", std::uint64_t retweets = 0,
                         std::string source = "Twitter for iPhone", std::uint64_t followers = 0) {
  TweetRecord r;
  r.id = std::move(id);
  r.text = std::move(text);
  r.author_id = std::move(author);
  r.author_name = r.author_id;
  r.retweet_count = retweets;
  r.source_app = std::move(source);
  r.followers = followers;
  r.created_at = "2016-01-01T00:00:00Z";
  return r;
}

/// Joins tokens with spaces.
inline std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace versescan::testing

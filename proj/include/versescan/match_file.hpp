// SPDX-License-Identifier: Apache-2.0
//
// Flat tab-separated file with one row per (tweet, verse match), so analyses
// can rerun without re-matching. Columns:
//
//   line  tweet_id  author_id  sura  ayah  kind  sentence  span_begin  span_end  categories  weight
//
// `line` is the record's line number in the input file, `kind` is full or
// fragment, `categories` is ';'-joined category names, and `weight` is the
// tweet weight under the extraction's weight mode.
#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "versescan/analytics.hpp"
#include "versescan/category.hpp"
#include "versescan/error.hpp"
#include "versescan/matcher.hpp"

namespace versescan {

inline constexpr std::string_view kMatchFileHeader =
    "line\ttweet_id\tauthor_id\tsura\tayah\tkind\tsentence\tspan_begin\tspan_end\tcategories\tweight";

struct MatchRow {
  std::size_t line = 0;
  std::string tweet_id;
  std::string author_id;
  VerseRef verse;
  MatchKind kind = MatchKind::Fragment;
  std::size_t sentence = 0;
  TokenRange span;
  CategorySet categories;
  std::uint64_t weight = 1;

  friend bool operator==(const MatchRow&, const MatchRow&) = default;
};

namespace detail {

inline std::string tsv_safe(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

template <class T>
bool parse_unsigned(std::string_view s, T& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size() && !s.empty();
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cells;
  while (true) {
    const auto t = line.find('\t');
    cells.push_back(line.substr(0, t));
    if (t == std::string_view::npos) break;
    line = line.substr(t + 1);
  }
  return cells;
}

}  // namespace detail

inline void write_match_header(std::ostream& out) { out << kMatchFileHeader << '\n'; }

inline void write_match_row(std::ostream& out, const MatchRow& r) {
  out << r.line << '\t' << detail::tsv_safe(r.tweet_id) << '\t' << detail::tsv_safe(r.author_id) << '\t'
      << r.verse.sura << '\t' << r.verse.ayah << '\t' << to_string(r.kind) << '\t' << r.sentence << '\t'
      << r.span.begin << '\t' << r.span.end << '\t' << r.categories.to_string() << '\t' << r.weight << '\n';
}

inline std::vector<MatchRow> parse_match_file(std::istream& in) {
  std::vector<MatchRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kMatchFileHeader) throw MalformedLine(1, "match file header mismatch");
      continue;
    }
    if (line.empty()) continue;
    const auto c = detail::split_tabs(line);
    if (c.size() != 11) throw MalformedLine(line_no, "expected 11 columns");
    MatchRow r;
    bool ok = detail::parse_unsigned(c[0], r.line) && detail::parse_unsigned(c[3], r.verse.sura) &&
              detail::parse_unsigned(c[4], r.verse.ayah) && detail::parse_unsigned(c[6], r.sentence) &&
              detail::parse_unsigned(c[7], r.span.begin) && detail::parse_unsigned(c[8], r.span.end) &&
              detail::parse_unsigned(c[10], r.weight);
    if (!ok) throw MalformedLine(line_no, "non-numeric field");
    r.tweet_id = std::string(c[1]);
    r.author_id = std::string(c[2]);
    if (c[5] == "full")
      r.kind = MatchKind::Full;
    else if (c[5] == "fragment")
      r.kind = MatchKind::Fragment;
    else
      throw MalformedLine(line_no, "kind must be full or fragment");
    std::string_view cats = c[9];
    while (!cats.empty()) {
      const auto semi = cats.find(';');
      const auto name = cats.substr(0, semi);
      const auto cat = parse_category(name);
      if (!cat) throw UnknownCategory(std::string(name));
      r.categories.insert(*cat);
      cats = semi == std::string_view::npos ? std::string_view{} : cats.substr(semi + 1);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<MatchRow> load_match_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string());
  return parse_match_file(in);
}

/// Groups consecutive rows of the same tweet back into WeightedTweets, using
/// the weight stored in the file.
inline std::vector<WeightedTweet> tweets_from_rows(std::span<const MatchRow> rows) {
  std::vector<WeightedTweet> out;
  for (const MatchRow& r : rows) {
    if (out.empty() || out.back().tweet_id != r.tweet_id)
      out.push_back(WeightedTweet{r.tweet_id, r.author_id, static_cast<double>(r.weight), {}});
    out.back().hits.push_back(VerseHit{r.verse, r.kind, r.sentence, r.categories});
  }
  return out;
}

}  // namespace versescan

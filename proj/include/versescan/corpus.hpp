// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "versescan/category.hpp"
#include "versescan/error.hpp"
#include "versescan/normalizer.hpp"

namespace versescan {

inline constexpr int kSuraCount = 114;
inline constexpr std::size_t kVerseCount = 6236;

/// Number of verses in each sura of the standard (Hafs, Kufan count) text.
inline constexpr std::array<int, kSuraCount> kAyahCounts = {
    7,   286, 200, 176, 120, 165, 206, 75, 129, 109, 123, 111, 43, 52, 99, 128, 111, 110, 98,
    135, 112, 78,  118, 64,  77,  227, 93, 88,  69,  60,  34,  30, 73, 54, 45,  83,  182, 88,
    75,  85,  54,  53,  89,  59,  37,  35, 38,  29,  18,  45,  60, 49, 62, 55,  78,  96,  29,
    22,  24,  13,  14,  11,  11,  18,  12, 12,  30,  52,  52,  44, 28, 28, 20,  56,  40,  31,
    50,  40,  46,  42,  29,  19,  36,  25, 22,  17,  19,  26,  30, 20, 15, 21,  11,  8,   8,
    19,  5,   8,   8,   11,  11,  8,   3,  9,   5,   4,   7,   3,  6,  3,  5,   4,   5,   6,
};

constexpr int canonical_ayah_count(int sura) {
  return sura >= 1 && sura <= kSuraCount ? kAyahCounts[static_cast<std::size_t>(sura - 1)] : 0;
}

struct VerseRef {
  int sura = 0;
  int ayah = 0;

  friend constexpr auto operator<=>(const VerseRef&, const VerseRef&) = default;

  constexpr bool in_canonical_range() const {
    return sura >= 1 && sura <= kSuraCount && ayah >= 1 && ayah <= canonical_ayah_count(sura);
  }

  std::string to_string() const { return std::to_string(sura) + ":" + std::to_string(ayah); }

  /// Parses "sura:ayah".
  static std::optional<VerseRef> parse(std::string_view s) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    VerseRef r;
    auto a = s.substr(0, colon);
    auto b = s.substr(colon + 1);
    if (std::from_chars(a.data(), a.data() + a.size(), r.sura).ptr != a.data() + a.size() || a.empty())
      return std::nullopt;
    if (std::from_chars(b.data(), b.data() + b.size(), r.ayah).ptr != b.data() + b.size() || b.empty())
      return std::nullopt;
    return r;
  }
};

struct Verse {
  VerseRef ref;
  std::string raw_text;
  std::vector<std::string> norm_tokens;
  CategorySet categories{Category::General};
};

enum class CorpusFormat {
  TanzilPipe,  // sura|ayah|text
  Tsv,         // sura<TAB>ayah<TAB>text
};

inline std::optional<CorpusFormat> parse_corpus_format(std::string_view id) {
  if (id == "tanzil-pipe" || id == "pipe") return CorpusFormat::TanzilPipe;
  if (id == "tsv") return CorpusFormat::Tsv;
  return std::nullopt;
}

struct CorpusLoadOptions {
  CorpusFormat format = CorpusFormat::TanzilPipe;
  /// Accept fewer than 6,236 verses (test fixtures, excerpts).
  bool allow_incomplete = false;
};

/// Immutable Quran text with per-verse categories, in canonical verse order.
class QuranCorpus {
 public:
  QuranCorpus() = default;

  /// Takes verses in any order; they are sorted canonically. Throws
  /// DuplicateVerse on repeated refs.
  explicit QuranCorpus(std::vector<Verse> verses) : verses_(std::move(verses)) {
    std::sort(verses_.begin(), verses_.end(),
              [](const Verse& a, const Verse& b) { return a.ref < b.ref; });
    for (std::size_t i = 1; i < verses_.size(); ++i) {
      if (verses_[i].ref == verses_[i - 1].ref) throw DuplicateVerse(verses_[i].ref.to_string());
    }
    sura_offsets_.fill(0);
    for (const Verse& v : verses_) {
      if (!v.ref.in_canonical_range()) throw UnknownVerseRef(v.ref.to_string());
      ++sura_offsets_[static_cast<std::size_t>(v.ref.sura)];
    }
    for (std::size_t s = 1; s < sura_offsets_.size(); ++s) sura_offsets_[s] += sura_offsets_[s - 1];
  }

  std::size_t size() const { return verses_.size(); }
  bool empty() const { return verses_.empty(); }
  std::span<const Verse> verses() const { return verses_; }
  const Verse& operator[](std::size_t i) const { return verses_[i]; }

  const Verse* find(VerseRef ref) const {
    auto it = std::lower_bound(verses_.begin(), verses_.end(), ref,
                               [](const Verse& v, const VerseRef& r) { return v.ref < r; });
    return it != verses_.end() && it->ref == ref ? &*it : nullptr;
  }

  std::optional<std::size_t> index_of(VerseRef ref) const {
    const Verse* v = find(ref);
    if (v == nullptr) return std::nullopt;
    return static_cast<std::size_t>(v - verses_.data());
  }

  const Verse& at(VerseRef ref) const {
    const Verse* v = find(ref);
    if (v == nullptr) throw UnknownVerseRef(ref.to_string());
    return *v;
  }

  /// Verses of one sura in ayah order (empty for suras absent from a partial corpus).
  std::span<const Verse> sura(int s) const {
    if (s < 1 || s > kSuraCount) return {};
    const auto b = sura_offsets_[static_cast<std::size_t>(s - 1)];
    const auto e = sura_offsets_[static_cast<std::size_t>(s)];
    return std::span<const Verse>(verses_).subspan(b, e - b);
  }

  std::size_t ayah_count(int s) const { return sura(s).size(); }

  /// Number of suras with at least one verse.
  int sura_count() const {
    int n = 0;
    for (int s = 1; s <= kSuraCount; ++s) n += ayah_count(s) > 0 ? 1 : 0;
    return n;
  }

  /// Copy with categories replaced. Every verse gets a non-empty set.
  QuranCorpus with_categories(std::span<const CategorySet> per_verse) const {
    QuranCorpus out = *this;
    for (std::size_t i = 0; i < out.verses_.size(); ++i) {
      out.verses_[i].categories = per_verse[i].empty() ? CategorySet{Category::General} : per_verse[i];
    }
    return out;
  }

 private:
  std::vector<Verse> verses_;
  // sura_offsets_[s] = number of verses in suras 1..s.
  std::array<std::size_t, kSuraCount + 1> sura_offsets_{};
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool parse_int(std::string_view s, int& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

inline void strip_bom(std::string& line) {
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string());
  return in;
}

}  // namespace detail

/// Parses corpus text already in memory. Blank lines and lines starting with
/// '#' (the Tanzil notice block) are skipped.
inline QuranCorpus parse_corpus(std::istream& in, const CorpusLoadOptions& options = {}) {
  const char sep = options.format == CorpusFormat::Tsv ? '\t' : '|';
  std::vector<Verse> verses;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) detail::strip_bom(line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty() || line.front() == '#') continue;

    std::string_view rest(line);
    const auto p1 = rest.find(sep);
    const auto p2 = p1 == std::string_view::npos ? p1 : rest.find(sep, p1 + 1);
    if (p2 == std::string_view::npos) throw MalformedLine(line_no, "expected sura|ayah|text");
    Verse v;
    if (!detail::parse_int(rest.substr(0, p1), v.ref.sura) ||
        !detail::parse_int(rest.substr(p1 + 1, p2 - p1 - 1), v.ref.ayah))
      throw MalformedLine(line_no, "non-numeric sura or ayah");
    if (!v.ref.in_canonical_range())
      throw MalformedLine(line_no, "verse " + v.ref.to_string() + " out of range");
    v.raw_text = std::string(rest.substr(p2 + 1));
    v.norm_tokens = normalize_tokens(v.raw_text);
    if (v.norm_tokens.empty()) throw MalformedLine(line_no, "verse text is empty after normalization");
    verses.push_back(std::move(v));
  }

  const std::size_t found = verses.size();
  if (found == 0 || (!options.allow_incomplete && found != kVerseCount)) throw CorpusIncomplete(found);
  return QuranCorpus(std::move(verses));
}

inline QuranCorpus load_corpus(const std::filesystem::path& path, const CorpusLoadOptions& options = {}) {
  auto in = detail::open_input(path);
  return parse_corpus(in, options);
}

/// Applies a category join table, `sura,ayah,category[;category...]`.
/// Unlisted verses end up in exactly {General}. A category may carry a
/// subcategory as `Main/Sub`; only the main category is kept. A header row is
/// recognized by a non-numeric first cell.
inline QuranCorpus parse_categories(std::istream& in, const QuranCorpus& corpus) {
  std::vector<CategorySet> assigned(corpus.size());
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) detail::strip_bom(line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty() || line.front() == '#') continue;

    std::string_view rest(line);
    const auto c1 = rest.find(',');
    int sura = 0;
    if (first_row) {
      first_row = false;
      if (!detail::parse_int(rest.substr(0, c1), sura)) continue;  // header
    }
    const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw MalformedLine(line_no, "expected sura,ayah,categories");
    VerseRef ref;
    if (!detail::parse_int(rest.substr(0, c1), ref.sura) ||
        !detail::parse_int(rest.substr(c1 + 1, c2 - c1 - 1), ref.ayah))
      throw MalformedLine(line_no, "non-numeric sura or ayah");
    const auto idx = corpus.index_of(ref);
    if (!idx) throw UnknownVerseRef(ref.to_string());

    std::string_view cats = detail::trim(rest.substr(c2 + 1));
    if (cats.size() >= 2 && cats.front() == '"' && cats.back() == '"') cats = cats.substr(1, cats.size() - 2);
    bool any = false;
    while (!cats.empty()) {
      const auto semi = cats.find(';');
      std::string_view item = detail::trim(cats.substr(0, semi));
      cats = semi == std::string_view::npos ? std::string_view{} : cats.substr(semi + 1);
      if (item.empty()) continue;
      const auto slash = item.find('/');
      const std::string_view main = detail::trim(item.substr(0, slash));
      const auto cat = parse_category(main);
      if (!cat || *cat == Category::General) throw UnknownCategory(std::string(main));
      assigned[*idx].insert(*cat);
      any = true;
    }
    if (!any) throw MalformedLine(line_no, "no category listed");
  }
  return corpus.with_categories(assigned);
}

inline QuranCorpus load_categories(const std::filesystem::path& path, const QuranCorpus& corpus) {
  auto in = detail::open_input(path);
  return parse_categories(in, corpus);
}

struct CategoryCount {
  std::size_t count = 0;
  double percent = 0.0;
};

/// Verses per category over the corpus; a multi-label verse counts once in
/// each of its categories, so counts can sum past the verse total.
inline std::array<CategoryCount, kCategoryCount> category_counts(const QuranCorpus& corpus) {
  std::array<CategoryCount, kCategoryCount> out{};
  for (const Verse& v : corpus.verses())
    for (Category c : kAllCategories)
      if (v.categories.contains(c)) ++out[index_of(c)].count;
  if (!corpus.empty()) {
    for (auto& cc : out)
      cc.percent = static_cast<double>(cc.count) / static_cast<double>(corpus.size()) * 100.0;
  }
  return out;
}

}  // namespace versescan

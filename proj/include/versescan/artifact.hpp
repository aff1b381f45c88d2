// SPDX-License-Identifier: Apache-2.0
//
// On-disk index artifact: the categorized corpus with its normalized token
// sequences. The n-gram postings are a pure function of those sequences and
// are rebuilt on load. Layout (UTF-8, tab-separated):
//
//   versescan-index<TAB>1
//   verses<TAB><count>
//   <sura><TAB><ayah><TAB><categories><TAB><raw text><TAB><normalized text>
//   ...
#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "versescan/corpus.hpp"
#include "versescan/error.hpp"
#include "versescan/hash.hpp"
#include "versescan/match_file.hpp"
#include "versescan/normalizer.hpp"

namespace versescan {

inline constexpr std::string_view kArtifactMagic = "versescan-index\t1";

inline std::string serialize_corpus(const QuranCorpus& corpus) {
  std::ostringstream out;
  out << kArtifactMagic << '\n' << "verses\t" << corpus.size() << '\n';
  for (const Verse& v : corpus.verses()) {
    out << v.ref.sura << '\t' << v.ref.ayah << '\t' << v.categories.to_string() << '\t'
        << detail::tsv_safe(v.raw_text) << '\t';
    for (std::size_t i = 0; i < v.norm_tokens.size(); ++i) out << (i ? " " : "") << v.norm_tokens[i];
    out << '\n';
  }
  return out.str();
}

/// Rebuilds a corpus from an artifact. Each stored token sequence must equal
/// what the current normalizer produces from the stored raw text.
inline QuranCorpus deserialize_corpus(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  std::string line;
  if (!std::getline(in, line) || line != kArtifactMagic) throw MalformedLine(1, "not a versescan index artifact");
  std::size_t expected = 0;
  if (!std::getline(in, line) || line.rfind("verses\t", 0) != 0 ||
      !detail::parse_unsigned(std::string_view(line).substr(7), expected))
    throw MalformedLine(2, "missing verse count");
  std::vector<Verse> verses;
  verses.reserve(expected);
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = detail::split_tabs(line);
    if (c.size() != 5) throw MalformedLine(line_no, "expected 5 columns");
    Verse v;
    if (!detail::parse_unsigned(c[0], v.ref.sura) || !detail::parse_unsigned(c[1], v.ref.ayah))
      throw MalformedLine(line_no, "non-numeric sura or ayah");
    v.categories = CategorySet{};
    std::string_view cats = c[2];
    while (!cats.empty()) {
      const auto semi = cats.find(';');
      const auto cat = parse_category(cats.substr(0, semi));
      if (!cat) throw UnknownCategory(std::string(cats.substr(0, semi)));
      v.categories.insert(*cat);
      cats = semi == std::string_view::npos ? std::string_view{} : cats.substr(semi + 1);
    }
    if (v.categories.empty()) throw MalformedLine(line_no, "empty category set");
    v.raw_text = std::string(c[3]);
    v.norm_tokens = normalize_tokens(v.raw_text);
    if (normalize(v.raw_text) != c[4]) throw MalformedLine(line_no, "stored normalization differs from normalizer");
    verses.push_back(std::move(v));
  }
  if (verses.size() != expected) throw MalformedLine(line_no, "verse count mismatch");
  return QuranCorpus(std::move(verses));
}

struct ArtifactInfo {
  std::filesystem::path path;
  std::string sha256;
  std::size_t bytes = 0;
};

/// Writes the artifact and a sidecar `<path>.sha256`.
inline ArtifactInfo write_index_artifact(const QuranCorpus& corpus, const std::filesystem::path& path) {
  const std::string bytes = serialize_corpus(corpus);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot write");
    out << bytes;
  }
  ArtifactInfo info{path, sha256_hex(bytes), bytes.size()};
  std::ofstream side(path.string() + ".sha256", std::ios::binary | std::ios::trunc);
  side << info.sha256 << "  " << path.filename().string() << '\n';
  return info;
}

inline QuranCorpus read_index_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_corpus(ss.str());
}

}  // namespace versescan

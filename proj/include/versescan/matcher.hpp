// SPDX-License-Identifier: Apache-2.0
//
// Verse detection over normalized token sequences. Every verse is interned
// as a sequence of token ids; a positional trigram index anchors each query
// on its rarest trigram and candidates are verified token by token.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "versescan/category.hpp"
#include "versescan/corpus.hpp"
#include "versescan/normalizer.hpp"

namespace versescan {

/// Shortest sentence (in tokens) that is matched against verses by default.
inline constexpr std::size_t kDefaultMinTokens = 3;

enum class MatchKind : std::uint8_t { Full, Fragment };

constexpr std::string_view to_string(MatchKind k) { return k == MatchKind::Full ? "full" : "fragment"; }

struct MatchResult {
  VerseRef verse;
  MatchKind kind = MatchKind::Fragment;
  std::size_t sentence_index = 0;
  /// Token range inside the verse covered by the sentence (first occurrence).
  TokenRange matched_span;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct MatchOptions {
  std::size_t min_tokens = kDefaultMinTokens;
};

class MatchIndex {
 public:
  using TokenId = std::uint32_t;

  MatchIndex() = default;

  explicit MatchIndex(const QuranCorpus& corpus) {
    refs_.reserve(corpus.size());
    categories_.reserve(corpus.size());
    seq_offsets_.reserve(corpus.size() + 1);
    seq_offsets_.push_back(0);
    for (const Verse& v : corpus.verses()) {
      refs_.push_back(v.ref);
      categories_.push_back(v.categories);
      for (const std::string& tok : v.norm_tokens) {
        auto [it, inserted] = vocab_.try_emplace(tok, static_cast<TokenId>(vocab_.size()));
        seq_tokens_.push_back(it->second);
      }
      seq_offsets_.push_back(static_cast<std::uint32_t>(seq_tokens_.size()));
    }
    if (vocab_.size() >= (1u << kKeyBits)) throw std::length_error("vocabulary too large for trigram keys");
    build_unigrams();
    build_trigrams();
    for (std::uint32_t v = 0; v < refs_.size(); ++v) whole_[sequence_hash(verse_ids(v))].push_back(v);
  }

  std::size_t verse_count() const { return refs_.size(); }
  std::size_t vocabulary_size() const { return vocab_.size(); }
  VerseRef ref(std::size_t verse) const { return refs_[verse]; }
  CategorySet categories(std::size_t verse) const { return categories_[verse]; }
  std::size_t verse_length(std::size_t verse) const { return seq_offsets_[verse + 1] - seq_offsets_[verse]; }

  /// Category set of a verse by reference; empty when the verse is not indexed.
  CategorySet categories(VerseRef r) const {
    auto it = std::lower_bound(refs_.begin(), refs_.end(), r);
    return it != refs_.end() && *it == r ? categories_[static_cast<std::size_t>(it - refs_.begin())]
                                         : CategorySet{};
  }

  /// Verses whose whole token sequence equals `tokens`, in canonical order.
  std::vector<VerseRef> find_whole(std::span<const std::string> tokens) const {
    std::vector<VerseRef> out;
    std::vector<TokenId> ids;
    if (!to_ids(tokens, ids)) return out;
    auto it = whole_.find(sequence_hash(ids));
    if (it == whole_.end()) return out;
    for (std::uint32_t v : it->second) {
      auto seq = verse_ids(v);
      if (std::equal(seq.begin(), seq.end(), ids.begin(), ids.end())) out.push_back(refs_[v]);
    }
    return out;
  }

  /// Every verse containing `tokens` as a contiguous token substring, in
  /// canonical order, one result per verse. Sentences shorter than
  /// options.min_tokens match nothing.
  std::vector<MatchResult> match(std::span<const std::string> tokens, std::size_t sentence_index = 0,
                                 const MatchOptions& options = {}) const {
    std::vector<MatchResult> out;
    const std::size_t n = tokens.size();
    if (n == 0 || n < options.min_tokens) return out;
    std::vector<TokenId> ids;
    if (!to_ids(tokens, ids)) return out;

    // Anchor on the window with the shortest posting list.
    std::span<const Posting> anchor;
    std::size_t anchor_offset = 0;
    bool have_anchor = false;
    const std::size_t window = n >= 3 ? 3 : 1;
    for (std::size_t j = 0; j + window <= n; ++j) {
      auto postings = window == 3 ? trigram_postings(ids[j], ids[j + 1], ids[j + 2]) : unigram_postings(ids[j]);
      if (postings.empty()) return out;
      if (!have_anchor || postings.size() < anchor.size()) {
        anchor = postings;
        anchor_offset = j;
        have_anchor = true;
      }
    }

    std::uint32_t last_verse = std::numeric_limits<std::uint32_t>::max();
    for (const Posting& p : anchor) {
      if (p.verse == last_verse || p.pos < anchor_offset) continue;
      const std::size_t start = p.pos - anchor_offset;
      auto seq = verse_ids(p.verse);
      if (start + n > seq.size()) continue;
      if (!std::equal(ids.begin(), ids.end(), seq.begin() + static_cast<std::ptrdiff_t>(start))) continue;
      last_verse = p.verse;
      out.push_back(MatchResult{refs_[p.verse], n == seq.size() ? MatchKind::Full : MatchKind::Fragment,
                                sentence_index, TokenRange{start, start + n}});
    }
    return out;
  }

 private:
  static constexpr unsigned kKeyBits = 21;

  struct Posting {
    std::uint32_t verse;
    std::uint32_t pos;
    friend bool operator<(const Posting& a, const Posting& b) {
      return a.verse != b.verse ? a.verse < b.verse : a.pos < b.pos;
    }
  };

  std::span<const TokenId> verse_ids(std::size_t v) const {
    return std::span<const TokenId>(seq_tokens_).subspan(seq_offsets_[v], seq_offsets_[v + 1] - seq_offsets_[v]);
  }

  bool to_ids(std::span<const std::string> tokens, std::vector<TokenId>& ids) const {
    ids.clear();
    ids.reserve(tokens.size());
    for (const std::string& t : tokens) {
      auto it = vocab_.find(t);
      if (it == vocab_.end()) return false;
      ids.push_back(it->second);
    }
    return true;
  }

  static std::uint64_t trigram_key(TokenId a, TokenId b, TokenId c) {
    return (std::uint64_t{a} << (2 * kKeyBits)) | (std::uint64_t{b} << kKeyBits) | std::uint64_t{c};
  }

  static std::uint64_t sequence_hash(std::span<const TokenId> ids) {
    std::uint64_t h = 1469598103934665603ull;
    for (TokenId id : ids) {
      h ^= id;
      h *= 1099511628211ull;
    }
    return h ^ ids.size();
  }

  void build_unigrams() {
    uni_offsets_.assign(vocab_.size() + 1, 0);
    for (TokenId id : seq_tokens_) ++uni_offsets_[id + 1];
    for (std::size_t i = 1; i < uni_offsets_.size(); ++i) uni_offsets_[i] += uni_offsets_[i - 1];
    uni_postings_.resize(seq_tokens_.size());
    std::vector<std::uint32_t> fill(uni_offsets_.begin(), uni_offsets_.end() - 1);
    for (std::uint32_t v = 0; v < refs_.size(); ++v) {
      auto seq = verse_ids(v);
      for (std::uint32_t p = 0; p < seq.size(); ++p) uni_postings_[fill[seq[p]]++] = Posting{v, p};
    }
  }

  void build_trigrams() {
    std::vector<std::pair<std::uint64_t, Posting>> entries;
    for (std::uint32_t v = 0; v < refs_.size(); ++v) {
      auto seq = verse_ids(v);
      for (std::uint32_t p = 0; p + 3 <= seq.size(); ++p)
        entries.emplace_back(trigram_key(seq[p], seq[p + 1], seq[p + 2]), Posting{v, p});
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    tri_postings_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i == 0 || entries[i].first != entries[i - 1].first) {
        tri_keys_.push_back(entries[i].first);
        tri_offsets_.push_back(static_cast<std::uint32_t>(i));
      }
      tri_postings_.push_back(entries[i].second);
    }
    tri_offsets_.push_back(static_cast<std::uint32_t>(entries.size()));
  }

  std::span<const Posting> unigram_postings(TokenId id) const {
    return std::span<const Posting>(uni_postings_).subspan(uni_offsets_[id], uni_offsets_[id + 1] - uni_offsets_[id]);
  }

  std::span<const Posting> trigram_postings(TokenId a, TokenId b, TokenId c) const {
    const std::uint64_t key = trigram_key(a, b, c);
    auto it = std::lower_bound(tri_keys_.begin(), tri_keys_.end(), key);
    if (it == tri_keys_.end() || *it != key) return {};
    const auto k = static_cast<std::size_t>(it - tri_keys_.begin());
    return std::span<const Posting>(tri_postings_).subspan(tri_offsets_[k], tri_offsets_[k + 1] - tri_offsets_[k]);
  }

  std::vector<VerseRef> refs_;
  std::vector<CategorySet> categories_;
  std::unordered_map<std::string, TokenId> vocab_;
  std::vector<TokenId> seq_tokens_;
  std::vector<std::uint32_t> seq_offsets_;
  std::vector<std::uint32_t> uni_offsets_;
  std::vector<Posting> uni_postings_;
  std::vector<std::uint64_t> tri_keys_;
  std::vector<std::uint32_t> tri_offsets_;
  std::vector<Posting> tri_postings_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> whole_;
};

inline MatchIndex build_index(const QuranCorpus& corpus) { return MatchIndex(corpus); }

inline std::vector<MatchResult> match_sentence(const MatchIndex& index, std::span<const std::string> sentence_tokens,
                                               const MatchOptions& options = {}) {
  return index.match(sentence_tokens, 0, options);
}

/// All verse matches found in one tweet.
struct MatchList {
  std::vector<MatchResult> matches;
  /// Category multiset: for each category, the number of matches whose verse carries it.
  std::array<std::size_t, kCategoryCount> categories{};

  bool validated() const { return !matches.empty(); }

  std::size_t distinct_verse_count() const {
    std::vector<VerseRef> refs;
    refs.reserve(matches.size());
    for (const MatchResult& m : matches) refs.push_back(m.verse);
    std::sort(refs.begin(), refs.end());
    return static_cast<std::size_t>(std::unique(refs.begin(), refs.end()) - refs.begin());
  }

  std::size_t count(MatchKind k) const {
    return static_cast<std::size_t>(
        std::count_if(matches.begin(), matches.end(), [k](const MatchResult& m) { return m.kind == k; }));
  }
};

/// Splits a tweet into sentences and matches each one. Matches accumulate in
/// sentence order; repeated sentences contribute repeated matches.
inline MatchList extract_verses(const MatchIndex& index, std::string_view tweet_text,
                                const MatchOptions& options = {}) {
  MatchList list;
  const NormalizedText text = split_sentences(tweet_text);
  for (std::size_t s = 0; s < text.sentence_count(); ++s) {
    for (MatchResult& m : index.match(text.sentence(s), s, options)) {
      const CategorySet cats = index.categories(m.verse);
      for (Category c : kAllCategories)
        if (cats.contains(c)) ++list.categories[index_of(c)];
      list.matches.push_back(m);
    }
  }
  return list;
}

}  // namespace versescan

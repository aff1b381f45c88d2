// SPDX-License-Identifier: Apache-2.0
//
// Arabic text normalization shared by the Quran corpus and tweet text, so
// that both sides are matched in the same space.
#pragma once

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "versescan/utf8.hpp"

namespace versescan {

/// Characters that end a sentence inside a tweet. Newlines always split.
inline constexpr std::u32string_view kSentenceDelimiters =
    U".,،;؛؟!?…:۔()[]«»\"“”\n\r";

namespace detail {

constexpr bool is_presentation_form(char32_t cp) {
  return (cp >= 0xFB50 && cp <= 0xFDFF) || (cp >= 0xFE70 && cp <= 0xFEFF);
}

// Tashkeel, superscript alef, Quranic annotation signs and kashida.
constexpr bool is_removable_mark(char32_t cp) {
  return (cp >= 0x064B && cp <= 0x065F) || cp == 0x0670 || cp == 0x0640 ||
         (cp >= 0x0610 && cp <= 0x061A) || (cp >= 0x06D6 && cp <= 0x06ED);
}

constexpr bool is_invisible_control(char32_t cp) {
  return (cp >= 0x200B && cp <= 0x200F) || cp == 0x061C || cp == 0xFEFF ||
         (cp >= 0x2066 && cp <= 0x2069);
}

constexpr bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

constexpr char32_t fold_letter(char32_t cp) {
  switch (cp) {
    case 0x0623:  // أ
    case 0x0625:  // إ
    case 0x0622:  // آ
    case 0x0671:  // ٱ
      return 0x0627;
    case 0x0624:  // ؤ
    case 0x0626:  // ئ
      return 0x0621;
    case 0x0629:  // ة
      return 0x0647;
    case 0x0649:  // ى
      return 0x064A;
    default:
      return cp;
  }
}

constexpr bool is_delimiter(char32_t cp) {
  return kSentenceDelimiters.find(cp) != std::u32string_view::npos;
}

class PresentationFolder {
 public:
  static const PresentationFolder& instance() {
    static const PresentationFolder folder;
    return folder;
  }

  std::u32string_view fold(char32_t cp) const {
    if (cp >= 0xFB50 && cp <= 0xFDFF) return table_[cp - 0xFB50];
    return table_[(0xFDFF - 0xFB50 + 1) + (cp - 0xFE70)];
  }

 private:
  PresentationFolder() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
    auto add = [&](char32_t lo, char32_t hi) {
      for (char32_t cp = lo; cp <= hi; ++cp) {
        std::u32string folded(1, cp);
        if (nfkc != nullptr && U_SUCCESS(status)) {
          UErrorCode st = U_ZERO_ERROR;
          icu::UnicodeString src(static_cast<UChar32>(cp));
          icu::UnicodeString dst = nfkc->normalize(src, st);
          if (U_SUCCESS(st)) {
            folded.clear();
            for (int32_t i = 0; i < dst.length();) {
              UChar32 c = dst.char32At(i);
              folded.push_back(static_cast<char32_t>(c));
              i += U16_LENGTH(c);
            }
          }
        }
        table_.push_back(std::move(folded));
      }
    };
    add(0xFB50, 0xFDFF);
    add(0xFE70, 0xFEFF);
  }

  std::vector<std::u32string> table_;
};

// Appends the normalized tokens of `text` to `out`.
inline void tokenize_normalized(std::u32string_view text, std::vector<std::string>& out) {
  const auto& folder = PresentationFolder::instance();
  std::u32string expanded;
  expanded.reserve(text.size());
  for (char32_t cp : text) {
    if (is_presentation_form(cp))
      expanded += folder.fold(cp);
    else
      expanded.push_back(cp);
  }

  std::string token;
  bool dropped_prefix = false;  // token began with '@' or '#'
  bool at_token_start = true;
  auto flush = [&] {
    if (!token.empty() && !dropped_prefix) out.push_back(std::move(token));
    token.clear();
    dropped_prefix = false;
    at_token_start = true;
  };
  for (char32_t cp : expanded) {
    if (is_space(cp)) {
      flush();
      continue;
    }
    if (is_removable_mark(cp) || is_invisible_control(cp)) continue;
    if (at_token_start) {
      at_token_start = false;
      if (cp == U'@' || cp == U'#') dropped_prefix = true;
    }
    if (!dropped_prefix) utf8::append(token, fold_letter(cp));
  }
  flush();
}

}  // namespace detail

/// Normalizes Arabic text for matching: presentation forms are NFKC-folded,
/// diacritics and kashida removed, hamza-carrier alefs folded to bare alef,
/// ؤ/ئ to ء, ة to ه, ى to ي; @mentions and #hashtags dropped; whitespace
/// collapsed to single spaces. Idempotent.
inline std::string normalize(std::string_view raw) {
  std::vector<std::string> tokens;
  detail::tokenize_normalized(utf8::decode(raw), tokens);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i != 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

/// Whitespace tokens of normalize(raw).
inline std::vector<std::string> normalize_tokens(std::string_view raw) {
  std::vector<std::string> tokens;
  detail::tokenize_normalized(utf8::decode(raw), tokens);
  return tokens;
}

/// Half-open token range [begin, end).
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  constexpr std::size_t size() const { return end - begin; }
  friend constexpr bool operator==(TokenRange, TokenRange) = default;
};

/// Tokens of a text plus the sentence each token belongs to.
struct NormalizedText {
  std::vector<std::string> tokens;
  std::vector<TokenRange> sentence_bounds;

  std::size_t sentence_count() const { return sentence_bounds.size(); }
  std::span<const std::string> sentence(std::size_t i) const {
    const TokenRange r = sentence_bounds.at(i);
    return std::span<const std::string>(tokens).subspan(r.begin, r.size());
  }
};

/// Splits raw tweet text into normalized sentences. Mentions and hashtags are
/// removed as whole whitespace tokens first, so "@user.name" cannot leak a
/// trailing "name" into a sentence. Sentences that normalize to nothing are
/// dropped.
inline NormalizedText split_sentences(std::string_view raw) {
  const std::u32string text = utf8::decode(raw);
  NormalizedText result;
  std::u32string sentence;
  bool skipping_tag = false;
  bool at_word_start = true;

  auto close_sentence = [&] {
    const std::size_t before = result.tokens.size();
    detail::tokenize_normalized(sentence, result.tokens);
    if (result.tokens.size() > before) result.sentence_bounds.push_back({before, result.tokens.size()});
    sentence.clear();
  };

  for (char32_t cp : text) {
    if (detail::is_space(cp)) {
      skipping_tag = false;
      at_word_start = true;
      if (cp == U'\n' || cp == U'\r')
        close_sentence();
      else
        sentence.push_back(U' ');
      continue;
    }
    if (at_word_start) {
      at_word_start = false;
      if (cp == U'@' || cp == U'#') skipping_tag = true;
    }
    if (skipping_tag) continue;
    if (detail::is_delimiter(cp)) {
      close_sentence();
      continue;
    }
    sentence.push_back(cp);
  }
  close_sentence();
  return result;
}

}  // namespace versescan

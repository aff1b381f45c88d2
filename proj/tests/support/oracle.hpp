// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations. These deliberately share no code
// with the library paths they check.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "versescan/corpus.hpp"
#include "versescan/matcher.hpp"

namespace versescan::testing {

/// Scans every verse at every offset; first occurrence per verse.
inline std::vector<MatchResult> brute_force_match(const QuranCorpus& corpus, std::span<const std::string> tokens,
                                                  std::size_t min_tokens = kDefaultMinTokens,
                                                  std::size_t sentence_index = 0) {
  std::vector<MatchResult> out;
  const std::size_t n = tokens.size();
  if (n == 0 || n < min_tokens) return out;
  for (const Verse& v : corpus.verses()) {
    const auto& vt = v.norm_tokens;
    if (vt.size() < n) continue;
    for (std::size_t i = 0; i + n <= vt.size(); ++i) {
      bool same = true;
      for (std::size_t k = 0; k < n && same; ++k) same = vt[i + k] == tokens[k];
      if (same) {
        out.push_back(MatchResult{v.ref, n == vt.size() ? MatchKind::Full : MatchKind::Fragment, sentence_index,
                                  TokenRange{i, i + n}});
        break;
      }
    }
  }
  return out;
}

/// Textbook two-pass Pearson: means first, then centered sums.
inline double two_pass_pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace versescan::testing

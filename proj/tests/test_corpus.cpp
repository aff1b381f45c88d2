// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <sstream>

#include "support/fixtures.hpp"
#include "versescan/artifact.hpp"
#include "versescan/corpus.hpp"
#include "versescan/normalizer.hpp"

using namespace versescan;
using namespace versescan::testing;

namespace {

QuranCorpus parse(const std::string& text, bool allow_incomplete = true,
                  CorpusFormat fmt = CorpusFormat::TanzilPipe) {
  std::istringstream in(text);
  return parse_corpus(in, {fmt, allow_incomplete});
}

QuranCorpus categorize(const QuranCorpus& c, const std::string& csv) {
  std::istringstream in(csv);
  return parse_categories(in, c);
}

}  // namespace

TEST_CASE("canonical ayah table sums to the verse count") {
  CHECK(std::accumulate(kAyahCounts.begin(), kAyahCounts.end(), 0) == static_cast<int>(kVerseCount));
  CHECK(canonical_ayah_count(1) == 7);
  CHECK(canonical_ayah_count(2) == 286);
  CHECK(canonical_ayah_count(114) == 6);
}

TEST_CASE("full corpus loads with every verse") {
  const QuranCorpus& c = full_corpus();
  CHECK(c.size() == kVerseCount);
  CHECK(c.sura_count() == kSuraCount);
  for (int s = 1; s <= kSuraCount; ++s) CHECK(c.ayah_count(s) == static_cast<std::size_t>(canonical_ayah_count(s)));
  CHECK(join(c.at({48, 1}).norm_tokens) == "انا فتحنا لك فتحا مبينا");
  CHECK(join(c.at({112, 2}).norm_tokens) == "الله الصمد");
  CHECK(join(c.at({113, 1}).norm_tokens) == "قل اعوذ برب الفلق");
}

TEST_CASE("stored tokens round-trip through normalize") {
  for (const Verse& v : full_corpus().verses()) {
    REQUIRE(normalize(v.raw_text) == join(v.norm_tokens));
    REQUIRE(v.categories.contains(Category::General));
  }
}

TEST_CASE("corpus loader errors") {
  CHECK_THROWS_AS(parse("", false), CorpusIncomplete);
  CHECK_THROWS_AS(parse("", true), CorpusIncomplete);
  CHECK_THROWS_AS(parse("1|1|بسم الله\n", false), CorpusIncomplete);
  CHECK_THROWS_AS(parse("1|1|بسم\n1|1|الله\n"), DuplicateVerse);
  CHECK_THROWS_AS(parse("1|x|بسم\n"), MalformedLine);
  CHECK_THROWS_AS(parse("1|1\n"), MalformedLine);
  CHECK_THROWS_AS(parse("1|8|بسم\n"), MalformedLine);
  CHECK_THROWS_AS(parse("1|1|ًٌ\n"), MalformedLine);
  CHECK_THROWS_AS(load_corpus("/nonexistent/quran.txt"), IoError);
  try {
    parse("1|1|a\n1|2\n");
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(e.line_no() == 2);
  }
}

TEST_CASE("ten-verse fixture with override") {
  const std::vector<VerseRef> refs = {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5},
                                      {1, 6}, {1, 7}, {112, 1}, {112, 2}, {112, 3}};
  const QuranCorpus c = excerpt_corpus(refs);
  CHECK(c.size() == 10);
  CHECK(c.sura_count() == 2);
  CHECK(c.ayah_count(1) == 7);
  CHECK(c.ayah_count(112) == 3);
  CHECK(c.ayah_count(2) == 0);
  CHECK(c.sura(112)[1].ref == VerseRef{112, 2});
}

TEST_CASE("tsv format, comments, BOM and CRLF") {
  const QuranCorpus c = parse("\xEF\xBB\xBF# header\n1\t1\tبسم الله\r\n\n1\t2\tالحمد لله\r\n", true, CorpusFormat::Tsv);
  REQUIRE(c.size() == 2);
  CHECK(join(c.at({1, 2}).norm_tokens) == "الحمد لله");
}

TEST_CASE("input order does not matter") {
  const QuranCorpus a = parse("1|2|الحمد لله\n1|1|بسم الله\n");
  const QuranCorpus b = parse("1|1|بسم الله\n1|2|الحمد لله\n");
  CHECK(serialize_corpus(a) == serialize_corpus(b));
}

TEST_CASE("categories load onto listed verses only") {
  const QuranCorpus base = excerpt_corpus({{1, 1}, {1, 2}, {1, 3}});
  const QuranCorpus c = categorize(base, "sura,ayah,categories\n1,1,God;Worship\n1,3,\"HereafterUnseens\"\n");
  CHECK(c.at({1, 1}).categories.size() == 2);
  CHECK(c.at({1, 1}).categories.contains(Category::Worship));
  CHECK_FALSE(c.at({1, 1}).categories.contains(Category::General));
  CHECK(c.at({1, 2}).categories.to_string() == "General");
  CHECK(c.at({1, 3}).categories.contains(Category::HereafterUnseens));

  const auto counts = category_counts(c);
  CHECK(counts[index_of(Category::General)].count == 1);
  CHECK(counts[index_of(Category::God)].count == 1);
}

TEST_CASE("category names and subcategories parse") {
  CHECK(parse_category("Hereafter & Unseens") == Category::HereafterUnseens);
  CHECK(parse_category("belief_believers") == Category::BeliefBelievers);
  CHECK(parse_category("Nonsense") == std::nullopt);
  const QuranCorpus c = categorize(excerpt_corpus({{1, 1}}), "1,1,Worship/Prayer\n");
  CHECK(c.at({1, 1}).categories.contains(Category::Worship));
}

TEST_CASE("category loader errors") {
  const QuranCorpus base = excerpt_corpus({{1, 1}, {1, 2}});
  CHECK_THROWS_AS(categorize(base, "2,999,Worship\n"), UnknownVerseRef);
  CHECK_THROWS_AS(categorize(base, "1,1,Astrology\n"), UnknownCategory);
  CHECK_THROWS_AS(categorize(base, "1,1,General\n"), UnknownCategory);
  CHECK_THROWS_AS(categorize(base, "1,1,\n"), MalformedLine);
}

TEST_CASE("empty category mapping leaves every verse General") {
  const QuranCorpus c = categorize(full_corpus(), "");
  const auto counts = category_counts(c);
  CHECK(counts[index_of(Category::General)].count == kVerseCount);
  CHECK(counts[index_of(Category::General)].percent == 100.0);
}

TEST_CASE("reference mapping reproduces the published category counts") {
  const QuranCorpus c = categorize(full_corpus(), reference_category_csv());
  const auto counts = category_counts(c);
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    INFO(kCategoryNames[i]);
    CHECK(counts[i].count == kReferenceCategoryCounts[i]);
    CHECK(std::abs(counts[i].percent - kReferenceCategoryPercents[i]) <= 0.05);
    CHECK(counts[i].percent == static_cast<double>(counts[i].count) / 6236.0 * 100.0);
  }
  CHECK(counts[index_of(Category::HereafterUnseens)].count == 1701);
  CHECK(counts[index_of(Category::HumanBeing)].count == 71);
}

TEST_CASE("VerseRef parse and ordering") {
  CHECK(VerseRef::parse("2:255") == VerseRef{2, 255});
  CHECK_FALSE(VerseRef::parse("2-255"));
  CHECK_FALSE(VerseRef::parse(":1"));
  CHECK(VerseRef{2, 1} < VerseRef{10, 1});
}

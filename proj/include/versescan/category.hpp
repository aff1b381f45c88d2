// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace versescan {

/// The fourteen topic labels, in the order the reference category table
/// lists them. General is reserved for verses with no expert label.
enum class Category : std::uint8_t {
  HereafterUnseens,
  StoriesOfProphets,
  Disbelievers,
  ShariaLaw,
  Jihad,
  UniverseCreation,
  Worship,
  BeliefBelievers,
  AboutQuran,
  Muhammad,
  God,
  Sins,
  HumanBeing,
  General,
};

inline constexpr std::size_t kCategoryCount = 14;

inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::HereafterUnseens, Category::StoriesOfProphets, Category::Disbelievers,
    Category::ShariaLaw,        Category::Jihad,             Category::UniverseCreation,
    Category::Worship,          Category::BeliefBelievers,   Category::AboutQuran,
    Category::Muhammad,         Category::God,               Category::Sins,
    Category::HumanBeing,       Category::General,
};

inline constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "HereafterUnseens", "StoriesOfProphets", "Disbelievers", "ShariaLaw", "Jihad",
    "UniverseCreation", "Worship",           "BeliefBelievers", "AboutQuran", "Muhammad",
    "God",              "Sins",              "HumanBeing",    "General",
};

inline constexpr std::array<std::string_view, kCategoryCount> kCategoryDisplayNames = {
    "Hereafter & Unseens", "Stories of Prophets", "Disbelievers", "Sharia Law", "Jihad",
    "Universe & Creation", "Worship",             "Belief & Believers", "About Quran",
    "Muhammad",            "God",                 "Sins",         "Human Being", "General",
};

constexpr std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }
constexpr std::string_view name_of(Category c) { return kCategoryNames[index_of(c)]; }
constexpr std::string_view display_name_of(Category c) { return kCategoryDisplayNames[index_of(c)]; }

namespace detail {
// Lower-cased with everything but ASCII letters dropped, so "Sharia Law",
// "sharia_law" and "ShariaLaw" compare equal.
inline std::string fold_category_name(std::string_view s) {
  std::string out;
  for (char ch : s) {
    auto u = static_cast<unsigned char>(ch);
    if (std::isalpha(u)) out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}
}  // namespace detail

inline std::optional<Category> parse_category(std::string_view name) {
  const std::string key = detail::fold_category_name(name);
  if (key.empty()) return std::nullopt;
  for (Category c : kAllCategories) {
    if (detail::fold_category_name(name_of(c)) == key) return c;
  }
  return std::nullopt;
}

/// Small bit set over Category.
class CategorySet {
 public:
  constexpr CategorySet() = default;
  constexpr CategorySet(std::initializer_list<Category> cs) {
    for (Category c : cs) insert(c);
  }

  constexpr void insert(Category c) { bits_ |= bit(c); }
  constexpr bool contains(Category c) const { return (bits_ & bit(c)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint16_t bits() const { return bits_; }
  static constexpr CategorySet from_bits(std::uint16_t b) {
    CategorySet s;
    s.bits_ = static_cast<std::uint16_t>(b & ((1u << kCategoryCount) - 1));
    return s;
  }

  std::vector<Category> members() const {
    std::vector<Category> out;
    for (Category c : kAllCategories)
      if (contains(c)) out.push_back(c);
    return out;
  }

  /// Names joined with ';' in canonical order.
  std::string to_string() const {
    std::string out;
    for (Category c : kAllCategories) {
      if (!contains(c)) continue;
      if (!out.empty()) out.push_back(';');
      out += name_of(c);
    }
    return out;
  }

  friend constexpr bool operator==(CategorySet, CategorySet) = default;

 private:
  static constexpr std::uint16_t bit(Category c) {
    return static_cast<std::uint16_t>(1u << index_of(c));
  }
  std::uint16_t bits_ = 0;
};

}  // namespace versescan

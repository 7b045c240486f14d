#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hanabi {

// Canonical color order. All per-color arrays and all prompt/serialization
// orderings follow this order.
enum class Color : uint8_t { R = 0, Y = 1, G = 2, W = 3, B = 4 };

inline constexpr int kNumColors = 5;
inline constexpr int kNumRanks = 5;
inline constexpr int kDeckSize = 50;

// Copies of each rank within one color: 1,1,1,2,2,3,3,4,4,5.
inline constexpr std::array<int, kNumRanks> kRankMultiplicity = {3, 2, 2, 2, 1};

inline constexpr std::array<Color, kNumColors> kAllColors = {
    Color::R, Color::Y, Color::G, Color::W, Color::B};

char color_letter(Color c);
const char* color_name(Color c);       // "Red"
std::string color_name_lower(Color c); // "red"
Color color_from_letter(char ch);      // throws std::invalid_argument
bool try_color_from_name(const std::string& word, Color* out); // "Red"/"red"/"R"

struct Card {
  Color color;
  int rank; // 1..5

  bool operator==(const Card&) const = default;
};

// Two-character form, e.g. "Y5".
std::string card_code(const Card& c);
Card card_from_code(const std::string& code); // throws std::invalid_argument

// Index into flat 25-entry per-(color,rank) tables.
inline int card_index(Color c, int rank) {
  return static_cast<int>(c) * kNumRanks + (rank - 1);
}
inline int card_index(const Card& c) { return card_index(c.color, c.rank); }

// Per-(color,rank) integer table, used for multiplicities and remaining counts.
struct CardCounts {
  std::array<int, kNumColors * kNumRanks> n{};

  int& at(Color c, int rank) { return n[card_index(c, rank)]; }
  int at(Color c, int rank) const { return n[card_index(c, rank)]; }
  int total() const;

  bool operator==(const CardCounts&) const = default;
};

CardCounts full_deck_counts();

// The unshuffled 50-card deck in canonical order (colors, then ranks, then copies).
std::vector<Card> canonical_deck();

} // namespace hanabi

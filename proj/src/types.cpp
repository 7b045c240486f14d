#include "hanabi/types.hpp"

#include <algorithm>
#include <cctype>

namespace hanabi {

char color_letter(Color c) {
  static constexpr char kLetters[] = {'R', 'Y', 'G', 'W', 'B'};
  return kLetters[static_cast<int>(c)];
}

const char* color_name(Color c) {
  static constexpr const char* kNames[] = {"Red", "Yellow", "Green", "White", "Blue"};
  return kNames[static_cast<int>(c)];
}

std::string color_name_lower(Color c) {
  std::string s = color_name(c);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

Color color_from_letter(char ch) {
  switch (std::toupper(static_cast<unsigned char>(ch))) {
    case 'R': return Color::R;
    case 'Y': return Color::Y;
    case 'G': return Color::G;
    case 'W': return Color::W;
    case 'B': return Color::B;
    default: throw std::invalid_argument("unknown color letter");
  }
}

bool try_color_from_name(const std::string& word, Color* out) {
  if (word.size() == 1) {
    for (Color c : kAllColors) {
      if (std::toupper(static_cast<unsigned char>(word[0])) == color_letter(c)) {
        *out = c;
        return true;
      }
    }
    return false;
  }
  std::string lower = word;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  for (Color c : kAllColors) {
    if (lower == color_name_lower(c)) {
      *out = c;
      return true;
    }
  }
  return false;
}

std::string card_code(const Card& c) {
  std::string s;
  s += color_letter(c.color);
  s += static_cast<char>('0' + c.rank);
  return s;
}

Card card_from_code(const std::string& code) {
  if (code.size() != 2 || code[1] < '1' || code[1] > '5') {
    throw std::invalid_argument("bad card code: " + code);
  }
  return Card{color_from_letter(code[0]), code[1] - '0'};
}

int CardCounts::total() const {
  int t = 0;
  for (int v : n) t += v;
  return t;
}

CardCounts full_deck_counts() {
  CardCounts counts;
  for (Color c : kAllColors) {
    for (int r = 1; r <= kNumRanks; ++r) counts.at(c, r) = kRankMultiplicity[r - 1];
  }
  return counts;
}

std::vector<Card> canonical_deck() {
  std::vector<Card> deck;
  deck.reserve(kDeckSize);
  for (Color c : kAllColors) {
    for (int r = 1; r <= kNumRanks; ++r) {
      for (int copy = 0; copy < kRankMultiplicity[r - 1]; ++copy) deck.push_back(Card{c, r});
    }
  }
  return deck;
}

} // namespace hanabi

#include "hanabi/textfmt.hpp"

#include <cmath>
#include <sstream>

namespace hanabi {
namespace textfmt {

std::string fireworks_compact(const std::array<int, kNumColors>& fireworks) {
  std::ostringstream os;
  for (Color c : kAllColors) {
    if (c != Color::R) os << ' ';
    os << color_letter(c) << fireworks[static_cast<int>(c)];
  }
  return os.str();
}

std::string fireworks_commas(const std::array<int, kNumColors>& fireworks) {
  std::ostringstream os;
  for (Color c : kAllColors) {
    if (c != Color::R) os << ", ";
    os << color_letter(c) << fireworks[static_cast<int>(c)];
  }
  return os.str();
}

std::string fireworks_sentence(const std::array<int, kNumColors>& fireworks) {
  std::ostringstream os;
  for (Color c : kAllColors) {
    if (c != Color::R) os << ", ";
    os << color_letter(c) << " stack is at " << fireworks[static_cast<int>(c)];
  }
  return os.str();
}

std::string discard_pile_phrase(const std::vector<Card>& discards) {
  if (discards.empty()) return "no cards discarded yet";
  CardCounts counts;
  for (const Card& c : discards) ++counts.at(c.color, c.rank);
  std::vector<std::string> parts;
  for (Color c : kAllColors) {
    for (int r = 1; r <= kNumRanks; ++r) {
      int n = counts.at(c, r);
      if (n == 0) continue;
      std::ostringstream os;
      os << n << ' ' << color_name_lower(c) << (n == 1 ? " card rank " : " cards rank ") << r;
      parts.push_back(os.str());
    }
  }
  return join(parts, ", ");
}

std::string known_info_code(const CardKnowledge& k) {
  std::string code = "XX";
  if (k.hinted_color) code[0] = color_letter(*k.hinted_color);
  if (k.hinted_rank) code[1] = static_cast<char>('0' + *k.hinted_rank);
  return code;
}

std::string watson_knowledge_piece(const CardKnowledge& k) {
  std::string out = k.hinted_color ? color_name(*k.hinted_color) : "UnknownColor";
  out += ' ';
  out += k.hinted_rank ? std::to_string(*k.hinted_rank) : "UnknownRank";
  return out;
}

std::string mycroft_explicit_piece(const CardKnowledge& k) {
  if (!k.hinted_color && !k.hinted_rank) return "unknown";
  std::string out = k.hinted_color ? std::string(1, color_letter(*k.hinted_color))
                                   : std::string("unknown color");
  out += ", ";
  out += k.hinted_rank ? "rank " + std::to_string(*k.hinted_rank) : std::string("unknown rank");
  return out;
}

std::string own_hint_clause(const CardKnowledge& k) {
  if (!k.hinted_color && !k.hinted_rank) {
    return "No hints about this card's color or rank have been given yet.";
  }
  std::string out = "Known: ";
  if (k.hinted_color) out += "color is " + color_name_lower(*k.hinted_color);
  if (k.hinted_color && k.hinted_rank) out += " and ";
  if (k.hinted_rank) out += "rank is " + std::to_string(*k.hinted_rank);
  return out + ".";
}

std::string other_hint_clause(const CardKnowledge& k) {
  if (!k.hinted_color && !k.hinted_rank) {
    return "This player has no specific hints about the card's identity";
  }
  std::string out = "This player knows ";
  if (k.hinted_color) out += "color is " + std::string(color_name(*k.hinted_color));
  if (k.hinted_color && k.hinted_rank) out += " and ";
  if (k.hinted_rank) out += "rank is " + std::to_string(*k.hinted_rank);
  return out;
}

std::string could_be_phrase(const CardKnowledge& k) {
  std::vector<std::string> colors;
  for (Color c : k.possible_colors()) colors.emplace_back(color_name(c));
  std::vector<std::string> ranks;
  for (int r : k.possible_ranks()) ranks.push_back(std::to_string(r));
  return join(colors, ", ") + " with ranks: " + join(ranks, ", ");
}

std::vector<int> other_seats(int viewer, int n_players) {
  std::vector<int> out;
  for (int seat = 0; seat < n_players; ++seat) {
    if (seat != viewer) out.push_back(seat);
  }
  return out;
}

std::string format_probability(double p) {
  if (p == 0.0) return "0";
  if (p == 1.0) return "1";
  std::ostringstream os;
  os.precision(3);
  os << p;
  return os.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

} // namespace textfmt
} // namespace hanabi

#include "hanabi/knowledge.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hanabi {

namespace {

int popcount5(uint8_t mask) { return std::popcount(static_cast<unsigned>(mask & 0x1f)); }

void check_nonempty(uint8_t mask, const char* what) {
  if ((mask & 0x1f) == 0) {
    throw std::logic_error(std::string("knowledge contradiction: empty ") + what + " set");
  }
}

} // namespace

int CardKnowledge::num_colors() const { return popcount5(color_mask); }
int CardKnowledge::num_ranks() const { return popcount5(rank_mask); }

std::optional<Color> CardKnowledge::known_color() const {
  if (num_colors() != 1) return std::nullopt;
  return static_cast<Color>(std::countr_zero(static_cast<unsigned>(color_mask)));
}

std::optional<int> CardKnowledge::known_rank() const {
  if (num_ranks() != 1) return std::nullopt;
  return std::countr_zero(static_cast<unsigned>(rank_mask)) + 1;
}

std::vector<Color> CardKnowledge::possible_colors() const {
  std::vector<Color> out;
  for (Color c : kAllColors) {
    if (color_possible(c)) out.push_back(c);
  }
  return out;
}

std::vector<int> CardKnowledge::possible_ranks() const {
  std::vector<int> out;
  for (int r = 1; r <= kNumRanks; ++r) {
    if (rank_possible(r)) out.push_back(r);
  }
  return out;
}

void apply_clue(std::vector<CardKnowledge>& hand, const ClueValue& value,
                const std::vector<int>& touched_slots) {
  std::vector<bool> touched(hand.size(), false);
  for (int slot : touched_slots) {
    if (slot < 0 || slot >= static_cast<int>(hand.size())) {
      throw std::out_of_range("clue slot out of range");
    }
    touched[slot] = true;
  }
  for (size_t i = 0; i < hand.size(); ++i) {
    CardKnowledge& k = hand[i];
    if (value.color) {
      uint8_t bit = 1u << static_cast<int>(*value.color);
      if (touched[i]) {
        if (!(k.color_mask & bit)) throw std::logic_error("clue contradicts prior knowledge");
        k.color_mask = bit;
        k.hinted_color = *value.color;
      } else {
        k.color_mask &= static_cast<uint8_t>(~bit);
        check_nonempty(k.color_mask, "color");
      }
    } else {
      uint8_t bit = 1u << (*value.rank - 1);
      if (touched[i]) {
        if (!(k.rank_mask & bit)) throw std::logic_error("clue contradicts prior knowledge");
        k.rank_mask = bit;
        k.hinted_rank = *value.rank;
      } else {
        k.rank_mask &= static_cast<uint8_t>(~bit);
        check_nonempty(k.rank_mask, "rank");
      }
    }
  }
}

void shift_on_removal(std::vector<CardKnowledge>& hand, int slot, bool drew_new) {
  if (slot < 0 || slot >= static_cast<int>(hand.size())) {
    throw std::out_of_range("removal slot out of range");
  }
  hand.erase(hand.begin() + slot);
  if (drew_new) hand.emplace_back();
}

const std::vector<CardKnowledge>* DeductionBlock::find(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string relative_label(int viewer, int seat, int n_players) {
  if (seat == viewer) return "you";
  int offset = ((seat - viewer) % n_players + n_players) % n_players;
  return "player+" + std::to_string(offset);
}

namespace {

std::string join_colors(const std::vector<Color>& colors, bool letters) {
  std::string out;
  for (size_t i = 0; i < colors.size(); ++i) {
    if (i) out += ", ";
    out += letters ? std::string(1, color_letter(colors[i])) : std::string(color_name(colors[i]));
  }
  return out;
}

std::string join_ranks(const std::vector<int>& ranks) {
  std::string out;
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(ranks[i]);
  }
  return out;
}

} // namespace

std::string knowledge_to_text(const CardKnowledge& k, KnowledgeTextStyle style) {
  bool letters = style == KnowledgeTextStyle::Compact;
  std::string out;
  if (auto c = k.known_color()) {
    out += "color is " + std::string(color_name(*c));
  } else {
    out += "color could be " + join_colors(k.possible_colors(), letters);
    if (style == KnowledgeTextStyle::Verbose && k.num_colors() < kNumColors) {
      std::vector<Color> excluded;
      for (Color c : kAllColors) {
        if (!k.color_possible(c)) excluded.push_back(c);
      }
      out += "; color cannot be " + join_colors(excluded, false);
    }
  }
  out += "; ";
  if (auto r = k.known_rank()) {
    out += "rank is " + std::to_string(*r);
  } else {
    out += "rank could be " + join_ranks(k.possible_ranks());
    if (style == KnowledgeTextStyle::Verbose && k.num_ranks() < kNumRanks) {
      std::vector<int> excluded;
      for (int r = 1; r <= kNumRanks; ++r) {
        if (!k.rank_possible(r)) excluded.push_back(r);
      }
      out += "; rank cannot be " + join_ranks(excluded);
    }
  }
  return out;
}

std::string deduction_to_json(const DeductionBlock& block, KnowledgeTextStyle style) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [label, cards] : block.entries) {
    nlohmann::ordered_json hand = nlohmann::ordered_json::object();
    for (size_t i = 0; i < cards.size(); ++i) {
      hand["card" + std::to_string(i)] = knowledge_to_text(cards[i], style);
    }
    obj[label] = std::move(hand);
  }
  return obj.dump(2);
}

namespace {

struct ClauseFacts {
  bool mentions_color = false;
  bool mentions_rank = false;
  bool negated = false;
  uint8_t colors = 0;
  uint8_t ranks = 0;
};

ClauseFacts read_clause(const std::string& clause) {
  ClauseFacts facts;
  std::string token;
  std::vector<std::string> tokens;
  for (char ch : clause) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      token += ch;
    } else if (!token.empty()) {
      tokens.push_back(token);
      token.clear();
    }
  }
  if (!token.empty()) tokens.push_back(token);

  for (const std::string& t : tokens) {
    std::string lower = t;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "color" || lower == "colors" || lower == "colour") facts.mentions_color = true;
    if (lower == "rank" || lower == "ranks") facts.mentions_rank = true;
    if (lower == "not" || lower == "cannot" || lower == "isnt") facts.negated = true;
    if (t.size() == 1 && std::isdigit(static_cast<unsigned char>(t[0]))) {
      int r = t[0] - '0';
      if (r >= 1 && r <= kNumRanks) facts.ranks |= 1u << (r - 1);
    } else {
      Color c;
      // Single letters must be uppercase to count as color tokens; this keeps
      // prose words like "be" or "rank" from reading as colors.
      bool is_letter = t.size() == 1 && std::isupper(static_cast<unsigned char>(t[0]));
      if ((is_letter || t.size() > 1) && try_color_from_name(t, &c)) {
        facts.colors |= 1u << static_cast<int>(c);
      }
    }
  }
  return facts;
}

} // namespace

CardKnowledge parse_knowledge_text(const std::string& text) {
  CardKnowledge k;
  std::stringstream ss(text);
  std::string clause;
  while (std::getline(ss, clause, ';')) {
    ClauseFacts facts = read_clause(clause);
    bool color_applies = facts.colors && (facts.mentions_color || !facts.mentions_rank);
    bool rank_applies = facts.ranks && (facts.mentions_rank || !facts.mentions_color);
    if (color_applies) {
      if (facts.negated) {
        k.color_mask &= static_cast<uint8_t>(~facts.colors);
      } else {
        k.color_mask &= facts.colors;
      }
    }
    if (rank_applies) {
      if (facts.negated) {
        k.rank_mask &= static_cast<uint8_t>(~facts.ranks);
      } else {
        k.rank_mask &= facts.ranks;
      }
    }
  }
  return k;
}

} // namespace hanabi

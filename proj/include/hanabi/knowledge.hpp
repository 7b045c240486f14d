#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hanabi/types.hpp"

namespace hanabi {

// Clue value: exactly one of color or rank.
struct ClueValue {
  std::optional<Color> color;
  std::optional<int> rank;

  static ClueValue of_color(Color c) { return ClueValue{c, std::nullopt}; }
  static ClueValue of_rank(int r) { return ClueValue{std::nullopt, r}; }
  bool matches(const Card& card) const {
    return color ? card.color == *color : card.rank == *rank;
  }
  bool operator==(const ClueValue&) const = default;
};

// What one card's holder can deduce about it from clues alone. Possibility
// masks start full and only ever shrink; hinted_* record direct positive clues.
struct CardKnowledge {
  uint8_t color_mask = 0x1f; // bit i: color i possible
  uint8_t rank_mask = 0x1f;  // bit r-1: rank r possible
  std::optional<Color> hinted_color;
  std::optional<int> hinted_rank;

  bool color_possible(Color c) const { return color_mask & (1u << static_cast<int>(c)); }
  bool rank_possible(int r) const { return rank_mask & (1u << (r - 1)); }
  bool possible(const Card& c) const { return color_possible(c.color) && rank_possible(c.rank); }
  int num_colors() const;
  int num_ranks() const;
  std::optional<Color> known_color() const; // set iff exactly one color possible
  std::optional<int> known_rank() const;

  std::vector<Color> possible_colors() const;
  std::vector<int> possible_ranks() const;

  bool operator==(const CardKnowledge&) const = default;
};

// Applies one clue to a whole hand's knowledge: touched slots collapse to the
// clued value, untouched slots drop it. Throws if a touched slot already
// excluded the value (clues are truthful by rule).
void apply_clue(std::vector<CardKnowledge>& hand, const ClueValue& value,
                const std::vector<int>& touched_slots);

// Removes one slot (play or discard), shifting later slots down. A drawn
// replacement enters at the end with blank knowledge.
void shift_on_removal(std::vector<CardKnowledge>& hand, int slot, bool drew_new);

// Per-player deduction roster keyed "you", "player+1", ... relative to a
// viewer, listed in absolute seat order. Entry order is preserved.
struct DeductionBlock {
  std::vector<std::pair<std::string, std::vector<CardKnowledge>>> entries;

  const std::vector<CardKnowledge>* find(const std::string& key) const;
  bool operator==(const DeductionBlock&) const = default;
};

std::string relative_label(int viewer, int seat, int n_players);

enum class KnowledgeTextStyle {
  Compact, // single-letter color lists, no negations
  Verbose, // full color names, explicit "cannot be" clauses
};

std::string knowledge_to_text(const CardKnowledge& k, KnowledgeTextStyle style);

// Serializes to the JSON object shape used in prompts and judging:
// {"you": {"card0": "...", ...}, "player+1": {...}, ...}.
std::string deduction_to_json(const DeductionBlock& block, KnowledgeTextStyle style);

// Parses one card's free-text deduction ("color could be R, Y; rank is 2",
// "rank cannot be 1", full color names, "or" lists). Unrecognized clauses are
// ignored; the result never has an empty mask unless the text forces one.
CardKnowledge parse_knowledge_text(const std::string& text);

} // namespace hanabi

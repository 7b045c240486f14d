#pragma once

#include <string>
#include <vector>

#include "hanabi/state.hpp"

namespace hanabi {
namespace textfmt {

// "R2 Y4 G2 W3 B1"
std::string fireworks_compact(const std::array<int, kNumColors>& fireworks);
// "R2, Y4, G2, W3, B1"
std::string fireworks_commas(const std::array<int, kNumColors>& fireworks);
// "R stack is at 2, Y stack is at 4, ..."
std::string fireworks_sentence(const std::array<int, kNumColors>& fireworks);

// "2 red cards rank 1, 1 red card rank 4, ..." grouped by color then rank;
// "no cards discarded yet" when empty.
std::string discard_pile_phrase(const std::vector<Card>& discards);

// Two-character explicit-hint code: 'XX', 'BX', 'X1', 'Y5'.
std::string known_info_code(const CardKnowledge& k);

// Watson hint piece: "UnknownColor UnknownRank", "UnknownColor 3", "Blue 2".
std::string watson_knowledge_piece(const CardKnowledge& k);

// Mycroft explicit piece: "unknown", "G, unknown rank", "unknown color,
// rank 2", "Y, rank 2".
std::string mycroft_explicit_piece(const CardKnowledge& k);

// Own-hand clause after the code: "No hints about this card's color or rank
// have been given yet." / "Known: color is blue." / "Known: rank is 1." /
// "Known: color is yellow and rank is 5."
std::string own_hint_clause(const CardKnowledge& k);

// Other-hand clause: "This player has no specific hints about the card's
// identity" / "This player knows color is Red" / "This player knows rank is 1"
// / "This player knows color is Red and rank is 1".
std::string other_hint_clause(const CardKnowledge& k);

// "Red, Yellow, Green, White with ranks: 1, 3, 4, 5" (possibility sets).
std::string could_be_phrase(const CardKnowledge& k);

// Other seats in absolute order starting after seat 0, skipping the viewer.
std::vector<int> other_seats(int viewer, int n_players);

// Plain integer-or-3-significant-digit rendering for probabilities.
std::string format_probability(double p);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

} // namespace textfmt
} // namespace hanabi

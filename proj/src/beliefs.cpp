#include "hanabi/beliefs.hpp"

#include <stdexcept>

namespace hanabi {
namespace beliefs {

CardCounts remaining_counts(const GameState& state, int viewer) {
  CardCounts counts = full_deck_counts();
  for (int p = 0; p < state.config.n_players; ++p) {
    if (p == viewer) continue;
    for (const Card& c : state.hands[p]) --counts.at(c.color, c.rank);
  }
  for (Color c : kAllColors) {
    for (int r = 1; r <= state.fireworks[static_cast<int>(c)]; ++r) --counts.at(c, r);
  }
  for (const Card& c : state.discards) --counts.at(c.color, c.rank);
  for (int v : counts.n) {
    if (v < 0) throw std::logic_error("remaining count went negative");
  }
  return counts;
}

std::map<std::pair<Color, int>, double> card_probability(const CardKnowledge& k,
                                                         const CardCounts& counts) {
  int total = 0;
  for (Color c : kAllColors) {
    for (int r = 1; r <= kNumRanks; ++r) {
      if (k.color_possible(c) && k.rank_possible(r)) total += counts.at(c, r);
    }
  }
  if (total == 0) {
    throw std::logic_error("card_probability: no remaining identity is possible");
  }
  std::map<std::pair<Color, int>, double> dist;
  for (Color c : kAllColors) {
    for (int r = 1; r <= kNumRanks; ++r) {
      if (!k.color_possible(c) || !k.rank_possible(r)) continue;
      int count = counts.at(c, r);
      if (count > 0) dist[{c, r}] = static_cast<double>(count) / total;
    }
  }
  return dist;
}

double playability_probability(const std::map<std::pair<Color, int>, double>& dist,
                               const std::array<int, kNumColors>& fireworks) {
  double p = 0.0;
  for (const auto& [identity, mass] : dist) {
    if (identity.second == fireworks[static_cast<int>(identity.first)] + 1) p += mass;
  }
  return p;
}

} // namespace beliefs
} // namespace hanabi

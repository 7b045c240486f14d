#pragma once

#include <map>
#include <utility>

#include "hanabi/state.hpp"

namespace hanabi {
namespace beliefs {

// Cards the viewer has not seen: full multiset minus other players' hands,
// minus cards played onto fireworks, minus the discard pile. The viewer's own
// hand is not subtracted (those cards are unseen from their perspective).
CardCounts remaining_counts(const GameState& state, int viewer);

// Distribution over identities for one card: counts restricted to the
// possibility sets, normalized. Throws std::logic_error when every possible
// identity has zero remaining count (a contradiction with truthful play).
std::map<std::pair<Color, int>, double> card_probability(const CardKnowledge& k,
                                                         const CardCounts& counts);

// Mass on identities that would play successfully right now.
double playability_probability(const std::map<std::pair<Color, int>, double>& dist,
                               const std::array<int, kNumColors>& fireworks);

} // namespace beliefs
} // namespace hanabi

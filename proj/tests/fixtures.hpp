#pragma once

// Hand-built reference positions and transcript fixtures shared by the test
// binaries. Both game states are conservation-exact: deck + hands + discards
// + fireworks partition the full 50-card multiset.

#include <cctype>
#include <string>
#include <vector>

#include "hanabi/judge.hpp"
#include "hanabi/state.hpp"

namespace hanabi::fixtures {

// Collapses every whitespace run to a single space and trims the ends, so
// golden comparisons are strict on wording and ordering but not on layout.
inline std::string normalize_ws(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool in_ws = true; // swallow leading whitespace
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_ws = true;
      continue;
    }
    if (in_ws && !out.empty()) out.push_back(' ');
    in_ws = false;
    out.push_back(c);
  }
  return out;
}

inline std::vector<Card> cards(std::initializer_list<const char*> codes) {
  std::vector<Card> out;
  for (const char* code : codes) out.push_back(card_from_code(code));
  return out;
}

inline CardKnowledge known(uint8_t color_mask, uint8_t rank_mask) {
  CardKnowledge k;
  k.color_mask = color_mask;
  k.rank_mask = rank_mask;
  return k;
}

inline constexpr uint8_t kAll = 0x1f;
inline uint8_t color_bit(Color c) { return static_cast<uint8_t>(1u << static_cast<int>(c)); }
inline uint8_t rank_bit(int r) { return static_cast<uint8_t>(1u << (r - 1)); }

// Two-player position on the last turn of the game: deck empty, one info
// token, fireworks R2 Y4 G2 W3 B1, 28 discards. Exactly 17 legal moves with
// reveal colors {R,W,B} at 10..12 and ranks {1,3,4,5} at 13..16.
inline GameState watson_midgame_state() {
  GameState st;
  st.config.n_players = 2;
  st.config.seed = 0;
  st.hands.resize(2);
  st.knowledge.resize(2);
  st.hands[0] = cards({"B3", "R1", "R4", "W5", "B3"});
  st.hands[1] = cards({"R5", "G1", "Y3", "B2", "G3"});
  st.fireworks = {2, 4, 2, 3, 1};
  st.discards = cards({"R1", "R2", "R3", "R3", "R4",
                       "Y1", "Y1", "Y2", "Y4", "Y5",
                       "G1", "G2", "G3", "G4", "G4", "G5",
                       "W1", "W1", "W2", "W3", "W4", "W4",
                       "B1", "B1", "B2", "B4", "B4", "B5"});
  st.info_tokens = 1;
  st.life_tokens = 3;
  st.turn_index = 45;
  st.current_player = 1;
  st.final_countdown = 1;

  auto& k0 = st.knowledge[0];
  k0.assign(5, CardKnowledge{});
  k0[0].hinted_rank = 3;
  k0[0].rank_mask = rank_bit(3);
  k0[1].hinted_rank = 1;
  k0[1].rank_mask = rank_bit(1);

  auto& k1 = st.knowledge[1];
  k1.assign(5, CardKnowledge{});
  k1[2].hinted_rank = 3;
  k1[2].rank_mask = rank_bit(3);
  k1[3].hinted_color = Color::B;
  k1[3].hinted_rank = 2;
  k1[3].color_mask = color_bit(Color::B);
  k1[3].rank_mask = rank_bit(2);
  return st;
}

// Two-player position on the whole game's final turn: the partner already
// took their last move (4-card hand, no draw), fireworks R5 Y5 G3 W2 B4,
// two info tokens, 22 discards.
inline GameState sherlock_endgame_state() {
  GameState st;
  st.config.n_players = 2;
  st.config.seed = 0;
  st.hands.resize(2);
  st.knowledge.resize(2);
  st.hands[0] = cards({"W1", "W2", "Y4", "R3"});
  st.hands[1] = cards({"Y1", "R2", "W4", "B4", "W4"});
  st.fireworks = {5, 5, 3, 2, 4};
  st.discards = cards({"R1", "R1", "R4",
                       "Y1", "Y2", "Y3",
                       "G1", "G1", "G2", "G3", "G4", "G4", "G5",
                       "W1", "W3", "W3", "W5",
                       "B1", "B1", "B2", "B3", "B5"});
  st.info_tokens = 2;
  st.life_tokens = 3;
  st.turn_index = 50;
  st.current_player = 1;
  st.final_countdown = 1;

  const uint8_t rygw = static_cast<uint8_t>(kAll & ~color_bit(Color::B));
  const uint8_t ygw = static_cast<uint8_t>(rygw & ~color_bit(Color::R));
  auto& k0 = st.knowledge[0];
  k0.assign(4, CardKnowledge{});
  k0[0] = known(ygw, rank_bit(1) | rank_bit(2) | rank_bit(3));
  k0[1] = known(rygw, rank_bit(1) | rank_bit(2) | rank_bit(3));
  k0[2] = known(rygw, kAll);

  auto& k1 = st.knowledge[1];
  k1.assign(5, CardKnowledge{});
  k1[0] = known(rygw, static_cast<uint8_t>(kAll & ~rank_bit(2)));
  k1[1] = known(rygw, kAll);
  k1[2] = known(rygw, kAll);
  k1[3] = known(color_bit(Color::B), kAll);
  k1[3].hinted_color = Color::B;
  return st;
}

inline const std::string kWatsonExpectedSystem = R"FX(You are an expert AI in the cooperative card game Hanabi. Your goal is to help the team achieve the highest possible score (max 25).
Analyze the entire game state provided, including your hand knowledge, visible hands of other players, fireworks, discards, deck size, lives, and info tokens.
Consider all strategic priorities:
1. Safe Plays: Prioritize playing cards you KNOW are playable on the fireworks.
2. Useful Clues: If no safe play and info tokens > 0, consider giving clues that enable immediate plays, save critical cards, or provide significant new information without being redundant.
3. Safe Discards: If no safe play and no high-value clue (or info tokens == 0), discard the safest possible card.
Explain your reasoning clearly, referencing the game state, and then state your chosen move number.

OUTPUT FORMAT:
Reasoning: [Your detailed reasoning justifying your choice based on the game state and strategic priorities]
Chosen Move Number: [number])FX";

inline const std::string kWatsonExpectedUser = R"FX(You are Player 1. Analyze the game state and propose the best move number. Explain your reasoning.

Game State:
P1 (2p Game). Lives: 3, Info: 1, Deck: 0.
Fireworks: R2 Y4 G2 W3 B1. Discards: 1 red card rank 1, 1 red card rank 2, 2 red cards rank 3, 1 red card rank 4, 2 yellow cards rank 1, 1 yellow card rank 2, 1 yellow card rank 4, 1 yellow card rank 5, 1 green card rank 1, 1 green card rank 2, 1 green card rank 3, 2 green cards rank 4, 1 green card rank 5, 2 white cards rank 1, 1 white card rank 2, 1 white card rank 3, 2 white cards rank 4, 2 blue cards rank 1, 1 blue card rank 2, 2 blue cards rank 4, 1 blue card rank 5.
FINAL ROUND! 1 turns left (P1 is last).
Visible Hands:
P0 Hand: [Blue 3, Red 1, Red 4, White 5, Blue 3]
Your Knowledge (Hints): [UnknownColor UnknownRank, UnknownColor UnknownRank, UnknownColor 3, Blue 2, UnknownColor UnknownRank] (Indices 0-4).
Others' Knowledge:
P0 Knows: [UnknownColor 3, UnknownColor 1, UnknownColor UnknownRank, UnknownColor UnknownRank, UnknownColor UnknownRank]

Legal Moves:
0. (Discard 0)
1. (Discard 1)
2. (Discard 2)
3. (Discard 3)
4. (Discard 4)
5. (Play 0)
6. (Play 1)
7. (Play 2)
8. (Play 3)
9. (Play 4)
10. (Reveal player +1 color R)
11. (Reveal player +1 color W)
12. (Reveal player +1 color B)
13. (Reveal player +1 rank 1)
14. (Reveal player +1 rank 3)
15. (Reveal player +1 rank 4)
16. (Reveal player +1 rank 5)

Current Info Tokens: 1

Output Format:
Reasoning: [Your detailed reasoning justifying your choice based on the game state and strategic priorities]
Move Ratings: [Rate each legal move from -1 (terrible) to 1 (excellent), like "Move 0: 0.5, Move 1: -0.3, Move 2: 1.0, ..."]
Chosen Move Number: [number])FX";

inline const std::string kWatsonResponseFixture = R"FX(Reasoning:
It's the last turn (no cards left in deck, P1's only action). The current fireworks are R2, Y4, G2, W3, B1 (total 12). The only way to increase score is to play a card now. You know your card at index 3 is Blue 2, which is exactly the next playable card on the blue firework (B1->B2). Playing it gains +1 point, raising the score to 13.
All other play slots are uncertain and risk a misplay for no guaranteed score; discards or clues yield zero benefit (P0 won't get another action and you can't draw). Therefore the uniquely correct move is to play card 3.

Move Ratings:
Move 0 (Discard 0): -0.5
Move 1 (Discard 1): -0.5
Move 2 (Discard 2): -0.5
Move 3 (Discard 3): -0.5
Move 4 (Discard 4): -0.5
Move 5 (Play 0): 0.0
Move 6 (Play 1): 0.0
Move 7 (Play 2): 0.2
Move 8 (Play 3): 1.0
Move 9 (Play 4): 0.0
Move 10 (Clue P0 color R): -1.0
Move 11 (Clue P0 color W): -1.0
Move 12 (Clue P0 color B): -1.0
Move 13 (Clue P0 rank 1): -1.0
Move 14 (Clue P0 rank 3): -1.0
Move 15 (Clue P0 rank 4): -1.0
Move 16 (Clue P0 rank 5): -1.0

Chosen Move Number: 8)FX";

inline const std::string kSherlockExpectedStateBlock = R"FX(Game State:
There are 3 life tokens and 2 info tokens remaining.
The fireworks progress: R stack is at 5, Y stack is at 5, G stack is at 3, W stack is at 2, B stack is at 4.
Your hand contains the following cards:
Card 0:
- Known info: 'XX'. No hints about this card's color or rank have been given yet.
- Could be any of these colors: Red, Yellow, Green, White with ranks: 1, 3, 4, 5.
Card 1:
- Known info: 'XX'. No hints about this card's color or rank have been given yet.
- Could be any of these colors: Red, Yellow, Green, White with ranks: 1, 2, 3, 4, 5.
Card 2:
- Known info: 'XX'. No hints about this card's color or rank have been given yet.
- Could be any of these colors: Red, Yellow, Green, White with ranks: 1, 2, 3, 4, 5.
Card 3:
- Known info: 'BX'. Known: color is blue.
- Could be any of these colors: Blue with ranks: 1, 2, 3, 4, 5.
Card 4:
- Known info: 'XX'. No hints about this card's color or rank have been given yet.
- Could be any of these colors: Red, Yellow, Green, White, Blue with ranks: 1, 2, 3, 4, 5.
From your perspective, you can see the other players' hands clearly. Here's what you observe:
Player +1's hand:
- A card: You can see the card: 'W1', This player has no specific hints about the card's identity, This player knows it could be any of these colors: Yellow, Green, White with ranks: 1, 2, 3.
- A card: You can see the card: 'W2', This player has no specific hints about the card's identity, This player knows it could be any of these colors: Red, Yellow, Green, White with ranks: 1, 2, 3.
- A card: You can see the card: 'Y4', This player has no specific hints about the card's identity, This player knows it could be any of these colors: Red, Yellow, Green, White with ranks: 1, 2, 3, 4, 5.
- A card: You can see the card: 'R3', This player has no specific hints about the card's identity, This player knows it could be any of these colors: Red, Yellow, Green, White, Blue with ranks: 1, 2, 3, 4, 5.
There are 0 cards remaining in the deck. The discard pile contains: 2 red cards rank 1, 1 red card rank 4, 1 yellow card rank 1, 1 yellow card rank 2, 1 yellow card rank 3, 2 green cards rank 1, 1 green card rank 2, 1 green card rank 3, 2 green cards rank 4, 1 green card rank 5, 1 white card rank 1, 2 white cards rank 3, 1 white card rank 5, 2 blue cards rank 1, 1 blue card rank 2, 1 blue card rank 3, 1 blue card rank 5.

FINAL ROUND: The deck is empty. You are the final player and this is the final turn for the whole game.)FX";

inline const std::string kSherlockExpectedMapping =
    "{0: '((Discard 0))', 1: '((Discard 1))', 2: '((Discard 2))', 3: '((Discard 3))', "
    "4: '((Discard 4))', 5: '((Play 0))', 6: '((Play 1))', 7: '((Play 2))', "
    "8: '((Play 3))', 9: '((Play 4))', 10: '((Reveal player +1 color R))', "
    "11: '((Reveal player +1 color Y))', 12: '((Reveal player +1 color W))', "
    "13: '((Reveal player +1 rank 1))', 14: '((Reveal player +1 rank 2))', "
    "15: '((Reveal player +1 rank 3))', 16: '((Reveal player +1 rank 4))'}";

inline const std::string kSherlockResponseFixture = R"FX({
  "move_ratings": [
    { "action": 0, "rating": 0.7 },
    { "action": 1, "rating": 0.7 },
    { "action": 2, "rating": 0.7 },
    { "action": 3, "rating": 0.8 },
    { "action": 4, "rating": 0.7 },
    { "action": 5, "rating": -0.5 },
    { "action": 6, "rating": -0.5 },
    { "action": 7, "rating": -0.5 },
    { "action": 8, "rating": -0.6 },
    { "action": 9, "rating": -0.5 },
    { "action": 10, "rating": -1.0 },
    { "action": 11, "rating": -1.0 },
    { "action": 12, "rating": -1.0 },
    { "action": 13, "rating": -1.0 },
    { "action": 14, "rating": -1.0 },
    { "action": 15, "rating": -1.0 },
    { "action": 16, "rating": -1.0 }
  ],
  "reason": "With the deck empty and this as our final turn, there are no remaining playable cards. The cards needed to advance the fireworks (G4, G5, W3, W5, B5) are all in the discard pile. Any attempt to play a card will result in a penalty. Giving a hint is also pointless, as this is the last turn of the game. Therefore, the only logical move is to discard a card to end the game without losing a life token. The card in position 3 is known to be Blue, and given the state of the board and discards, it is unplayable. Discarding this known useless card is the safest and most optimal action.",
  "action": 3
})FX";

// --- Reference deduction positions (5-player, clue/shift event replays) ---

// Viewer is seat 1. Returns a state whose knowledge matches the first
// reference block; hands/board are irrelevant for the oracle.
inline GameState reference_deduction_state_1() {
  GameState st;
  st.config.n_players = 5;
  st.knowledge.assign(5, std::vector<CardKnowledge>(4));

  auto& p0 = st.knowledge[0];
  apply_clue(p0, ClueValue::of_rank(1), {3});
  shift_on_removal(p0, 3, true);

  auto& p1 = st.knowledge[1];
  apply_clue(p1, ClueValue::of_color(Color::Y), {3});
  apply_clue(p1, ClueValue::of_rank(2), {3});
  shift_on_removal(p1, 3, true);
  apply_clue(p1, ClueValue::of_color(Color::R), {1, 2});

  auto& p2 = st.knowledge[2];
  apply_clue(p2, ClueValue::of_rank(1), {2, 3});
  shift_on_removal(p2, 3, true);
  shift_on_removal(p2, 2, true);
  apply_clue(p2, ClueValue::of_color(Color::B), {3});

  auto& p3 = st.knowledge[3];
  apply_clue(p3, ClueValue::of_rank(1), {3});
  shift_on_removal(p3, 3, true);
  shift_on_removal(p3, 2, true);

  auto& p4 = st.knowledge[4];
  apply_clue(p4, ClueValue::of_color(Color::W), {3});
  return st;
}

struct DeductionGolden {
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;
};

inline DeductionGolden reference_deduction_golden_1() {
  DeductionGolden g;
  g.entries = {
      {"player+4",
       {"color could be Red, Yellow, Green, White, Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5"}},
      {"you",
       {"color could be Green, White, Blue; color cannot be Red, Yellow; rank could be 1, 3, 4, 5; rank cannot be 2",
        "color is Red; rank could be 1, 3, 4, 5; rank cannot be 2",
        "color is Red; rank could be 1, 3, 4, 5; rank cannot be 2",
        "color could be Yellow, Green, White, Blue; color cannot be Red; rank could be 1, 2, 3, 4, 5"}},
      {"player+1",
       {"color could be Red, Yellow, Green, White; color cannot be Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White; color cannot be Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White; color cannot be Blue; rank could be 1, 2, 3, 4, 5",
        "color is Blue; rank could be 1, 2, 3, 4, 5"}},
      {"player+2",
       {"color could be Red, Yellow, Green, White, Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5"}},
      {"player+3",
       {"color could be Red, Yellow, Green, Blue; color cannot be White; rank could be 1, 2, 3, 4, 5",
        "color could be Red, Yellow, Green, Blue; color cannot be White; rank could be 1, 2, 3, 4, 5",
        "color could be Red, Yellow, Green, Blue; color cannot be White; rank could be 1, 2, 3, 4, 5",
        "color is White; rank could be 1, 2, 3, 4, 5"}}};
  return g;
}

// Viewer is seat 2.
inline GameState reference_deduction_state_2() {
  GameState st;
  st.config.n_players = 5;
  st.knowledge.assign(5, std::vector<CardKnowledge>(4));

  auto& p1 = st.knowledge[1];
  apply_clue(p1, ClueValue::of_color(Color::G), {3});
  apply_clue(p1, ClueValue::of_rank(1), {0, 1});
  shift_on_removal(p1, 3, true);

  auto& p2 = st.knowledge[2];
  apply_clue(p2, ClueValue::of_color(Color::Y), {3});
  apply_clue(p2, ClueValue::of_rank(1), {3});
  shift_on_removal(p2, 3, true);

  auto& p3 = st.knowledge[3];
  apply_clue(p3, ClueValue::of_rank(1), {1});

  auto& p4 = st.knowledge[4];
  apply_clue(p4, ClueValue::of_color(Color::B), {0});
  apply_clue(p4, ClueValue::of_rank(1), {1, 2, 3});
  shift_on_removal(p4, 3, true);
  return st;
}

inline DeductionGolden reference_deduction_golden_2() {
  DeductionGolden g;
  g.entries = {
      {"player+3",
       {"color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5"}},
      {"player+4",
       {"color could be Red, Yellow, White, Blue; color cannot be Green; rank is 1",
        "color could be Red, Yellow, White, Blue; color cannot be Green; rank is 1",
        "color could be Red, Yellow, White, Blue; color cannot be Green; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5"}},
      {"you",
       {"color could be Red, Green, White, Blue; color cannot be Yellow; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Green, White, Blue; color cannot be Yellow; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Green, White, Blue; color cannot be Yellow; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5"}},
      {"player+1",
       {"color could be Red, Yellow, Green, White, Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank is 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 2, 3, 4, 5; rank cannot be 1"}},
      {"player+2",
       {"color is Blue; rank could be 2, 3, 4, 5; rank cannot be 1",
        "color could be Red, Yellow, Green, White; color cannot be Blue; rank is 1",
        "color could be Red, Yellow, Green, White; color cannot be Blue; rank is 1",
        "color could be Red, Yellow, Green, White, Blue; rank could be 1, 2, 3, 4, 5"}}};
  return g;
}

// Worked shift example: a 4-card hand loses slot 1 and draws a replacement.
inline std::vector<CardKnowledge> shift_example_pre() {
  std::vector<CardKnowledge> hand(4);
  hand[0].rank_mask = rank_bit(2);
  hand[1].color_mask = color_bit(Color::B);
  hand[1].rank_mask = rank_bit(3) | rank_bit(4);
  hand[2].rank_mask = rank_bit(5);
  hand[3].color_mask = static_cast<uint8_t>(kAll & ~color_bit(Color::R));
  return hand;
}

inline std::vector<std::string> shift_example_expected_compact() {
  return {"color could be R, Y, G, W, B; rank is 2",
          "color could be R, Y, G, W, B; rank is 5",
          "color could be Y, G, W, B; rank could be 1, 2, 3, 4, 5",
          "color could be R, Y, G, W, B; rank could be 1, 2, 3, 4, 5"};
}

inline const std::string kJudgeResponseFixture1 = R"FX({
  "overall_rating": 0.17,
  "deduction_accuracy": 0.2,
  "history_integration": 0.1,
  "state_tracking_quality": 0.2,
  "detailed_feedback": "The model captured a few direct color hints (e.g., marking P4's card3 as White and your cards1-2 as Red) but largely failed to apply negative inferences or carry forward prior hints. It never removed rank 2 from your cards after the earlier rank-2 hint, nor removed Yellow from your non-Y cards after the Y hint. It also ignored the discard by Player 2 and did not shift that player's cards or introduce a new unknown. Consequently most possibility sets remain overly broad or outdated.",
  "key_issues": [
    "Did not eliminate rank 2 from your cards0-2 after the rank-2 hint",
    "Did not eliminate Yellow from your cards0-2 after the Y hint",
    "Ignored Player 2's discard--hand positions weren't shifted and a new unknown card wasn't added",
    "Failed to remove rank 1 from others' cards after implicit rank-eliminating hints"
  ],
  "strengths": [
    "Correctly applied the White hint to Player 4's card3",
    "Correctly marked your cards1 and 2 as Red",
    "Maintained proper JSON structure"
  ]
})FX";

inline const std::string kJudgeResponseFixture2 = R"FX({
  "overall_rating": 0.8,
  "deduction_accuracy": 0.8,
  "history_integration": 0.8,
  "state_tracking_quality": 0.8,
  "detailed_feedback": "The model correctly tracked deductions for you, player+3 (P0), player+4 (P1), and player+1 (P3), accurately applying color and rank hints and handling card plays and position shifts. However, it completely lost the rank information for player+2 (P4), reintroducing rank-1 possibilities on card0 and failing to preserve known rank hints on cards1 and 2. Additionally, the model often expressed negative information without enumerating the remaining possible ranks.",
  "key_issues": [
    "Player+2's rank hints dropped: rank-1 was not removed from card0 and known rank-1 hints for card1/card2 were ignored",
    "Negative-only statements (e.g. 'rank is not 1') without listing positive remaining rank possibilities"
  ],
  "strengths": [
    "Accurately applied hints and updated knowledge for four of five players",
    "Correctly tracked card plays and hand shifts for both you and teammates",
    "Maintained consistent negative color information across players"
  ]
})FX";

} // namespace hanabi::fixtures

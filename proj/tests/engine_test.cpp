#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "hanabi/rng.hpp"
#include "hanabi/scaffold.hpp"
#include "hanabi/state.hpp"

using namespace hanabi;

namespace {

GameConfig make_config(int n, uint64_t seed) {
  GameConfig c;
  c.n_players = n;
  c.seed = seed;
  return c;
}

// Deck + hands + fireworks + discards must always partition the 50-card multiset.
bool conserves_cards(const GameState& st) {
  CardCounts counts;
  for (const Card& c : st.deck) ++counts.at(c.color, c.rank);
  for (const auto& hand : st.hands)
    for (const Card& c : hand) ++counts.at(c.color, c.rank);
  for (const Card& c : st.discards) ++counts.at(c.color, c.rank);
  for (Color c : kAllColors)
    for (int r = 1; r <= st.fireworks[static_cast<int>(c)]; ++r) ++counts.at(c, r);
  return counts == full_deck_counts();
}

GameState random_playout_step(GameState st, Rng& rng) {
  auto legal = legal_moves(st);
  return apply_move(st, legal[rng.bounded(legal.size())]);
}

} // namespace

TEST_CASE("new_game deals deterministically with the right hand sizes") {
  for (int n = 2; n <= 5; ++n) {
    auto cfg = make_config(n, 11);
    GameState a = new_game(cfg);
    GameState b = new_game(cfg);
    CHECK(state_to_json(a).dump() == state_to_json(b).dump());
    CHECK(state_hash(a) == state_hash(b));

    int hand = n <= 3 ? 5 : 4;
    REQUIRE(static_cast<int>(a.hands.size()) == n);
    for (const auto& h : a.hands) CHECK(static_cast<int>(h.size()) == hand);
    CHECK(static_cast<int>(a.deck.size()) == 50 - n * hand);
    CHECK(a.info_tokens == 8);
    CHECK(a.life_tokens == 3);
    CHECK(a.current_player == 0);
    CHECK(a.turn_index == 0);
    CHECK_FALSE(a.terminal.has_value());
    CHECK(conserves_cards(a));
    for (const auto& kh : a.knowledge)
      for (const auto& k : kh) CHECK(k == CardKnowledge{});
  }
  GameState c = new_game(make_config(2, 11));
  GameState d = new_game(make_config(2, 12));
  CHECK(state_hash(c) != state_hash(d));
}

TEST_CASE("config validation rejects out-of-range player counts") {
  CHECK_THROWS_AS(make_config(1, 0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_config(6, 0).validate(), std::invalid_argument);
  CHECK_NOTHROW(make_config(4, 0).validate());
}

TEST_CASE("score sums the fireworks") {
  GameState st = new_game(make_config(2, 1));
  st.fireworks = {4, 2, 5, 1, 3};
  CHECK(score(st) == 15);
  st.fireworks = {5, 5, 5, 5, 5};
  CHECK(score(st) == 25);
  st.fireworks = {};
  CHECK(score(st) == 0);
}

TEST_CASE("fresh game at max info has no discard actions") {
  GameState st = new_game(make_config(2, 3));
  auto legal = legal_moves(st);
  for (const Move& m : legal) CHECK(m.type != MoveType::Discard);
  CHECK(legal.front().type == MoveType::Play);
  CHECK(legal.front().slot == 0);
}

TEST_CASE("action indices follow discards, plays, then per-target reveals") {
  GameState st = fixtures::watson_midgame_state();
  auto legal = legal_moves(st);
  REQUIRE(legal.size() == 17);
  for (int i = 0; i <= 4; ++i) {
    CHECK(legal[i].type == MoveType::Discard);
    CHECK(legal[i].slot == i);
  }
  for (int i = 5; i <= 9; ++i) {
    CHECK(legal[i].type == MoveType::Play);
    CHECK(legal[i].slot == i - 5);
  }
  // Partner holds B3 R1 R4 W5 B3: colors {R,W,B} in canonical order, ranks {1,3,4,5}.
  Color want_colors[] = {Color::R, Color::W, Color::B};
  for (int i = 10; i <= 12; ++i) {
    CHECK(legal[i].type == MoveType::RevealColor);
    CHECK(legal[i].target_offset == 1);
    CHECK(legal[i].color == want_colors[i - 10]);
  }
  int want_ranks[] = {1, 3, 4, 5};
  for (int i = 13; i <= 16; ++i) {
    CHECK(legal[i].type == MoveType::RevealRank);
    CHECK(legal[i].target_offset == 1);
    CHECK(legal[i].rank == want_ranks[i - 13]);
  }
}

TEST_CASE("reveals are absent at zero info and cover every later seat") {
  GameState st = new_game(make_config(4, 9));
  st.info_tokens = 0;
  for (const Move& m : legal_moves(st)) {
    CHECK(m.type != MoveType::RevealColor);
    CHECK(m.type != MoveType::RevealRank);
  }
  st.info_tokens = 4;
  std::set<int> offsets;
  for (const Move& m : legal_moves(st))
    if (m.type == MoveType::RevealColor || m.type == MoveType::RevealRank)
      offsets.insert(m.target_offset);
  CHECK(offsets == std::set<int>{1, 2, 3});
}

TEST_CASE("successful play advances the firework and draws a replacement") {
  GameState st = new_game(make_config(2, 5));
  // Force a known playable card into slot 2.
  st.hands[0][2] = Card{Color::G, 1};
  // Keep conservation irrelevant here; this test checks apply_move mechanics.
  Move play{MoveType::Play, 2, 0, Color::R, 0};
  MoveOutcome out;
  GameState next = apply_move(st, play, &out);
  CHECK(out.play_success);
  CHECK_FALSE(out.life_lost);
  CHECK(out.drew_new);
  CHECK(out.card == Card{Color::G, 1});
  CHECK(next.fireworks[static_cast<int>(Color::G)] == 1);
  CHECK(next.hands[0].size() == st.hands[0].size());
  CHECK(next.deck.size() == st.deck.size() - 1);
  CHECK(next.hands[0][4] == st.deck.back()); // draw goes to the last slot
  CHECK(next.knowledge[0][4] == CardKnowledge{});
  CHECK(next.current_player == 1);
  CHECK(next.turn_index == 1);
  CHECK(next.life_tokens == 3);
  CHECK(next.info_tokens == st.info_tokens); // non-five play leaves info alone
  // Input state is untouched.
  CHECK(st.turn_index == 0);
}

TEST_CASE("failed play burns a life and discards the card") {
  GameState st = new_game(make_config(2, 5));
  st.hands[0][0] = Card{Color::B, 4}; // B0 stack, unplayable
  MoveOutcome out;
  GameState next = apply_move(st, Move{MoveType::Play, 0, 0, Color::R, 0}, &out);
  CHECK_FALSE(out.play_success);
  CHECK(out.life_lost);
  CHECK(next.life_tokens == 2);
  CHECK(next.fireworks[static_cast<int>(Color::B)] == 0);
  CHECK(next.discards.back() == Card{Color::B, 4});
  CHECK_FALSE(next.terminal.has_value());
}

TEST_CASE("third misplay ends the game with the configured bombout score") {
  for (auto mode : {ScoreOnBombout::AtFailure, ScoreOnBombout::Zero}) {
    GameState st = new_game(make_config(2, 5));
    st.config.score_on_bombout = mode;
    st.fireworks = {2, 1, 0, 0, 0};
    st.life_tokens = 1;
    st.hands[0][0] = Card{Color::B, 4};
    GameState next = apply_move(st, Move{MoveType::Play, 0, 0, Color::R, 0});
    REQUIRE(next.terminal.has_value());
    CHECK(next.terminal->reason == TerminalReason::LivesExhausted);
    CHECK(next.terminal->final_score == (mode == ScoreOnBombout::Zero ? 0 : 3));
    CHECK(next.life_tokens == 0);
  }
}

TEST_CASE("completing a five restores an info token unless already at max") {
  GameState st = new_game(make_config(2, 5));
  st.fireworks = {4, 0, 0, 0, 0};
  st.hands[0][1] = Card{Color::R, 5};
  st.info_tokens = 3;
  GameState next = apply_move(st, Move{MoveType::Play, 1, 0, Color::R, 0});
  CHECK(next.fireworks[0] == 5);
  CHECK(next.info_tokens == 4);

  st.info_tokens = 8;
  GameState capped = apply_move(st, Move{MoveType::Play, 1, 0, Color::R, 0});
  CHECK(capped.info_tokens == 8);
}

TEST_CASE("finishing every stack ends the game as perfect 25") {
  GameState st = new_game(make_config(2, 5));
  st.fireworks = {5, 5, 5, 5, 4};
  st.hands[0][0] = Card{Color::B, 5};
  GameState next = apply_move(st, Move{MoveType::Play, 0, 0, Color::R, 0});
  REQUIRE(next.terminal.has_value());
  CHECK(next.terminal->reason == TerminalReason::Perfect);
  CHECK(next.terminal->final_score == 25);
}

TEST_CASE("discard returns an info token and is illegal at max info") {
  GameState st = new_game(make_config(2, 5));
  st.info_tokens = 2;
  Card discarded = st.hands[0][3];
  MoveOutcome out;
  GameState next = apply_move(st, Move{MoveType::Discard, 3, 0, Color::R, 0}, &out);
  CHECK(next.info_tokens == 3);
  CHECK(out.info_delta == 1);
  CHECK(next.discards.back() == discarded);
  CHECK(next.deck.size() == st.deck.size() - 1);

  st.info_tokens = 8;
  CHECK_THROWS_AS(apply_move(st, Move{MoveType::Discard, 0, 0, Color::R, 0}),
                  std::invalid_argument);
}

TEST_CASE("reveals cost a token, touch matching slots, and update knowledge") {
  GameState st = new_game(make_config(3, 8));
  st.hands[1] = fixtures::cards({"R1", "G3", "R4", "B2", "G1"});
  MoveOutcome out;
  GameState next = apply_move(st, Move{MoveType::RevealColor, 0, 1, Color::R, 0}, &out);
  CHECK(next.info_tokens == 7);
  CHECK(out.info_delta == -1);
  CHECK(out.target == 1);
  CHECK(out.touched_slots == std::vector<int>{0, 2});
  CHECK(next.knowledge[1][0].hinted_color == Color::R);
  CHECK(next.knowledge[1][2].hinted_color == Color::R);
  CHECK_FALSE(next.knowledge[1][1].color_possible(Color::R));
  CHECK_FALSE(next.knowledge[1][3].color_possible(Color::R));

  GameState after_rank = apply_move(st, Move{MoveType::RevealRank, 0, 1, Color::R, 1});
  CHECK(after_rank.knowledge[1][0].hinted_rank == 1);
  CHECK(after_rank.knowledge[1][4].hinted_rank == 1);
  CHECK_FALSE(after_rank.knowledge[1][1].rank_possible(1));

  // A clue that matches nothing in the target's hand is illegal.
  CHECK_THROWS_AS(apply_move(st, Move{MoveType::RevealColor, 0, 1, Color::W, 0}),
                  std::invalid_argument);
  // Self-clues are impossible: offset 0 is invalid.
  CHECK_THROWS_AS(apply_move(st, Move{MoveType::RevealColor, 0, 0, Color::R, 0}),
                  std::invalid_argument);
}

TEST_CASE("emptying the deck starts the final countdown and ends after one round") {
  GameState st = new_game(make_config(2, 13));
  st.deck.resize(1);
  st.info_tokens = 4;
  REQUIRE_FALSE(st.final_countdown.has_value());

  GameState a = apply_move(st, Move{MoveType::Discard, 0, 0, Color::R, 0});
  REQUIRE(a.final_countdown.has_value());
  CHECK(*a.final_countdown == 2); // both players still get one move
  CHECK_FALSE(a.terminal.has_value());

  GameState b = apply_move(a, Move{MoveType::Discard, 0, 0, Color::R, 0});
  REQUIRE(b.final_countdown.has_value());
  CHECK(*b.final_countdown == 1);
  CHECK_FALSE(b.terminal.has_value());
  CHECK(b.hands[1].size() == 4); // no replacement to draw

  GameState c = apply_move(b, Move{MoveType::Discard, 0, 0, Color::R, 0});
  REQUIRE(c.terminal.has_value());
  CHECK(c.terminal->reason == TerminalReason::DeckExhausted);
  CHECK(c.terminal->final_score == score(c));
  CHECK_THROWS_AS(legal_moves(c), std::logic_error);
}

TEST_CASE("random playouts conserve the card multiset and always terminate") {
  Rng rng(99);
  for (int n = 2; n <= 5; ++n) {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      GameState st = new_game(make_config(n, seed));
      int steps = 0;
      while (!st.terminal && steps < 300) {
        st = random_playout_step(st, rng);
        REQUIRE(conserves_cards(st));
        ++steps;
      }
      REQUIRE(st.terminal.has_value());
      CHECK(st.terminal->final_score == score(st));
    }
  }
}

TEST_CASE("move descriptions use offsets, digests use absolute seats") {
  CHECK(move_description(Move{MoveType::Discard, 0, 0, Color::R, 0}) == "(Discard 0)");
  CHECK(move_description(Move{MoveType::Play, 3, 0, Color::R, 0}) == "(Play 3)");
  CHECK(move_description(Move{MoveType::RevealColor, 0, 1, Color::R, 0}) ==
        "(Reveal player +1 color R)");
  CHECK(move_description(Move{MoveType::RevealRank, 0, 2, Color::R, 5}) ==
        "(Reveal player +2 rank 5)");
  CHECK(move_description_absolute(Move{MoveType::RevealRank, 0, 2, Color::R, 2}, 1, 5) ==
        "(Reveal player P3 rank 2)");
  CHECK(move_description_absolute(Move{MoveType::RevealColor, 0, 1, Color::B, 0}, 4, 5) ==
        "(Reveal player P0 color B)");
  CHECK(move_description_absolute(Move{MoveType::Play, 1, 0, Color::R, 0}, 2, 5) == "(Play 1)");
}

TEST_CASE("json round-trips for moves and configs") {
  Move m{MoveType::RevealRank, 0, 3, Color::R, 4};
  CHECK(move_from_json(move_to_json(m)) == m);
  Move p{MoveType::Play, 2, 0, Color::R, 0};
  CHECK(move_from_json(move_to_json(p)) == p);

  GameConfig c = make_config(4, 77);
  c.score_on_bombout = ScoreOnBombout::Zero;
  GameConfig back = config_from_json(config_to_json(c));
  CHECK(back.n_players == 4);
  CHECK(back.seed == 77);
  CHECK(back.score_on_bombout == ScoreOnBombout::Zero);
  CHECK(back.five_restores_token == c.five_restores_token);
}

TEST_CASE("state hashes are 16 hex chars and track state changes") {
  GameState st = new_game(make_config(3, 21));
  std::string h = state_hash(st);
  CHECK(h.size() == 16);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
  GameState next = apply_move(st, legal_moves(st).front());
  CHECK(state_hash(next) != h);
  CHECK(state_hash(st) == h);
}

TEST_CASE("digest entries capture the move's before/after context") {
  GameState st = new_game(make_config(2, 31));
  st.info_tokens = 5;
  Move m{MoveType::Discard, 0, 0, Color::R, 0};
  GameState next = apply_move(st, m);
  DigestEntry e = make_digest_entry(st, m, next);
  CHECK(e.turn_index == st.turn_index);
  CHECK(e.actor == st.current_player);
  CHECK(e.move == m);
  CHECK(e.info_before == 5);
  CHECK(e.info_after == 6);
  CHECK(e.fireworks_before == st.fireworks);
  CHECK(e.fireworks_after == next.fireworks);
}

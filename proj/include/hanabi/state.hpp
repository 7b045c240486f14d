#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hanabi/knowledge.hpp"
#include "hanabi/types.hpp"

namespace hanabi {

enum class ScoreOnBombout { AtFailure, Zero };

struct GameConfig {
  int n_players = 2; // 2..5
  int max_info_tokens = 8;
  int max_life_tokens = 3;
  uint64_t seed = 0;
  ScoreOnBombout score_on_bombout = ScoreOnBombout::AtFailure;
  bool five_restores_token = true;

  int hand_size() const { return n_players <= 3 ? 5 : 4; }
  void validate() const; // throws std::invalid_argument
};

enum class MoveType { Discard, Play, RevealColor, RevealRank };

struct Move {
  MoveType type = MoveType::Discard;
  int slot = 0;          // Discard/Play
  int target_offset = 0; // Reveal*, 1..n_players-1
  Color color = Color::R;
  int rank = 0;

  bool operator==(const Move&) const = default;
};

// Offset-relative form used in prompts: "(Discard 0)", "(Reveal player +1 color R)".
std::string move_description(const Move& m);
// Absolute-target form used in turn digests: "(Reveal player P3 rank 2)".
std::string move_description_absolute(const Move& m, int actor, int n_players);

enum class TerminalReason { LivesExhausted, Perfect, DeckExhausted };

struct TerminalStatus {
  TerminalReason reason;
  int final_score = 0;

  bool operator==(const TerminalStatus&) const = default;
};

// Everything apply_move changed, for transcripts and turn digests.
struct MoveOutcome {
  Move move;
  std::optional<Card> card;       // played or discarded card
  bool play_success = false;
  bool life_lost = false;
  int info_delta = 0;
  bool drew_new = false;
  std::vector<int> touched_slots; // reveals
  int target = -1;                // absolute seat, reveals
};

struct GameState {
  GameConfig config;
  std::vector<Card> deck; // back = next draw
  std::vector<std::vector<Card>> hands;
  std::vector<std::vector<CardKnowledge>> knowledge;
  std::array<int, kNumColors> fireworks{};
  std::vector<Card> discards; // in discard order
  int info_tokens = 8;
  int life_tokens = 3;
  int turn_index = 0;
  int current_player = 0;
  std::optional<int> final_countdown; // post-exhaustion turns left, incl. current
  std::optional<TerminalStatus> terminal;
};

// Seeded deal: Fisher-Yates over the canonical deck, then round-robin from
// player 0. Identical configs give byte-identical states.
GameState new_game(const GameConfig& config);

// Action-index encoding (vector position is the action id):
//   discards ascending (absent at max info), plays ascending, then per target
//   offset 1..n-1 reveal colors in R,Y,G,W,B order restricted to colors in the
//   target's hand, then reveal ranks 1..5 restricted to ranks present.
// Throws std::logic_error on a terminal state.
std::vector<Move> legal_moves(const GameState& state);

// Applies one legal move and returns the successor; the input is unchanged.
// Throws std::invalid_argument for an illegal move.
GameState apply_move(const GameState& state, const Move& move,
                     MoveOutcome* outcome = nullptr);

int score(const GameState& state); // current fireworks sum
bool is_terminal(const GameState& state);

// Canonical snapshot: sorted keys, colors as letters, cards as "Y5".
nlohmann::json state_to_json(const GameState& state);
std::string state_hash(const GameState& state); // 16 hex chars, FNV-1a 64

nlohmann::json move_to_json(const Move& m);
Move move_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const GameConfig& c);
GameConfig config_from_json(const nlohmann::json& j);

uint64_t fnv1a64(const std::string& bytes);

} // namespace hanabi

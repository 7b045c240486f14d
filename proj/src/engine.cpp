#include "hanabi/state.hpp"

#include <algorithm>
#include <sstream>

#include "hanabi/rng.hpp"

namespace hanabi {

void GameConfig::validate() const {
  if (n_players < 2 || n_players > 5) {
    throw std::invalid_argument("n_players must be in [2,5]");
  }
  if (max_info_tokens < 1 || max_life_tokens < 1) {
    throw std::invalid_argument("token maxima must be positive");
  }
}

std::string move_description(const Move& m) {
  std::ostringstream os;
  switch (m.type) {
    case MoveType::Discard: os << "(Discard " << m.slot << ")"; break;
    case MoveType::Play: os << "(Play " << m.slot << ")"; break;
    case MoveType::RevealColor:
      os << "(Reveal player +" << m.target_offset << " color " << color_letter(m.color) << ")";
      break;
    case MoveType::RevealRank:
      os << "(Reveal player +" << m.target_offset << " rank " << m.rank << ")";
      break;
  }
  return os.str();
}

std::string move_description_absolute(const Move& m, int actor, int n_players) {
  std::ostringstream os;
  switch (m.type) {
    case MoveType::Discard: os << "(Discard " << m.slot << ")"; break;
    case MoveType::Play: os << "(Play " << m.slot << ")"; break;
    case MoveType::RevealColor:
      os << "(Reveal player P" << (actor + m.target_offset) % n_players << " color "
         << color_letter(m.color) << ")";
      break;
    case MoveType::RevealRank:
      os << "(Reveal player P" << (actor + m.target_offset) % n_players << " rank " << m.rank
         << ")";
      break;
  }
  return os.str();
}

GameState new_game(const GameConfig& config) {
  config.validate();
  GameState s;
  s.config = config;
  s.info_tokens = config.max_info_tokens;
  s.life_tokens = config.max_life_tokens;
  s.deck = canonical_deck();

  Rng rng(config.seed);
  for (int i = static_cast<int>(s.deck.size()) - 1; i >= 1; --i) {
    int j = static_cast<int>(rng.bounded(static_cast<uint64_t>(i) + 1));
    std::swap(s.deck[i], s.deck[j]);
  }

  s.hands.resize(config.n_players);
  s.knowledge.resize(config.n_players);
  for (int round = 0; round < config.hand_size(); ++round) {
    for (int p = 0; p < config.n_players; ++p) {
      s.hands[p].push_back(s.deck.back());
      s.deck.pop_back();
      s.knowledge[p].emplace_back();
    }
  }
  return s;
}

std::vector<Move> legal_moves(const GameState& state) {
  if (state.terminal) throw std::logic_error("legal_moves on terminal state");
  std::vector<Move> moves;
  const auto& hand = state.hands[state.current_player];
  if (state.info_tokens < state.config.max_info_tokens) {
    for (int s = 0; s < static_cast<int>(hand.size()); ++s) {
      moves.push_back(Move{MoveType::Discard, s, 0, Color::R, 0});
    }
  }
  for (int s = 0; s < static_cast<int>(hand.size()); ++s) {
    moves.push_back(Move{MoveType::Play, s, 0, Color::R, 0});
  }
  if (state.info_tokens > 0) {
    for (int offset = 1; offset < state.config.n_players; ++offset) {
      int target = (state.current_player + offset) % state.config.n_players;
      const auto& target_hand = state.hands[target];
      for (Color c : kAllColors) {
        if (std::any_of(target_hand.begin(), target_hand.end(),
                        [&](const Card& card) { return card.color == c; })) {
          moves.push_back(Move{MoveType::RevealColor, 0, offset, c, 0});
        }
      }
      for (int r = 1; r <= kNumRanks; ++r) {
        if (std::any_of(target_hand.begin(), target_hand.end(),
                        [&](const Card& card) { return card.rank == r; })) {
          moves.push_back(Move{MoveType::RevealRank, 0, offset, Color::R, r});
        }
      }
    }
  }
  return moves;
}

namespace {

void remove_and_draw(GameState& s, int player, int slot, MoveOutcome& out) {
  s.hands[player].erase(s.hands[player].begin() + slot);
  out.drew_new = !s.deck.empty();
  if (out.drew_new) {
    s.hands[player].push_back(s.deck.back());
    s.deck.pop_back();
  }
  shift_on_removal(s.knowledge[player], slot, out.drew_new);
}

} // namespace

GameState apply_move(const GameState& state, const Move& move, MoveOutcome* outcome) {
  auto legal = legal_moves(state); // throws on terminal
  if (std::find(legal.begin(), legal.end(), move) == legal.end()) {
    throw std::invalid_argument("illegal move: " + move_description(move));
  }

  GameState s = state;
  MoveOutcome out;
  out.move = move;
  int actor = s.current_player;

  switch (move.type) {
    case MoveType::Play: {
      Card card = s.hands[actor][move.slot];
      out.card = card;
      remove_and_draw(s, actor, move.slot, out);
      if (s.fireworks[static_cast<int>(card.color)] == card.rank - 1) {
        out.play_success = true;
        s.fireworks[static_cast<int>(card.color)] = card.rank;
        if (card.rank == 5 && s.config.five_restores_token &&
            s.info_tokens < s.config.max_info_tokens) {
          ++s.info_tokens;
          out.info_delta = 1;
        }
      } else {
        out.life_lost = true;
        --s.life_tokens;
        s.discards.push_back(card);
      }
      break;
    }
    case MoveType::Discard: {
      Card card = s.hands[actor][move.slot];
      out.card = card;
      remove_and_draw(s, actor, move.slot, out);
      s.discards.push_back(card);
      ++s.info_tokens;
      out.info_delta = 1;
      break;
    }
    case MoveType::RevealColor:
    case MoveType::RevealRank: {
      int target = (actor + move.target_offset) % s.config.n_players;
      out.target = target;
      ClueValue value = move.type == MoveType::RevealColor ? ClueValue::of_color(move.color)
                                                           : ClueValue::of_rank(move.rank);
      for (int i = 0; i < static_cast<int>(s.hands[target].size()); ++i) {
        if (value.matches(s.hands[target][i])) out.touched_slots.push_back(i);
      }
      apply_clue(s.knowledge[target], value, out.touched_slots);
      --s.info_tokens;
      out.info_delta = -1;
      break;
    }
  }

  if (s.final_countdown) {
    --*s.final_countdown;
  } else if (s.deck.empty()) {
    // This move drew the last card; everyone (including the actor) gets one
    // more turn.
    s.final_countdown = s.config.n_players;
  }

  int total = score(s);
  if (s.life_tokens == 0) {
    int final_score = s.config.score_on_bombout == ScoreOnBombout::Zero ? 0 : total;
    s.terminal = TerminalStatus{TerminalReason::LivesExhausted, final_score};
  } else if (total == kNumColors * kNumRanks) {
    s.terminal = TerminalStatus{TerminalReason::Perfect, total};
  } else if (s.final_countdown && *s.final_countdown == 0) {
    s.terminal = TerminalStatus{TerminalReason::DeckExhausted, total};
  }

  ++s.turn_index;
  s.current_player = (actor + 1) % s.config.n_players;
  if (outcome) *outcome = out;
  return s;
}

int score(const GameState& state) {
  int total = 0;
  for (int h : state.fireworks) total += h;
  return total;
}

bool is_terminal(const GameState& state) { return state.terminal.has_value(); }

namespace {

nlohmann::json cards_to_json(const std::vector<Card>& cards) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Card& c : cards) arr.push_back(card_code(c));
  return arr;
}

nlohmann::json knowledge_to_json(const CardKnowledge& k) {
  nlohmann::json j;
  j["color_mask"] = k.color_mask;
  j["rank_mask"] = k.rank_mask;
  j["hinted_color"] =
      k.hinted_color ? nlohmann::json(std::string(1, color_letter(*k.hinted_color)))
                     : nlohmann::json(nullptr);
  j["hinted_rank"] = k.hinted_rank ? nlohmann::json(*k.hinted_rank) : nlohmann::json(nullptr);
  return j;
}

} // namespace

nlohmann::json state_to_json(const GameState& s) {
  nlohmann::json j;
  j["config"] = config_to_json(s.config);
  j["deck"] = cards_to_json(s.deck);
  nlohmann::json hands = nlohmann::json::array();
  nlohmann::json knowledge = nlohmann::json::array();
  for (int p = 0; p < s.config.n_players; ++p) {
    hands.push_back(cards_to_json(s.hands[p]));
    nlohmann::json hand_knowledge = nlohmann::json::array();
    for (const CardKnowledge& k : s.knowledge[p]) hand_knowledge.push_back(knowledge_to_json(k));
    knowledge.push_back(hand_knowledge);
  }
  j["hands"] = hands;
  j["knowledge"] = knowledge;
  nlohmann::json fw = nlohmann::json::array();
  for (int h : s.fireworks) fw.push_back(h);
  j["fireworks"] = fw;
  j["discards"] = cards_to_json(s.discards);
  j["info_tokens"] = s.info_tokens;
  j["life_tokens"] = s.life_tokens;
  j["turn_index"] = s.turn_index;
  j["current_player"] = s.current_player;
  j["final_countdown"] =
      s.final_countdown ? nlohmann::json(*s.final_countdown) : nlohmann::json(nullptr);
  if (s.terminal) {
    nlohmann::json t;
    switch (s.terminal->reason) {
      case TerminalReason::LivesExhausted: t["reason"] = "lives_exhausted"; break;
      case TerminalReason::Perfect: t["reason"] = "perfect"; break;
      case TerminalReason::DeckExhausted: t["reason"] = "deck_exhausted"; break;
    }
    t["final_score"] = s.terminal->final_score;
    j["terminal"] = t;
  } else {
    j["terminal"] = nullptr;
  }
  return j;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string state_hash(const GameState& state) {
  uint64_t h = fnv1a64(state_to_json(state).dump());
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

nlohmann::json move_to_json(const Move& m) {
  nlohmann::json j;
  switch (m.type) {
    case MoveType::Discard:
      j["type"] = "discard";
      j["slot"] = m.slot;
      break;
    case MoveType::Play:
      j["type"] = "play";
      j["slot"] = m.slot;
      break;
    case MoveType::RevealColor:
      j["type"] = "reveal_color";
      j["target_offset"] = m.target_offset;
      j["color"] = std::string(1, color_letter(m.color));
      break;
    case MoveType::RevealRank:
      j["type"] = "reveal_rank";
      j["target_offset"] = m.target_offset;
      j["rank"] = m.rank;
      break;
  }
  return j;
}

Move move_from_json(const nlohmann::json& j) {
  Move m;
  std::string type = j.at("type").get<std::string>();
  if (type == "discard") {
    m.type = MoveType::Discard;
    m.slot = j.at("slot").get<int>();
  } else if (type == "play") {
    m.type = MoveType::Play;
    m.slot = j.at("slot").get<int>();
  } else if (type == "reveal_color") {
    m.type = MoveType::RevealColor;
    m.target_offset = j.at("target_offset").get<int>();
    m.color = color_from_letter(j.at("color").get<std::string>().at(0));
  } else if (type == "reveal_rank") {
    m.type = MoveType::RevealRank;
    m.target_offset = j.at("target_offset").get<int>();
    m.rank = j.at("rank").get<int>();
  } else {
    throw std::invalid_argument("unknown move type: " + type);
  }
  return m;
}

nlohmann::json config_to_json(const GameConfig& c) {
  nlohmann::json j;
  j["n_players"] = c.n_players;
  j["max_info_tokens"] = c.max_info_tokens;
  j["max_life_tokens"] = c.max_life_tokens;
  j["seed"] = c.seed;
  j["score_on_bombout"] = c.score_on_bombout == ScoreOnBombout::Zero ? "zero" : "at_failure";
  j["five_restores_token"] = c.five_restores_token;
  return j;
}

GameConfig config_from_json(const nlohmann::json& j) {
  GameConfig c;
  c.n_players = j.at("n_players").get<int>();
  c.max_info_tokens = j.value("max_info_tokens", 8);
  c.max_life_tokens = j.value("max_life_tokens", 3);
  c.seed = j.at("seed").get<uint64_t>();
  c.score_on_bombout = j.value("score_on_bombout", std::string("at_failure")) == "zero"
                           ? ScoreOnBombout::Zero
                           : ScoreOnBombout::AtFailure;
  c.five_restores_token = j.value("five_restores_token", true);
  c.validate();
  return c;
}

} // namespace hanabi

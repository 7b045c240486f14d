#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hanabi/agents.hpp"

namespace hanabi {

enum class OrchestrationMode { Single, BestOfK, Mixture };

const char* orchestration_mode_name(OrchestrationMode m);
OrchestrationMode orchestration_mode_from_name(const std::string& name);

struct TurnRecord {
  int turn_index = 0;
  int player = 0;
  std::string agent_name;
  std::string system_prompt;
  std::string user_prompt;
  std::string response; // raw model output (synthesized for offline agents)
  AgentDecision decision;
  Move move;
  int attempts = 0;
  bool fallback_used = false;
  bool ratings_synthesized = false;
  std::string pre_hash;
  std::string post_hash;
  std::string outcome; // human-readable effect, e.g. "played G3 (success)"

  bool operator==(const TurnRecord&) const = default;
};

struct GameRecord {
  GameConfig config;
  ScaffoldKind scaffold = ScaffoldKind::Sherlock;
  OrchestrationMode mode = OrchestrationMode::Single;
  int best_of_k = 1;
  std::vector<std::string> seat_agent_names;
  std::vector<TurnRecord> turns;
  std::optional<TerminalStatus> terminal;
  bool aborted = false;
  std::string abort_reason;
  int final_score = 0;
  std::string final_hash;

  std::string game_id() const; // "g_{n}p_seed{s}"
  nlohmann::json to_json() const;
  static GameRecord from_json(const nlohmann::json& j);
};

struct GameSetup {
  GameConfig config;
  ScaffoldKind scaffold = ScaffoldKind::Sherlock;
  OrchestrationMode mode = OrchestrationMode::Single;
  int best_of_k = 3;                       // BestOfK mode only
  std::vector<AgentSpec> seats;            // one per player
  RenderOptions render_options;
  ParseOptions parse_options;
  int max_turns = 200;                     // defensive bound, never reached by legal play
};

// Plays one full game. Agent randomness comes from streams derived off
// config.seed, so a setup is fully reproducible.
GameRecord run_game(const GameSetup& setup);

// Seat 0 gets `first`; remaining seats get `rest` when present (cross-play),
// otherwise `first` again (self-play).
struct RosterTemplate {
  AgentSpec first;
  std::optional<AgentSpec> rest;
};

std::vector<uint64_t> standard_seeds(); // {1,2,3,5,7,11,13,17,19,23}
std::vector<uint64_t> heldout_seeds();  // {4,6,8,10,12}

struct SuiteConfig {
  std::vector<int> player_counts = {2, 3, 4, 5};
  std::vector<uint64_t> seeds = standard_seeds();
  GameConfig base_config; // n_players and seed are overwritten per game
  ScaffoldKind scaffold = ScaffoldKind::Sherlock;
  OrchestrationMode mode = OrchestrationMode::Single;
  int best_of_k = 3;
  RosterTemplate roster;
  RenderOptions render_options;
  ParseOptions parse_options;
  int max_turns = 200;
  int threads = 1;
};

struct SuiteResult {
  std::vector<GameRecord> games; // ordered by (player_count, seed)
};

SuiteResult run_suite(const SuiteConfig& cfg);

// Byte-deterministic layout: games/g_{n}p_seed{s}.json plus manifest.json,
// written in sorted order with no timestamps.
void write_run_dir(const SuiteResult& result, const std::filesystem::path& dir);
SuiteResult load_run_dir(const std::filesystem::path& dir);

struct Violation {
  int turn_index = -1; // -1 for game-level problems
  std::string what;
};

// Replays the record from its seed and checks hashes, legality, action
// indices, and the terminal outcome. Violations come back as data.
std::vector<Violation> validate_trajectory(const GameRecord& record);

} // namespace hanabi

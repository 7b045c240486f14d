#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hanabi/state.hpp"

namespace hanabi {

enum class ScaffoldKind { Watson, Sherlock, SherlockNoDeduction, SherlockNoDiscardPile, Mycroft };

const char* scaffold_name(ScaffoldKind k);
ScaffoldKind scaffold_from_name(const std::string& name); // throws std::invalid_argument

// One applied move with its surrounding snapshots; the unit every history or
// "actions since your last turn" digest is built from.
struct DigestEntry {
  int turn_index = 0; // 0-based
  int actor = 0;
  Move move;
  std::array<int, kNumColors> fireworks_before{};
  std::array<int, kNumColors> fireworks_after{};
  int info_before = 0;
  int info_after = 0;

  bool operator==(const DigestEntry&) const = default;
};

DigestEntry make_digest_entry(const GameState& pre, const Move& move, const GameState& post);

// Mycroft working memory: exactly one previous turn, owned per seat.
struct TurnMemory {
  std::string previous_state_text;
  std::string previous_response_text;
};

struct RenderedPrompt {
  std::string system_text; // empty for the user-prompt-only scaffolds
  std::string user_text;
};

struct RenderOptions {
  // The stock Watson split asks for move ratings only in the user prompt;
  // true repeats the ratings line in the system prompt as well.
  bool watson_aligned_output_format = false;
};

struct RenderInput {
  ScaffoldKind kind = ScaffoldKind::Watson;
  const GameState* state = nullptr;
  int viewer = 0;
  const std::vector<DigestEntry>* history = nullptr; // whole game, optional
  const TurnMemory* memory = nullptr;                // Mycroft after first turn
};

// Byte-deterministic render. Throws std::invalid_argument when viewer is not
// the player to move or the state is terminal.
RenderedPrompt render_prompt(const RenderInput& in, const RenderOptions& opts = {});

// --- State text blocks (shared with the judge and the multi-agent roles) ---

// header: "Game State:", "Current Game State:", or "" for none.
// include_possibilities=false drops every "could be" deduction line;
// include_discard_pile=false drops the discard-pile sentence.
std::string sherlock_state_text(const GameState& state, int viewer, const std::string& header,
                                bool include_possibilities, bool include_discard_pile);

// "You are Player PN, Turn T" through the deck/discard sentence (plus the
// final-round notice when active). Used verbatim as Mycroft memory.
std::string mycroft_state_block(const GameState& state, int viewer,
                                const std::vector<DigestEntry>& actions_since,
                                bool include_header);

// "Game State:\nP0 (5p Game). ..." through "PN Knows: [...]".
std::string watson_state_text(const GameState& state, int viewer);

std::string legal_moves_numbered(const GameState& state);   // "0. (Discard 0)"
std::string legal_moves_mapping(const GameState& state);    // {0: '((Discard 0))', ...}
std::string legal_moves_mycroft(const GameState& state);    // "0: ((Discard 0))"
std::string legal_moves_json_block(const GameState& state); // {\n  "0": "(Discard 0)",\n...}

std::string mycroft_digest_line(const DigestEntry& e, int n_players);
std::string watson_history_line(const DigestEntry& e);
std::string judge_digest_line(const DigestEntry& e);
std::string sherlock_history_line(const DigestEntry& e, int viewer, int n_players);

// Entries strictly after the viewer's latest move (everything so far when the
// viewer has not acted yet).
std::vector<DigestEntry> actions_since_last_turn(const std::vector<DigestEntry>& history,
                                                 int viewer);

// --- Agent responses ---

struct AgentDecision {
  int action = 0;
  std::vector<std::pair<int, double>> ratings; // every legal move exactly once
  std::string reason;
  std::optional<DeductionBlock> deduction; // Mycroft

  bool operator==(const AgentDecision&) const = default;
};

enum class ParseFailure {
  MissingAction,
  ActionOutOfRange,
  MalformedJson,
  RatingsIncomplete,
  RatingOutOfRange,
  DeductionMissing,
};

const char* parse_failure_name(ParseFailure f);

struct ParseOptions {
  bool strict_ratings = false; // reject out-of-range ratings instead of clamping
};

struct ParseResult {
  std::optional<AgentDecision> decision;
  std::optional<ParseFailure> failure;
  std::string message;
  bool ratings_clamped = false;

  bool ok() const { return decision.has_value(); }
};

// Watson: "Chosen Move Number" / "Move Ratings" line format. Others: the JSON
// object, tolerating surrounding prose and code fences. Violations come back
// as failure codes, never exceptions.
ParseResult parse_agent_response(ScaffoldKind kind, const std::string& text, int n_legal,
                                 const ParseOptions& opts = {});

// Longest balanced JSON object embedded in free-form text, or nullopt.
std::optional<nlohmann::ordered_json> extract_json_object(const std::string& text);

// Serializes a decision into the documented response shape for the scaffold
// (the parse round-trip inverse).
std::string decision_to_response_text(ScaffoldKind kind, const AgentDecision& d);

// --- Multi-agent roles and Best-of-K assembly ---

enum class RoleKind { Baseline, RankFocused, Analyst, DiscardStrategist, HistoryAnalyst, Aggregator };

const char* role_name(RoleKind r);

// Specialist prompt for one role; Aggregator goes through
// render_aggregator_prompt because it needs the specialist reports.
RenderedPrompt render_role_prompt(RoleKind role, const RenderInput& in,
                                  const RenderOptions& opts = {});

// reports follow fixed role order Baseline, RankFocused, Analyst,
// DiscardStrategist[, HistoryAnalyst]; pass history_included=false on the
// 2-player roster where the History agent is omitted.
RenderedPrompt render_aggregator_prompt(const RenderInput& in,
                                        const std::vector<std::string>& reports,
                                        bool history_included,
                                        const RenderOptions& opts = {});

// "Below are n different responses ..." block appended to the original user
// prompt when Best-of-K samples disagree.
std::string best_of_k_suffix(const std::vector<std::string>& responses);

} // namespace hanabi

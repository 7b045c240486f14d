#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hanabi/knowledge.hpp"
#include "hanabi/scaffold.hpp"
#include "hanabi/state.hpp"

namespace hanabi {

struct StateTrackingScores {
  double overall_rating = 0.0;
  double deduction_accuracy = 0.0;
  double history_integration = 0.0;
  double state_tracking_quality = 0.0;
  std::string detailed_feedback;
  std::vector<std::string> key_issues;
  std::vector<std::string> strengths;

  bool operator==(const StateTrackingScores&) const = default;
};

// Ground-truth deduction roster for the position: one entry per seat in
// absolute order, labeled relative to the viewer ("you", "player+N").
DeductionBlock oracle_deduction(const GameState& state, int viewer);

struct JudgeInput {
  const GameState* state = nullptr; // pre-move state of the turn under review
  int viewer = 0;
  int turn_index = 0; // 0-based
  std::vector<DigestEntry> actions_since;
  std::string model_input;  // the prompt the model saw this turn
  std::string model_output; // the raw response under evaluation
};

// Evaluator prompt: state recap, action digest, the model's own input and
// output, the rules-correct deduction, criteria, and the response schema.
std::string build_judge_prompt(const JudgeInput& in);

// The judge replies with a JSON object holding the four ratings plus
// feedback lists; nullopt when no such object can be recovered.
std::optional<StateTrackingScores> parse_judge_response(const std::string& text);

// Deterministic structural scoring of a predicted deduction against the
// oracle. previous_oracle (the oracle at the viewer's prior turn) marks which
// cards changed since; history integration is judged on those alone and is
// 1.0 when there is no prior turn or nothing changed.
StateTrackingScores score_deduction(const DeductionBlock& predicted,
                                    const DeductionBlock& oracle,
                                    const DeductionBlock* previous_oracle = nullptr);

} // namespace hanabi

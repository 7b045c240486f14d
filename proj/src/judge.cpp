#include "hanabi/judge.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "json.hpp"

#include "hanabi/textfmt.hpp"

namespace hanabi {

using nlohmann::ordered_json;

DeductionBlock oracle_deduction(const GameState& state, int viewer) {
  const int n = state.config.n_players;
  if (viewer < 0 || viewer >= n) throw std::invalid_argument("viewer out of range");
  DeductionBlock block;
  for (int seat = 0; seat < n; ++seat) {
    block.entries.emplace_back(relative_label(viewer, seat, n), state.knowledge[seat]);
  }
  return block;
}

std::string build_judge_prompt(const JudgeInput& in) {
  if (!in.state) throw std::invalid_argument("judge input needs a state");
  std::ostringstream os;
  os << "You are an expert evaluator assessing a Hanabi game AI's state tracking "
        "capabilities.\n\n";
  os << "TASK: Evaluate how well the AI model tracked game state between its previous "
        "turn and current turn.\n\n";
  os << "CURRENT TURN: " << (in.turn_index + 1) << "\n";
  os << "CURRENT PLAYER: Player " << in.viewer << "\n\n";

  os << "=== DETAILED CURRENT GAME STATE ===\n\n";
  os << sherlock_state_text(*in.state, in.viewer, "", true, true) << "\n\n";

  os << "=== ACTIONS SINCE PLAYER'S LAST TURN ===\n";
  for (const auto& e : in.actions_since) os << "- " << judge_digest_line(e) << "\n";
  os << "\n";

  os << "=== MODEL INPUT (CURRENT TURN PROMPT) ===\n\n";
  os << "Note: The model input below already includes the previous turn state and "
        "previous turn response (if available) in the \"PREVIOUS GAME-STATE\" and "
        "\"PREVIOUS TURN RESPONSE\" sections.\n\n";
  os << in.model_input << "\n\n";

  os << "=== MODEL OUTPUT (CURRENT TURN RESPONSE) ===\n\n";
  os << in.model_output << "\n\n";

  os << "=== PROGRAMMATICALLY CORRECT DEDUCTION ===\n\n";
  os << "This is what the deduction should be based on the game rules and history:\n\n";
  os << deduction_to_json(oracle_deduction(*in.state, in.viewer), KnowledgeTextStyle::Verbose)
     << "\n\n";

  os << "=== EVALUATION CRITERIA ===\n\n";
  os << "1. Deduction Accuracy: Compare the model's deduction block to the "
        "programmatically correct deduction. Check if:\n"
        "- The model correctly identified what each player knows about their cards\n"
        "- The model correctly tracked card position changes when cards were "
        "played/discarded\n"
        "- The model correctly identified new cards drawn (should be completely unknown)\n"
        "- The model correctly updated possibilities based on hints given\n\n";
  os << "2. History Integration: Evaluate how well the model used information from:\n"
        "- Previous turn's game state\n"
        "- Previous turn's response/reasoning\n"
        "- Actions that occurred since the player's last turn\n"
        "- Card changes (plays/discards and new cards drawn)\n\n";
  os << "3. State Tracking Quality: Assess:\n"
        "- Consistency of deduction across all players\n"
        "- Accuracy of tracking what each player knows vs. doesn't know\n"
        "- Correct handling of negative information (what cards cannot be)\n\n";

  os << "=== YOUR TASK ===\n\n";
  os << "Provide a JSON response with:\n\n";
  os << "{\n"
        "  \"overall_rating\": <float between 0.0 and 1.0>,\n"
        "  \"deduction_accuracy\": <float between 0.0 and 1.0>,\n"
        "  \"history_integration\": <float between 0.0 and 1.0>,\n"
        "  \"state_tracking_quality\": <float between 0.0 and 1.0>,\n"
        "  \"detailed_feedback\": \"<string explaining the rating, specific issues found, "
        "and what was done well>\",\n"
        "  \"key_issues\": [\"<issue 1>\", \"<issue 2>\", ...],\n"
        "  \"strengths\": [\"<strength 1>\", \"<strength 2>\", ...]\n"
        "}\n\n";
  os << "Focus especially on:\n"
        "- How the model tracked card position changes when cards were played/discarded\n"
        "- Whether the model correctly identified new cards as completely unknown\n"
        "- Whether the model correctly updated deductions based on hints given\n"
        "- Whether the model properly used previous turn information\n\n";
  os << "Be strict but fair. A rating of 1.0 means perfect state tracking. A rating of "
        "0.0 means complete failure to track state correctly.";
  return os.str();
}

namespace {

std::optional<double> rating_field(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) return std::nullopt;
  return std::clamp(j.at(key).get<double>(), 0.0, 1.0);
}

std::vector<std::string> string_list(const ordered_json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key) || !j.at(key).is_array()) return out;
  for (const auto& e : j.at(key)) {
    if (e.is_string()) out.push_back(e.get<std::string>());
  }
  return out;
}

double mask_jaccard(uint8_t a, uint8_t b) {
  const int uni = std::popcount(static_cast<unsigned>(a | b) & 0x1fu);
  if (uni == 0) return 1.0;
  const int inter = std::popcount(static_cast<unsigned>(a & b) & 0x1fu);
  return static_cast<double>(inter) / uni;
}

double card_similarity(const CardKnowledge& predicted, const CardKnowledge& oracle) {
  return 0.5 * (mask_jaccard(predicted.color_mask, oracle.color_mask) +
                mask_jaccard(predicted.rank_mask, oracle.rank_mask));
}

// The model may not drop a possibility the rules still allow.
bool covers(const CardKnowledge& predicted, const CardKnowledge& oracle) {
  return (predicted.color_mask & oracle.color_mask) == oracle.color_mask &&
         (predicted.rank_mask & oracle.rank_mask) == oracle.rank_mask;
}

std::string mask_phrase(const CardKnowledge& k) {
  std::ostringstream os;
  os << "colors {";
  bool first = true;
  for (Color c : k.possible_colors()) {
    if (!first) os << ", ";
    os << color_letter(c);
    first = false;
  }
  os << "} ranks {";
  first = true;
  for (int r : k.possible_ranks()) {
    if (!first) os << ", ";
    os << r;
    first = false;
  }
  os << "}";
  return os.str();
}

} // namespace

std::optional<StateTrackingScores> parse_judge_response(const std::string& text) {
  auto obj = extract_json_object(text);
  if (!obj) return std::nullopt;
  auto overall = rating_field(*obj, "overall_rating");
  auto deduction = rating_field(*obj, "deduction_accuracy");
  auto history = rating_field(*obj, "history_integration");
  auto tracking = rating_field(*obj, "state_tracking_quality");
  if (!overall || !deduction || !history || !tracking) return std::nullopt;
  StateTrackingScores s;
  s.overall_rating = *overall;
  s.deduction_accuracy = *deduction;
  s.history_integration = *history;
  s.state_tracking_quality = *tracking;
  if (obj->contains("detailed_feedback") && obj->at("detailed_feedback").is_string()) {
    s.detailed_feedback = obj->at("detailed_feedback").get<std::string>();
  }
  s.key_issues = string_list(*obj, "key_issues");
  s.strengths = string_list(*obj, "strengths");
  return s;
}

StateTrackingScores score_deduction(const DeductionBlock& predicted,
                                    const DeductionBlock& oracle,
                                    const DeductionBlock* previous_oracle) {
  StateTrackingScores s;
  int cards_total = 0;
  int cards_exact = 0;
  int cards_covered = 0;
  double similarity_sum = 0.0;
  int changed_total = 0;
  double changed_sum = 0.0;
  constexpr int kMaxNotes = 8;

  for (const auto& [label, oracle_cards] : oracle.entries) {
    const std::vector<CardKnowledge>* predicted_cards = predicted.find(label);
    const std::vector<CardKnowledge>* previous_cards =
        previous_oracle ? previous_oracle->find(label) : nullptr;
    for (size_t i = 0; i < oracle_cards.size(); ++i) {
      cards_total += 1;
      const CardKnowledge& truth = oracle_cards[i];
      const bool changed =
          previous_oracle &&
          (!previous_cards || i >= previous_cards->size() || (*previous_cards)[i] != truth);
      const CardKnowledge* guess =
          predicted_cards && i < predicted_cards->size() ? &(*predicted_cards)[i] : nullptr;

      double sim = 0.0;
      if (guess) {
        sim = card_similarity(*guess, truth);
        if (covers(*guess, truth)) cards_covered += 1;
        if (guess->color_mask == truth.color_mask && guess->rank_mask == truth.rank_mask) {
          cards_exact += 1;
        } else if (static_cast<int>(s.key_issues.size()) < kMaxNotes) {
          std::ostringstream os;
          os << label << " card" << i << ": predicted " << mask_phrase(*guess)
             << " but the rules give " << mask_phrase(truth);
          s.key_issues.push_back(os.str());
        }
      } else if (static_cast<int>(s.key_issues.size()) < kMaxNotes) {
        std::ostringstream os;
        os << label << " card" << i << ": missing from the deduction";
        s.key_issues.push_back(os.str());
      }
      similarity_sum += sim;
      if (changed) {
        changed_total += 1;
        changed_sum += sim;
      }
    }
  }

  s.deduction_accuracy = cards_total > 0 ? similarity_sum / cards_total : 1.0;
  s.state_tracking_quality =
      cards_total > 0 ? static_cast<double>(cards_covered) / cards_total : 1.0;
  s.history_integration = changed_total > 0 ? changed_sum / changed_total : 1.0;
  s.overall_rating =
      (s.deduction_accuracy + s.history_integration + s.state_tracking_quality) / 3.0;

  std::ostringstream fb;
  fb << "Structural comparison against the rules-correct deduction: " << cards_exact
     << " of " << cards_total << " cards matched exactly, " << cards_covered
     << " kept every possibility the rules still allow";
  if (previous_oracle) {
    fb << ", and " << changed_total << " cards changed since the previous turn";
  }
  fb << ".";
  s.detailed_feedback = fb.str();
  if (cards_exact == cards_total && cards_total > 0) {
    s.strengths.push_back("Every card's possibility sets match the rules-correct deduction");
  } else if (cards_exact > 0) {
    std::ostringstream os;
    os << cards_exact << " of " << cards_total << " cards tracked exactly";
    s.strengths.push_back(os.str());
  }
  return s;
}

} // namespace hanabi

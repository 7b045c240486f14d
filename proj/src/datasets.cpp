#include "hanabi/datasets.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hanabi/scaffold.hpp"

namespace hanabi {

using nlohmann::ordered_json;

const char* dataset_kind_name(DatasetKind k) {
  return k == DatasetKind::Logs ? "HanabiLogs" : "HanabiRewards";
}

namespace {

const char* schema_name(DatasetKind k) {
  return k == DatasetKind::Logs ? "hanabi.logs.v1" : "hanabi.rewards.v1";
}

ordered_json logs_fields(const LogsRecord& r) {
  ordered_json j;
  j["game_id"] = r.game_id;
  j["turn_index"] = r.turn_index;
  j["scaffold"] = r.scaffold;
  j["player_count"] = r.player_count;
  j["seed"] = r.seed;
  j["model"] = r.model;
  j["system_prompt"] = r.system_prompt;
  j["user_prompt"] = r.user_prompt;
  j["response"] = r.response;
  if (r.reasoning_trace) j["reasoning_trace"] = *r.reasoning_trace;
  return j;
}

ordered_json rewards_fields(const RewardsRecord& r) {
  ordered_json j = logs_fields(r.base);
  j["legal_moves"] = r.legal_moves;
  ordered_json ratings = ordered_json::array();
  for (const auto& [action, rating] : r.ratings) {
    ratings.push_back(ordered_json{{"action", action}, {"rating", rating}});
  }
  j["ratings"] = std::move(ratings);
  j["chosen_action"] = r.chosen_action;
  return j;
}

std::string expect_string(const ordered_json& j, const char* key, int line_no) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    std::ostringstream os;
    os << "line " << line_no << ": missing or non-string field '" << key << "'";
    throw std::runtime_error(os.str());
  }
  return j.at(key).get<std::string>();
}

int expect_int(const ordered_json& j, const char* key, int line_no) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    std::ostringstream os;
    os << "line " << line_no << ": missing or non-integer field '" << key << "'";
    throw std::runtime_error(os.str());
  }
  return j.at(key).get<int>();
}

LogsRecord logs_from_json(const ordered_json& j, int line_no) {
  LogsRecord r;
  r.game_id = expect_string(j, "game_id", line_no);
  r.turn_index = expect_int(j, "turn_index", line_no);
  r.scaffold = expect_string(j, "scaffold", line_no);
  r.player_count = expect_int(j, "player_count", line_no);
  if (!j.contains("seed") || !j.at("seed").is_number_integer()) {
    std::ostringstream os;
    os << "line " << line_no << ": missing or non-integer field 'seed'";
    throw std::runtime_error(os.str());
  }
  r.seed = j.at("seed").get<uint64_t>();
  r.model = expect_string(j, "model", line_no);
  r.system_prompt = expect_string(j, "system_prompt", line_no);
  r.user_prompt = expect_string(j, "user_prompt", line_no);
  r.response = expect_string(j, "response", line_no);
  if (j.contains("reasoning_trace")) {
    r.reasoning_trace = expect_string(j, "reasoning_trace", line_no);
  }
  return r;
}

RewardsRecord rewards_from_json(const ordered_json& j, int line_no) {
  RewardsRecord r;
  r.base = logs_from_json(j, line_no);
  if (!j.contains("legal_moves") || !j.at("legal_moves").is_array()) {
    std::ostringstream os;
    os << "line " << line_no << ": missing or non-array field 'legal_moves'";
    throw std::runtime_error(os.str());
  }
  for (const auto& m : j.at("legal_moves")) {
    if (!m.is_string()) {
      std::ostringstream os;
      os << "line " << line_no << ": non-string legal move description";
      throw std::runtime_error(os.str());
    }
    r.legal_moves.push_back(m.get<std::string>());
  }
  if (!j.contains("ratings") || !j.at("ratings").is_array()) {
    std::ostringstream os;
    os << "line " << line_no << ": missing or non-array field 'ratings'";
    throw std::runtime_error(os.str());
  }
  for (const auto& e : j.at("ratings")) {
    if (!e.is_object() || !e.contains("action") || !e.contains("rating") ||
        !e.at("action").is_number_integer() || !e.at("rating").is_number()) {
      std::ostringstream os;
      os << "line " << line_no << ": malformed ratings entry";
      throw std::runtime_error(os.str());
    }
    r.ratings.emplace_back(e.at("action").get<int>(), e.at("rating").get<double>());
  }
  r.chosen_action = expect_int(j, "chosen_action", line_no);
  return r;
}

// One message per violated constraint for a parsed rewards line.
void check_rewards_invariants(const RewardsRecord& r, int line_no,
                              std::vector<std::string>* errors) {
  const int n = static_cast<int>(r.legal_moves.size());
  auto note = [&](const std::string& what) {
    std::ostringstream os;
    os << "line " << line_no << ": " << what;
    errors->push_back(os.str());
  };
  if (static_cast<int>(r.ratings.size()) != n) {
    note("ratings do not cover the legal moves exactly once");
    return;
  }
  std::vector<int> seen(n, 0);
  for (const auto& [action, rating] : r.ratings) {
    if (action < 0 || action >= n) {
      note("rating references an out-of-range action");
      return;
    }
    seen[action] += 1;
    if (rating < -1.0 || rating > 1.0) note("rating outside [-1, 1]");
  }
  for (int i = 0; i < n; ++i) {
    if (seen[i] != 1) {
      note("ratings do not cover the legal moves exactly once");
      return;
    }
  }
  if (r.chosen_action < 0 || r.chosen_action >= n) {
    note("chosen action is not among the rated candidates");
  }
}

} // namespace

void write_logs_lines(const std::vector<LogsRecord>& records, std::ostream& out) {
  for (const auto& r : records) out << logs_fields(r).dump() << "\n";
}

void write_rewards_lines(const std::vector<RewardsRecord>& records, std::ostream& out) {
  for (const auto& r : records) out << rewards_fields(r).dump() << "\n";
}

ExportStats export_dataset(const std::vector<GameRecord>& games, DatasetKind which,
                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  ExportStats stats;
  std::vector<std::pair<std::string, std::string>> rejected; // id, reason
  std::map<int, int> players_hist;
  std::map<int, int> score_hist;

  std::ofstream lines(out_dir / "records.jsonl", std::ios::binary);
  if (!lines) throw std::runtime_error("cannot open records.jsonl for writing");

  for (const auto& game : games) {
    stats.games_seen += 1;
    if (game.aborted) {
      stats.games_rejected += 1;
      rejected.emplace_back(game.game_id(), "aborted: " + game.abort_reason);
      continue;
    }
    auto violations = validate_trajectory(game);
    if (!violations.empty()) {
      stats.games_rejected += 1;
      std::ostringstream reason;
      reason << "replay violation at turn " << violations.front().turn_index << ": "
             << violations.front().what;
      rejected.emplace_back(game.game_id(), reason.str());
      continue;
    }

    stats.games_exported += 1;
    players_hist[game.config.n_players] += 1;
    score_hist[game.final_score] += 1;

    GameState state = new_game(game.config);
    for (const auto& turn : game.turns) {
      auto legal = legal_moves(state);
      LogsRecord base;
      base.game_id = game.game_id();
      base.turn_index = turn.turn_index;
      base.scaffold = scaffold_name(game.scaffold);
      base.player_count = game.config.n_players;
      base.seed = game.config.seed;
      base.model = turn.agent_name;
      base.system_prompt = turn.system_prompt;
      base.user_prompt = turn.user_prompt;
      base.response = turn.response;

      if (which == DatasetKind::Logs) {
        lines << logs_fields(base).dump() << "\n";
        stats.turns_exported += 1;
      } else if (turn.ratings_synthesized) {
        stats.turns_skipped += 1;
      } else {
        RewardsRecord r;
        r.base = std::move(base);
        for (const auto& m : legal) r.legal_moves.push_back(move_description(m));
        r.ratings = turn.decision.ratings;
        r.chosen_action = turn.decision.action;
        lines << rewards_fields(r).dump() << "\n";
        stats.turns_exported += 1;
      }
      state = apply_move(state, turn.move);
    }
  }
  lines.close();

  ordered_json manifest;
  manifest["schema"] = schema_name(which);
  manifest["dataset"] = dataset_kind_name(which);
  manifest["line_count"] = stats.turns_exported;
  manifest["game_count"] = stats.games_exported;
  ordered_json rej = ordered_json::array();
  for (const auto& [id, reason] : rejected) {
    rej.push_back(ordered_json{{"game", id}, {"reason", reason}});
  }
  manifest["rejected_games"] = std::move(rej);
  manifest["skipped_turns"] = stats.turns_skipped;
  ordered_json hist;
  for (const auto& [players, count] : players_hist) hist[std::to_string(players)] = count;
  manifest["player_count_histogram"] = std::move(hist);
  ordered_json scores;
  for (const auto& [s, count] : score_hist) scores[std::to_string(s)] = count;
  manifest["score_distribution"] = std::move(scores);

  std::ofstream mf(out_dir / "manifest.json", std::ios::binary);
  if (!mf) throw std::runtime_error("cannot open manifest.json for writing");
  mf << manifest.dump(2) << "\n";
  return stats;
}

std::vector<LogsRecord> import_logs(const std::filesystem::path& jsonl_file) {
  std::ifstream in(jsonl_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + jsonl_file.string());
  std::vector<LogsRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no += 1;
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      std::ostringstream os;
      os << "line " << line_no << ": not a JSON object";
      throw std::runtime_error(os.str());
    }
    out.push_back(logs_from_json(j, line_no));
  }
  return out;
}

std::vector<RewardsRecord> import_rewards(const std::filesystem::path& jsonl_file) {
  std::ifstream in(jsonl_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + jsonl_file.string());
  std::vector<RewardsRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no += 1;
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      std::ostringstream os;
      os << "line " << line_no << ": not a JSON object";
      throw std::runtime_error(os.str());
    }
    out.push_back(rewards_from_json(j, line_no));
  }
  return out;
}

std::vector<std::string> validate_dataset_file(DatasetKind which,
                                               const std::filesystem::path& jsonl_file) {
  std::vector<std::string> errors;
  std::ifstream in(jsonl_file, std::ios::binary);
  if (!in) {
    errors.push_back("cannot open " + jsonl_file.string());
    return errors;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no += 1;
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      std::ostringstream os;
      os << "line " << line_no << ": not a JSON object";
      errors.push_back(os.str());
      continue;
    }
    try {
      if (which == DatasetKind::Logs) {
        (void)logs_from_json(j, line_no);
      } else {
        RewardsRecord r = rewards_from_json(j, line_no);
        check_rewards_invariants(r, line_no, &errors);
      }
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }
  return errors;
}

} // namespace hanabi

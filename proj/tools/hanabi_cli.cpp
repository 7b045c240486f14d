#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hanabi/datasets.hpp"
#include "hanabi/judge.hpp"
#include "hanabi/orchestrator.hpp"
#include "hanabi/stats.hpp"

namespace {

using namespace hanabi;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitIntegrity = 3;

struct AgentFlags {
  std::string kind = "scripted_greedy";
  std::string model;
  std::string base_url;
  double temperature = 1.0;
  std::string reasoning_effort;
  int max_retries = 3;
  std::string fallback = "safest_discard";
  std::string api_key_env = "HANABI_API_KEY";
};

void add_agent_options(CLI::App* cmd, AgentFlags* f) {
  cmd->add_option("--agent", f->kind, "Agent kind")
      ->check(CLI::IsMember({"llm", "random_legal", "scripted_greedy"}));
  cmd->add_option("--model", f->model, "Model name for llm agents");
  cmd->add_option("--base-url", f->base_url, "Chat completions endpoint base URL");
  cmd->add_option("--temperature", f->temperature, "Sampling temperature");
  cmd->add_option("--reasoning-effort", f->reasoning_effort, "Provider reasoning effort");
  cmd->add_option("--max-retries", f->max_retries, "Parse/transport retries per turn");
  cmd->add_option("--fallback", f->fallback, "Policy after exhausted retries")
      ->check(CLI::IsMember({"safest_discard", "abort"}));
  cmd->add_option("--api-key-env", f->api_key_env, "Environment variable holding the API key");
}

AgentSpec make_agent(const AgentFlags& f) {
  AgentSpec spec;
  spec.kind = agent_kind_from_name(f.kind);
  spec.model_name = f.model;
  spec.temperature = f.temperature;
  spec.reasoning_effort = f.reasoning_effort;
  spec.max_retries = f.max_retries;
  spec.fallback =
      f.fallback == "abort" ? FallbackPolicy::AbortGame : FallbackPolicy::SafestDiscard;
  if (spec.kind == AgentKind::Llm) {
    if (f.model.empty() || f.base_url.empty()) {
      throw std::invalid_argument("llm agents need --model and --base-url");
    }
    spec.name = f.model;
    spec.transport = std::make_shared<HttpChatTransport>(f.base_url, f.api_key_env);
  } else {
    spec.name = spec.kind == AgentKind::RandomLegal ? "random" : "scripted";
  }
  return spec;
}

const char* terminal_reason_text(TerminalReason r) {
  switch (r) {
    case TerminalReason::LivesExhausted: return "lives exhausted";
    case TerminalReason::Perfect: return "perfect score";
    case TerminalReason::DeckExhausted: return "deck exhausted";
  }
  return "unknown";
}

std::vector<uint64_t> seeds_from_preset(const std::string& preset) {
  if (preset == "standard") return standard_seeds();
  if (preset == "heldout") return heldout_seeds();
  throw std::invalid_argument("unknown seed preset: " + preset);
}

void apply_config_file(const fs::path& file, SuiteConfig* cfg, AgentFlags* af) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file " + file.string());
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.contains("player_counts")) cfg->player_counts = j.at("player_counts").get<std::vector<int>>();
  if (j.contains("seeds")) {
    if (j.at("seeds").is_string()) {
      cfg->seeds = seeds_from_preset(j.at("seeds").get<std::string>());
    } else {
      cfg->seeds = j.at("seeds").get<std::vector<uint64_t>>();
    }
  }
  if (j.contains("scaffold")) cfg->scaffold = scaffold_from_name(j.at("scaffold").get<std::string>());
  if (j.contains("mode")) cfg->mode = orchestration_mode_from_name(j.at("mode").get<std::string>());
  if (j.contains("best_of_k")) cfg->best_of_k = j.at("best_of_k").get<int>();
  if (j.contains("max_turns")) cfg->max_turns = j.at("max_turns").get<int>();
  if (j.contains("threads")) cfg->threads = j.at("threads").get<int>();
  if (j.contains("score_on_bombout")) {
    cfg->base_config.score_on_bombout = j.at("score_on_bombout").get<std::string>() == "zero"
                                            ? ScoreOnBombout::Zero
                                            : ScoreOnBombout::AtFailure;
  }
  if (j.contains("strict_ratings")) cfg->parse_options.strict_ratings = j.at("strict_ratings").get<bool>();
  if (j.contains("agent")) {
    const auto& a = j.at("agent");
    if (a.contains("kind")) af->kind = a.at("kind").get<std::string>();
    if (a.contains("model")) af->model = a.at("model").get<std::string>();
    if (a.contains("base_url")) af->base_url = a.at("base_url").get<std::string>();
    if (a.contains("temperature")) af->temperature = a.at("temperature").get<double>();
    if (a.contains("reasoning_effort")) af->reasoning_effort = a.at("reasoning_effort").get<std::string>();
    if (a.contains("max_retries")) af->max_retries = a.at("max_retries").get<int>();
    if (a.contains("fallback")) af->fallback = a.at("fallback").get<std::string>();
    if (a.contains("api_key_env")) af->api_key_env = a.at("api_key_env").get<std::string>();
  }
}

std::vector<ReportRow> report_rows(const std::vector<GameRecord>& games, int* aborted_out) {
  std::map<std::pair<int, std::string>, std::vector<double>> cells;
  int aborted = 0;
  for (const auto& g : games) {
    if (g.aborted) {
      aborted += 1;
      continue;
    }
    cells[{g.config.n_players, scaffold_name(g.scaffold)}].push_back(
        static_cast<double>(g.final_score));
  }
  std::vector<ReportRow> rows;
  for (const auto& [key, scores] : cells) {
    ReportRow row;
    row.player_count = key.first;
    row.scaffold = key.second;
    row.summary = summarize_scores(scores);
    rows.push_back(std::move(row));
  }
  if (aborted_out) *aborted_out = aborted;
  return rows;
}

int print_report(const std::vector<GameRecord>& games) {
  int aborted = 0;
  auto rows = report_rows(games, &aborted);
  if (rows.empty()) {
    std::cout << "no completed games to report\n";
    return kExitPartial;
  }
  std::cout << format_report(rows);
  if (aborted > 0) std::cout << "note: " << aborted << " aborted game(s) excluded\n";
  return kExitOk;
}

int cmd_play(int players, uint64_t seed, const std::string& scaffold, const std::string& mode,
             int k, int max_turns, bool strict_ratings, const AgentFlags& af,
             const std::string& out_file) {
  GameSetup setup;
  setup.config.n_players = players;
  setup.config.seed = seed;
  setup.scaffold = scaffold_from_name(scaffold);
  setup.mode = orchestration_mode_from_name(mode);
  setup.best_of_k = k;
  setup.max_turns = max_turns;
  setup.parse_options.strict_ratings = strict_ratings;
  setup.seats.assign(static_cast<size_t>(players), make_agent(af));

  GameRecord rec = run_game(setup);
  for (const auto& t : rec.turns) {
    std::cout << "T" << (t.turn_index + 1) << " P" << t.player << " "
              << move_description_absolute(t.move, t.player, players) << " -> " << t.outcome
              << "\n";
  }
  if (rec.aborted) {
    std::cout << "aborted: " << rec.abort_reason << "\n";
  } else if (rec.terminal) {
    std::cout << "game over (" << terminal_reason_text(rec.terminal->reason) << "), score "
              << rec.final_score << "\n";
  }
  if (!out_file.empty()) {
    std::ofstream out(out_file, std::ios::binary);
    out << rec.to_json().dump(2) << "\n";
    std::cout << "wrote " << out_file << "\n";
  }
  return rec.aborted ? kExitPartial : kExitOk;
}

int cmd_suite(CLI::App* cmd, const std::string& config_file, const std::string& out_dir,
              std::vector<int>& players, std::vector<uint64_t>& seeds,
              const std::string& seed_preset, const std::string& scaffold,
              const std::string& mode, int k, int threads, int max_turns, bool strict_ratings,
              const AgentFlags& af_flags) {
  SuiteConfig cfg;
  AgentFlags af = af_flags;
  if (!config_file.empty()) apply_config_file(config_file, &cfg, &af);
  if (cmd->count("--players")) cfg.player_counts = players;
  if (cmd->count("--seeds")) cfg.seeds = seeds;
  if (cmd->count("--seed-preset")) cfg.seeds = seeds_from_preset(seed_preset);
  if (cmd->count("--scaffold")) cfg.scaffold = scaffold_from_name(scaffold);
  if (cmd->count("--mode")) cfg.mode = orchestration_mode_from_name(mode);
  if (cmd->count("--k")) cfg.best_of_k = k;
  if (cmd->count("--threads")) cfg.threads = threads;
  if (cmd->count("--max-turns")) cfg.max_turns = max_turns;
  if (cmd->count("--strict-ratings")) cfg.parse_options.strict_ratings = strict_ratings;
  if (cmd->count("--agent")) af.kind = af_flags.kind;
  if (cmd->count("--model")) af.model = af_flags.model;
  if (cmd->count("--base-url")) af.base_url = af_flags.base_url;
  if (cmd->count("--temperature")) af.temperature = af_flags.temperature;
  if (cmd->count("--reasoning-effort")) af.reasoning_effort = af_flags.reasoning_effort;
  if (cmd->count("--max-retries")) af.max_retries = af_flags.max_retries;
  if (cmd->count("--fallback")) af.fallback = af_flags.fallback;
  if (cmd->count("--api-key-env")) af.api_key_env = af_flags.api_key_env;
  cfg.roster.first = make_agent(af);

  SuiteResult result = run_suite(cfg);
  write_run_dir(result, out_dir);
  std::cout << "wrote " << result.games.size() << " games to " << out_dir << "\n";
  int aborted = 0;
  auto rows = report_rows(result.games, &aborted);
  if (!rows.empty()) std::cout << format_report(rows);
  if (aborted > 0) std::cout << "note: " << aborted << " aborted game(s) excluded\n";
  return aborted > 0 ? kExitPartial : kExitOk;
}

int cmd_export(const std::string& run_dir, const std::string& out_dir, bool logs, bool rewards) {
  DatasetKind kind = logs ? DatasetKind::Logs : DatasetKind::Rewards;
  SuiteResult sr = load_run_dir(run_dir);
  int aborted = 0;
  for (const auto& g : sr.games) {
    if (g.aborted) aborted += 1;
  }
  ExportStats stats = export_dataset(sr.games, kind, out_dir);
  std::cout << dataset_kind_name(kind) << ": " << stats.turns_exported << " lines from "
            << stats.games_exported << " of " << stats.games_seen << " games ("
            << stats.games_rejected << " rejected";
  if (rewards) std::cout << ", " << stats.turns_skipped << " turns skipped";
  std::cout << ")\n";
  auto errors = validate_dataset_file(kind, fs::path(out_dir) / "records.jsonl");
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "invalid: " << e << "\n";
    return kExitIntegrity;
  }
  std::cout << "all lines re-validate\n";
  const int replay_rejected = stats.games_rejected - aborted;
  if (replay_rejected > 0) return kExitIntegrity;
  return aborted > 0 ? kExitPartial : kExitOk;
}

int cmd_judge(const std::string& run_dir, bool structural, const std::string& prompt_dir,
              const std::string& out_file) {
  SuiteResult sr = load_run_dir(run_dir);
  if (!prompt_dir.empty()) fs::create_directories(prompt_dir);
  std::ofstream scores_out;
  if (!out_file.empty()) {
    scores_out.open(out_file, std::ios::binary);
    if (!scores_out) throw std::invalid_argument("cannot open " + out_file);
  }

  int bad_games = 0;
  int judged_turns = 0;
  double overall_sum = 0.0;
  for (const auto& game : sr.games) {
    if (game.aborted) continue;
    if (!validate_trajectory(game).empty()) {
      std::cerr << game.game_id() << ": replay violation, skipped\n";
      bad_games += 1;
      continue;
    }
    GameState state = new_game(game.config);
    std::vector<DigestEntry> history;
    std::map<int, DeductionBlock> previous_oracle;
    int game_turns = 0;
    double game_sum = 0.0;
    for (const auto& turn : game.turns) {
      if (turn.decision.deduction) {
        const int viewer = turn.player;
        DeductionBlock oracle = oracle_deduction(state, viewer);
        if (structural) {
          auto it = previous_oracle.find(viewer);
          StateTrackingScores s =
              score_deduction(*turn.decision.deduction, oracle,
                              it == previous_oracle.end() ? nullptr : &it->second);
          judged_turns += 1;
          game_turns += 1;
          overall_sum += s.overall_rating;
          game_sum += s.overall_rating;
          if (scores_out) {
            nlohmann::ordered_json line;
            line["game"] = game.game_id();
            line["turn_index"] = turn.turn_index;
            line["overall_rating"] = s.overall_rating;
            line["deduction_accuracy"] = s.deduction_accuracy;
            line["history_integration"] = s.history_integration;
            line["state_tracking_quality"] = s.state_tracking_quality;
            scores_out << line.dump() << "\n";
          }
        }
        if (!prompt_dir.empty()) {
          JudgeInput in;
          in.state = &state;
          in.viewer = viewer;
          in.turn_index = turn.turn_index;
          in.actions_since = actions_since_last_turn(history, viewer);
          in.model_input = turn.user_prompt;
          in.model_output = turn.response;
          std::ostringstream name;
          name << game.game_id() << "_turn" << turn.turn_index << ".txt";
          std::ofstream pf(fs::path(prompt_dir) / name.str(), std::ios::binary);
          pf << build_judge_prompt(in) << "\n";
        }
        previous_oracle[viewer] = std::move(oracle);
      }
      GameState next = apply_move(state, turn.move);
      history.push_back(make_digest_entry(state, turn.move, next));
      state = std::move(next);
    }
    if (structural && game_turns > 0) {
      std::cout << game.game_id() << ": " << game_turns << " judged turns, mean overall "
                << (game_sum / game_turns) << "\n";
    }
  }
  if (structural) {
    if (judged_turns == 0) {
      std::cout << "no deduction blocks to judge (structural judging needs mycroft games)\n";
      return kExitPartial;
    }
    std::cout << "total: " << judged_turns << " judged turns, mean overall "
              << (overall_sum / judged_turns) << "\n";
  } else if (!prompt_dir.empty()) {
    std::cout << "wrote judge prompts to " << prompt_dir << "\n";
  }
  return bad_games > 0 ? kExitIntegrity : kExitOk;
}

int cmd_replay(const std::string& game_file) {
  std::ifstream in(game_file, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + game_file);
  GameRecord rec = GameRecord::from_json(nlohmann::json::parse(in));
  auto violations = validate_trajectory(rec);
  if (violations.empty()) {
    std::cout << "replay clean: " << rec.game_id() << ", score " << rec.final_score << "\n";
    return kExitOk;
  }
  for (const auto& v : violations) {
    std::cout << "violation at turn " << v.turn_index << ": " << v.what << "\n";
  }
  return kExitIntegrity;
}

int cmd_stats(const std::string& run_dir) {
  SuiteResult sr = load_run_dir(run_dir);
  return print_report(sr.games);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hanabi simulator, scaffold harness, and dataset exporter"};
  app.require_subcommand(1);

  // play
  auto* play = app.add_subcommand("play", "Play one game and print the transcript");
  int play_players = 2;
  uint64_t play_seed = 1;
  std::string play_scaffold = "sherlock";
  std::string play_mode = "single";
  int play_k = 3;
  int play_max_turns = 200;
  bool play_strict = false;
  std::string play_out;
  AgentFlags play_agent;
  play->add_option("--players", play_players, "Player count")->check(CLI::Range(2, 5));
  play->add_option("--seed", play_seed, "Deal seed");
  play->add_option("--scaffold", play_scaffold, "Prompt scaffold");
  play->add_option("--mode", play_mode, "single, best_of_k, or mixture");
  play->add_option("--k", play_k, "Samples for best_of_k");
  play->add_option("--max-turns", play_max_turns, "Defensive turn budget");
  play->add_flag("--strict-ratings", play_strict, "Reject out-of-range ratings");
  play->add_option("--out", play_out, "Write the game record JSON here");
  add_agent_options(play, &play_agent);

  // suite
  auto* suite = app.add_subcommand("suite", "Run a seed/player-count grid into a run directory");
  std::string suite_config;
  std::string suite_out;
  std::vector<int> suite_players;
  std::vector<uint64_t> suite_seeds;
  std::string suite_preset;
  std::string suite_scaffold = "sherlock";
  std::string suite_mode = "single";
  int suite_k = 3;
  int suite_threads = 1;
  int suite_max_turns = 200;
  bool suite_strict = false;
  AgentFlags suite_agent;
  suite->add_option("--config", suite_config, "JSON config file (flags override it)");
  suite->add_option("--out", suite_out, "Run directory to write")->required();
  suite->add_option("--players", suite_players, "Player counts");
  suite->add_option("--seeds", suite_seeds, "Explicit seeds");
  suite->add_option("--seed-preset", suite_preset, "standard or heldout")
      ->check(CLI::IsMember({"standard", "heldout"}));
  suite->add_option("--scaffold", suite_scaffold, "Prompt scaffold");
  suite->add_option("--mode", suite_mode, "single, best_of_k, or mixture");
  suite->add_option("--k", suite_k, "Samples for best_of_k");
  suite->add_option("--threads", suite_threads, "Concurrent games");
  suite->add_option("--max-turns", suite_max_turns, "Defensive turn budget");
  suite->add_flag("--strict-ratings", suite_strict, "Reject out-of-range ratings");
  add_agent_options(suite, &suite_agent);

  // export
  auto* exp = app.add_subcommand("export", "Export HanabiLogs or HanabiRewards from a run");
  std::string exp_run;
  std::string exp_out;
  bool exp_logs = false;
  bool exp_rewards = false;
  exp->add_option("--run", exp_run, "Run directory")->required();
  exp->add_option("--out", exp_out, "Output dataset directory")->required();
  auto* logs_flag = exp->add_flag("--logs", exp_logs, "Export prompt/response records");
  exp->add_flag("--rewards", exp_rewards, "Export rated-candidate records")
      ->excludes(logs_flag);

  // judge
  auto* judge = app.add_subcommand("judge", "Score state tracking on a run's deduction blocks");
  std::string judge_run;
  bool judge_structural = false;
  std::string judge_prompt_dir;
  std::string judge_out;
  judge->add_option("--run", judge_run, "Run directory")->required();
  judge->add_flag("--structural", judge_structural, "Deterministic structural scoring");
  judge->add_option("--prompt-out", judge_prompt_dir, "Write evaluator prompts to this directory");
  judge->add_option("--out", judge_out, "Write per-turn scores JSONL here");

  // replay
  auto* replay = app.add_subcommand("replay", "Validate one game record file");
  std::string replay_file;
  replay->add_option("file", replay_file, "game JSON file")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Aggregate a run directory into a score table");
  std::string stats_run;
  stats->add_option("run", stats_run, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (play->parsed()) {
      return cmd_play(play_players, play_seed, play_scaffold, play_mode, play_k,
                      play_max_turns, play_strict, play_agent, play_out);
    }
    if (suite->parsed()) {
      return cmd_suite(suite, suite_config, suite_out, suite_players, suite_seeds, suite_preset,
                       suite_scaffold, suite_mode, suite_k, suite_threads, suite_max_turns,
                       suite_strict, suite_agent);
    }
    if (exp->parsed()) {
      if (exp_logs == exp_rewards) {
        std::cerr << "export needs exactly one of --logs or --rewards\n";
        return kExitUsage;
      }
      return cmd_export(exp_run, exp_out, exp_logs, exp_rewards);
    }
    if (judge->parsed()) {
      if (!judge_structural && judge_prompt_dir.empty()) {
        std::cerr << "judge needs --structural and/or --prompt-out\n";
        return kExitUsage;
      }
      return cmd_judge(judge_run, judge_structural, judge_prompt_dir, judge_out);
    }
    if (replay->parsed()) return cmd_replay(replay_file);
    if (stats->parsed()) return cmd_stats(stats_run);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitUsage;
}

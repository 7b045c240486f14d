#include "hanabi/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hanabi {

namespace {

using nlohmann::json;

const char* terminal_reason_name(TerminalReason r) {
  switch (r) {
    case TerminalReason::LivesExhausted: return "lives_exhausted";
    case TerminalReason::Perfect: return "perfect";
    case TerminalReason::DeckExhausted: return "deck_exhausted";
  }
  return "unknown";
}

TerminalReason terminal_reason_from_name(const std::string& name) {
  if (name == "lives_exhausted") return TerminalReason::LivesExhausted;
  if (name == "perfect") return TerminalReason::Perfect;
  if (name == "deck_exhausted") return TerminalReason::DeckExhausted;
  throw std::invalid_argument("unknown terminal reason: " + name);
}

json knowledge_to_json(const CardKnowledge& k) {
  json j;
  j["color_mask"] = k.color_mask;
  j["rank_mask"] = k.rank_mask;
  j["hinted_color"] =
      k.hinted_color ? json(std::string(1, color_letter(*k.hinted_color))) : json(nullptr);
  j["hinted_rank"] = k.hinted_rank ? json(*k.hinted_rank) : json(nullptr);
  return j;
}

CardKnowledge knowledge_from_json(const json& j) {
  CardKnowledge k;
  k.color_mask = static_cast<uint8_t>(j.at("color_mask").get<int>());
  k.rank_mask = static_cast<uint8_t>(j.at("rank_mask").get<int>());
  if (!j.at("hinted_color").is_null()) {
    Color c;
    if (!try_color_from_name(j.at("hinted_color").get<std::string>(), &c)) {
      throw std::invalid_argument("bad hinted color");
    }
    k.hinted_color = c;
  }
  if (!j.at("hinted_rank").is_null()) k.hinted_rank = j.at("hinted_rank").get<int>();
  return k;
}

json decision_to_json(const AgentDecision& d) {
  json j;
  j["action"] = d.action;
  json ratings = json::array();
  for (const auto& [idx, val] : d.ratings) ratings.push_back(json::array({idx, val}));
  j["ratings"] = std::move(ratings);
  j["reason"] = d.reason;
  if (d.deduction) {
    json entries = json::array();
    for (const auto& [label, hand] : d.deduction->entries) {
      json cards = json::array();
      for (const CardKnowledge& k : hand) cards.push_back(knowledge_to_json(k));
      entries.push_back(json::array({label, std::move(cards)}));
    }
    j["deduction"] = std::move(entries);
  } else {
    j["deduction"] = nullptr;
  }
  return j;
}

AgentDecision decision_from_json(const json& j) {
  AgentDecision d;
  d.action = j.at("action").get<int>();
  for (const auto& pair : j.at("ratings")) {
    d.ratings.emplace_back(pair.at(0).get<int>(), pair.at(1).get<double>());
  }
  d.reason = j.at("reason").get<std::string>();
  if (!j.at("deduction").is_null()) {
    DeductionBlock block;
    for (const auto& entry : j.at("deduction")) {
      std::vector<CardKnowledge> hand;
      for (const auto& card : entry.at(1)) hand.push_back(knowledge_from_json(card));
      block.entries.emplace_back(entry.at(0).get<std::string>(), std::move(hand));
    }
    d.deduction = std::move(block);
  }
  return d;
}

std::string outcome_summary(const MoveOutcome& out) {
  std::ostringstream os;
  switch (out.move.type) {
    case MoveType::Play:
      os << "played " << card_code(*out.card) << (out.play_success ? " (success)"
                                                                   : " (misfire, life lost)");
      break;
    case MoveType::Discard:
      os << "discarded " << card_code(*out.card);
      break;
    case MoveType::RevealColor:
      os << "revealed color " << color_letter(out.move.color) << " to P" << out.target << " ("
         << out.touched_slots.size() << " cards)";
      break;
    case MoveType::RevealRank:
      os << "revealed rank " << out.move.rank << " to P" << out.target << " ("
         << out.touched_slots.size() << " cards)";
      break;
  }
  return os.str();
}

json turn_to_json(const TurnRecord& t) {
  json j;
  j["turn_index"] = t.turn_index;
  j["player"] = t.player;
  j["agent"] = t.agent_name;
  j["system_prompt"] = t.system_prompt;
  j["user_prompt"] = t.user_prompt;
  j["response"] = t.response;
  j["decision"] = decision_to_json(t.decision);
  j["move"] = move_to_json(t.move);
  j["attempts"] = t.attempts;
  j["fallback_used"] = t.fallback_used;
  j["ratings_synthesized"] = t.ratings_synthesized;
  j["pre_hash"] = t.pre_hash;
  j["post_hash"] = t.post_hash;
  j["outcome"] = t.outcome;
  return j;
}

TurnRecord turn_from_json(const json& j) {
  TurnRecord t;
  t.turn_index = j.at("turn_index").get<int>();
  t.player = j.at("player").get<int>();
  t.agent_name = j.at("agent").get<std::string>();
  t.system_prompt = j.at("system_prompt").get<std::string>();
  t.user_prompt = j.at("user_prompt").get<std::string>();
  t.response = j.at("response").get<std::string>();
  t.decision = decision_from_json(j.at("decision"));
  t.move = move_from_json(j.at("move"));
  t.attempts = j.at("attempts").get<int>();
  t.fallback_used = j.at("fallback_used").get<bool>();
  t.ratings_synthesized = j.at("ratings_synthesized").get<bool>();
  t.pre_hash = j.at("pre_hash").get<std::string>();
  t.post_hash = j.at("post_hash").get<std::string>();
  t.outcome = j.at("outcome").get<std::string>();
  return t;
}

} // namespace

const char* orchestration_mode_name(OrchestrationMode m) {
  switch (m) {
    case OrchestrationMode::Single: return "single";
    case OrchestrationMode::BestOfK: return "best_of_k";
    case OrchestrationMode::Mixture: return "mixture";
  }
  return "unknown";
}

OrchestrationMode orchestration_mode_from_name(const std::string& name) {
  for (OrchestrationMode m :
       {OrchestrationMode::Single, OrchestrationMode::BestOfK, OrchestrationMode::Mixture}) {
    if (name == orchestration_mode_name(m)) return m;
  }
  throw std::invalid_argument("unknown orchestration mode: " + name);
}

std::string GameRecord::game_id() const {
  std::ostringstream os;
  os << "g_" << config.n_players << "p_seed" << config.seed;
  return os.str();
}

nlohmann::json GameRecord::to_json() const {
  json j;
  j["schema"] = "hanabi.game.v1";
  j["config"] = config_to_json(config);
  j["scaffold"] = scaffold_name(scaffold);
  j["mode"] = orchestration_mode_name(mode);
  j["best_of_k"] = best_of_k;
  j["seats"] = seat_agent_names;
  if (terminal) {
    j["terminal"] = {{"reason", terminal_reason_name(terminal->reason)},
                     {"final_score", terminal->final_score}};
  } else {
    j["terminal"] = nullptr;
  }
  j["aborted"] = aborted;
  j["abort_reason"] = abort_reason;
  j["final_score"] = final_score;
  j["final_hash"] = final_hash;
  json turns_json = json::array();
  for (const TurnRecord& t : turns) turns_json.push_back(turn_to_json(t));
  j["turns"] = std::move(turns_json);
  return j;
}

GameRecord GameRecord::from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != "hanabi.game.v1") {
    throw std::invalid_argument("unsupported game schema");
  }
  GameRecord g;
  g.config = config_from_json(j.at("config"));
  g.scaffold = scaffold_from_name(j.at("scaffold").get<std::string>());
  g.mode = orchestration_mode_from_name(j.at("mode").get<std::string>());
  g.best_of_k = j.at("best_of_k").get<int>();
  g.seat_agent_names = j.at("seats").get<std::vector<std::string>>();
  if (!j.at("terminal").is_null()) {
    g.terminal = TerminalStatus{
        terminal_reason_from_name(j.at("terminal").at("reason").get<std::string>()),
        j.at("terminal").at("final_score").get<int>()};
  }
  g.aborted = j.at("aborted").get<bool>();
  g.abort_reason = j.at("abort_reason").get<std::string>();
  g.final_score = j.at("final_score").get<int>();
  g.final_hash = j.at("final_hash").get<std::string>();
  for (const auto& t : j.at("turns")) g.turns.push_back(turn_from_json(t));
  return g;
}

GameRecord run_game(const GameSetup& setup) {
  setup.config.validate();
  if (static_cast<int>(setup.seats.size()) != setup.config.n_players) {
    throw std::invalid_argument("run_game: one agent spec per seat required");
  }

  GameRecord record;
  record.config = setup.config;
  record.scaffold = setup.scaffold;
  record.mode = setup.mode;
  record.best_of_k = setup.mode == OrchestrationMode::BestOfK ? setup.best_of_k : 1;
  for (const AgentSpec& s : setup.seats) record.seat_agent_names.push_back(s.name);

  GameState state = new_game(setup.config);
  std::vector<DigestEntry> history;
  std::vector<std::optional<TurnMemory>> memories(setup.config.n_players);
  std::vector<Rng> rngs;
  for (int seat = 0; seat < setup.config.n_players; ++seat) {
    rngs.emplace_back(derive_seed(setup.config.seed, static_cast<uint64_t>(seat) + 1));
  }

  int turns_played = 0;
  while (!state.terminal) {
    if (turns_played >= setup.max_turns) {
      record.aborted = true;
      record.abort_reason = "max turn budget exceeded";
      break;
    }
    int viewer = state.current_player;
    const AgentSpec& agent = setup.seats[viewer];

    std::vector<DigestEntry> since = actions_since_last_turn(history, viewer);
    RenderInput in;
    in.kind = setup.scaffold;
    in.state = &state;
    in.viewer = viewer;
    in.history = &history;
    in.memory = setup.scaffold == ScaffoldKind::Mycroft && memories[viewer]
                    ? &*memories[viewer]
                    : nullptr;

    RenderedPrompt prompt;
    DecideResult dr;
    if (setup.mode == OrchestrationMode::Mixture) {
      MixtureResult mr =
          mixture_of_agents(agent, in, rngs[viewer], setup.render_options,
                            setup.parse_options);
      prompt = std::move(mr.aggregator_prompt);
      dr = std::move(mr.final);
    } else {
      prompt = render_prompt(in, setup.render_options);
      dr = setup.mode == OrchestrationMode::BestOfK
               ? best_of_k(agent, prompt, state, viewer, setup.scaffold, setup.best_of_k,
                           rngs[viewer], setup.parse_options)
               : decide(agent, prompt, state, viewer, setup.scaffold, rngs[viewer],
                        setup.parse_options);
    }

    if (dr.abort) {
      record.aborted = true;
      std::ostringstream os;
      os << "agent for seat " << viewer << " failed after " << dr.attempts
         << " attempts: " << dr.error;
      record.abort_reason = os.str();
      break;
    }

    auto legal = legal_moves(state);
    Move move = legal[dr.decision.action];
    MoveOutcome outcome;
    TurnRecord t;
    t.turn_index = state.turn_index;
    t.player = viewer;
    t.agent_name = agent.name;
    t.system_prompt = prompt.system_text;
    t.user_prompt = prompt.user_text;
    t.response = dr.raw_response;
    t.decision = dr.decision;
    t.move = move;
    t.attempts = dr.attempts;
    t.fallback_used = dr.fallback_used;
    t.ratings_synthesized = dr.ratings_synthesized;
    t.pre_hash = state_hash(state);

    GameState next = apply_move(state, move, &outcome);
    t.post_hash = state_hash(next);
    t.outcome = outcome_summary(outcome);
    history.push_back(make_digest_entry(state, move, next));

    if (setup.scaffold == ScaffoldKind::Mycroft) {
      memories[viewer] = TurnMemory{mycroft_state_block(state, viewer, since, false),
                                    dr.raw_response};
    }

    record.turns.push_back(std::move(t));
    state = std::move(next);
    ++turns_played;
  }

  record.terminal = state.terminal;
  record.final_score = state.terminal ? state.terminal->final_score : score(state);
  record.final_hash = state_hash(state);
  return record;
}

std::vector<uint64_t> standard_seeds() { return {1, 2, 3, 5, 7, 11, 13, 17, 19, 23}; }
std::vector<uint64_t> heldout_seeds() { return {4, 6, 8, 10, 12}; }

SuiteResult run_suite(const SuiteConfig& cfg) {
  struct Task {
    int players;
    uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int n : cfg.player_counts) {
    for (uint64_t s : cfg.seeds) tasks.push_back({n, s});
  }

  auto run_task = [&cfg](const Task& task) {
    GameSetup setup;
    setup.config = cfg.base_config;
    setup.config.n_players = task.players;
    setup.config.seed = task.seed;
    setup.scaffold = cfg.scaffold;
    setup.mode = cfg.mode;
    setup.best_of_k = cfg.best_of_k;
    setup.render_options = cfg.render_options;
    setup.parse_options = cfg.parse_options;
    setup.max_turns = cfg.max_turns;
    setup.seats.push_back(cfg.roster.first);
    for (int seat = 1; seat < task.players; ++seat) {
      setup.seats.push_back(cfg.roster.rest ? *cfg.roster.rest : cfg.roster.first);
    }
    return run_game(setup);
  };

  SuiteResult result;
  result.games.resize(tasks.size());
  int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(tasks.size())));
  if (workers == 1) {
    for (size_t i = 0; i < tasks.size(); ++i) result.games[i] = run_task(tasks[i]);
    return result;
  }
  std::atomic<size_t> next_task{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next_task.fetch_add(1);
        if (i >= tasks.size()) return;
        result.games[i] = run_task(tasks[i]);
      }
    });
  }
  for (auto& th : pool) th.join();
  return result;
}

void write_run_dir(const SuiteResult& result, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "games");

  std::vector<const GameRecord*> ordered;
  for (const GameRecord& g : result.games) ordered.push_back(&g);
  std::sort(ordered.begin(), ordered.end(), [](const GameRecord* a, const GameRecord* b) {
    return std::make_pair(a->config.n_players, a->config.seed) <
           std::make_pair(b->config.n_players, b->config.seed);
  });

  json manifest;
  manifest["schema"] = "hanabi.run.v1";
  manifest["rng"] = Rng::kName;
  manifest["game_count"] = ordered.size();
  json games = json::array();
  for (const GameRecord* g : ordered) {
    std::string file = "games/" + g->game_id() + ".json";
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / file).string());
    out << g->to_json().dump(2) << "\n";
    games.push_back({{"file", file},
                     {"players", g->config.n_players},
                     {"seed", g->config.seed},
                     {"scaffold", scaffold_name(g->scaffold)},
                     {"mode", orchestration_mode_name(g->mode)},
                     {"score", g->final_score},
                     {"aborted", g->aborted}});
  }
  manifest["games"] = std::move(games);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << manifest.dump(2) << "\n";
}

SuiteResult load_run_dir(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("missing manifest.json in " + dir.string());
  json manifest = json::parse(in);
  SuiteResult result;
  for (const auto& entry : manifest.at("games")) {
    std::ifstream game_in(dir / entry.at("file").get<std::string>());
    if (!game_in) {
      throw std::runtime_error("missing game file " + entry.at("file").get<std::string>());
    }
    result.games.push_back(GameRecord::from_json(json::parse(game_in)));
  }
  return result;
}

std::vector<Violation> validate_trajectory(const GameRecord& record) {
  std::vector<Violation> violations;
  GameState state;
  try {
    state = new_game(record.config);
  } catch (const std::exception& e) {
    violations.push_back({-1, std::string("invalid config: ") + e.what()});
    return violations;
  }

  for (const TurnRecord& t : record.turns) {
    if (state.terminal) {
      violations.push_back({t.turn_index, "turn recorded after the game ended"});
      return violations;
    }
    if (t.turn_index != state.turn_index) {
      std::ostringstream os;
      os << "turn index " << t.turn_index << " but replay is at " << state.turn_index;
      violations.push_back({t.turn_index, os.str()});
    }
    if (t.player != state.current_player) {
      std::ostringstream os;
      os << "recorded player " << t.player << " but P" << state.current_player
         << " is to move";
      violations.push_back({t.turn_index, os.str()});
    }
    if (std::string pre = state_hash(state); pre != t.pre_hash) {
      violations.push_back({t.turn_index, "pre-move hash mismatch: replay " + pre +
                                              " vs recorded " + t.pre_hash});
    }
    auto legal = legal_moves(state);
    if (t.decision.action < 0 || t.decision.action >= static_cast<int>(legal.size())) {
      violations.push_back({t.turn_index, "action index outside the legal move list"});
      return violations;
    }
    if (!(legal[t.decision.action] == t.move)) {
      violations.push_back(
          {t.turn_index, "recorded move does not match its action index"});
    }
    if (t.decision.ratings.size() != legal.size()) {
      violations.push_back({t.turn_index, "ratings do not cover the legal moves"});
    }
    try {
      state = apply_move(state, t.move);
    } catch (const std::exception& e) {
      violations.push_back({t.turn_index, std::string("illegal move on replay: ") + e.what()});
      return violations;
    }
    if (std::string post = state_hash(state); post != t.post_hash) {
      violations.push_back({t.turn_index, "post-move hash mismatch: replay " + post +
                                              " vs recorded " + t.post_hash});
    }
  }

  if (!record.aborted) {
    if (!state.terminal) {
      violations.push_back({-1, "record ends before the game is over"});
    } else {
      if (!(record.terminal == state.terminal)) {
        violations.push_back({-1, "recorded terminal status does not match replay"});
      }
      if (record.final_score != state.terminal->final_score) {
        violations.push_back({-1, "recorded final score does not match replay"});
      }
    }
    if (record.final_hash != state_hash(state)) {
      violations.push_back({-1, "final hash mismatch"});
    }
  }
  return violations;
}

} // namespace hanabi

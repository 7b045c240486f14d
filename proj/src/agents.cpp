#include "hanabi/agents.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <sstream>
#include <stdexcept>

#include "hanabi/beliefs.hpp"
#include "hanabi/judge.hpp"
#include "httplib.h"
#include "json.hpp"

namespace hanabi {

namespace {

using nlohmann::json;

int move_index(const std::vector<Move>& legal, const Move& m) {
  auto it = std::find(legal.begin(), legal.end(), m);
  if (it == legal.end()) throw std::logic_error("scripted policy produced an illegal move");
  return static_cast<int>(it - legal.begin());
}

AgentDecision one_hot_decision(const GameState& state, const Move& m, const std::string& why) {
  auto legal = legal_moves(state);
  AgentDecision d;
  d.action = move_index(legal, m);
  for (size_t i = 0; i < legal.size(); ++i) {
    d.ratings.emplace_back(static_cast<int>(i), static_cast<int>(i) == d.action ? 1.0 : 0.0);
  }
  d.reason = why + " " + move_description(m) + ".";
  return d;
}

// Every identity still consistent with the clue masks and unseen counts plays
// successfully right now.
bool certain_play(const CardKnowledge& k, const CardCounts& remaining,
                  const std::array<int, kNumColors>& fireworks) {
  int total = 0;
  int playable = 0;
  for (int c = 0; c < kNumColors; ++c) {
    Color color = static_cast<Color>(c);
    if (!k.color_possible(color)) continue;
    for (int r = 1; r <= kNumRanks; ++r) {
      if (!k.rank_possible(r)) continue;
      int copies = remaining.at(color, r);
      if (copies == 0) continue;
      total += copies;
      if (fireworks[c] + 1 == r) playable += copies;
    }
  }
  return total > 0 && playable == total;
}

// (color, rank) can never score: already on the fireworks, or some lower rank
// of the color has every copy in the discard pile.
bool provably_dead(Color color, int rank, const GameState& state) {
  int c = static_cast<int>(color);
  if (rank <= state.fireworks[c]) return true;
  CardCounts discarded;
  for (const Card& d : state.discards) ++discarded.at(d.color, d.rank);
  for (int r = state.fireworks[c] + 1; r < rank; ++r) {
    if (discarded.at(color, r) >= kRankMultiplicity[r - 1]) return true;
  }
  return false;
}

bool slot_provably_dead(const CardKnowledge& k, const CardCounts& remaining,
                        const GameState& state) {
  int total = 0;
  for (int c = 0; c < kNumColors; ++c) {
    Color color = static_cast<Color>(c);
    if (!k.color_possible(color)) continue;
    for (int r = 1; r <= kNumRanks; ++r) {
      if (!k.rank_possible(r)) continue;
      if (remaining.at(color, r) == 0) continue;
      ++total;
      if (!provably_dead(color, r, state)) return false;
    }
  }
  return total > 0;
}

std::string specialist_report(const AgentSpec& agent, const RenderedPrompt& prompt,
                              int agent_number) {
  ChatRequest req;
  req.model = agent.model_name;
  req.system_text = prompt.system_text;
  req.user_text = prompt.user_text;
  req.temperature = agent.temperature;
  req.reasoning_effort = agent.reasoning_effort;
  for (int attempt = 0; attempt < std::max(1, agent.max_retries); ++attempt) {
    ChatResponse r = agent.transport->complete(req);
    if (r.ok && !r.text.empty()) return r.text;
  }
  std::ostringstream os;
  os << "[Agent " << agent_number << " report unavailable]";
  return os.str();
}

} // namespace

const char* agent_kind_name(AgentKind k) {
  switch (k) {
    case AgentKind::Llm: return "llm";
    case AgentKind::RandomLegal: return "random_legal";
    case AgentKind::ScriptedGreedy: return "scripted_greedy";
  }
  return "unknown";
}

AgentKind agent_kind_from_name(const std::string& name) {
  for (AgentKind k : {AgentKind::Llm, AgentKind::RandomLegal, AgentKind::ScriptedGreedy}) {
    if (name == agent_kind_name(k)) return k;
  }
  throw std::invalid_argument("unknown agent kind: " + name);
}

Move scripted_greedy_move(const GameState& state, int viewer) {
  const int n = state.config.n_players;
  const auto& own = state.knowledge[viewer];
  CardCounts own_remaining = beliefs::remaining_counts(state, viewer);

  for (size_t slot = 0; slot < own.size(); ++slot) {
    if (certain_play(own[slot], own_remaining, state.fireworks)) {
      return Move{MoveType::Play, static_cast<int>(slot)};
    }
  }

  if (state.info_tokens > 0) {
    for (int offset = 1; offset < n; ++offset) {
      int target = (viewer + offset) % n;
      const auto& hand = state.hands[target];
      const auto& know = state.knowledge[target];
      CardCounts target_remaining = beliefs::remaining_counts(state, target);
      auto enables_new_play = [&](const ClueValue& value) {
        std::vector<int> touched;
        for (size_t i = 0; i < hand.size(); ++i) {
          if (value.matches(hand[i])) touched.push_back(static_cast<int>(i));
        }
        if (touched.empty()) return false;
        std::vector<CardKnowledge> after = know;
        apply_clue(after, value, touched);
        for (size_t i = 0; i < after.size(); ++i) {
          bool was = certain_play(know[i], target_remaining, state.fireworks);
          bool now = certain_play(after[i], target_remaining, state.fireworks);
          if (now && !was) return true;
        }
        return false;
      };
      for (int c = 0; c < kNumColors; ++c) {
        Color color = static_cast<Color>(c);
        if (enables_new_play(ClueValue::of_color(color))) {
          return Move{MoveType::RevealColor, 0, offset, color};
        }
      }
      for (int r = 1; r <= kNumRanks; ++r) {
        if (enables_new_play(ClueValue::of_rank(r))) {
          return Move{MoveType::RevealRank, 0, offset, Color::R, r};
        }
      }
    }
  }

  if (state.info_tokens < state.config.max_info_tokens) {
    for (size_t slot = 0; slot < own.size(); ++slot) {
      if (slot_provably_dead(own[slot], own_remaining, state)) {
        return Move{MoveType::Discard, static_cast<int>(slot)};
      }
    }
    for (size_t slot = 0; slot < own.size(); ++slot) {
      if (!own[slot].hinted_color && !own[slot].hinted_rank) {
        return Move{MoveType::Discard, static_cast<int>(slot)};
      }
    }
    return Move{MoveType::Discard, 0};
  }

  auto legal = legal_moves(state);
  for (const Move& m : legal) {
    if (m.type == MoveType::RevealColor || m.type == MoveType::RevealRank) return m;
  }
  return legal.front();
}

AgentDecision scripted_greedy_decision(const GameState& state, int viewer) {
  return one_hot_decision(state, scripted_greedy_move(state, viewer), "Scripted greedy policy:");
}

AgentDecision random_legal_decision(const GameState& state, Rng& rng) {
  auto legal = legal_moves(state);
  int pick = static_cast<int>(rng.bounded(static_cast<uint64_t>(legal.size())));
  return one_hot_decision(state, legal[pick], "Uniform random policy:");
}

AgentDecision safest_discard_decision(const GameState& state) {
  auto legal = legal_moves(state);
  for (const Move& m : legal) {
    if (m.type == MoveType::Discard) {
      return one_hot_decision(state, m, "Fallback policy: safest discard");
    }
  }
  return one_hot_decision(state, legal.front(), "Fallback policy: lowest-index legal move");
}

DecideResult decide(const AgentSpec& agent, const RenderedPrompt& prompt,
                    const GameState& state, int viewer, ScaffoldKind kind, Rng& rng,
                    const ParseOptions& popts) {
  DecideResult res;
  if (agent.kind != AgentKind::Llm) {
    res.decision = agent.kind == AgentKind::RandomLegal
                       ? random_legal_decision(state, rng)
                       : scripted_greedy_decision(state, viewer);
    // Offline policies track state perfectly, so under the deduction-reporting
    // scaffold they answer with the ground-truth block.
    if (kind == ScaffoldKind::Mycroft) res.decision.deduction = oracle_deduction(state, viewer);
    res.raw_response = decision_to_response_text(kind, res.decision);
    return res;
  }

  int n_legal = static_cast<int>(legal_moves(state).size());
  ChatRequest req;
  req.model = agent.model_name;
  req.system_text = prompt.system_text;
  req.user_text = prompt.user_text;
  req.temperature = agent.temperature;
  req.reasoning_effort = agent.reasoning_effort;
  if (agent.transport) {
    for (int attempt = 0; attempt < std::max(1, agent.max_retries); ++attempt) {
      ++res.attempts;
      ChatResponse cr = agent.transport->complete(req);
      if (!cr.ok) {
        res.error = cr.error;
        continue;
      }
      res.raw_response = cr.text;
      ParseResult pr = parse_agent_response(kind, cr.text, n_legal, popts);
      if (pr.ok()) {
        res.decision = std::move(*pr.decision);
        res.error.clear();
        return res;
      }
      res.error = std::string(parse_failure_name(*pr.failure)) + ": " + pr.message;
    }
  } else {
    res.error = "no transport configured";
  }

  if (agent.fallback == FallbackPolicy::AbortGame) {
    res.abort = true;
    return res;
  }
  res.fallback_used = true;
  res.ratings_synthesized = true;
  res.decision = safest_discard_decision(state);
  return res;
}

DecideResult best_of_k(const AgentSpec& agent, const RenderedPrompt& prompt,
                       const GameState& state, int viewer, ScaffoldKind kind, int k, Rng& rng,
                       const ParseOptions& popts) {
  if (k < 1) throw std::invalid_argument("best_of_k: k must be >= 1");
  std::vector<DecideResult> samples;
  std::vector<std::string> raws;
  int attempts = 0;
  for (int i = 0; i < k; ++i) {
    DecideResult r = decide(agent, prompt, state, viewer, kind, rng, popts);
    attempts += r.attempts;
    if (r.abort) {
      r.attempts = attempts;
      return r;
    }
    raws.push_back(r.raw_response.empty() ? decision_to_response_text(kind, r.decision)
                                          : r.raw_response);
    samples.push_back(std::move(r));
  }
  bool unanimous = std::all_of(samples.begin(), samples.end(), [&](const DecideResult& r) {
    return r.decision.action == samples.front().decision.action;
  });
  if (unanimous) {
    samples.front().attempts = attempts;
    return std::move(samples.front());
  }
  RenderedPrompt review = prompt;
  review.user_text += "\n\n" + best_of_k_suffix(raws);
  DecideResult sel = decide(agent, review, state, viewer, kind, rng, popts);
  sel.attempts += attempts;
  return sel;
}

MixtureResult mixture_of_agents(const AgentSpec& agent, const RenderInput& in, Rng& rng,
                                const RenderOptions& opts, const ParseOptions& popts) {
  MixtureResult mr;
  if (agent.kind != AgentKind::Llm) {
    RenderedPrompt p = render_prompt(in, opts);
    mr.final = decide(agent, p, *in.state, in.viewer, in.kind, rng, popts);
    mr.aggregator_prompt = std::move(p);
    return mr;
  }
  bool with_history = in.state->config.n_players > 2;
  std::vector<RoleKind> roles = {RoleKind::Baseline, RoleKind::RankFocused, RoleKind::Analyst,
                                 RoleKind::DiscardStrategist};
  if (with_history) roles.push_back(RoleKind::HistoryAnalyst);

  std::vector<std::future<std::string>> futures;
  for (size_t i = 0; i < roles.size(); ++i) {
    RenderedPrompt p = render_role_prompt(roles[i], in, opts);
    int agent_number = static_cast<int>(i) + 1;
    futures.push_back(std::async(std::launch::async, [&agent, p = std::move(p),
                                                      agent_number]() {
      return specialist_report(agent, p, agent_number);
    }));
  }
  for (auto& f : futures) mr.reports.push_back(f.get());

  RenderedPrompt agg = render_aggregator_prompt(in, mr.reports, with_history, opts);
  mr.final = decide(agent, agg, *in.state, in.viewer, in.kind, rng, popts);
  mr.aggregator_prompt = std::move(agg);
  return mr;
}

HttpChatTransport::HttpChatTransport(std::string base_url, std::string api_key_env)
    : base_url_(std::move(base_url)) {
  if (const char* key = std::getenv(api_key_env.c_str())) api_key_ = key;
}

ChatResponse HttpChatTransport::complete(const ChatRequest& req) {
  ChatResponse out;
  json body;
  body["model"] = req.model;
  json messages = json::array();
  if (!req.system_text.empty()) {
    messages.push_back({{"role", "system"}, {"content", req.system_text}});
  }
  messages.push_back({{"role", "user"}, {"content", req.user_text}});
  body["messages"] = std::move(messages);
  body["temperature"] = req.temperature;
  if (!req.reasoning_effort.empty()) body["reasoning_effort"] = req.reasoning_effort;
  for (const auto& [key, value] : req.extras) body[key] = value;

  httplib::Client client(base_url_);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(300, 0);
  client.set_write_timeout(30, 0);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto r = client.Post("/v1/chat/completions", headers, body.dump(), "application/json");
  if (!r) {
    out.error = "transport error: " + httplib::to_string(r.error());
    return out;
  }
  if (r->status != 200) {
    std::ostringstream os;
    os << "http status " << r->status << ": " << r->body.substr(0, 2048);
    out.error = os.str();
    return out;
  }
  json reply = json::parse(r->body, nullptr, false);
  if (reply.is_discarded()) {
    out.error = "completion response is not valid JSON";
    return out;
  }
  if (!reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty()) {
    out.error = "completion response has no choices";
    return out;
  }
  const json& first = reply["choices"][0];
  if (!first.contains("message") || !first["message"].contains("content") ||
      !first["message"]["content"].is_string()) {
    out.error = "completion response has no message content";
    return out;
  }
  out.ok = true;
  out.text = first["message"]["content"].get<std::string>();
  return out;
}

} // namespace hanabi

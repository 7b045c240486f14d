#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hanabi/rng.hpp"
#include "hanabi/scaffold.hpp"

namespace hanabi {

struct ChatRequest {
  std::string model;
  std::string system_text; // empty = no system message
  std::string user_text;
  double temperature = 1.0;
  std::string reasoning_effort;              // empty = omit
  std::map<std::string, std::string> extras; // copied into the request body verbatim
};

struct ChatResponse {
  bool ok = false;
  std::string text;
  std::string error;
};

class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual ChatResponse complete(const ChatRequest& req) = 0;
};

// OpenAI-style POST {base_url}/v1/chat/completions. The bearer token is read
// from the environment once at construction.
class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(std::string base_url,
                             std::string api_key_env = "HANABI_API_KEY");
  ChatResponse complete(const ChatRequest& req) override;

 private:
  std::string base_url_;
  std::string api_key_;
};

enum class AgentKind { Llm, RandomLegal, ScriptedGreedy };
enum class FallbackPolicy { SafestDiscard, AbortGame };

const char* agent_kind_name(AgentKind k);
AgentKind agent_kind_from_name(const std::string& name); // throws std::invalid_argument

struct AgentSpec {
  AgentKind kind = AgentKind::ScriptedGreedy;
  std::string name = "scripted"; // label recorded per seat
  std::string model_name;
  double temperature = 1.0;
  std::string reasoning_effort;
  int max_retries = 3;
  FallbackPolicy fallback = FallbackPolicy::SafestDiscard;
  std::shared_ptr<ChatTransport> transport;
};

struct DecideResult {
  AgentDecision decision;
  std::string raw_response;
  int attempts = 0; // transport calls made (0 for offline agents)
  bool fallback_used = false;
  bool ratings_synthesized = false; // fallback ratings, excluded from reward exports
  bool abort = false;
  std::string error;
};

// Offline policies. The greedy move prefers, in order: a play certain to
// succeed, a clue that newly makes one of the target's cards a certain play
// from their own view, the safest discard (provably dead, else unhinted,
// else slot 0), and finally the lowest-index legal move.
Move scripted_greedy_move(const GameState& state, int viewer);
AgentDecision scripted_greedy_decision(const GameState& state, int viewer);
AgentDecision random_legal_decision(const GameState& state, Rng& rng);
AgentDecision safest_discard_decision(const GameState& state);

// Runs one decision: transport call + parse, retried up to max_retries, then
// the fallback policy. Offline agent kinds ignore the prompt entirely.
DecideResult decide(const AgentSpec& agent, const RenderedPrompt& prompt,
                    const GameState& state, int viewer, ScaffoldKind kind, Rng& rng,
                    const ParseOptions& popts = {});

// Samples k independent responses; on disagreement asks the same model to
// pick between them with the review suffix appended to the original prompt.
DecideResult best_of_k(const AgentSpec& agent, const RenderedPrompt& prompt,
                       const GameState& state, int viewer, ScaffoldKind kind, int k, Rng& rng,
                       const ParseOptions& popts = {});

struct MixtureResult {
  DecideResult final;               // aggregator decision
  std::vector<std::string> reports; // specialist outputs in role order
  RenderedPrompt aggregator_prompt; // what `final.raw_response` answered
};

// Specialist fan-out (concurrent) + aggregator. Rosters with more than two
// players include the history analyst; two-player rosters drop it. Offline
// agent kinds skip the fan-out and decide directly.
MixtureResult mixture_of_agents(const AgentSpec& agent, const RenderInput& in, Rng& rng,
                                const RenderOptions& opts = {},
                                const ParseOptions& popts = {});

} // namespace hanabi

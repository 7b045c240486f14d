#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <mutex>

#include "fixtures.hpp"
#include "hanabi/agents.hpp"
#include "hanabi/judge.hpp"

using namespace hanabi;

namespace {

// Scripted transport: returns queued responses in order, repeating the last
// one when the queue runs dry. Thread safe for the mixture fan-out.
class QueueTransport : public ChatTransport {
 public:
  explicit QueueTransport(std::vector<ChatResponse> queue) : queue_(std::move(queue)) {}

  ChatResponse complete(const ChatRequest& req) override {
    std::lock_guard<std::mutex> lock(mu_);
    requests.push_back(req);
    if (queue_.empty()) return ChatResponse{false, "", "empty queue"};
    if (cursor_ < queue_.size()) return queue_[cursor_++];
    return queue_.back();
  }

  std::vector<ChatRequest> requests;

 private:
  std::vector<ChatResponse> queue_;
  size_t cursor_ = 0;
  std::mutex mu_;
};

ChatResponse good(const std::string& text) { return ChatResponse{true, text, ""}; }
ChatResponse bad(const std::string& err) { return ChatResponse{false, "", err}; }

std::string sherlock_response(int action, int n_legal) {
  AgentDecision d;
  d.action = action;
  for (int i = 0; i < n_legal; ++i)
    d.ratings.emplace_back(i, i == action ? 1.0 : 0.0);
  d.reason = "mock decision";
  return decision_to_response_text(ScaffoldKind::Sherlock, d);
}

AgentSpec llm_agent(std::shared_ptr<ChatTransport> transport) {
  AgentSpec a;
  a.kind = AgentKind::Llm;
  a.name = "mock";
  a.model_name = "mock-model";
  a.transport = std::move(transport);
  return a;
}

GameState fresh(int n, uint64_t seed) {
  GameConfig c;
  c.n_players = n;
  c.seed = seed;
  return new_game(c);
}

} // namespace

TEST_CASE("agent kind names round-trip") {
  for (auto k : {AgentKind::Llm, AgentKind::RandomLegal, AgentKind::ScriptedGreedy})
    CHECK(agent_kind_from_name(agent_kind_name(k)) == k);
  CHECK_THROWS_AS(agent_kind_from_name("psychic"), std::invalid_argument);
}

TEST_CASE("scripted greedy plays a card it knows is safe") {
  GameState st = fresh(2, 6);
  st.hands[0][2] = Card{Color::G, 1};
  auto& k = st.knowledge[0][2];
  k.color_mask = fixtures::color_bit(Color::G);
  k.rank_mask = fixtures::rank_bit(1);
  k.hinted_color = Color::G;
  k.hinted_rank = 1;
  Move m = scripted_greedy_move(st, 0);
  CHECK(m == Move{MoveType::Play, 2});
}

TEST_CASE("scripted greedy gives the clue that unlocks a certain play") {
  GameState st = fresh(2, 6);
  // One card of each color so no color clue pins down a playable identity,
  // and a single 1 so the rank clue makes that card a certain play.
  st.hands[1] = fixtures::cards({"Y1", "R3", "G4", "W2", "B5"});
  st.info_tokens = 5;
  Move m = scripted_greedy_move(st, 0);
  CHECK(m.type == MoveType::RevealRank);
  CHECK(m.target_offset == 1);
  CHECK(m.rank == 1);
}

TEST_CASE("scripted greedy discards a provably dead card first") {
  GameState st = fresh(2, 6);
  st.fireworks = {1, 1, 1, 1, 1};
  st.hands[1] = fixtures::cards({"R5", "Y5", "G5", "W5", "B5"}); // no clue helps
  st.info_tokens = 5;
  auto& k = st.knowledge[0][2];
  k.rank_mask = fixtures::rank_bit(1); // every stack is past rank 1
  k.hinted_rank = 1;
  Move m = scripted_greedy_move(st, 0);
  CHECK(m == Move{MoveType::Discard, 2});
}

TEST_CASE("scripted greedy falls back to an unhinted discard, then slot 0") {
  GameState st = fresh(2, 6);
  st.fireworks = {1, 1, 1, 1, 1};
  st.hands[1] = fixtures::cards({"R5", "Y5", "G5", "W5", "B5"});
  st.info_tokens = 5;
  st.knowledge[0][0].hinted_rank = 5;
  st.knowledge[0][0].rank_mask = fixtures::rank_bit(5); // live card, not dead
  Move m = scripted_greedy_move(st, 0);
  CHECK(m == Move{MoveType::Discard, 1}); // first unhinted slot

  for (auto& k : st.knowledge[0]) {
    k.hinted_rank = 4;
    k.rank_mask = fixtures::rank_bit(4);
  }
  CHECK(scripted_greedy_move(st, 0) == Move{MoveType::Discard, 0});
}

TEST_CASE("scripted greedy at max info gives some legal reveal") {
  GameState st = fresh(2, 6);
  st.fireworks = {1, 1, 1, 1, 1};
  st.hands[1] = fixtures::cards({"R5", "Y5", "G5", "W5", "B5"});
  st.info_tokens = 8; // discards illegal
  Move m = scripted_greedy_move(st, 0);
  CHECK(m.type == MoveType::RevealColor);
  CHECK(m.color == Color::R);
}

TEST_CASE("offline decisions are one-hot over the legal moves") {
  GameState st = fixtures::sherlock_endgame_state();
  AgentDecision d = scripted_greedy_decision(st, 1);
  auto legal = legal_moves(st);
  REQUIRE(d.ratings.size() == legal.size());
  int ones = 0;
  for (const auto& [idx, r] : d.ratings) {
    CHECK((r == 0.0 || r == 1.0));
    if (r == 1.0) {
      ++ones;
      CHECK(idx == d.action);
    }
  }
  CHECK(ones == 1);
  CHECK_FALSE(d.reason.empty());
}

TEST_CASE("random legal agent is deterministic per seed and always legal") {
  GameState st = fixtures::sherlock_endgame_state();
  Rng a(5), b(5), c(6);
  AgentDecision da = random_legal_decision(st, a);
  AgentDecision db = random_legal_decision(st, b);
  CHECK(da == db);
  CHECK(da.action >= 0);
  CHECK(da.action < static_cast<int>(legal_moves(st).size()));
  bool varied = false;
  for (int i = 0; i < 20 && !varied; ++i)
    varied = random_legal_decision(st, c).action != da.action;
  CHECK(varied);
}

TEST_CASE("safest discard prefers the first legal discard, else the first legal move") {
  GameState st = fixtures::sherlock_endgame_state();
  AgentDecision d = safest_discard_decision(st);
  CHECK(d.action == 0); // action 0 is (Discard 0)

  GameState max_info = fresh(2, 6); // discards illegal at max info
  AgentDecision p = safest_discard_decision(max_info);
  CHECK(legal_moves(max_info)[p.action].type == MoveType::Play);
}

TEST_CASE("offline decide ignores the transport and reports zero attempts") {
  GameState st = fixtures::sherlock_endgame_state();
  AgentSpec spec; // scripted_greedy default
  Rng rng(1);
  RenderedPrompt prompt;
  DecideResult r = decide(spec, prompt, st, 1, ScaffoldKind::Sherlock, rng);
  CHECK(r.attempts == 0);
  CHECK_FALSE(r.fallback_used);
  CHECK_FALSE(r.abort);
  CHECK_FALSE(r.decision.deduction.has_value());
  // The synthesized transcript parses back to the same decision.
  auto parsed = parse_agent_response(ScaffoldKind::Sherlock, r.raw_response,
                                     static_cast<int>(legal_moves(st).size()));
  REQUIRE(parsed.ok());
  CHECK(parsed.decision->action == r.decision.action);
}

TEST_CASE("offline agents answer the deduction scaffold with the oracle block") {
  GameState st = fixtures::sherlock_endgame_state();
  AgentSpec spec;
  Rng rng(1);
  DecideResult r = decide(spec, RenderedPrompt{}, st, 1, ScaffoldKind::Mycroft, rng);
  REQUIRE(r.decision.deduction.has_value());
  CHECK(*r.decision.deduction == oracle_deduction(st, 1));
}

TEST_CASE("llm decide returns the parsed decision on first success") {
  GameState st = fixtures::sherlock_endgame_state();
  int n = static_cast<int>(legal_moves(st).size());
  auto tr = std::make_shared<QueueTransport>(
      std::vector<ChatResponse>{good(sherlock_response(4, n))});
  AgentSpec spec = llm_agent(tr);
  Rng rng(1);
  DecideResult r = decide(spec, RenderedPrompt{"sys", "user"}, st, 1,
                          ScaffoldKind::Sherlock, rng);
  CHECK(r.attempts == 1);
  CHECK_FALSE(r.fallback_used);
  CHECK(r.decision.action == 4);
  REQUIRE(tr->requests.size() == 1);
  CHECK(tr->requests[0].model == "mock-model");
  CHECK(tr->requests[0].system_text == "sys");
  CHECK(tr->requests[0].user_text == "user");
}

TEST_CASE("llm decide retries transport errors and unparseable replies") {
  GameState st = fixtures::sherlock_endgame_state();
  int n = static_cast<int>(legal_moves(st).size());
  auto tr = std::make_shared<QueueTransport>(std::vector<ChatResponse>{
      bad("connection reset"), good("word salad"), good(sherlock_response(2, n))});
  AgentSpec spec = llm_agent(tr);
  Rng rng(1);
  DecideResult r = decide(spec, RenderedPrompt{}, st, 1, ScaffoldKind::Sherlock, rng);
  CHECK(r.attempts == 3);
  CHECK_FALSE(r.fallback_used);
  CHECK(r.decision.action == 2);
}

TEST_CASE("exhausted retries fall back to the safest discard with synthesized ratings") {
  GameState st = fixtures::sherlock_endgame_state();
  auto tr = std::make_shared<QueueTransport>(std::vector<ChatResponse>{good("nonsense")});
  AgentSpec spec = llm_agent(tr);
  spec.max_retries = 3;
  Rng rng(1);
  DecideResult r = decide(spec, RenderedPrompt{}, st, 1, ScaffoldKind::Sherlock, rng);
  CHECK(r.attempts == 3);
  CHECK(r.fallback_used);
  CHECK(r.ratings_synthesized);
  CHECK_FALSE(r.abort);
  CHECK(r.decision.action == 0); // (Discard 0)
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("abort policy surrenders instead of falling back") {
  GameState st = fixtures::sherlock_endgame_state();
  auto tr = std::make_shared<QueueTransport>(std::vector<ChatResponse>{bad("down")});
  AgentSpec spec = llm_agent(tr);
  spec.fallback = FallbackPolicy::AbortGame;
  Rng rng(1);
  DecideResult r = decide(spec, RenderedPrompt{}, st, 1, ScaffoldKind::Sherlock, rng);
  CHECK(r.abort);
  CHECK_FALSE(r.fallback_used);
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("unanimous best-of-k samples skip the review round") {
  GameState st = fixtures::sherlock_endgame_state();
  int n = static_cast<int>(legal_moves(st).size());
  auto tr = std::make_shared<QueueTransport>(
      std::vector<ChatResponse>{good(sherlock_response(4, n))});
  AgentSpec spec = llm_agent(tr);
  Rng rng(1);
  DecideResult r = best_of_k(spec, RenderedPrompt{"", "base prompt"}, st, 1,
                             ScaffoldKind::Sherlock, 3, rng);
  CHECK(r.decision.action == 4);
  CHECK(r.attempts == 3);
  CHECK(tr->requests.size() == 3);
  for (const auto& req : tr->requests)
    CHECK(req.user_text == "base prompt"); // no review suffix anywhere
}

TEST_CASE("disagreeing best-of-k samples trigger one review call") {
  GameState st = fixtures::sherlock_endgame_state();
  int n = static_cast<int>(legal_moves(st).size());
  auto tr = std::make_shared<QueueTransport>(std::vector<ChatResponse>{
      good(sherlock_response(0, n)), good(sherlock_response(3, n)),
      good(sherlock_response(5, n))});
  AgentSpec spec = llm_agent(tr);
  Rng rng(1);
  DecideResult r = best_of_k(spec, RenderedPrompt{"", "base prompt"}, st, 1,
                             ScaffoldKind::Sherlock, 2, rng);
  CHECK(r.decision.action == 5);
  CHECK(r.attempts == 3);
  REQUIRE(tr->requests.size() == 3);
  const std::string& review = tr->requests.back().user_text;
  CHECK(review.find("base prompt") == 0);
  CHECK(review.find("Below are 2 different responses") != std::string::npos);
  CHECK_THROWS_AS(best_of_k(spec, RenderedPrompt{}, st, 1, ScaffoldKind::Sherlock, 0, rng),
                  std::invalid_argument);
}

TEST_CASE("offline mixture skips the specialist fan-out") {
  GameState st = fixtures::sherlock_endgame_state();
  RenderInput in;
  in.kind = ScaffoldKind::Sherlock;
  in.state = &st;
  in.viewer = 1;
  AgentSpec spec; // scripted
  Rng rng(1);
  MixtureResult mr = mixture_of_agents(spec, in, rng);
  CHECK(mr.reports.empty());
  CHECK_FALSE(mr.final.abort);
  CHECK(mr.final.attempts == 0);
}

TEST_CASE("two-player mixture runs four specialists plus the aggregator") {
  GameState st = fixtures::sherlock_endgame_state();
  int n = static_cast<int>(legal_moves(st).size());
  auto tr = std::make_shared<QueueTransport>(
      std::vector<ChatResponse>{good(sherlock_response(3, n))});
  AgentSpec spec = llm_agent(tr);
  RenderInput in;
  in.kind = ScaffoldKind::Sherlock;
  in.state = &st;
  in.viewer = 1;
  Rng rng(1);
  MixtureResult mr = mixture_of_agents(spec, in, rng);
  REQUIRE(mr.reports.size() == 4);
  CHECK(mr.final.decision.action == 3);
  CHECK(tr->requests.size() == 5); // 4 specialists + aggregator
  CHECK(mr.aggregator_prompt.user_text.find("Report from Agent 1 (Baseline):") !=
        std::string::npos);
  CHECK(mr.aggregator_prompt.user_text.find("Historian") == std::string::npos);
}

TEST_CASE("larger rosters add the history analyst") {
  GameState st = fresh(3, 12);
  int n = static_cast<int>(legal_moves(st).size());
  auto tr = std::make_shared<QueueTransport>(
      std::vector<ChatResponse>{good(sherlock_response(1, n))});
  AgentSpec spec = llm_agent(tr);
  RenderInput in;
  in.kind = ScaffoldKind::Sherlock;
  in.state = &st;
  in.viewer = 0;
  std::vector<DigestEntry> hist;
  in.history = &hist;
  Rng rng(1);
  MixtureResult mr = mixture_of_agents(spec, in, rng);
  REQUIRE(mr.reports.size() == 5);
  CHECK(tr->requests.size() == 6);
  CHECK(mr.aggregator_prompt.user_text.find("Report from Agent 5 (Historian):") !=
        std::string::npos);
}

TEST_CASE("http transport reports refused connections as errors") {
  HttpChatTransport tr("http://127.0.0.1:9", "HANABI_TEST_NO_SUCH_KEY");
  ChatRequest req;
  req.model = "m";
  req.user_text = "hi";
  ChatResponse r = tr.complete(req);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.error.empty());
}

#include <cctype>
#include <cstdlib>
#include <map>
#include <regex>
#include <sstream>

#include "hanabi/scaffold.hpp"
#include "json.hpp"

namespace hanabi {

namespace {

using nlohmann::ordered_json;

ParseResult fail(ParseFailure f, const std::string& msg) {
  ParseResult r;
  r.failure = f;
  r.message = msg;
  return r;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::optional<int> as_int(const ordered_json& v) {
  if (v.is_number_integer()) return static_cast<int>(v.get<long long>());
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == static_cast<long long>(d)) return static_cast<int>(d);
    return std::nullopt;
  }
  if (v.is_string()) {
    std::string s = trim(v.get<std::string>());
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    long val = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return static_cast<int>(val);
  }
  return std::nullopt;
}

std::optional<double> as_double(const ordered_json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    std::string s = trim(v.get<std::string>());
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    double val = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return val;
  }
  return std::nullopt;
}

} // namespace

// Longest balanced {...} span that parses as a JSON object; tolerates fences
// and prose around it.
std::optional<ordered_json> extract_json_object(const std::string& text) {
  ordered_json best;
  size_t best_len = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    int depth = 0;
    bool in_str = false;
    bool esc = false;
    size_t end = std::string::npos;
    for (size_t j = i; j < text.size(); ++j) {
      char c = text[j];
      if (in_str) {
        if (esc) {
          esc = false;
        } else if (c == '\\') {
          esc = true;
        } else if (c == '"') {
          in_str = false;
        }
        continue;
      }
      if (c == '"') {
        in_str = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          end = j;
          break;
        }
      }
    }
    if (end == std::string::npos) continue;
    size_t len = end - i + 1;
    if (len <= best_len) continue;
    ordered_json j = ordered_json::parse(text.substr(i, len), nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    best = std::move(j);
    best_len = len;
  }
  if (best_len == 0) return std::nullopt;
  return best;
}

namespace {

// Ratings arrive indexed; normalize to a dense 0..n-1 vector or report why not.
std::optional<ParseResult> finish_ratings(AgentDecision& d,
                                          const std::vector<std::optional<double>>& slots,
                                          int n_legal, const ParseOptions& opts,
                                          bool* clamped) {
  for (int i = 0; i < n_legal; ++i) {
    if (!slots[i]) {
      std::ostringstream os;
      os << "no rating for move " << i;
      return fail(ParseFailure::RatingsIncomplete, os.str());
    }
  }
  for (int i = 0; i < n_legal; ++i) {
    double r = *slots[i];
    if (r < -1.0 || r > 1.0) {
      if (opts.strict_ratings) {
        std::ostringstream os;
        os << "rating " << r << " for move " << i << " outside [-1, 1]";
        return fail(ParseFailure::RatingOutOfRange, os.str());
      }
      r = r < -1.0 ? -1.0 : 1.0;
      *clamped = true;
    }
    d.ratings.emplace_back(i, r);
  }
  return std::nullopt;
}

ParseResult parse_watson(const std::string& text, int n_legal, const ParseOptions& opts) {
  static const std::string kChosen = "Chosen Move Number";
  size_t pos = text.rfind(kChosen);
  if (pos == std::string::npos) {
    return fail(ParseFailure::MissingAction, "no 'Chosen Move Number' line");
  }
  size_t p = pos + kChosen.size();
  while (p < text.size() && !std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
  if (p == text.size()) {
    return fail(ParseFailure::MissingAction, "no number after 'Chosen Move Number'");
  }
  int action = std::atoi(text.c_str() + p);
  if (action < 0 || action >= n_legal) {
    std::ostringstream os;
    os << "chosen move " << action << " not in [0, " << n_legal << ")";
    return fail(ParseFailure::ActionOutOfRange, os.str());
  }

  // "Move 8 (Play 3): 1.0" or "Move 8: 1.0"; repeats take the last value.
  static const std::regex kRating(
      R"(Move\s*(\d+)\s*(?:\([^)\n]*\))?\s*:\s*(-?\d+(?:\.\d+)?))");
  std::vector<std::optional<double>> slots(n_legal);
  for (std::sregex_iterator it(text.begin(), text.end(), kRating), end; it != end; ++it) {
    int idx = std::atoi((*it)[1].str().c_str());
    if (idx < 0 || idx >= n_legal) continue;
    slots[idx] = std::atof((*it)[2].str().c_str());
  }

  AgentDecision d;
  d.action = action;
  bool clamped = false;
  if (auto bad = finish_ratings(d, slots, n_legal, opts, &clamped)) return *bad;

  static const std::string kReasoning = "Reasoning:";
  size_t rpos = text.find(kReasoning);
  if (rpos != std::string::npos) {
    size_t start = rpos + kReasoning.size();
    size_t cut = std::min(text.find("\nMove Ratings", start),
                          text.find("\nChosen Move Number", start));
    d.reason = trim(text.substr(start, cut == std::string::npos ? cut : cut - start));
  }

  ParseResult r;
  r.decision = std::move(d);
  r.ratings_clamped = clamped;
  return r;
}

std::optional<int> card_key_index(const std::string& key) {
  std::string k = trim(key);
  if (k.size() < 5) return std::nullopt;
  std::string head = k.substr(0, 4);
  std::transform(head.begin(), head.end(), head.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (head != "card") return std::nullopt;
  size_t p = 4;
  while (p < k.size() && k[p] == ' ') ++p;
  if (p == k.size() || !std::isdigit(static_cast<unsigned char>(k[p]))) return std::nullopt;
  return std::atoi(k.c_str() + p);
}

ParseResult parse_json_response(ScaffoldKind kind, const std::string& text, int n_legal,
                                const ParseOptions& opts) {
  auto obj = extract_json_object(text);
  if (!obj) return fail(ParseFailure::MalformedJson, "no JSON object found in response");
  const ordered_json& j = *obj;

  if (!j.contains("action")) return fail(ParseFailure::MissingAction, "missing 'action' key");
  auto action = as_int(j.at("action"));
  if (!action) return fail(ParseFailure::MissingAction, "'action' is not an integer");
  if (*action < 0 || *action >= n_legal) {
    std::ostringstream os;
    os << "action " << *action << " not in [0, " << n_legal << ")";
    return fail(ParseFailure::ActionOutOfRange, os.str());
  }

  if (!j.contains("move_ratings") || !j.at("move_ratings").is_array()) {
    return fail(ParseFailure::RatingsIncomplete, "missing 'move_ratings' array");
  }
  std::vector<std::optional<double>> slots(n_legal);
  for (const auto& entry : j.at("move_ratings")) {
    if (!entry.is_object()) {
      return fail(ParseFailure::RatingsIncomplete, "rating entry is not an object");
    }
    std::optional<int> idx;
    for (const char* key : {"action", "move", "index"}) {
      if (entry.contains(key)) {
        idx = as_int(entry.at(key));
        break;
      }
    }
    std::optional<double> val;
    for (const char* key : {"rating", "score"}) {
      if (entry.contains(key)) {
        val = as_double(entry.at(key));
        break;
      }
    }
    if (!idx || !val) {
      return fail(ParseFailure::RatingsIncomplete, "rating entry missing move index or value");
    }
    if (*idx < 0 || *idx >= n_legal) {
      std::ostringstream os;
      os << "rating for unknown move " << *idx;
      return fail(ParseFailure::RatingsIncomplete, os.str());
    }
    if (slots[*idx]) {
      std::ostringstream os;
      os << "duplicate rating for move " << *idx;
      return fail(ParseFailure::RatingsIncomplete, os.str());
    }
    slots[*idx] = *val;
  }

  AgentDecision d;
  d.action = *action;
  bool clamped = false;
  if (auto bad = finish_ratings(d, slots, n_legal, opts, &clamped)) return *bad;

  if (j.contains("reason")) {
    const auto& reason = j.at("reason");
    d.reason = reason.is_string() ? reason.get<std::string>() : reason.dump();
  }

  if (kind == ScaffoldKind::Mycroft) {
    if (!j.contains("deduction") || !j.at("deduction").is_object() ||
        j.at("deduction").empty()) {
      return fail(ParseFailure::DeductionMissing, "missing 'deduction' object");
    }
    DeductionBlock block;
    for (const auto& [label, cards] : j.at("deduction").items()) {
      if (!cards.is_object()) {
        return fail(ParseFailure::DeductionMissing,
                    "deduction for '" + label + "' is not an object");
      }
      std::vector<std::pair<int, std::string>> rows;
      for (const auto& [key, value] : cards.items()) {
        auto idx = card_key_index(key);
        if (!idx || !value.is_string()) {
          return fail(ParseFailure::DeductionMissing,
                      "deduction for '" + label + "' has a malformed card entry");
        }
        rows.emplace_back(*idx, value.get<std::string>());
      }
      std::sort(rows.begin(), rows.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<CardKnowledge> hand;
      for (const auto& [idx, text_value] : rows) {
        hand.push_back(parse_knowledge_text(text_value));
      }
      block.entries.emplace_back(label, std::move(hand));
    }
    d.deduction = std::move(block);
  }

  ParseResult r;
  r.decision = std::move(d);
  r.ratings_clamped = clamped;
  return r;
}

} // namespace

ParseResult parse_agent_response(ScaffoldKind kind, const std::string& text, int n_legal,
                                 const ParseOptions& opts) {
  if (n_legal <= 0) return fail(ParseFailure::MissingAction, "no legal moves to choose from");
  if (kind == ScaffoldKind::Watson) return parse_watson(text, n_legal, opts);
  return parse_json_response(kind, text, n_legal, opts);
}

std::string decision_to_response_text(ScaffoldKind kind, const AgentDecision& d) {
  if (kind == ScaffoldKind::Watson) {
    std::ostringstream os;
    os << "Reasoning:\n" << d.reason << "\n\nMove Ratings:\n";
    for (size_t i = 0; i < d.ratings.size(); ++i) {
      if (i) os << ", ";
      os << "Move " << d.ratings[i].first << ": " << ordered_json(d.ratings[i].second).dump();
    }
    os << "\n\nChosen Move Number: " << d.action;
    return os.str();
  }
  ordered_json j;
  ordered_json ratings = ordered_json::array();
  for (const auto& [idx, val] : d.ratings) {
    ratings.push_back(ordered_json{{"action", idx}, {"rating", val}});
  }
  j["move_ratings"] = std::move(ratings);
  if (kind == ScaffoldKind::Mycroft && d.deduction) {
    j["deduction"] = ordered_json::parse(
        deduction_to_json(*d.deduction, KnowledgeTextStyle::Compact));
  }
  j["reason"] = d.reason;
  j["action"] = d.action;
  return j.dump(2);
}

} // namespace hanabi

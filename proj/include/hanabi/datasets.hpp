#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hanabi/orchestrator.hpp"

namespace hanabi {

enum class DatasetKind { Logs, Rewards };

const char* dataset_kind_name(DatasetKind k); // "HanabiLogs" / "HanabiRewards"

struct LogsRecord {
  std::string game_id;
  int turn_index = 0;
  std::string scaffold;
  int player_count = 0;
  uint64_t seed = 0;
  std::string model;
  std::string system_prompt;
  std::string user_prompt;
  std::string response;
  std::optional<std::string> reasoning_trace; // emitted only when present

  bool operator==(const LogsRecord&) const = default;
};

struct RewardsRecord {
  LogsRecord base;
  std::vector<std::string> legal_moves;          // index order
  std::vector<std::pair<int, double>> ratings;   // every legal move exactly once
  int chosen_action = 0;

  bool operator==(const RewardsRecord&) const = default;
};

struct ExportStats {
  int games_seen = 0;
  int games_exported = 0;
  int games_rejected = 0; // replay violations or aborted games
  int turns_exported = 0;
  int turns_skipped = 0; // rewards only: synthesized-rating turns

  bool operator==(const ExportStats&) const = default;
};

// Writes {out_dir}/records.jsonl and {out_dir}/manifest.json. Games that fail
// validate_trajectory (or never finished) are refused and listed in the
// manifest; Rewards lines whose ratings were synthesized by the fallback
// policy are skipped and counted.
ExportStats export_dataset(const std::vector<GameRecord>& games, DatasetKind which,
                           const std::filesystem::path& out_dir);

std::vector<LogsRecord> import_logs(const std::filesystem::path& jsonl_file);
std::vector<RewardsRecord> import_rewards(const std::filesystem::path& jsonl_file);

// Re-writes imported records exactly as export does (round-trip identity).
void write_logs_lines(const std::vector<LogsRecord>& records, std::ostream& out);
void write_rewards_lines(const std::vector<RewardsRecord>& records, std::ostream& out);

// Schema re-validation of a JSONL file; returns one message per bad line.
std::vector<std::string> validate_dataset_file(DatasetKind which,
                                               const std::filesystem::path& jsonl_file);

} // namespace hanabi

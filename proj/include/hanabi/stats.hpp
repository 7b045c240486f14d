#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hanabi {

// Interquartile mean with fractional endpoint weights: each sorted value
// carries the overlap of [i, i+1) with [n/4, 3n/4). Throws on empty input.
double interquartile_mean(const std::vector<double>& values);

struct BootstrapCI {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const BootstrapCI&) const = default;
};

struct ScoreSummary {
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0; // sample standard deviation, 0 when n < 2
  double iqm = 0.0;    // plain mean when degenerate
  BootstrapCI ci{};    // seeded percentile bootstrap of the location statistic
  bool degenerate = false; // fewer than 4 scores

  bool operator==(const ScoreSummary&) const = default;
};

ScoreSummary summarize_scores(const std::vector<double>& scores,
                              int bootstrap_resamples = 2000, uint64_t seed = 17);

struct IqmCi {
  double iqm = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool degenerate = false; // fewer than 4 scores: plain mean instead

  bool operator==(const IqmCi&) const = default;
};

// Location statistic with a seeded percentile-bootstrap 95% interval;
// ci_low <= iqm <= ci_high always holds.
IqmCi iqm_ci(const std::vector<double>& scores, int n_bootstrap = 2000, uint64_t seed = 17);

struct ReportRow {
  int player_count = 0;
  std::string scaffold;
  ScoreSummary summary;
};

// Fixed-width table: players, scaffold, n, mean+-std, IQM [lo, hi].
std::string format_report(const std::vector<ReportRow>& rows);

} // namespace hanabi

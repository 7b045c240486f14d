#include "hanabi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hanabi/rng.hpp"

namespace hanabi {

double interquartile_mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("interquartile_mean of empty input");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double lo = n / 4.0;
  const double hi = 3.0 * n / 4.0;
  double weight_sum = 0.0;
  double value_sum = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const double w = std::max(0.0, std::min(static_cast<double>(i + 1), hi) -
                                       std::max(static_cast<double>(i), lo));
    weight_sum += w;
    value_sum += w * sorted[i];
  }
  return value_sum / weight_sum;
}

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Percentile by linear interpolation over the sorted sample at q * (n - 1).
double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

ScoreSummary summarize_scores(const std::vector<double>& scores, int bootstrap_resamples,
                              uint64_t seed) {
  ScoreSummary s;
  s.n = static_cast<int>(scores.size());
  if (scores.empty()) {
    s.degenerate = true;
    return s;
  }
  s.mean = mean_of(scores);
  if (s.n >= 2) {
    double acc = 0.0;
    for (double x : scores) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(s.n - 1));
  }
  s.degenerate = s.n < 4;
  s.iqm = s.degenerate ? s.mean : interquartile_mean(scores);

  if (bootstrap_resamples > 0) {
    Rng rng(derive_seed(seed, static_cast<uint64_t>(s.n)));
    std::vector<double> stats;
    stats.reserve(static_cast<size_t>(bootstrap_resamples));
    std::vector<double> resample(scores.size());
    for (int b = 0; b < bootstrap_resamples; ++b) {
      for (size_t i = 0; i < scores.size(); ++i) {
        resample[i] = scores[rng.bounded(static_cast<uint64_t>(scores.size()))];
      }
      stats.push_back(s.degenerate ? mean_of(resample) : interquartile_mean(resample));
    }
    std::sort(stats.begin(), stats.end());
    s.ci.lo = std::min(percentile(stats, 0.025), s.iqm);
    s.ci.hi = std::max(percentile(stats, 0.975), s.iqm);
  } else {
    s.ci.lo = s.ci.hi = s.iqm;
  }
  return s;
}

IqmCi iqm_ci(const std::vector<double>& scores, int n_bootstrap, uint64_t seed) {
  ScoreSummary s = summarize_scores(scores, n_bootstrap, seed);
  return IqmCi{s.iqm, s.ci.lo, s.ci.hi, s.degenerate};
}

std::string format_report(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "players" << std::setw(24) << "scaffold" << std::right
     << std::setw(5) << "n" << std::setw(16) << "mean+-std" << std::setw(8) << "IQM"
     << "  95% CI\n";
  os << std::string(78, '-') << "\n";
  for (const auto& row : rows) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(2) << row.summary.mean << " +- "
       << std::setprecision(2) << row.summary.stddev;
    os << std::left << std::setw(8) << row.player_count << std::setw(24) << row.scaffold
       << std::right << std::setw(5) << row.summary.n << std::setw(16) << ms.str()
       << std::setw(8) << std::fixed << std::setprecision(2) << row.summary.iqm << "  ["
       << std::setprecision(2) << row.summary.ci.lo << ", " << std::setprecision(2)
       << row.summary.ci.hi << "]";
    if (row.summary.degenerate) os << "  (degenerate)";
    os << "\n";
  }
  os << std::string(78, '-') << "\n";
  os << "IQM uses fractional-weight trimming of the outer quarters; the interval is a\n"
        "seeded 95% percentile bootstrap of the same statistic.\n";
  return os.str();
}

} // namespace hanabi

/*
 * Copyright 2026 The hdrqa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Subjective-test bookkeeping: double-stimulus session plans, ITU-R
// BT.500-13 Annex 2 outlier screening, MOS with 95% confidence intervals,
// and the correlation statistics (Pearson, Spearman, RMSE) used to score
// objective metrics against MOS.

#ifndef HDRQA_STATS_HPP
#define HDRQA_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hdrqa/error.hpp"
#include "hdrqa/rng.hpp"

namespace hdrqa {

enum class ImpairmentCategory { non_compression, compression };

inline const char* category_name(ImpairmentCategory c) {
  return c == ImpairmentCategory::compression ? "compression" : "non_compression";
}

inline ImpairmentCategory parse_category(const std::string& s) {
  if (s == "compression") return ImpairmentCategory::compression;
  if (s == "non_compression") return ImpairmentCategory::non_compression;
  fail(errc::format, "unknown impairment category '" + s + "'");
}

struct ClipInfo {
  std::string id;
  ImpairmentCategory category = ImpairmentCategory::non_compression;
  std::string sequence;
};

/// Subjects x clips matrix of integer ratings on the 1 (worst) .. 10
/// (identical) scale. Dummy/training presentations are excluded before
/// construction; missing cells are not representable.
struct ScoreTable {
  std::vector<std::string> subjects;
  std::vector<ClipInfo> clips;
  std::vector<int> scores;  // row-major: subjects.size() rows of clips.size()

  int score(std::size_t subject, std::size_t clip) const {
    return scores[subject * clips.size() + clip];
  }

  void validate() const {
    require(!subjects.empty() && !clips.empty(), errc::format, "score table: empty");
    require(scores.size() == subjects.size() * clips.size(), errc::format,
            "score table: matrix size mismatch");
    for (std::size_t s = 0; s < subjects.size(); ++s)
      for (std::size_t c = 0; c < clips.size(); ++c)
        require(score(s, c) >= 1 && score(s, c) <= 10, errc::format,
                "score table: subject '" + subjects[s] + "', clip '" + clips[c].id +
                    "' is outside 1..10");
  }
};

inline ScoreTable remove_subjects(const ScoreTable& in, const std::vector<std::string>& drop) {
  ScoreTable out;
  out.clips = in.clips;
  for (std::size_t s = 0; s < in.subjects.size(); ++s) {
    if (std::find(drop.begin(), drop.end(), in.subjects[s]) != drop.end()) continue;
    out.subjects.push_back(in.subjects[s]);
    for (std::size_t c = 0; c < in.clips.size(); ++c) out.scores.push_back(in.score(s, c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Session plans

enum class SessionEventKind { reference, gray, test, vote };

inline const char* session_event_name(SessionEventKind k) {
  switch (k) {
    case SessionEventKind::reference: return "reference";
    case SessionEventKind::gray: return "gray";
    case SessionEventKind::test: return "test";
    case SessionEventKind::vote: return "vote";
  }
  return "?";
}

struct SessionEvent {
  SessionEventKind kind;
  double seconds;
  std::string clip_id;
  bool discard;  // true for dummy stabilization pairs
};

struct SessionPlan {
  std::vector<SessionEvent> events;
  int dummy_count = 0;
};

/// Double-stimulus plan: per pair, reference 10 s, gray 3 s, test 10 s, then
/// a 4 s gray/vote interval. Dummy pairs (scores to be discarded) come
/// first, drawn from the clip list; the scored order is a seeded shuffle.
inline SessionPlan make_session_plan(const std::vector<std::string>& clip_ids, int dummy_count,
                                     std::uint64_t seed) {
  require(!clip_ids.empty(), errc::usage, "session plan: no clips");
  require(dummy_count >= 0, errc::usage, "session plan: negative dummy count");

  Xoshiro256pp rng(seed);
  SessionPlan plan;
  plan.dummy_count = dummy_count;

  auto push_pair = [&](const std::string& id, bool discard) {
    plan.events.push_back({SessionEventKind::reference, 10.0, id, discard});
    plan.events.push_back({SessionEventKind::gray, 3.0, id, discard});
    plan.events.push_back({SessionEventKind::test, 10.0, id, discard});
    plan.events.push_back({SessionEventKind::vote, 4.0, id, discard});
  };

  for (int i = 0; i < dummy_count; ++i)
    push_pair(clip_ids[rng.next_below(clip_ids.size())], true);

  std::vector<std::string> order = clip_ids;
  deterministic_shuffle(order, rng);
  for (const std::string& id : order) push_pair(id, false);
  return plan;
}

// ---------------------------------------------------------------------------
// BT.500-13 Annex 2 outlier screening

struct SubjectScreening {
  std::string subject;
  int p = 0;  // scores strictly above the upper threshold
  int q = 0;  // scores strictly below the lower threshold
  double exceed_ratio = 0.0;  // (p+q)/clips
  double balance = 0.0;       // |p-q|/(p+q), 0 when p+q == 0
  bool rejected = false;
};

struct ScreeningResult {
  std::vector<std::string> rejected;
  std::vector<SubjectScreening> diagnostics;
  bool low_confidence = false;  // single-clip table
};

/// Per clip: mean, sample std and population kurtosis beta2 = m4/m2^2 decide
/// the thresholds (mean +/- 2s for 2 <= beta2 <= 4, else mean +/- sqrt(20)s).
/// A subject is rejected iff (P+Q)/clips > 0.05 and |P-Q|/(P+Q) < 0.3.
inline ScreeningResult screen_outliers(const ScoreTable& table) {
  table.validate();
  require(table.subjects.size() >= 2, errc::usage, "screen_outliers: need at least two subjects");

  const std::size_t ns = table.subjects.size();
  const std::size_t nc = table.clips.size();
  ScreeningResult result;
  result.low_confidence = nc < 2;

  std::vector<double> upper(nc), lower(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    double mean = 0.0;
    for (std::size_t s = 0; s < ns; ++s) mean += table.score(s, c);
    mean /= static_cast<double>(ns);
    double m2 = 0.0, m4 = 0.0, ss = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      double d = table.score(s, c) - mean;
      m2 += d * d;
      m4 += d * d * d * d;
      ss += d * d;
    }
    m2 /= static_cast<double>(ns);
    m4 /= static_cast<double>(ns);
    double sample_std = std::sqrt(ss / static_cast<double>(ns - 1));
    double beta2 = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
    double k = (beta2 >= 2.0 && beta2 <= 4.0) ? 2.0 : std::sqrt(20.0);
    upper[c] = mean + k * sample_std;
    lower[c] = mean - k * sample_std;
  }

  for (std::size_t s = 0; s < ns; ++s) {
    SubjectScreening d;
    d.subject = table.subjects[s];
    for (std::size_t c = 0; c < nc; ++c) {
      double u = table.score(s, c);
      if (u > upper[c]) ++d.p;
      if (u < lower[c]) ++d.q;
    }
    d.exceed_ratio = static_cast<double>(d.p + d.q) / static_cast<double>(nc);
    d.balance = (d.p + d.q) > 0
                    ? std::abs(static_cast<double>(d.p - d.q)) / static_cast<double>(d.p + d.q)
                    : 0.0;
    d.rejected = d.exceed_ratio > 0.05 && d.balance < 0.3;
    if (d.rejected) result.rejected.push_back(d.subject);
    result.diagnostics.push_back(d);
  }
  return result;
}

// ---------------------------------------------------------------------------
// MOS

struct MosEntry {
  std::string clip;
  double mos = 0.0;
  double ci95 = 0.0;  // half-width, 1.96 * s / sqrt(n)
  int n = 0;
};

struct MosResult {
  std::vector<MosEntry> entries;
  bool ci_warning = false;  // fewer than 2 subjects: CI reported as 0
};

inline MosResult mos(const ScoreTable& table) {
  table.validate();
  const std::size_t ns = table.subjects.size();
  MosResult result;
  result.ci_warning = ns < 2;
  for (std::size_t c = 0; c < table.clips.size(); ++c) {
    MosEntry e;
    e.clip = table.clips[c].id;
    e.n = static_cast<int>(ns);
    double sum = 0.0;
    for (std::size_t s = 0; s < ns; ++s) sum += table.score(s, c);
    e.mos = sum / static_cast<double>(ns);
    if (ns >= 2) {
      double ss = 0.0;
      for (std::size_t s = 0; s < ns; ++s) {
        double d = table.score(s, c) - e.mos;
        ss += d * d;
      }
      double sample_std = std::sqrt(ss / static_cast<double>(ns - 1));
      e.ci95 = 1.96 * sample_std / std::sqrt(static_cast<double>(ns));
    }
    result.entries.push_back(e);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Correlation statistics

namespace detail {

inline void check_correlation_args(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), errc::usage, "correlation: length mismatch");
  require(x.size() >= 3, errc::usage, "correlation: need at least three points");
}

inline bool is_constant(const std::vector<double>& x) {
  for (double v : x)
    if (v != x.front()) return false;
  return true;
}

}  // namespace detail

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  detail::check_correlation_args(x, y);
  require(!detail::is_constant(x) && !detail::is_constant(y), errc::numeric,
          "pearson: undefined for a constant vector");
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Ranks with average-rank tie handling, 1-based.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  detail::check_correlation_args(x, y);
  require(!detail::is_constant(x) && !detail::is_constant(y), errc::numeric,
          "spearman: undefined for a constant vector");
  return pearson(average_ranks(x), average_ranks(y));
}

inline double rmse(const std::vector<double>& x, const std::vector<double>& y) {
  detail::check_correlation_args(x, y);
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(x.size()));
}

/// Least-squares a*x+b minimizing sum (a*x+b - y)^2; used for the optional
/// fitted-RMSE report column.
inline std::pair<double, double> linear_fit(const std::vector<double>& x,
                                            const std::vector<double>& y) {
  detail::check_correlation_args(x, y);
  require(!detail::is_constant(x), errc::numeric, "linear_fit: undefined for constant x");
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  double a = sxy / sxx;
  return {a, my - a * mx};
}

}  // namespace hdrqa

#endif  // HDRQA_STATS_HPP

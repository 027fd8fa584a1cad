/* Time-point segmentation, per-segment measure averages, linear trends and
 * group comparison of conversations.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/measures.hpp"
#include "wordgraph/text.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wordgraph {

inline constexpr std::size_t kMinConversationNouns = 15;
inline constexpr std::size_t kMinSegmentNouns = 5;

/// Half-open ranges over the sentences and nouns of a NounSequence.
struct Segment {
  std::size_t sentence_begin = 0, sentence_end = 0;
  std::size_t token_begin = 0, token_end = 0;
  std::size_t noun_begin = 0, noun_end = 0;

  std::size_t noun_count() const { return noun_end - noun_begin; }
  bool operator==(const Segment &) const = default;
};

/// Splits the sequence into T consecutive runs of whole sentences. Cut j is
/// placed at the sentence break whose token position is nearest j*W/T; the
/// boundaries minimize the total displacement subject to every segment
/// holding at least `min_segment_nouns` noun tokens (earliest boundaries win
/// ties). Throws Error(Constraint) below `min_total_nouns` nouns or when no
/// placement satisfies the per-segment minimum.
std::vector<Segment> segment(const NounSequence &seq, std::size_t T,
                             std::size_t min_total_nouns = kMinConversationNouns,
                             std::size_t min_segment_nouns = kMinSegmentNouns);

/// Keeps only the sentences whose utterance index passes `keep`, renumbering
/// tokens and sentences. Utterance indices are preserved.
template <typename Pred> NounSequence select_utterances(const NounSequence &seq, Pred keep);

struct SeriesOptions {
  bool token_weighted = false;  // weight nouns by occurrence count
  unsigned threads = 1;
};

struct SegmentPoint {
  std::size_t t = 0;  // 1-based
  Segment segment;
  std::vector<std::string> nouns;  // unique, lexicographic
  std::vector<double> values;      // aligned with SegmentSeries::columns
};

struct SegmentSeries {
  std::string group;
  std::vector<std::string> columns;  // measure names, plus "polysemy:log2"
  std::vector<SegmentPoint> points;
  std::size_t degenerate_pairs = 0;
};

/// Column names produced for a measure selection.
std::vector<std::string> series_columns(const std::vector<MeasureId> &measures);

/// Averages each measure over the unique nouns of every segment (similarity
/// over their unordered pairs). Throws Error(Constraint) when a segment has
/// fewer than two unique nouns and a similarity measure is requested.
SegmentSeries compute_series(const Measures &measures, const NounSequence &seq,
                             const std::vector<Segment> &segments,
                             const std::vector<MeasureId> &selection,
                             const SeriesOptions &options = {}, std::string group = {});

enum class Trend { Convergence, Divergence, Flat };

const char *to_string(Trend t);

inline constexpr double kDefaultTrendEpsilon = 1e-9;

struct TrendFit {
  double slope = 0;
  double intercept = 0;
  Trend trend = Trend::Flat;
};

Trend classify_slope(double slope, double epsilon = kDefaultTrendEpsilon);

/// Ordinary least squares of y = k t + b over t = 1..n. Needs n >= 2.
TrendFit fit_trend(std::span<const double> values, double epsilon = kDefaultTrendEpsilon);

/// One fit per column of the series.
std::vector<TrendFit> fit_series(const SegmentSeries &series,
                                 double epsilon = kDefaultTrendEpsilon);

// ---- grouping ---------------------------------------------------------------

/// Cut marker: an utterance index, or the first utterance whose speaker
/// matches a regular expression.
struct Marker {
  std::optional<std::size_t> utterance;
  std::string speaker_regex;

  /// Resolves to an utterance index; nullopt when the regex matches nothing.
  std::optional<std::size_t> resolve(const Transcript &t) const;
};

struct IdeaTag {
  std::string id;
  bool success = false;
  std::vector<std::pair<std::size_t, std::size_t>> utterances;  // [begin, end)
  std::optional<Marker> feedback_marker;
  std::optional<Marker> evaluation_marker;
};

struct ConversationTags {
  std::string file;
  std::string subject;
  std::vector<std::pair<std::string, std::vector<std::string>>> roles;  // role -> speakers
  std::vector<IdeaTag> ideas;
  std::optional<Marker> feedback_marker;
  std::optional<Marker> evaluation_marker;
};

struct Grouping {
  std::vector<ConversationTags> conversations;
  const ConversationTags *find(const std::string &file) const;
};

/// Parses the grouping JSON document (version 1). Throws Error(Input).
Grouping parse_grouping(const nlohmann::json &doc);

enum class Scheme { Whole, Role, Success, Idea, Feedback, Evaluation };

const char *to_string(Scheme s);
Scheme parse_scheme(std::string_view s);
/// Comma-separated list or "all".
std::vector<Scheme> parse_scheme_list(std::string_view s);

struct Conversation {
  std::string file;
  std::string subject;
  Transcript transcript;
  NounSequence nouns;
  const ConversationTags *tags = nullptr;
};

struct CompareOptions {
  std::size_t T = 3;  // points per series; marker schemes use T/2 per side
  SeriesOptions series;
  double epsilon = kDefaultTrendEpsilon;
};

struct GroupResult {
  std::string subject;
  Scheme scheme = Scheme::Whole;
  std::string group;
  SegmentSeries series;
  std::vector<TrendFit> fits;
};

struct GroupFailure {
  std::string subject;
  Scheme scheme = Scheme::Whole;
  std::string group;
  std::string code;
  std::string message;
};

struct GroupSummary {
  Scheme scheme = Scheme::Whole;
  std::string group;
  std::string column;
  std::size_t subjects = 0;
  double mean_slope = 0;
  Trend trend = Trend::Flat;
};

struct Comparison {
  std::vector<std::string> columns;
  std::vector<GroupResult> results;   // sorted by subject, scheme, group
  std::vector<GroupFailure> failures;
  std::vector<GroupSummary> summary;  // sorted by scheme, group, column index
};

/// Builds every group of every scheme, segments it, averages measures and
/// fits trends. Groups that break the noun minimums become failures; missing
/// tags for a requested scheme raise Error(Input). Output order does not
/// depend on the order of `conversations`.
Comparison compare_groups(const Measures &measures, const std::vector<Conversation> &conversations,
                          const std::vector<Scheme> &schemes,
                          const std::vector<MeasureId> &selection, const CompareOptions &options);

/// Long-format CSV: subject,scheme,group,t,measure_id,value.
std::string to_long_csv(const Comparison &c);

// ---- implementation ---------------------------------------------------------

template <typename Pred> NounSequence select_utterances(const NounSequence &seq, Pred keep) {
  NounSequence out;
  out.mode = seq.mode;
  out.dropped = seq.dropped;
  std::size_t token_start = 0, noun = 0;
  for (std::size_t s = 0; s < seq.sentence_tokens.size(); ++s) {
    const std::size_t token_end = token_start + seq.sentence_tokens[s];
    const std::size_t u = seq.sentence_utterance[s];
    const bool kept = keep(u);
    const std::size_t new_sentence = out.sentence_tokens.size();
    for (; noun < seq.nouns.size() && seq.nouns[noun].token_index < token_end; ++noun) {
      if (!kept)
        continue;
      NounToken n = seq.nouns[noun];
      n.token_index = out.word_count + (n.token_index - token_start);
      n.sentence_index = new_sentence;
      out.nouns.push_back(std::move(n));
    }
    if (kept) {
      out.sentence_tokens.push_back(seq.sentence_tokens[s]);
      out.sentence_utterance.push_back(u);
      out.word_count += seq.sentence_tokens[s];
    }
    token_start = token_end;
  }
  return out;
}

} // namespace wordgraph

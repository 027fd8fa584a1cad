/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/dynamics.hpp"
#include "wordgraph/error.hpp"
#include "wordgraph/format.hpp"
#include "wordgraph/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <regex>
#include <set>

namespace wordgraph {

std::vector<Segment> segment(const NounSequence &seq, std::size_t T, std::size_t min_total_nouns,
                             std::size_t min_segment_nouns) {
  if (T < 2)
    throw Error(ErrorCode::Input, "number of time points must be at least 2 (got " +
                                      std::to_string(T) + ")");
  const std::size_t total = seq.nouns.size();
  if (total < min_total_nouns)
    throw Error(ErrorCode::Constraint,
                "conversation has " + std::to_string(total) + " nouns; minimum " +
                    std::to_string(min_total_nouns) + " nouns required");

  const std::size_t S = seq.sentence_tokens.size();
  std::vector<std::size_t> tokens_before(S + 1, 0), nouns_before(S + 1, 0);
  for (std::size_t s = 0; s < S; ++s)
    tokens_before[s + 1] = tokens_before[s] + seq.sentence_tokens[s];
  for (const auto &n : seq.nouns)
    ++nouns_before[n.sentence_index + 1];
  for (std::size_t s = 0; s < S; ++s)
    nouns_before[s + 1] += nouns_before[s];
  const std::size_t W = tokens_before[S];

  // cost of placing cut j at sentence break s, scaled by T to stay integral
  auto cost = [&](std::size_t j, std::size_t s) -> std::uint64_t {
    const std::int64_t a = static_cast<std::int64_t>(T * tokens_before[s]);
    const std::int64_t b = static_cast<std::int64_t>(W * j);
    return static_cast<std::uint64_t>(a > b ? a - b : b - a);
  };
  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  // best[j][s]: cuts 1..j placed, cut j at break s
  std::vector<std::vector<std::uint64_t>> best(T, std::vector<std::uint64_t>(S + 1, kInf));
  std::vector<std::vector<std::size_t>> from(T, std::vector<std::size_t>(S + 1, 0));
  best[0][0] = 0;
  for (std::size_t j = 1; j < T; ++j) {
    for (std::size_t s = 1; s < S; ++s) {
      for (std::size_t p = 0; p < s; ++p) {
        if (best[j - 1][p] == kInf || nouns_before[s] - nouns_before[p] < min_segment_nouns)
          continue;
        const std::uint64_t c = best[j - 1][p] + cost(j, s);
        if (c < best[j][s]) {
          best[j][s] = c;
          from[j][s] = p;
        }
      }
    }
  }
  std::size_t last = S + 1;
  std::uint64_t last_cost = kInf;
  for (std::size_t s = 0; s < S; ++s) {
    if (best[T - 1][s] == kInf || nouns_before[S] - nouns_before[s] < min_segment_nouns)
      continue;
    if (best[T - 1][s] < last_cost) {
      last_cost = best[T - 1][s];
      last = s;
    }
  }
  if (last > S)
    throw Error(ErrorCode::Constraint,
                "cannot split " + std::to_string(total) + " nouns in " + std::to_string(S) +
                    " sentences into " + std::to_string(T) + " time points with at least " +
                    std::to_string(min_segment_nouns) + " nouns each");

  std::vector<std::size_t> cuts(T + 1);
  cuts[T] = S;
  cuts[T - 1] = last;
  for (std::size_t j = T - 1; j > 0; --j)
    cuts[j - 1] = from[j][cuts[j]];

  std::vector<Segment> out(T);
  for (std::size_t j = 0; j < T; ++j) {
    Segment &g = out[j];
    g.sentence_begin = cuts[j];
    g.sentence_end = cuts[j + 1];
    g.token_begin = tokens_before[cuts[j]];
    g.token_end = tokens_before[cuts[j + 1]];
    g.noun_begin = nouns_before[cuts[j]];
    g.noun_end = nouns_before[cuts[j + 1]];
  }
  return out;
}

std::vector<std::string> series_columns(const std::vector<MeasureId> &measures) {
  std::vector<std::string> cols;
  for (const auto &m : measures) {
    cols.push_back(m.name());
    if (m.kind() == MeasureKind::Polysemy)
      cols.push_back("polysemy:log2");
  }
  return cols;
}

SegmentSeries compute_series(const Measures &measures, const NounSequence &seq,
                             const std::vector<Segment> &segments,
                             const std::vector<MeasureId> &selection, const SeriesOptions &options,
                             std::string group) {
  const Lexicon &lex = measures.engine().lexicon();
  SegmentSeries series;
  series.group = std::move(group);
  series.columns = series_columns(selection);
  const bool any_similarity =
      std::any_of(selection.begin(), selection.end(), [](const MeasureId &m) { return m.is_similarity(); });

  for (std::size_t t = 0; t < segments.size(); ++t) {
    const Segment &g = segments[t];
    std::map<std::string, double> counts;
    for (std::size_t i = g.noun_begin; i < g.noun_end; ++i)
      counts[seq.nouns[i].noun] += 1.0;

    SegmentPoint point;
    point.t = t + 1;
    point.segment = g;
    std::vector<WordIndex> words;
    std::vector<double> weights;
    for (const auto &[noun, c] : counts) {
      auto w = lex.find_exact(noun);
      if (!w)
        throw Error(ErrorCode::Internal, "extracted noun '" + noun + "' is not in the lexicon");
      point.nouns.push_back(noun);
      words.push_back(*w);
      weights.push_back(options.token_weighted ? c : 1.0);
    }
    if (any_similarity && words.size() < 2)
      throw Error(ErrorCode::Constraint, "time point " + std::to_string(t + 1) + " has " +
                                             std::to_string(words.size()) +
                                             " unique nouns; similarity needs at least 2");

    for (const auto &m : selection) {
      if (m.is_similarity()) {
        if (!options.token_weighted) {
          SweepDiagnostics diag;
          point.values.push_back(measures.average_pairwise(words, m, options.threads, &diag));
          series.degenerate_pairs += diag.degenerate_pairs;
          continue;
        }
        double sum = 0, weight = 0;
        for (std::size_t i = 0; i < words.size(); ++i)
          for (std::size_t j = i + 1; j < words.size(); ++j) {
            const double w = weights[i] * weights[j];
            sum += w * measures.similarity(words[i], words[j], m);
            weight += w;
          }
        point.values.push_back(sum / weight);
        continue;
      }
      double sum = 0, weight = 0, log_sum = 0;
      for (std::size_t i = 0; i < words.size(); ++i) {
        const double v = measures.word_value(words[i], m);
        sum += weights[i] * v;
        log_sum += weights[i] * std::log2(v);
        weight += weights[i];
      }
      point.values.push_back(sum / weight);
      if (m.kind() == MeasureKind::Polysemy)
        point.values.push_back(log_sum / weight);
    }
    series.points.push_back(std::move(point));
  }
  return series;
}

const char *to_string(Trend t) {
  switch (t) {
  case Trend::Convergence: return "convergence";
  case Trend::Divergence: return "divergence";
  case Trend::Flat: return "flat";
  }
  return "flat";
}

Trend classify_slope(double slope, double epsilon) {
  if (slope > epsilon)
    return Trend::Convergence;
  if (slope < -epsilon)
    return Trend::Divergence;
  return Trend::Flat;
}

TrendFit fit_trend(std::span<const double> values, double epsilon) {
  const std::size_t n = values.size();
  if (n < 2)
    throw Error(ErrorCode::Input, "a trend needs at least 2 time points");
  const double t_mean = (static_cast<double>(n) + 1.0) / 2.0;
  double y_mean = 0;
  for (double y : values)
    y_mean += y;
  y_mean /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = static_cast<double>(i + 1) - t_mean;
    sxy += dt * (values[i] - y_mean);
    sxx += dt * dt;
  }
  TrendFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * t_mean;
  fit.trend = classify_slope(fit.slope, epsilon);
  return fit;
}

std::vector<TrendFit> fit_series(const SegmentSeries &series, double epsilon) {
  std::vector<TrendFit> fits;
  std::vector<double> ys(series.points.size());
  for (std::size_t c = 0; c < series.columns.size(); ++c) {
    for (std::size_t t = 0; t < series.points.size(); ++t)
      ys[t] = series.points[t].values[c];
    fits.push_back(fit_trend(ys, epsilon));
  }
  return fits;
}

// ---- grouping ---------------------------------------------------------------

std::optional<std::size_t> Marker::resolve(const Transcript &t) const {
  if (utterance)
    return *utterance < t.utterances.size() ? utterance : std::nullopt;
  std::regex re(speaker_regex);
  for (std::size_t u = 0; u < t.utterances.size(); ++u)
    if (std::regex_search(t.utterances[u].speaker, re))
      return u;
  return std::nullopt;
}

const ConversationTags *Grouping::find(const std::string &file) const {
  for (const auto &c : conversations)
    if (c.file == file)
      return &c;
  return nullptr;
}

namespace {

using nlohmann::json;

[[noreturn]] void bad_grouping(const std::string &where, const std::string &what) {
  throw Error(ErrorCode::Input, "grouping file: " + where + ": " + what);
}

std::optional<Marker> parse_marker(const json &j, const std::string &where) {
  if (j.is_null())
    return std::nullopt;
  Marker m;
  if (j.is_number_unsigned()) {
    m.utterance = j.get<std::size_t>();
    return m;
  }
  if (j.is_object() && j.contains("utterance") && j["utterance"].is_number_unsigned()) {
    m.utterance = j["utterance"].get<std::size_t>();
    return m;
  }
  if (j.is_object() && j.contains("speaker_regex") && j["speaker_regex"].is_string()) {
    m.speaker_regex = j["speaker_regex"].get<std::string>();
    try {
      std::regex check(m.speaker_regex);
    } catch (const std::regex_error &e) {
      bad_grouping(where, std::string("invalid speaker_regex: ") + e.what());
    }
    return m;
  }
  bad_grouping(where, "marker must be an utterance index or {\"speaker_regex\": ...}");
}

std::vector<std::pair<std::size_t, std::size_t>> parse_spans(const json &j, const std::string &where) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  if (!j.is_array())
    bad_grouping(where, "utterances must be a list of [begin, end) pairs");
  for (const auto &s : j) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() || !s[1].is_number_unsigned())
      bad_grouping(where, "utterance span must be [begin, end)");
    auto b = s[0].get<std::size_t>(), e = s[1].get<std::size_t>();
    if (b >= e)
      bad_grouping(where, "empty utterance span [" + std::to_string(b) + ", " + std::to_string(e) + ")");
    spans.emplace_back(b, e);
  }
  return spans;
}

} // namespace

Grouping parse_grouping(const nlohmann::json &doc) {
  if (!doc.is_object())
    bad_grouping("root", "expected an object");
  if (doc.value("version", 0) != 1)
    bad_grouping("root", "unsupported version (expected 1)");
  if (!doc.contains("conversations") || !doc["conversations"].is_array())
    bad_grouping("root", "missing 'conversations' list");
  Grouping g;
  std::set<std::string> files;
  for (std::size_t i = 0; i < doc["conversations"].size(); ++i) {
    const json &c = doc["conversations"][i];
    const std::string where = "conversations[" + std::to_string(i) + "]";
    if (!c.is_object() || !c.contains("file") || !c["file"].is_string())
      bad_grouping(where, "missing 'file'");
    ConversationTags tags;
    tags.file = c["file"].get<std::string>();
    if (!files.insert(tags.file).second)
      bad_grouping(where, "duplicate file '" + tags.file + "'");
    tags.subject = c.value("subject", std::string());
    if (c.contains("roles")) {
      if (!c["roles"].is_object())
        bad_grouping(where, "'roles' must map role names to speaker lists");
      for (const auto &[role, speakers] : c["roles"].items()) {
        if (!speakers.is_array())
          bad_grouping(where, "role '" + role + "' must list speakers");
        std::vector<std::string> list;
        for (const auto &s : speakers) {
          if (!s.is_string())
            bad_grouping(where, "role '" + role + "' must list speaker names");
          list.push_back(s.get<std::string>());
        }
        tags.roles.emplace_back(role, std::move(list));
      }
    }
    if (c.contains("ideas")) {
      if (!c["ideas"].is_array())
        bad_grouping(where, "'ideas' must be a list");
      for (std::size_t k = 0; k < c["ideas"].size(); ++k) {
        const json &idea = c["ideas"][k];
        const std::string iw = where + ".ideas[" + std::to_string(k) + "]";
        if (!idea.is_object() || !idea.contains("id") || !idea["id"].is_string())
          bad_grouping(iw, "missing 'id'");
        if (!idea.contains("success") || !idea["success"].is_boolean())
          bad_grouping(iw, "missing boolean 'success'");
        IdeaTag tag;
        tag.id = idea["id"].get<std::string>();
        tag.success = idea["success"].get<bool>();
        tag.utterances = parse_spans(idea.value("utterances", json::array()), iw);
        tag.feedback_marker = parse_marker(idea.value("feedback_marker", json()), iw);
        tag.evaluation_marker = parse_marker(idea.value("evaluation_marker", json()), iw);
        tags.ideas.push_back(std::move(tag));
      }
    }
    tags.feedback_marker = parse_marker(c.value("feedback_marker", json()), where);
    tags.evaluation_marker = parse_marker(c.value("evaluation_marker", json()), where);
    g.conversations.push_back(std::move(tags));
  }
  return g;
}

const char *to_string(Scheme s) {
  switch (s) {
  case Scheme::Whole: return "whole";
  case Scheme::Role: return "role";
  case Scheme::Success: return "success";
  case Scheme::Idea: return "idea";
  case Scheme::Feedback: return "feedback";
  case Scheme::Evaluation: return "evaluation";
  }
  return "whole";
}

Scheme parse_scheme(std::string_view s) {
  for (Scheme k : {Scheme::Whole, Scheme::Role, Scheme::Success, Scheme::Idea, Scheme::Feedback,
                   Scheme::Evaluation})
    if (s == to_string(k))
      return k;
  throw Error(ErrorCode::Input, "unknown grouping scheme '" + std::string(s) + "'",
              {"whole", "role", "success", "idea", "feedback", "evaluation"});
}

std::vector<Scheme> parse_scheme_list(std::string_view s) {
  if (s == "all")
    return {Scheme::Whole, Scheme::Role, Scheme::Success, Scheme::Idea, Scheme::Feedback,
            Scheme::Evaluation};
  std::vector<Scheme> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos)
      comma = s.size();
    std::string_view item = s.substr(pos, comma - pos);
    if (!item.empty()) {
      Scheme k = parse_scheme(item);
      if (std::find(out.begin(), out.end(), k) == out.end())
        out.push_back(k);
    }
    pos = comma + 1;
  }
  if (out.empty())
    throw Error(ErrorCode::Input, "empty grouping scheme list");
  return out;
}

namespace {

struct Unit {
  std::size_t conversation;
  std::string subject;
  Scheme scheme;
  std::string group;
  std::vector<bool> utterances;  // kept utterances
  std::size_t T;
};

std::vector<bool> span_mask(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>> &spans) {
  std::vector<bool> mask(n, false);
  for (auto [b, e] : spans)
    for (std::size_t u = b; u < std::min(e, n); ++u)
      mask[u] = true;
  return mask;
}

[[noreturn]] void missing_tags(const Conversation &c, Scheme s, const std::string &what) {
  throw Error(ErrorCode::Input, "conversation '" + c.file + "': scheme " + to_string(s) +
                                    " needs " + what + " in the grouping file");
}

void marker_units(const Conversation &c, std::size_t ci, Scheme scheme, std::size_t T,
                  std::vector<Unit> &units) {
  const std::size_t n = c.transcript.utterances.size();
  const char *label = scheme == Scheme::Feedback ? "feedback_marker" : "evaluation_marker";
  auto add = [&](const std::string &prefix, std::vector<bool> mask, const Marker &m) {
    auto at = m.resolve(c.transcript);
    if (!at)
      throw Error(ErrorCode::Input, "conversation '" + c.file + "': " + label +
                                        " does not resolve to an utterance");
    std::vector<bool> before(n, false), after(n, false);
    for (std::size_t u = 0; u < n; ++u)
      (u < *at ? before : after)[u] = mask[u];
    units.push_back({ci, c.subject, scheme, prefix + "before", std::move(before), T / 2});
    units.push_back({ci, c.subject, scheme, prefix + "after", std::move(after), T / 2});
  };
  const auto &conv_marker = scheme == Scheme::Feedback ? c.tags->feedback_marker : c.tags->evaluation_marker;
  bool any = false;
  for (const auto &idea : c.tags->ideas) {
    const auto &m = scheme == Scheme::Feedback ? idea.feedback_marker : idea.evaluation_marker;
    if (!m)
      continue;
    add(idea.id + ":", span_mask(n, idea.utterances), *m);
    any = true;
  }
  if (!any && conv_marker) {
    add("", std::vector<bool>(n, true), *conv_marker);
    any = true;
  }
  if (!any)
    missing_tags(c, scheme, label);
}

std::vector<Unit> build_units(const std::vector<Conversation> &convs, const std::vector<Scheme> &schemes,
                              std::size_t T) {
  std::vector<Unit> units;
  for (std::size_t ci = 0; ci < convs.size(); ++ci) {
    const Conversation &c = convs[ci];
    const std::size_t n = c.transcript.utterances.size();
    for (Scheme s : schemes) {
      if (s != Scheme::Whole && !c.tags)
        missing_tags(c, s, "an entry");
      switch (s) {
      case Scheme::Whole:
        units.push_back({ci, c.subject, s, "all", std::vector<bool>(n, true), T});
        break;
      case Scheme::Role:
        if (c.tags->roles.empty())
          missing_tags(c, s, "'roles'");
        if (c.nouns.mode == ExtractionMode::Pretagged)
          throw Error(ErrorCode::Input, "conversation '" + c.file +
                                            "': role scheme needs speaker labels, which pretagged input lacks");
        for (const auto &[role, speakers] : c.tags->roles) {
          std::vector<bool> mask(n, false);
          for (std::size_t u = 0; u < n; ++u)
            mask[u] = std::find(speakers.begin(), speakers.end(), c.transcript.utterances[u].speaker) !=
                      speakers.end();
          units.push_back({ci, c.subject, s, role, std::move(mask), T});
        }
        break;
      case Scheme::Success:
      case Scheme::Idea:
        if (c.tags->ideas.empty())
          missing_tags(c, s, "'ideas'");
        if (s == Scheme::Idea) {
          for (const auto &idea : c.tags->ideas)
            units.push_back({ci, c.subject, s, idea.id, span_mask(n, idea.utterances), T});
        } else {
          for (bool flag : {true, false}) {
            std::vector<std::pair<std::size_t, std::size_t>> spans;
            for (const auto &idea : c.tags->ideas)
              if (idea.success == flag)
                spans.insert(spans.end(), idea.utterances.begin(), idea.utterances.end());
            if (!spans.empty())
              units.push_back({ci, c.subject, s, flag ? "successful" : "unsuccessful",
                               span_mask(n, spans), T});
          }
        }
        break;
      case Scheme::Feedback:
      case Scheme::Evaluation:
        if (T < 4 || T % 2 != 0)
          throw Error(ErrorCode::Input, "marker schemes split T points evenly before and after the "
                                        "marker; T must be even and at least 4 (got " +
                                            std::to_string(T) + ")");
        marker_units(c, ci, s, T, units);
        break;
      }
    }
  }
  return units;
}

} // namespace

Comparison compare_groups(const Measures &measures, const std::vector<Conversation> &conversations,
                          const std::vector<Scheme> &schemes, const std::vector<MeasureId> &selection,
                          const CompareOptions &options) {
  std::set<std::string> subjects;
  for (const auto &c : conversations)
    if (!subjects.insert(c.subject).second)
      throw Error(ErrorCode::Input, "subject '" + c.subject + "' is used by more than one conversation");

  std::vector<Unit> units = build_units(conversations, schemes, options.T);
  std::vector<std::optional<GroupResult>> results(units.size());
  std::vector<std::optional<GroupFailure>> failures(units.size());
  SeriesOptions inner = options.series;
  inner.threads = 1;
  parallel_for(units.size(), options.series.threads, [&](std::size_t i) {
    const Unit &u = units[i];
    const Conversation &c = conversations[u.conversation];
    NounSequence part = select_utterances(c.nouns, [&](std::size_t k) {
      return k < u.utterances.size() && u.utterances[k];
    });
    try {
      auto segs = segment(part, u.T);
      GroupResult r;
      r.subject = u.subject;
      r.scheme = u.scheme;
      r.group = u.group;
      r.series = compute_series(measures, part, segs, selection, inner, u.group);
      r.fits = fit_series(r.series, options.epsilon);
      results[i] = std::move(r);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::Constraint)
        throw;
      failures[i] = GroupFailure{u.subject, u.scheme, u.group, to_string(e.code()), e.what()};
    }
  });

  Comparison out;
  out.columns = series_columns(selection);
  for (auto &r : results)
    if (r)
      out.results.push_back(std::move(*r));
  for (auto &f : failures)
    if (f)
      out.failures.push_back(std::move(*f));
  auto key = [](const auto &x) { return std::tie(x.subject, x.scheme, x.group); };
  std::sort(out.results.begin(), out.results.end(),
            [&](const GroupResult &a, const GroupResult &b) { return key(a) < key(b); });
  std::sort(out.failures.begin(), out.failures.end(),
            [&](const GroupFailure &a, const GroupFailure &b) { return key(a) < key(b); });

  // mean slope per (scheme, group, column), subjects in sorted order
  std::map<std::pair<Scheme, std::string>, std::vector<const GroupResult *>> by_group;
  for (const auto &r : out.results)
    by_group[{r.scheme, r.group}].push_back(&r);
  for (const auto &[k, members] : by_group) {
    for (std::size_t c = 0; c < out.columns.size(); ++c) {
      GroupSummary s;
      s.scheme = k.first;
      s.group = k.second;
      s.column = out.columns[c];
      s.subjects = members.size();
      for (const GroupResult *r : members)
        s.mean_slope += r->fits[c].slope;
      s.mean_slope /= static_cast<double>(members.size());
      s.trend = classify_slope(s.mean_slope, options.epsilon);
      out.summary.push_back(std::move(s));
    }
  }
  return out;
}

std::string to_long_csv(const Comparison &c) {
  std::string out = "subject,scheme,group,t,measure_id,value\n";
  for (const auto &r : c.results)
    for (const auto &p : r.series.points)
      for (std::size_t k = 0; k < c.columns.size(); ++k) {
        out += csv_field(r.subject);
        out += ',';
        out += to_string(r.scheme);
        out += ',';
        out += csv_field(r.group);
        out += ',';
        out += std::to_string(p.t);
        out += ',';
        out += c.columns[k];
        out += ',';
        out += format_double(p.values[k]);
        out += '\n';
      }
  return out;
}

} // namespace wordgraph

/* Divergence-ranked idea suggestion and the accept/reject session loop.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/measures.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wordgraph {

struct Proposal {
  std::string noun;  // lexicon form
  double average = 0;  // average similarity of base + noun
  double delta = 0;    // average - base average
};

struct Ranking {
  std::vector<std::string> base;  // resolved, lexicographic
  double base_average = 0;
  std::vector<Proposal> proposals;  // ascending average, then noun
  std::vector<std::string> unresolved;
  std::vector<std::string> duplicates;  // candidates already in the base or repeated
};

/// Projects base + c for every candidate and ranks the most divergent
/// (lowest average) first. Unresolvable and duplicate candidates are listed,
/// not fatal. Throws Error(Input) when a base noun does not resolve and
/// Error(Constraint) for fewer than two distinct base nouns.
Ranking rank_candidates(const Measures &measures, const std::vector<std::string> &base,
                        const std::vector<std::string> &candidates, MeasureId measure,
                        unsigned threads = 1);

MeasureId default_session_measure();

enum class Decision { Accepted, Rejected };

const char *to_string(Decision d);
Decision parse_decision(std::string_view s);

struct HistoryEntry {
  std::string noun;
  Decision decision = Decision::Rejected;
  double average = 0;  // base average after the decision
};

/// One designer's suggestion loop. Not thread-safe; callers serialize access
/// per session.
class IdeationSession {
public:
  IdeationSession(const Measures &measures, std::string id, const std::vector<std::string> &base,
                  MeasureId measure, const std::vector<std::string> &candidates);

  const std::string &id() const { return id_; }
  MeasureId measure() const { return measure_; }
  const std::vector<std::string> &base() const { return base_; }
  const std::vector<std::string> &pool() const { return pool_; }
  const std::vector<std::string> &unresolved() const { return unresolved_; }
  const std::vector<HistoryEntry> &history() const { return history_; }
  double average() const { return average_; }

  /// Top-k undecided candidates, most divergent first; k == 0 means all.
  std::vector<Proposal> propose(std::size_t k);

  /// Throws Error(Input) for a noun outside the pool and Error(Constraint)
  /// for one not yet proposed or already decided.
  const HistoryEntry &decide(std::string_view noun, Decision d);

  nlohmann::ordered_json to_json() const;

private:
  const Measures &measures_;
  std::string id_;
  MeasureId measure_;
  std::vector<std::string> base_;
  std::vector<std::string> pool_;  // resolved candidates, input order
  std::vector<std::string> unresolved_;
  std::set<std::string> proposed_;
  std::set<std::string> decided_;
  std::vector<HistoryEntry> history_;
  double average_ = 0;
};

} // namespace wordgraph

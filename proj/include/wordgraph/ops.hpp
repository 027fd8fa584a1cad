/* JSON request/response operations shared by the C API, the CLI and the
 * HTTP service, so every front end produces identical documents.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/correlation.hpp"
#include "wordgraph/dynamics.hpp"
#include "wordgraph/error.hpp"
#include "wordgraph/ideation.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace wordgraph {

using Json = nlohmann::ordered_json;

const char *version();

/// Run settings recorded verbatim in every report. Thread count is left out
/// because results do not depend on it.
struct RunConfig {
  std::string db_path;
  std::string cache_path;
  std::string measures = "all";
  std::size_t T = 3;
  std::string mode = "dictionary";
  bool collocations = false;
  bool strict = false;
  std::string format = "csv";
  std::uint64_t seed = 42;
  std::string schemes = "whole";
  bool token_weighted = false;
  double epsilon = kDefaultTrendEpsilon;
  double log_base = 2.718281828459045;

  Json to_json() const;
  /// Overrides fields present in `j`; throws Error(Input) on wrong types.
  void merge(const nlohmann::json &j);
};

Json constants_json(const DbConstants &c);
Json error_json(const Error &e);

/// Parses a measure selection given as a string spec or a list of names.
std::vector<MeasureId> measures_from_json(const nlohmann::json &j, std::string_view fallback);

class Operations {
public:
  Operations(std::shared_ptr<const WordGraph> graph, std::string source, RunConfig defaults = {});

  const Engine &engine() const { return engine_; }
  const Measures &measures() const { return measures_; }
  const RunConfig &defaults() const { return defaults_; }
  void set_threads(unsigned t) { threads_ = std::max(1u, t); }

  /// Dispatches by operation name: health, measures, verify, similarity,
  /// word_stats, ic, analyze, suggest, correlate, session.create,
  /// session.get, session.propose, session.decide. Throws Error.
  Json call(std::string_view op, const nlohmann::json &request);

  Json health() const;
  Json catalog() const;
  Json verify() const;
  Json similarity(const nlohmann::json &req) const;
  Json word_stats(const nlohmann::json &req) const;
  Json ic(const nlohmann::json &req) const;
  /// Result: {"report": {...}, "csv": "...", "ok": bool}. `ok` is false when
  /// no group produced a series.
  Json analyze(const nlohmann::json &req) const;
  Json suggest(const nlohmann::json &req) const;
  Json correlate(const nlohmann::json &req) const;

  Json session_create(const nlohmann::json &req);
  Json session_get(const std::string &id);
  Json session_propose(const std::string &id, const nlohmann::json &req);
  Json session_decide(const std::string &id, const nlohmann::json &req);

  /// Enables append-only JSON-lines persistence in `dir` and replays every
  /// session log already there. Returns the number of sessions restored.
  std::size_t persist_sessions(const std::filesystem::path &dir);

private:
  struct Slot {
    std::mutex mutex;
    std::unique_ptr<IdeationSession> session;
  };
  std::shared_ptr<Slot> slot(const std::string &id);
  Measures measures_for(const nlohmann::json &req) const;
  void log_event(const std::string &id, const Json &event);
  Json create_locked(const std::string &id, const nlohmann::json &req);

  std::shared_ptr<const WordGraph> graph_;
  std::string source_;
  Engine engine_;
  Measures measures_;
  RunConfig defaults_;
  unsigned threads_ = 1;

  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::size_t next_session_ = 1;
  std::filesystem::path session_dir_;
  std::mutex log_mutex_;
};

/// Neighbourhood candidates for suggestions: first lemmas of the hyponyms
/// and co-hyponyms of every sense of the base nouns, lexicographic, without
/// base nouns. An extension; the pool is normally user supplied.
std::vector<std::string> neighbour_candidates(const Engine &engine, const std::vector<std::string> &base,
                                              std::size_t limit);

} // namespace wordgraph

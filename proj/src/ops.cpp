/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/ops.hpp"
#include "wordgraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#ifndef WORDGRAPH_VERSION
#define WORDGRAPH_VERSION "0.0.0"
#endif

namespace wordgraph {

const char *version() { return WORDGRAPH_VERSION; }

namespace {

using nlohmann::json;

[[noreturn]] void bad_request(const std::string &what) { throw Error(ErrorCode::Input, what); }

template <typename T> T field(const json &j, const char *key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j[key].is_null())
    return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception &) {
    bad_request(std::string("field '") + key + "' has the wrong type");
  }
}

std::vector<std::string> string_list(const json &j, const char *key, bool required) {
  if (!j.is_object() || !j.contains(key)) {
    if (required)
      bad_request(std::string("missing field '") + key + "'");
    return {};
  }
  const json &v = j[key];
  if (!v.is_array())
    bad_request(std::string("field '") + key + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto &s : v) {
    if (!s.is_string())
      bad_request(std::string("field '") + key + "' must be a list of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::string required_string(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string())
    bad_request(std::string("missing string field '") + key + "'");
  return j[key].get<std::string>();
}

Json number_or_null(double v) { return std::isnan(v) ? Json() : Json(v); }

} // namespace

// ---- config -----------------------------------------------------------------

Json RunConfig::to_json() const {
  Json j;
  j["db"] = db_path;
  j["cache"] = cache_path;
  j["measures"] = measures;
  j["t"] = T;
  j["mode"] = mode;
  j["collocations"] = collocations;
  j["strict"] = strict;
  j["format"] = format;
  j["seed"] = seed;
  j["schemes"] = schemes;
  j["token_weighted"] = token_weighted;
  j["epsilon"] = epsilon;
  j["log_base"] = log_base;
  return j;
}

void RunConfig::merge(const nlohmann::json &j) {
  if (j.is_null())
    return;
  if (!j.is_object())
    bad_request("config must be an object");
  db_path = field(j, "db", db_path);
  cache_path = field(j, "cache", cache_path);
  if (j.contains("measures") && j["measures"].is_array()) {
    std::string joined;
    for (const auto &m : j["measures"]) {
      if (!m.is_string())
        bad_request("field 'measures' must list measure names");
      joined += (joined.empty() ? "" : ",") + m.get<std::string>();
    }
    measures = joined;
  } else {
    measures = field(j, "measures", measures);
  }
  T = field(j, "t", T);
  mode = field(j, "mode", mode);
  collocations = field(j, "collocations", collocations);
  strict = field(j, "strict", strict);
  format = field(j, "format", format);
  seed = field(j, "seed", seed);
  schemes = field(j, "schemes", schemes);
  token_weighted = field(j, "token_weighted", token_weighted);
  epsilon = field(j, "epsilon", epsilon);
  log_base = field(j, "log_base", log_base);
  if (!(log_base > 0) || log_base == 1)
    bad_request("log_base must be positive and different from 1");
}

Json constants_json(const DbConstants &c) {
  Json j;
  j["max_vertices"] = c.max_vertices;
  j["max_leaves"] = c.max_leaves;
  j["max_depth"] = c.max_depth;
  j["min_commonness"] = c.min_commonness;
  j["min_commonness_fraction"] = "1/" + std::to_string(c.min_commonness_denominator);
  j["min_commonness_words"] = c.min_commonness_words;
  j["max_commonness"] = c.max_commonness;
  j["word_count"] = c.word_count;
  j["m_edges"] = c.m_edges;
  j["w_edges"] = c.w_edges;
  return j;
}

Json error_json(const Error &e) {
  Json j;
  j["code"] = to_string(e.code());
  j["message"] = e.what();
  j["details"] = e.details();
  return j;
}

std::vector<MeasureId> measures_from_json(const nlohmann::json &j, std::string_view fallback) {
  if (j.is_null())
    return parse_measure_list(fallback);
  if (j.is_string())
    return parse_measure_list(j.get<std::string>());
  if (j.is_array()) {
    std::string joined;
    for (const auto &m : j) {
      if (!m.is_string())
        bad_request("measures must be names");
      joined += (joined.empty() ? "" : ",") + m.get<std::string>();
    }
    return parse_measure_list(joined);
  }
  bad_request("measures must be a string or a list of names");
}

// ---- operations -------------------------------------------------------------

Operations::Operations(std::shared_ptr<const WordGraph> graph, std::string source, RunConfig defaults)
    : graph_(std::move(graph)), source_(std::move(source)), engine_(graph_),
      measures_(engine_, MeasureContext::from(graph_->constants, defaults.log_base)),
      defaults_(std::move(defaults)) {}

Measures Operations::measures_for(const nlohmann::json &req) const {
  double base = field(req, "log_base", defaults_.log_base);
  if (!(base > 0) || base == 1)
    bad_request("log_base must be positive and different from 1");
  return Measures(engine_, MeasureContext::from(graph_->constants, base));
}

Json Operations::call(std::string_view op, const nlohmann::json &request) {
  if (op == "health")
    return health();
  if (op == "measures")
    return catalog();
  if (op == "verify")
    return verify();
  if (op == "similarity")
    return similarity(request);
  if (op == "word_stats")
    return word_stats(request);
  if (op == "ic")
    return ic(request);
  if (op == "analyze")
    return analyze(request);
  if (op == "suggest")
    return suggest(request);
  if (op == "correlate")
    return correlate(request);
  if (op == "session.create")
    return session_create(request);
  if (op == "session.get")
    return session_get(required_string(request, "id"));
  if (op == "session.propose")
    return session_propose(required_string(request, "id"), request);
  if (op == "session.decide")
    return session_decide(required_string(request, "id"), request);
  throw Error(ErrorCode::Input, "unknown operation '" + std::string(op) + "'");
}

Json Operations::health() const {
  Json j;
  j["status"] = "ok";
  j["version"] = version();
  j["source"] = source_;
  j["constants"] = constants_json(graph_->constants);
  return j;
}

Json Operations::catalog() const {
  Json list = Json::array();
  for (const auto &e : measure_catalog()) {
    Json m;
    m["index"] = e.index;
    m["id"] = e.id;
    m["kind"] = e.kind;
    m["family"] = e.family;
    m["ic"] = e.ic;
    m["normalized"] = e.normalized;
    m["note"] = e.note;
    list.push_back(std::move(m));
  }
  Json j;
  j["count"] = list.size();
  j["measures"] = std::move(list);
  return j;
}

Json Operations::verify() const {
  auto checks = graph_->checks.empty() ? check_constants(graph_->constants, wordnet31_reference())
                                       : graph_->checks;
  Json j;
  j["source"] = source_;
  j["version"] = version();
  j["constants"] = constants_json(graph_->constants);
  Json rows = Json::array();
  bool ok = true;
  for (const auto &c : checks) {
    rows.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
    ok = ok && c.ok;
  }
  j["checks"] = std::move(rows);
  j["ok"] = ok;
  return j;
}

Json Operations::similarity(const nlohmann::json &req) const {
  const Measures m = measures_for(req);
  const WordIndex x = engine_.resolve(required_string(req, "x"));
  const WordIndex y = engine_.resolve(required_string(req, "y"));
  if (x == y)
    throw Error(ErrorCode::Constraint, "similarity needs two different words (x = y = '" +
                                           engine_.lexicon().word(x) + "')");
  auto selection = measures_from_json(req.is_object() && req.contains("measures") ? req["measures"] : json(),
                                      "similarity");
  for (const auto &id : selection)
    if (!id.is_similarity())
      bad_request("'" + id.name() + "' is not a similarity measure");

  const PairInfo info = engine_.pair(x, y);
  Json j;
  j["x"] = engine_.lexicon().word(x);
  j["y"] = engine_.lexicon().word(y);
  j["distance"] = info.distance;
  j["lcs"] = {{"offset", engine_.taxonomy().id(info.lcs).offset},
              {"depth", info.lcs_depth},
              {"lemmas", engine_.taxonomy().lemmas(info.lcs)}};
  Json rows = Json::array();
  for (const auto &id : selection) {
    auto d = m.similarity_detail(x, y, id);
    Json r;
    r["measure"] = id.name();
    r["value"] = d.value;
    r["ic_x"] = number_or_null(d.ic_x);
    r["ic_y"] = number_or_null(d.ic_y);
    r["ic_lcs"] = number_or_null(d.ic_lcs);
    r["degenerate"] = d.degenerate;
    rows.push_back(std::move(r));
  }
  j["results"] = std::move(rows);
  return j;
}

Json Operations::word_stats(const nlohmann::json &req) const {
  const Measures m = measures_for(req);
  Json rows = Json::array();
  for (const auto &word : string_list(req, "words", true)) {
    const WordIndex w = engine_.resolve(word);
    const WordStats s = engine_.word_stats(w);
    Json r;
    r["word"] = engine_.lexicon().word(w);
    r["polysemy"] = s.polysemy;
    r["polysemy_log2"] = std::log2(static_cast<double>(s.polysemy));
    r["depth"] = s.depth;
    r["subsumers"] = s.subsumers;
    r["subvertices"] = s.subvertices;
    r["leaves"] = s.leaves;
    r["commonness"] = s.commonness;
    r["abstraction"] = m.abstraction_level(w);
    rows.push_back(std::move(r));
  }
  return Json{{"words", std::move(rows)}};
}

Json Operations::ic(const nlohmann::json &req) const {
  const Measures m = measures_for(req);
  auto selection = measures_from_json(req.is_object() && req.contains("measures") ? req["measures"] : json(), "ic");
  for (const auto &id : selection)
    if (id.is_similarity())
      bad_request("'" + id.name() + "' is a similarity; use the similarity operation");
  Json rows = Json::array();
  for (const auto &word : string_list(req, "words", true)) {
    const WordIndex w = engine_.resolve(word);
    Json values;
    for (const auto &id : selection)
      values[id.name()] = m.word_value(w, id);
    rows.push_back({{"word", engine_.lexicon().word(w)}, {"values", std::move(values)}});
  }
  return Json{{"words", std::move(rows)}};
}

Json Operations::analyze(const nlohmann::json &req) const {
  RunConfig cfg = defaults_;
  cfg.merge(req.is_object() && req.contains("config") ? req["config"] : json());
  const auto selection = parse_measure_list(cfg.measures);
  const auto schemes = parse_scheme_list(cfg.schemes);
  ExtractOptions xo;
  xo.mode = parse_extraction_mode(cfg.mode);
  xo.collocations = cfg.collocations;
  const Measures m(engine_, MeasureContext::from(graph_->constants, cfg.log_base));
  NounExtractor extractor(graph_->db, xo);

  std::optional<Grouping> grouping;
  if (req.is_object() && req.contains("grouping") && !req["grouping"].is_null())
    grouping = parse_grouping(req["grouping"]);

  if (!req.is_object() || !req.contains("transcripts") || !req["transcripts"].is_array())
    bad_request("missing 'transcripts' list");

  std::vector<Conversation> convs;
  Json conv_rows = Json::array();
  Json conv_failures = Json::array();
  std::set<std::string> files;
  for (const auto &t : req["transcripts"]) {
    Conversation c;
    c.file = required_string(t, "file");
    if (!files.insert(c.file).second)
      bad_request("duplicate transcript '" + c.file + "'");
    const std::string text = required_string(t, "text");
    c.tags = grouping ? grouping->find(c.file) : nullptr;
    c.subject = field(t, "subject", std::string());
    if (c.subject.empty() && c.tags)
      c.subject = c.tags->subject;
    if (c.subject.empty())
      c.subject = c.file;
    try {
      if (xo.mode == ExtractionMode::Dictionary) {
        c.transcript = clean(text, c.file);
        c.nouns = extractor.extract(c.transcript);
      } else {
        std::istringstream in(text);
        auto tagged = parse_pretagged(in, c.file);
        c.transcript.source = c.file;
        for (const auto &sentence : tagged) {
          Utterance u;
          for (const auto &tok : sentence)
            u.text += (u.text.empty() ? "" : " ") + tok.token;
          u.original = u.text;
          c.transcript.utterances.push_back(std::move(u));
        }
        c.nouns = extractor.extract(tagged);
      }
    } catch (const Error &e) {
      Json f = error_json(e);
      f["file"] = c.file;
      conv_failures.push_back(std::move(f));
      continue;
    }
    std::set<std::string> unique;
    for (const auto &n : c.nouns.nouns)
      unique.insert(n.noun);
    Json row;
    row["file"] = c.file;
    row["subject"] = c.subject;
    row["utterances"] = c.transcript.utterances.size();
    row["sentences"] = c.nouns.sentence_tokens.size();
    row["words"] = c.nouns.word_count;
    row["noun_tokens"] = c.nouns.nouns.size();
    row["unique_nouns"] = unique.size();
    row["noun_ratio"] = c.nouns.word_count ? static_cast<double>(c.nouns.nouns.size()) /
                                                 static_cast<double>(c.nouns.word_count)
                                           : 0.0;
    row["dropped_count"] = c.nouns.dropped.size();
    row["dropped"] = c.nouns.dropped;
    conv_rows.push_back(std::move(row));
    convs.push_back(std::move(c));
  }
  std::sort(convs.begin(), convs.end(), [](const Conversation &a, const Conversation &b) { return a.file < b.file; });
  std::sort(conv_rows.begin(), conv_rows.end(),
            [](const Json &a, const Json &b) { return a["file"].get<std::string>() < b["file"].get<std::string>(); });

  Json unmatched = Json::array();
  if (grouping)
    for (const auto &g : grouping->conversations)
      if (!files.contains(g.file))
        unmatched.push_back(g.file);

  CompareOptions co;
  co.T = cfg.T;
  co.series.token_weighted = cfg.token_weighted;
  co.series.threads = threads_;
  co.epsilon = cfg.epsilon;
  Comparison cmp = compare_groups(m, convs, schemes, selection, co);

  Json groups = Json::array();
  std::size_t degenerate = 0;
  for (const auto &r : cmp.results) {
    Json g;
    g["subject"] = r.subject;
    g["scheme"] = to_string(r.scheme);
    g["group"] = r.group;
    Json points = Json::array();
    for (const auto &p : r.series.points) {
      Json pt;
      pt["t"] = p.t;
      pt["sentences"] = {p.segment.sentence_begin, p.segment.sentence_end};
      pt["tokens"] = {p.segment.token_begin, p.segment.token_end};
      pt["noun_tokens"] = p.segment.noun_count();
      pt["unique_nouns"] = p.nouns.size();
      Json values;
      for (std::size_t k = 0; k < cmp.columns.size(); ++k)
        values[cmp.columns[k]] = p.values[k];
      pt["values"] = std::move(values);
      points.push_back(std::move(pt));
    }
    g["points"] = std::move(points);
    Json trends;
    for (std::size_t k = 0; k < cmp.columns.size(); ++k)
      trends[cmp.columns[k]] = {{"slope", r.fits[k].slope},
                                {"intercept", r.fits[k].intercept},
                                {"classification", to_string(r.fits[k].trend)}};
    g["trends"] = std::move(trends);
    g["degenerate_pairs"] = r.series.degenerate_pairs;
    degenerate += r.series.degenerate_pairs;
    groups.push_back(std::move(g));
  }
  Json summary = Json::array();
  for (const auto &s : cmp.summary)
    summary.push_back({{"scheme", to_string(s.scheme)},
                       {"group", s.group},
                       {"measure", s.column},
                       {"subjects", s.subjects},
                       {"mean_slope", s.mean_slope},
                       {"classification", to_string(s.trend)}});
  Json failures = Json::array();
  for (const auto &f : cmp.failures)
    failures.push_back({{"subject", f.subject},
                        {"scheme", to_string(f.scheme)},
                        {"group", f.group},
                        {"code", f.code},
                        {"message", f.message}});

  Json report;
  report["format"] = "wordgraph.analysis";
  report["schema_version"] = 1;
  report["version"] = version();
  report["config"] = cfg.to_json();
  report["constants"] = constants_json(graph_->constants);
  report["extraction_mode"] = cfg.mode;
  report["columns"] = cmp.columns;
  report["conversations"] = std::move(conv_rows);
  report["groups"] = std::move(groups);
  report["summary"] = std::move(summary);
  report["diagnostics"] = {{"group_failures", std::move(failures)},
                           {"conversation_failures", std::move(conv_failures)},
                           {"unmatched_grouping_entries", std::move(unmatched)},
                           {"degenerate_pairs", degenerate}};
  Json out;
  out["ok"] = !cmp.results.empty();
  out["report"] = std::move(report);
  out["csv"] = to_long_csv(cmp);
  return out;
}

std::vector<std::string> neighbour_candidates(const Engine &engine, const std::vector<std::string> &base,
                                              std::size_t limit) {
  const Taxonomy &tax = engine.taxonomy();
  std::set<std::string> base_forms, found;
  std::vector<WordIndex> words;
  for (const auto &b : base) {
    WordIndex w = engine.resolve(b);
    words.push_back(w);
    base_forms.insert(engine.lexicon().word(w));
  }
  auto take = [&](SynsetIndex s) {
    const auto &lemmas = tax.lemmas(s);
    if (!lemmas.empty() && !base_forms.contains(lemmas.front()) && engine.lexicon().find_exact(lemmas.front()))
      found.insert(lemmas.front());
  };
  for (WordIndex w : words)
    for (SynsetIndex s : engine.lexicon().senses(w)) {
      for (SynsetIndex h : tax.hyponyms(s))
        take(h);
      for (SynsetIndex p : tax.hypernyms(s))
        for (SynsetIndex c : tax.hyponyms(p))
          if (c != s)
            take(c);
    }
  std::vector<std::string> out(found.begin(), found.end());
  if (limit && out.size() > limit)
    out.resize(limit);
  return out;
}

Json Operations::suggest(const nlohmann::json &req) const {
  const Measures m = measures_for(req);
  const auto base = string_list(req, "base", true);
  auto candidates = string_list(req, "candidates", false);
  const std::size_t neighbours = field(req, "neighbours", std::size_t{0});
  if (neighbours) {
    auto extra = neighbour_candidates(engine_, base, neighbours);
    candidates.insert(candidates.end(), extra.begin(), extra.end());
  }
  const std::string name = field(req, "measure", default_session_measure().name());
  auto id = MeasureId::parse(name);
  if (!id)
    bad_request("unknown measure '" + name + "'");
  const std::size_t k = field(req, "k", std::size_t{0});

  Ranking r = rank_candidates(m, base, candidates, *id, threads_);
  if (k && r.proposals.size() > k)
    r.proposals.resize(k);
  Json j;
  j["measure"] = id->name();
  j["base"] = r.base;
  j["base_average"] = r.base_average;
  Json props = Json::array();
  for (std::size_t i = 0; i < r.proposals.size(); ++i)
    props.push_back({{"rank", i + 1},
                     {"noun", r.proposals[i].noun},
                     {"average", r.proposals[i].average},
                     {"delta", r.proposals[i].delta}});
  j["proposals"] = std::move(props);
  j["unresolved"] = r.unresolved;
  j["duplicates"] = r.duplicates;
  return j;
}

Json Operations::correlate(const nlohmann::json &req) const {
  const Measures m = measures_for(req);
  const std::size_t words = field(req, "words", std::size_t{1000});
  const std::size_t pairs = field(req, "pairs", std::size_t{500});
  const std::uint64_t seed = field(req, "seed", defaults_.seed);
  CorrelationStudy study = run_correlation(m, words, pairs, seed, threads_);

  auto block = [](const CorrelationMatrix &cm, const Dendrogram &tree) {
    Json b;
    b["samples"] = cm.samples;
    b["names"] = cm.names;
    Json rows = Json::array();
    for (std::size_t i = 0; i < cm.names.size(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < cm.names.size(); ++j)
        row.push_back(number_or_null(cm.at(i, j)));
      rows.push_back(std::move(row));
    }
    b["matrix"] = std::move(rows);
    Json zero = Json::array();
    for (std::size_t i = 0; i < cm.names.size(); ++i)
      if (cm.zero_variance[i])
        zero.push_back(cm.names[i]);
    b["zero_variance"] = std::move(zero);
    auto [left, right] = tree.top_split();
    b["top_split"] = {left, right};
    b["dendrogram"] = dendrogram_json(tree);
    b["dendrogram_text"] = dendrogram_text(tree);
    b["csv"] = matrix_csv(cm);
    return b;
  };
  Json j;
  j["version"] = version();
  j["seed"] = seed;
  j["word_measures"] = block(study.words, study.word_tree);
  j["similarity_measures"] = block(study.pairs, study.pair_tree);
  j["degenerate_pairs"] = study.degenerate_pairs;
  return j;
}

// ---- sessions ---------------------------------------------------------------

std::shared_ptr<Operations::Slot> Operations::slot(const std::string &id) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end())
    throw Error(ErrorCode::NotFound, "unknown session '" + id + "'");
  return it->second;
}

void Operations::log_event(const std::string &id, const Json &event) {
  if (session_dir_.empty())
    return;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(session_dir_ / (id + ".jsonl"), std::ios::app);
  out << event.dump() << '\n';
  if (!out)
    throw Error(ErrorCode::Internal, "cannot append to session log for '" + id + "'");
}

Json Operations::create_locked(const std::string &id, const nlohmann::json &req) {
  const auto base = string_list(req, "base", true);
  const auto candidates = string_list(req, "candidates", false);
  const std::string name = field(req, "measure", default_session_measure().name());
  auto measure = MeasureId::parse(name);
  if (!measure)
    bad_request("unknown measure '" + name + "'");
  if (!measure->is_similarity())
    bad_request("sessions need a similarity measure (got " + measure->name() + ")");
  auto s = std::make_shared<Slot>();
  s->session = std::make_unique<IdeationSession>(measures_, id, base, *measure, candidates);
  Json state = s->session->to_json();
  std::lock_guard lock(sessions_mutex_);
  if (!sessions_.emplace(id, s).second)
    throw Error(ErrorCode::Constraint, "session '" + id + "' already exists");
  return state;
}

Json Operations::session_create(const nlohmann::json &req) {
  std::string id;
  {
    std::lock_guard lock(sessions_mutex_);
    char buf[16];
    std::snprintf(buf, sizeof buf, "s%06zu", next_session_++);
    id = buf;
  }
  Json state = create_locked(id, req);
  Json event = {{"op", "create"}, {"id", id}, {"request", req}};
  log_event(id, event);
  return state;
}

Json Operations::session_get(const std::string &id) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session->to_json();
}

Json Operations::session_propose(const std::string &id, const nlohmann::json &req) {
  auto s = slot(id);
  const std::size_t k = field(req, "k", std::size_t{1});
  std::lock_guard lock(s->mutex);
  auto proposals = s->session->propose(k);
  log_event(id, {{"op", "propose"}, {"k", k}});
  Json j;
  j["session"] = id;
  j["average"] = s->session->average();
  Json list = Json::array();
  for (std::size_t i = 0; i < proposals.size(); ++i)
    list.push_back({{"rank", i + 1},
                    {"noun", proposals[i].noun},
                    {"average", proposals[i].average},
                    {"delta", proposals[i].delta}});
  j["proposals"] = std::move(list);
  return j;
}

Json Operations::session_decide(const std::string &id, const nlohmann::json &req) {
  auto s = slot(id);
  const std::string noun = required_string(req, "noun");
  const Decision d = parse_decision(required_string(req, "decision"));
  std::lock_guard lock(s->mutex);
  const HistoryEntry &h = s->session->decide(noun, d);
  log_event(id, {{"op", "decide"}, {"noun", noun}, {"decision", to_string(d)}});
  Json j;
  j["entry"] = {{"noun", h.noun}, {"decision", to_string(h.decision)}, {"average", h.average}};
  j["session"] = s->session->to_json();
  return j;
}

std::size_t Operations::persist_sessions(const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorCode::Input, "cannot create session directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> logs;
  for (const auto &entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".jsonl")
      logs.push_back(entry.path());
  std::sort(logs.begin(), logs.end());

  std::size_t restored = 0;
  for (const auto &path : logs) {
    std::ifstream in(path);
    std::string line;
    std::size_t lineno = 0;
    std::string id;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty())
        continue;
      const std::string where = path.string() + ":" + std::to_string(lineno);
      json ev = json::parse(line, nullptr, false);
      if (ev.is_discarded() || !ev.is_object() || !ev.contains("op"))
        throw Error(ErrorCode::Input, where + ": malformed session event");
      const std::string op = ev["op"].get<std::string>();
      try {
        if (op == "create") {
          id = required_string(ev, "id");
          create_locked(id, ev.value("request", json::object()));
          ++restored;
          unsigned long n = 0;
          if (std::sscanf(id.c_str(), "s%lu", &n) == 1) {
            std::lock_guard lock(sessions_mutex_);
            next_session_ = std::max<std::size_t>(next_session_, n + 1);
          }
        } else if (op == "propose") {
          slot(id)->session->propose(ev.value("k", std::size_t{1}));
        } else if (op == "decide") {
          slot(id)->session->decide(required_string(ev, "noun"),
                                    parse_decision(required_string(ev, "decision")));
        } else {
          throw Error(ErrorCode::Input, "unknown session event '" + op + "'");
        }
      } catch (const Error &e) {
        throw Error(ErrorCode::Input, where + ": cannot replay: " + e.what(), e.details());
      }
    }
  }
  session_dir_ = dir;
  return restored;
}

} // namespace wordgraph

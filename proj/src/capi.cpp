/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph.h"
#include "wordgraph/error.hpp"
#include "wordgraph/ops.hpp"

#include <cstring>
#include <exception>
#include <new>

struct wg_database {
  std::shared_ptr<const wordgraph::WordGraph> graph;
  std::unique_ptr<wordgraph::Operations> ops;
};

namespace {

using namespace wordgraph;

thread_local std::string last_error;
thread_local std::string last_error_json = "{}";

wg_status fail(const Error &e) {
  last_error = e.what();
  last_error_json = error_json(e).dump();
  return static_cast<wg_status>(e.code());
}

void clear_error() {
  last_error.clear();
  last_error_json = "{}";
}

template <typename Fn> wg_status guarded(Fn &&fn) {
  clear_error();
  try {
    fn();
    return WG_OK;
  } catch (const Error &e) {
    return fail(e);
  } catch (const nlohmann::json::exception &e) {
    return fail(Error(ErrorCode::Input, std::string("invalid JSON: ") + e.what()));
  } catch (const std::bad_alloc &) {
    return fail(Error(ErrorCode::Internal, "out of memory"));
  } catch (const std::exception &e) {
    return fail(Error(ErrorCode::Internal, e.what()));
  }
}

void require(const void *p, const char *what) {
  if (!p)
    throw Error(ErrorCode::Input, std::string(what) + " must not be NULL");
}

void enforce_strict(const WordGraph &g) {
  std::vector<std::string> bad;
  for (const auto &c : check_constants(g.constants, wordnet31_reference()))
    if (!c.ok)
      bad.push_back(c.name + ": expected " + c.expected + ", got " + c.actual);
  if (!bad.empty())
    throw Error(ErrorCode::Database, "database constants differ from WordNet 3.1", bad);
}

wg_database *make_handle(WordGraph graph, std::string source, bool strict) {
  auto h = std::make_unique<wg_database>();
  h->graph = std::make_shared<const WordGraph>(std::move(graph));
  RunConfig defaults;
  defaults.strict = strict;
  h->ops = std::make_unique<Operations>(h->graph, std::move(source), defaults);
  return h.release();
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::size_t check_measure(std::size_t index) {
  if (index >= kMeasureCount)
    throw Error(ErrorCode::Input, "measure index " + std::to_string(index) + " out of range");
  return index;
}

} // namespace

extern "C" {

const char *wg_version(void) { return wordgraph::version(); }

const char *wg_status_name(wg_status status) {
  if (status == WG_OK)
    return "ok";
  if (status >= WG_ERR_INPUT && status <= WG_ERR_INTERNAL)
    return to_string(static_cast<ErrorCode>(status));
  return "unknown";
}

const char *wg_last_error(void) { return last_error.c_str(); }
const char *wg_last_error_json(void) { return last_error_json.c_str(); }

wg_status wg_database_open(const char *dir, int strict, wg_database **out) {
  return guarded([&] {
    require(dir, "dir");
    require(out, "out");
    *out = nullptr;
    WordGraph g = open_wordgraph(dir, strict ? ConstantsMode::Strict : ConstantsMode::Lenient);
    *out = make_handle(std::move(g), dir, strict != 0);
  });
}

wg_status wg_database_open_cache(const char *path, int strict, wg_database **out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    WordGraph g = load_cache(path);
    if (strict)
      enforce_strict(g);
    *out = make_handle(std::move(g), path, strict != 0);
  });
}

wg_status wg_database_save_cache(const wg_database *db, const char *path) {
  return guarded([&] {
    require(db, "db");
    require(path, "path");
    save_cache(*db->graph, path);
  });
}

void wg_database_free(wg_database *db) { delete db; }

wg_status wg_database_constants(const wg_database *db, wg_constants *out) {
  return guarded([&] {
    require(db, "db");
    require(out, "out");
    const DbConstants &c = db->graph->constants;
    *out = wg_constants{c.max_vertices, c.max_leaves,  c.max_depth, c.min_commonness,
                        c.max_commonness, c.word_count, c.m_edges,  c.w_edges};
  });
}

wg_status wg_set_threads(wg_database *db, unsigned threads) {
  return guarded([&] {
    require(db, "db");
    db->ops->set_threads(threads);
  });
}

size_t wg_measure_count(void) { return kMeasureCount; }

const char *wg_measure_name(size_t index) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto &m : all_measures())
      v.push_back(m.name());
    return v;
  }();
  return index < names.size() ? names[index].c_str() : nullptr;
}

wg_status wg_measure_lookup(const char *name, size_t *index) {
  return guarded([&] {
    require(name, "name");
    require(index, "index");
    auto id = MeasureId::parse(name);
    if (!id)
      throw Error(ErrorCode::Input, std::string("unknown measure '") + name + "'");
    *index = id->index();
  });
}

int wg_measure_is_similarity(size_t index) {
  return index < kMeasureCount && MeasureId::from_index(index).is_similarity();
}

int wg_measure_normalized(size_t index) {
  return index < kMeasureCount && MeasureId::from_index(index).normalized();
}

wg_status wg_word_stats_get(const wg_database *db, const char *word, wg_word_stats *out) {
  return guarded([&] {
    require(db, "db");
    require(word, "word");
    require(out, "out");
    WordStats s = db->ops->engine().word_stats(std::string_view(word));
    *out = wg_word_stats{s.polysemy, s.depth, s.subsumers, s.subvertices, s.leaves, s.commonness};
  });
}

wg_status wg_word_measure(const wg_database *db, const char *word, size_t measure, double *out) {
  return guarded([&] {
    require(db, "db");
    require(word, "word");
    require(out, "out");
    MeasureId id = MeasureId::from_index(check_measure(measure));
    if (id.is_similarity())
      throw Error(ErrorCode::Input, id.name() + " is a similarity measure");
    const auto &m = db->ops->measures();
    *out = m.word_value(m.engine().resolve(word), id);
  });
}

wg_status wg_pair(const wg_database *db, const char *x, const char *y, wg_pair_info *out) {
  return guarded([&] {
    require(db, "db");
    require(x, "x");
    require(y, "y");
    require(out, "out");
    const Engine &e = db->ops->engine();
    PairInfo p = e.pair(e.resolve(x), e.resolve(y));
    *out = wg_pair_info{e.taxonomy().id(p.lcs).offset, p.lcs_depth, p.distance};
  });
}

wg_status wg_similarity(const wg_database *db, const char *x, const char *y, size_t measure, double *out) {
  return guarded([&] {
    require(db, "db");
    require(x, "x");
    require(y, "y");
    require(out, "out");
    MeasureId id = MeasureId::from_index(check_measure(measure));
    if (!id.is_similarity())
      throw Error(ErrorCode::Input, id.name() + " is not a similarity measure");
    const auto &m = db->ops->measures();
    *out = m.similarity(m.engine().resolve(x), m.engine().resolve(y), id);
  });
}

wg_status wg_average_similarity(const wg_database *db, const char *const *nouns, size_t count,
                                size_t measure, double *out) {
  return guarded([&] {
    require(db, "db");
    require(out, "out");
    if (count)
      require(nouns, "nouns");
    MeasureId id = MeasureId::from_index(check_measure(measure));
    if (!id.is_similarity())
      throw Error(ErrorCode::Input, id.name() + " is not a similarity measure");
    std::vector<std::string> list;
    for (size_t i = 0; i < count; ++i) {
      require(nouns[i], "noun");
      list.emplace_back(nouns[i]);
    }
    *out = average_pairwise_similarity(db->ops->measures(), list, id);
  });
}

wg_status wg_request(wg_database *db, const char *op, const char *request_json, char **response_json) {
  return guarded([&] {
    require(db, "db");
    require(op, "op");
    require(response_json, "response_json");
    *response_json = nullptr;
    nlohmann::json req = nlohmann::json::object();
    if (request_json && *request_json) {
      req = nlohmann::json::parse(request_json, nullptr, false);
      if (req.is_discarded())
        throw Error(ErrorCode::Input, "request is not valid JSON");
    }
    Json res = db->ops->call(op, req);
    *response_json = dup_string(res.dump());
  });
}

wg_status wg_session_persist(wg_database *db, const char *dir, size_t *restored) {
  return guarded([&] {
    require(db, "db");
    require(dir, "dir");
    std::size_t n = db->ops->persist_sessions(dir);
    if (restored)
      *restored = n;
  });
}

void wg_string_free(char *s) { std::free(s); }

} // extern "C"

#include "wordgraph.h"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <string>

using nlohmann::json;

namespace {

wg_database *shared_db() {
  static wg_database *db = [] {
    wg_database *d = nullptr;
    REQUIRE(wg_database_open(WG_WORDNET_DIR, 0, &d) == WG_OK);
    return d;
  }();
  return db;
}

std::string request(wg_database *db, const char *op, const std::string &body, wg_status *status = nullptr) {
  char *out = nullptr;
  wg_status s = wg_request(db, op, body.empty() ? nullptr : body.c_str(), &out);
  if (status)
    *status = s;
  if (s != WG_OK)
    return wg_last_error_json();
  std::string r(out);
  wg_string_free(out);
  return r;
}

std::filesystem::path scratch(const std::string &name) {
  auto p = std::filesystem::path(WG_SCRATCH_DIR) / ("capi_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

} // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(wg_version()).size() > 0);
  CHECK(std::string(wg_status_name(WG_ERR_CONSTRAINT)) == "constraint_error");
  CHECK(std::string(wg_status_name(WG_OK)) == "ok");
}

TEST_CASE("open failures carry a database error") {
  wg_database *db = nullptr;
  CHECK(wg_database_open("/nonexistent/wordnet", 0, &db) == WG_ERR_DATABASE);
  CHECK(db == nullptr);
  CHECK(std::string(wg_last_error()).size() > 0);
  json e = json::parse(wg_last_error_json());
  CHECK(e["code"] == "database_error");
  CHECK(wg_database_open(nullptr, 0, &db) == WG_ERR_INPUT);
  CHECK(wg_database_open(WG_FIXTURE_DIR "/fig1", 1, &db) == WG_ERR_DATABASE);
  REQUIRE(wg_database_open(WG_FIXTURE_DIR "/fig1", 0, &db) == WG_OK);
  wg_word_stats st;
  REQUIRE(wg_word_stats_get(db, "x", &st) == WG_OK);
  CHECK(st.polysemy == 2);
  CHECK(st.subsumers == 6);
  CHECK(st.commonness == 0.75);
  wg_pair_info p;
  REQUIRE(wg_pair(db, "x", "y", &p) == WG_OK);
  CHECK(p.distance == 2);
  CHECK(p.lcs_depth == 2);
  wg_database_free(db);
}

TEST_CASE("constants, measures and similarities through the C API") {
  wg_database *db = shared_db();
  wg_constants c;
  REQUIRE(wg_database_constants(db, &c) == WG_OK);
  CHECK(c.max_vertices == 82192);
  CHECK(c.max_depth == 19);

  CHECK(wg_measure_count() == 49);
  size_t lin = 0;
  REQUIRE(wg_measure_lookup("lin:sanchez-batet", &lin) == WG_OK);
  CHECK(std::string(wg_measure_name(lin)) == "lin:sanchez-batet");
  CHECK(wg_measure_is_similarity(lin) == 1);
  CHECK(wg_measure_normalized(0) == 1);
  CHECK(wg_measure_lookup("nope", &lin) == WG_ERR_INPUT);
  REQUIRE(wg_measure_lookup("lin:sanchez-batet", &lin) == WG_OK);

  double v = 0;
  CHECK(wg_similarity(db, "bird", "crayon", lin, &v) == WG_OK);
  CHECK(v > 0);
  CHECK(wg_similarity(db, "bird", "bird", lin, &v) == WG_ERR_CONSTRAINT);
  CHECK(wg_similarity(db, "bird", "qqqzzz", lin, &v) == WG_ERR_INPUT);
  CHECK(wg_similarity(db, "bird", "crayon", 4000, &v) == WG_ERR_INPUT);
  CHECK(wg_word_measure(db, "bird", lin, &v) == WG_ERR_INPUT);

  const char *base[] = {"bird", "crayon", "desk", "hand", "paper"};
  REQUIRE(wg_average_similarity(db, base, 5, lin, &v) == WG_OK);
  CHECK(v == doctest::Approx(0.389275).epsilon(1e-5));
  CHECK(wg_average_similarity(db, base, 1, lin, &v) == WG_ERR_CONSTRAINT);
  CHECK(wg_set_threads(db, 2) == WG_OK);
  double v2 = 0;
  REQUIRE(wg_average_similarity(db, base, 5, lin, &v2) == WG_OK);
  CHECK(v == v2);
  wg_set_threads(db, 1);
}

TEST_CASE("unknown words: error JSON lists nearest entries") {
  wg_status s;
  json e = json::parse(request(shared_db(), "similarity", R"({"x": "crayn", "y": "bird"})", &s));
  CHECK(s == WG_ERR_INPUT);
  CHECK(e["code"] == "input_error");
  CHECK(!e["details"].empty());
  CHECK(request(shared_db(), "bogus", "{}", &s).find("unknown operation") != std::string::npos);
  CHECK(s == WG_ERR_INPUT);
  request(shared_db(), "similarity", "{not json", &s);
  CHECK(s == WG_ERR_INPUT);
  char *out = nullptr;
  CHECK(wg_request(shared_db(), nullptr, "{}", &out) == WG_ERR_INPUT);
}

TEST_CASE("cache through the C API") {
  auto dir = scratch("cache");
  const std::string path = (dir / "wn.cache").string();
  REQUIRE(wg_database_save_cache(shared_db(), path.c_str()) == WG_OK);
  wg_database *db = nullptr;
  REQUIRE(wg_database_open_cache(path.c_str(), 0, &db) == WG_OK);
  wg_constants a, b;
  wg_database_constants(db, &a);
  wg_database_constants(shared_db(), &b);
  CHECK(a.w_edges == b.w_edges);
  CHECK(a.max_commonness == b.max_commonness);
  wg_database_free(db);
  CHECK(wg_database_open_cache((dir / "missing.cache").string().c_str(), 0, &db) == WG_ERR_DATABASE);
}

TEST_CASE("sessions persist and replay") {
  auto dir = scratch("sessions");
  std::string id;
  {
    wg_database *db = nullptr;
    REQUIRE(wg_database_open(WG_WORDNET_DIR, 0, &db) == WG_OK);
    size_t restored = 99;
    REQUIRE(wg_session_persist(db, dir.string().c_str(), &restored) == WG_OK);
    CHECK(restored == 0);
    json s = json::parse(request(db, "session.create",
                                 R"({"base": ["bird","crayon","desk","hand","paper"],
                                     "candidates": ["drawing","sketch","greeting_card","origami"]})"));
    id = s["id"];
    request(db, "session.propose", json{{"id", id}}.dump());
    request(db, "session.decide", json{{"id", id}, {"noun", "origami"}, {"decision", "reject"}}.dump());
    wg_database_free(db);
  }
  wg_database *db = nullptr;
  REQUIRE(wg_database_open(WG_WORDNET_DIR, 0, &db) == WG_OK);
  size_t restored = 0;
  REQUIRE(wg_session_persist(db, dir.string().c_str(), &restored) == WG_OK);
  CHECK(restored == 1);
  json state = json::parse(request(db, "session.get", json{{"id", id}}.dump()));
  CHECK(state["history"].size() == 1);
  json p = json::parse(request(db, "session.propose", json{{"id", id}}.dump()));
  CHECK(p["proposals"][0]["noun"] == "greeting_card");
  // New sessions do not reuse restored ids.
  json s2 = json::parse(request(db, "session.create", R"({"base": ["bird","desk"], "candidates": ["lamp"]})"));
  CHECK(s2["id"] != id);
  wg_database_free(db);
}

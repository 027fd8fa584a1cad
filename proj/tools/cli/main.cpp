/* wordgraph command-line tool. Every command goes through the C API.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph.h"
#include "service.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#ifndef WORDGRAPH_DEFAULT_DB
#define WORDGRAPH_DEFAULT_DB ""
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Exit codes: 0 ok, then the wg_status values (1 input, 2 database,
// 3 constraint, 4 not found, 5 internal).
struct Failure {
  int code;
  std::string message;
  std::vector<std::string> details;
};

Failure last_failure(wg_status s) {
  Failure f{static_cast<int>(s), wg_last_error(), {}};
  auto j = nlohmann::json::parse(wg_last_error_json(), nullptr, false);
  if (!j.is_discarded() && j.contains("details"))
    for (const auto &d : j["details"])
      f.details.push_back(d.get<std::string>());
  return f;
}

void check(wg_status s) {
  if (s != WG_OK)
    throw last_failure(s);
}

struct Global {
  std::string db;
  std::string cache;
  bool strict = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

std::string default_db() {
  if (const char *env = std::getenv("WORDGRAPH_DB"); env && *env)
    return env;
  return WORDGRAPH_DEFAULT_DB;
}

struct Handle {
  wg_database *db = nullptr;
  ~Handle() { wg_database_free(db); }
};

void open(const Global &g, Handle &h) {
  const std::string dir = g.db.empty() ? default_db() : g.db;
  if (!g.cache.empty() && fs::exists(g.cache)) {
    check(wg_database_open_cache(g.cache.c_str(), g.strict, &h.db));
  } else {
    if (dir.empty())
      throw Failure{WG_ERR_INPUT, "no database given; use --db DIR or set WORDGRAPH_DB", {}};
    check(wg_database_open(dir.c_str(), g.strict, &h.db));
    if (!g.cache.empty())
      check(wg_database_save_cache(h.db, g.cache.c_str()));
  }
  check(wg_set_threads(h.db, g.threads));
}

json request(wg_database *db, const char *op, const json &req) {
  char *out = nullptr;
  check(wg_request(db, op, req.dump().c_str(), &out));
  json res = json::parse(out);
  wg_string_free(out);
  return res;
}

std::string num(const json &v, int digits = 6) {
  if (v.is_null())
    return "-";
  if (v.is_number_float()) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

void print_table(const std::vector<std::vector<std::string>> &rows, std::ostream &out = std::cout) {
  std::vector<std::size_t> width;
  for (const auto &r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i)
        width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto &r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size())
        line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << line << '\n';
  }
}

void print_csv(const std::vector<std::vector<std::string>> &rows) {
  for (const auto &r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      std::cout << (i ? "," : "") << r[i];
    std::cout << '\n';
  }
}

void emit(const std::string &format, const json &doc, const std::vector<std::vector<std::string>> &rows) {
  if (format == "json")
    std::cout << doc.dump(2) << '\n';
  else if (format == "csv")
    print_csv(rows);
  else
    print_table(rows);
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Failure{WG_ERR_INPUT, "cannot read '" + path + "'", {}};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out)
    throw Failure{WG_ERR_INPUT, "cannot write '" + path + "'", {}};
}

std::vector<std::string> split_list(const std::vector<std::string> &items) {
  std::vector<std::string> out;
  for (const auto &item : items) {
    std::size_t pos = 0;
    while (pos <= item.size()) {
      std::size_t comma = item.find(',', pos);
      if (comma == std::string::npos)
        comma = item.size();
      std::string s = item.substr(pos, comma - pos);
      if (!s.empty())
        out.push_back(s);
      pos = comma + 1;
    }
  }
  return out;
}

// ---- commands ---------------------------------------------------------------

int cmd_db_verify(const Global &g, const std::string &format) {
  Handle h;
  open(g, h);
  json doc = request(h.db, "verify", json::object());
  std::vector<std::vector<std::string>> rows{{"constant", "expected", "computed", "status"}};
  for (const auto &c : doc["checks"])
    rows.push_back({c["name"], c["expected"], c["actual"], c["ok"].get<bool>() ? "ok" : "MISMATCH"});
  emit(format, doc, rows);
  if (!doc["ok"].get<bool>())
    std::cerr << "warning: database constants differ from WordNet 3.1 (lenient mode)\n";
  return 0;
}

int cmd_db_cache(const Global &g, const std::string &out) {
  Global plain = g;
  plain.cache.clear();
  Handle h;
  open(plain, h);
  check(wg_database_save_cache(h.db, out.c_str()));
  std::cout << "wrote " << out << '\n';
  return 0;
}

int cmd_sim(const Global &g, const std::string &x, const std::string &y, const std::string &measures,
            const std::string &format) {
  Handle h;
  open(g, h);
  json doc = request(h.db, "similarity", {{"x", x}, {"y", y}, {"measures", measures}});
  std::vector<std::vector<std::string>> rows{{"measure", "value", "distance", "lcs_depth", "ic_x", "ic_y", "ic_lcs"}};
  for (const auto &r : doc["results"])
    rows.push_back({r["measure"], num(r["value"]), num(doc["distance"]), num(doc["lcs"]["depth"]),
                    num(r["ic_x"]), num(r["ic_y"]), num(r["ic_lcs"])});
  if (format == "table") {
    std::string lemmas;
    for (const auto &l : doc["lcs"]["lemmas"])
      lemmas += (lemmas.empty() ? "" : ",") + l.get<std::string>();
    std::cout << doc["x"].get<std::string>() << " / " << doc["y"].get<std::string>()
              << "  distance " << doc["distance"] << "  lcs " << doc["lcs"]["offset"] << " {" << lemmas
              << "} depth " << doc["lcs"]["depth"] << "\n\n";
  }
  emit(format, doc, rows);
  return 0;
}

int cmd_ic(const Global &g, const std::vector<std::string> &words, const std::string &measures,
           const std::string &format) {
  Handle h;
  open(g, h);
  json doc = request(h.db, "ic", {{"words", words}, {"measures", measures}});
  std::vector<std::vector<std::string>> rows{{"word"}};
  bool header = false;
  for (const auto &w : doc["words"]) {
    std::vector<std::string> row{w["word"]};
    for (const auto &[name, value] : w["values"].items()) {
      if (!header)
        rows[0].push_back(name);
      row.push_back(num(value));
    }
    header = true;
    rows.push_back(std::move(row));
  }
  emit(format, doc, rows);
  return 0;
}

int cmd_word_stats(const Global &g, const std::vector<std::string> &words, const std::string &format) {
  Handle h;
  open(g, h);
  json doc = request(h.db, "word_stats", {{"words", words}});
  std::vector<std::vector<std::string>> rows{
      {"word", "polysemy", "depth", "subsumers", "subvertices", "leaves", "commonness", "abstraction"}};
  for (const auto &w : doc["words"])
    rows.push_back({w["word"], num(w["polysemy"]), num(w["depth"]), num(w["subsumers"]),
                    num(w["subvertices"]), num(w["leaves"]), num(w["commonness"]), num(w["abstraction"])});
  emit(format, doc, rows);
  return 0;
}

struct AnalyzeArgs {
  std::vector<std::string> files;
  std::string grouping;
  std::string out = "analysis";
  std::string format = "table";
  json config = json::object();
};

int cmd_analyze(const Global &g, AnalyzeArgs a) {
  Handle h;
  open(g, h);
  json req;
  json transcripts = json::array();
  for (const auto &f : a.files)
    transcripts.push_back({{"file", fs::path(f).filename().string()}, {"text", read_file(f)}});
  req["transcripts"] = std::move(transcripts);
  if (!a.grouping.empty()) {
    auto doc = nlohmann::json::parse(read_file(a.grouping), nullptr, false);
    if (doc.is_discarded())
      throw Failure{WG_ERR_INPUT, "grouping file '" + a.grouping + "' is not valid JSON", {}};
    req["grouping"] = doc;
  }
  a.config["db"] = g.db.empty() ? default_db() : g.db;
  a.config["cache"] = g.cache;
  a.config["strict"] = g.strict;
  req["config"] = a.config;

  json res = request(h.db, "analyze", req);
  const json &report = res["report"];
  write_file(a.out + ".csv", res["csv"].get<std::string>());
  write_file(a.out + ".json", report.dump(2) + "\n");

  for (const auto &f : report["diagnostics"]["conversation_failures"])
    std::cerr << "skipped " << f["file"].get<std::string>() << ": " << f["message"].get<std::string>() << '\n';
  for (const auto &f : report["diagnostics"]["group_failures"])
    std::cerr << "skipped " << f["subject"].get<std::string>() << " " << f["scheme"].get<std::string>() << "/"
              << f["group"].get<std::string>() << ": " << f["message"].get<std::string>() << '\n';

  if (a.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else if (a.format == "csv") {
    std::cout << res["csv"].get<std::string>();
  } else {
    std::vector<std::vector<std::string>> rows{{"scheme", "group", "measure", "subjects", "mean_slope", "trend"}};
    for (const auto &s : report["summary"])
      rows.push_back({s["scheme"], s["group"], s["measure"], num(s["subjects"]), num(s["mean_slope"], 9),
                      s["classification"]});
    print_table(rows);
    std::cout << "\nwrote " << a.out << ".csv and " << a.out << ".json\n";
  }
  if (!res["ok"].get<bool>()) {
    std::cerr << "error: no conversation produced a series\n";
    return WG_ERR_CONSTRAINT;
  }
  return 0;
}

int cmd_suggest(const Global &g, const std::vector<std::string> &base, const std::vector<std::string> &candidates,
                const std::string &measure, std::size_t k, std::size_t neighbours, const std::string &format) {
  Handle h;
  open(g, h);
  json doc = request(h.db, "suggest",
                     {{"base", base}, {"candidates", candidates}, {"measure", measure}, {"k", k}, {"neighbours", neighbours}});
  std::vector<std::vector<std::string>> rows{{"rank", "noun", "average", "delta"}};
  for (const auto &p : doc["proposals"])
    rows.push_back({num(p["rank"]), p["noun"], num(p["average"]), num(p["delta"])});
  if (format == "table")
    std::cout << "base average (" << doc["measure"].get<std::string>() << "): " << num(doc["base_average"]) << "\n\n";
  emit(format, doc, rows);
  for (const auto &u : doc["unresolved"])
    std::cerr << "unresolved candidate: " << u.get<std::string>() << '\n';
  for (const auto &d : doc["duplicates"])
    std::cerr << "duplicate candidate: " << d.get<std::string>() << '\n';
  return 0;
}

int cmd_correlate(const Global &g, std::size_t words, std::size_t pairs, std::uint64_t seed, const std::string &out,
                  const std::string &format) {
  Handle h;
  open(g, h);
  json doc = request(h.db, "correlate", {{"words", words}, {"pairs", pairs}, {"seed", seed}});
  for (const char *part : {"word_measures", "similarity_measures"}) {
    const json &b = doc[part];
    write_file(out + "_" + part + ".csv", b["csv"].get<std::string>());
    write_file(out + "_" + part + "_dendrogram.json", b["dendrogram"].dump(2) + "\n");
  }
  write_file(out + ".json", doc.dump(2) + "\n");
  if (format == "json") {
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  for (const char *part : {"word_measures", "similarity_measures"}) {
    const json &b = doc[part];
    std::cout << part << " (" << b["samples"] << " samples)\n" << b["dendrogram_text"].get<std::string>();
    for (const auto &z : b["zero_variance"])
      std::cerr << "zero-variance column: " << z.get<std::string>() << '\n';
    std::cout << '\n';
  }
  std::cout << "wrote " << out << ".json and per-part CSV/dendrogram files\n";
  return 0;
}

wgservice::Service *running_service = nullptr;

void on_signal(int) {
  if (running_service)
    running_service->stop();
}

int cmd_serve(const Global &g, const wgservice::Options &o, const std::string &sessions) {
  Handle h;
  open(g, h);
  if (!sessions.empty()) {
    std::size_t restored = 0;
    check(wg_session_persist(h.db, sessions.c_str(), &restored));
    std::cerr << "restored " << restored << " session(s) from " << sessions << '\n';
  }
  wgservice::Service service(h.db, o);
  if (!service.bind())
    throw Failure{WG_ERR_INPUT, "cannot bind " + o.bind + ":" + std::to_string(o.port), {}};
  running_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on http://" << o.bind << ":" << service.port() << '\n';
  service.run();
  running_service = nullptr;
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"WordNet noun semantic measures and conversation dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", wg_version());

  Global g;
  app.add_option("--db", g.db, "WordNet directory with data.noun, index.noun, noun.exc");
  app.add_option("--cache", g.cache, "binary cache; read if present, written after loading --db otherwise");
  app.add_flag("--strict", g.strict, "fail when the database constants differ from WordNet 3.1");
  app.add_option("--threads", g.threads, "worker threads for batch sweeps")->check(CLI::PositiveNumber);

  const std::vector<std::string> table_formats{"table", "csv", "json"};
  int code = 0;

  auto *db = app.add_subcommand("db", "database management");
  db->require_subcommand(1);
  std::string verify_format = "table";
  auto *verify = db->add_subcommand("verify", "compare computed constants against WordNet 3.1");
  verify->add_option("--format", verify_format)->check(CLI::IsMember(table_formats));
  verify->callback([&] { code = cmd_db_verify(g, verify_format); });
  std::string cache_out;
  auto *cache = db->add_subcommand("cache", "write a binary cache of the loaded database");
  cache->add_option("--out,-o", cache_out, "cache file")->required();
  cache->callback([&] { code = cmd_db_cache(g, cache_out); });

  std::string x, y, sim_measures = "similarity", sim_format = "table";
  auto *sim = app.add_subcommand("sim", "similarity of two words");
  sim->add_option("x", x)->required();
  sim->add_option("y", y)->required();
  sim->add_option("--measures,--measure", sim_measures, "names, 'similarity' or 'all'");
  sim->add_option("--format", sim_format)->check(CLI::IsMember(table_formats));
  sim->callback([&] { code = cmd_sim(g, x, y, sim_measures, sim_format); });

  std::vector<std::string> ic_words;
  std::string ic_measures = "ic", ic_format = "table";
  auto *ic = app.add_subcommand("ic", "information content of words");
  ic->add_option("words", ic_words)->required();
  ic->add_option("--measures", ic_measures, "IC names, 'ic' or 'word'");
  ic->add_option("--format", ic_format)->check(CLI::IsMember(table_formats));
  ic->callback([&] { code = cmd_ic(g, ic_words, ic_measures, ic_format); });

  std::vector<std::string> ws_words;
  std::string ws_format = "table";
  auto *ws = app.add_subcommand("word-stats", "graph statistics of words");
  ws->add_option("words", ws_words)->required();
  ws->add_option("--format", ws_format)->check(CLI::IsMember(table_formats));
  ws->callback([&] { code = cmd_word_stats(g, ws_words, ws_format); });

  AnalyzeArgs aa;
  std::string measures = "all", mode = "dictionary", schemes = "whole";
  std::size_t T = 3;
  bool collocations = false, weighted = false;
  double epsilon = 1e-9;
  auto *analyze = app.add_subcommand("analyze", "segment transcripts, average measures, fit trends");
  analyze->add_option("transcripts", aa.files, "transcript files (TSV token<TAB>tag with --mode pretagged)")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--grouping", aa.grouping, "grouping JSON")->check(CLI::ExistingFile);
  analyze->add_option("--measures", measures, "measure names, 'all', 'similarity', 'ic' or 'word'");
  analyze->add_option("--t", T, "time points per series (marker schemes: total over both sides)");
  analyze->add_option("--mode", mode)->check(CLI::IsMember({"dictionary", "pretagged"}));
  analyze->add_flag("--collocations", collocations, "join bigrams found in the lexicon");
  analyze->add_option("--schemes", schemes, "whole, role, success, idea, feedback, evaluation or all");
  analyze->add_flag("--token-weighted", weighted, "weight nouns by occurrences");
  analyze->add_option("--epsilon", epsilon, "slope magnitude below which a trend is flat");
  analyze->add_option("--out,-o", aa.out, "output prefix for .csv and .json");
  analyze->add_option("--format", aa.format, "stdout: table summary, csv or json")
      ->check(CLI::IsMember(table_formats));
  analyze->callback([&] {
    aa.config = {{"measures", measures}, {"t", T},           {"mode", mode},
                 {"collocations", collocations}, {"schemes", schemes}, {"token_weighted", weighted},
                 {"epsilon", epsilon}, {"format", aa.format == "json" ? "json" : "csv"}};
    code = cmd_analyze(g, aa);
  });

  std::vector<std::string> base, candidates;
  std::string measure = "lin:sanchez-batet", sg_format = "table";
  std::size_t k = 0, neighbours = 0;
  auto *suggest = app.add_subcommand("suggest", "rank candidates by how much they lower average similarity");
  suggest->add_option("--base", base, "base nouns (comma separated or repeated)")->required();
  suggest->add_option("--candidates", candidates, "candidate nouns");
  suggest->add_option("--measure", measure);
  suggest->add_option("--k", k, "show only the top k (0 = all)");
  suggest->add_option("--neighbours", neighbours, "add up to N hyponym/co-hyponym lemmas of the base as candidates");
  suggest->add_option("--format", sg_format)->check(CLI::IsMember(table_formats));
  suggest->callback([&] {
    code = cmd_suggest(g, split_list(base), split_list(candidates), measure, k, neighbours, sg_format);
  });

  std::size_t words = 1000, pairs = 500;
  std::uint64_t seed = 42;
  std::string corr_out = "correlation", corr_format = "table";
  auto *correlate = app.add_subcommand("correlate", "measure correlations and clustering on random samples");
  correlate->add_option("--words", words, "sampled nouns for the word measures");
  correlate->add_option("--pairs", pairs, "sampled noun pairs for the similarities");
  correlate->add_option("--seed", seed);
  correlate->add_option("--out,-o", corr_out, "output prefix");
  correlate->add_option("--format", corr_format)->check(CLI::IsMember({"table", "json"}));
  correlate->callback([&] { code = cmd_correlate(g, words, pairs, seed, corr_out, corr_format); });

  wgservice::Options so;
  std::string sessions;
  auto *serve = app.add_subcommand("serve", "run the HTTP/JSON service");
  serve->add_option("--port", so.port);
  serve->add_option("--bind", so.bind);
  serve->add_option("--cors-origin", so.cors_origin);
  serve->add_option("--sessions", sessions, "directory for session logs (replayed at start)");
  serve->callback([&] { code = cmd_serve(g, so, sessions); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : WG_ERR_INPUT;
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << '\n';
    for (const auto &d : f.details)
      std::cerr << "  " << d << '\n';
    return f.code;
  }
  return code;
}

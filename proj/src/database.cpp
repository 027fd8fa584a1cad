/* WordNet flat-file parsing and database constants.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/database.hpp"
#include "wordgraph/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace wordgraph {

namespace {

struct RawSynset {
  SynsetId id;
  std::vector<std::string> lemmas;
  std::vector<std::uint32_t> hypernym_offsets;
  std::size_t line = 0;
};

[[noreturn]] void malformed(const std::string &source, std::size_t line, const std::string &what) {
  throw Error(ErrorCode::Database,
              source + ":" + std::to_string(line) + ": malformed record: " + what);
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\r') ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T &out, int base = 10) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
  return ec == std::errc() && p == s.data() + s.size();
}

bool is_header(std::string_view line) { return line.empty() || line.starts_with("  "); }

// Adjective syntactic markers never occur on nouns, but strip them anyway.
std::string strip_marker(std::string_view lemma) {
  if (lemma.size() > 3 && lemma.back() == ')') {
    auto open = lemma.rfind('(');
    if (open != std::string_view::npos)
      return std::string(lemma.substr(0, open));
  }
  return std::string(lemma);
}

std::vector<RawSynset> parse_data(std::istream &in, const std::string &source) {
  std::vector<RawSynset> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_header(line))
      continue;
    std::string_view body = line;
    if (auto bar = body.find(" | "); bar != std::string_view::npos)
      body = body.substr(0, bar);
    auto tok = split_spaces(body);
    if (tok.size() < 5)
      malformed(source, lineno, "too few fields");
    RawSynset s;
    s.line = lineno;
    if (!parse_number(tok[0], s.id.offset))
      malformed(source, lineno, "bad synset offset '" + std::string(tok[0]) + "'");
    if (tok[2] != "n")
      malformed(source, lineno, "synset type '" + std::string(tok[2]) + "' is not a noun");
    std::size_t wcnt = 0;
    if (!parse_number(tok[3], wcnt, 16))
      malformed(source, lineno, "bad word count");
    std::size_t pos = 4;
    if (tok.size() < pos + 2 * wcnt + 1)
      malformed(source, lineno, "word list truncated");
    for (std::size_t i = 0; i < wcnt; ++i, pos += 2)
      s.lemmas.push_back(strip_marker(tok[pos]));
    std::size_t pcnt = 0;
    if (!parse_number(tok[pos], pcnt))
      malformed(source, lineno, "bad pointer count");
    ++pos;
    if (tok.size() < pos + 4 * pcnt)
      malformed(source, lineno, "pointer list truncated");
    for (std::size_t i = 0; i < pcnt; ++i, pos += 4) {
      std::string_view sym = tok[pos];
      std::uint32_t target = 0;
      if (!parse_number(tok[pos + 1], target))
        malformed(source, lineno, "bad pointer offset");
      if ((sym == "@" || sym == "@i") && tok[pos + 2] == "n")
        s.hypernym_offsets.push_back(target);
    }
    out.push_back(std::move(s));
  }
  return out;
}

struct IndexEntry {
  std::string lemma;
  std::vector<std::uint32_t> offsets;
  std::size_t line;
};

std::vector<IndexEntry> parse_index(std::istream &in, const std::string &source) {
  std::vector<IndexEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_header(line))
      continue;
    auto tok = split_spaces(line);
    if (tok.size() < 6)
      malformed(source, lineno, "too few fields");
    std::size_t synset_cnt = 0, p_cnt = 0;
    if (!parse_number(tok[2], synset_cnt) || !parse_number(tok[3], p_cnt))
      malformed(source, lineno, "bad counts");
    std::size_t first = 4 + p_cnt + 2;
    if (tok.size() != first + synset_cnt)
      malformed(source, lineno, "expected " + std::to_string(synset_cnt) + " synset offsets");
    IndexEntry e{std::string(tok[0]), {}, lineno};
    for (std::size_t i = first; i < tok.size(); ++i) {
      std::uint32_t off = 0;
      if (!parse_number(tok[i], off))
        malformed(source, lineno, "bad synset offset");
      e.offsets.push_back(off);
    }
    out.push_back(std::move(e));
  }
  return out;
}

MorphExceptions parse_exceptions(std::istream &in, const std::string &source) {
  MorphExceptions out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_spaces(line);
    if (tok.empty())
      continue;
    if (tok.size() < 2)
      malformed(source, lineno, "exception entry without base form");
    auto &bases = out[std::string(tok[0])];
    for (std::size_t i = 1; i < tok.size(); ++i)
      bases.emplace_back(tok[i]);
  }
  return out;
}

Csr build_csr(const std::vector<std::vector<std::uint32_t>> &rows) {
  Csr csr;
  csr.starts.reserve(rows.size() + 1);
  for (const auto &r : rows) {
    csr.targets.insert(csr.targets.end(), r.begin(), r.end());
    csr.starts.push_back(static_cast<std::uint32_t>(csr.targets.size()));
  }
  return csr;
}

} // namespace

Database parse_database(std::istream &data_noun, std::istream &index_noun,
                        std::istream &noun_exc, const std::string &source) {
  std::vector<RawSynset> raw = parse_data(data_noun, source + "/data.noun");
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawSynset &a, const RawSynset &b) { return a.id < b.id; });
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i].id == raw[i - 1].id)
      malformed(source + "/data.noun", raw[i].line,
                "duplicate synset offset " + std::to_string(raw[i].id.offset));
  if (raw.empty())
    throw Error(ErrorCode::Database, source + "/data.noun: no synset records");

  const std::size_t n = raw.size();
  std::vector<SynsetId> ids(n);
  for (std::size_t i = 0; i < n; ++i)
    ids[i] = raw[i].id;
  auto index_of = [&](std::uint32_t off) -> std::optional<SynsetIndex> {
    auto it = std::lower_bound(ids.begin(), ids.end(), SynsetId{off});
    if (it == ids.end() || it->offset != off)
      return std::nullopt;
    return static_cast<SynsetIndex>(it - ids.begin());
  };

  std::vector<std::vector<std::uint32_t>> parents(n), children(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t off : raw[i].hypernym_offsets) {
      auto p = index_of(off);
      if (!p)
        malformed(source + "/data.noun", raw[i].line,
                  "hypernym pointer to unknown synset " + std::to_string(off));
      if (*p == i)
        throw Error(ErrorCode::Database, source + "/data.noun:" + std::to_string(raw[i].line) +
                                             ": cycle detected: synset " +
                                             std::to_string(raw[i].id.offset) +
                                             " is its own hypernym");
      if (std::find(parents[i].begin(), parents[i].end(), *p) == parents[i].end())
        parents[i].push_back(*p);
    }
  }
  for (SynsetIndex i = 0; i < n; ++i) {
    std::sort(parents[i].begin(), parents[i].end());
    for (SynsetIndex p : parents[i])
      children[p].push_back(i);
  }

  std::vector<SynsetIndex> roots;
  for (SynsetIndex i = 0; i < n; ++i)
    if (parents[i].empty())
      roots.push_back(i);
  if (roots.size() > 1) {
    std::vector<std::string> details;
    for (std::size_t k = 0; k < roots.size() && k < 10; ++k)
      details.push_back(std::to_string(ids[roots[k]].offset));
    throw Error(ErrorCode::Database,
                source + ": multiple roots detected (" + std::to_string(roots.size()) + ")",
                details);
  }

  // Kahn's algorithm; anything left unprocessed sits on or below a cycle.
  std::vector<std::uint32_t> indegree(n);
  for (SynsetIndex i = 0; i < n; ++i)
    indegree[i] = static_cast<std::uint32_t>(parents[i].size());
  std::vector<SynsetIndex> topo;
  topo.reserve(n);
  if (!roots.empty())
    topo.push_back(roots.front());
  for (std::size_t head = 0; head < topo.size(); ++head)
    for (SynsetIndex c : children[topo[head]])
      if (--indegree[c] == 0)
        topo.push_back(c);
  if (topo.size() != n) {
    std::vector<std::string> details;
    for (SynsetIndex i = 0; i < n && details.size() < 10; ++i)
      if (indegree[i] != 0)
        details.push_back(std::to_string(ids[i].offset));
    throw Error(ErrorCode::Database,
                source + ": cycle detected in is-a edges (" + std::to_string(n - topo.size()) +
                    " synsets unreachable from a root)",
                details);
  }

  std::vector<std::vector<std::string>> lemmas(n);
  for (std::size_t i = 0; i < n; ++i)
    lemmas[i] = std::move(raw[i].lemmas);

  // Word vertices: index forms (lowercase, sense order as listed) merged with
  // the cased lemma fields of the synset records.
  std::vector<IndexEntry> index = parse_index(index_noun, source + "/index.noun");
  std::map<std::string, std::vector<SynsetIndex>> senses;
  for (const IndexEntry &e : index) {
    auto &list = senses[e.lemma];
    for (std::uint32_t off : e.offsets) {
      auto s = index_of(off);
      if (!s)
        malformed(source + "/index.noun", e.line,
                  "sense of '" + e.lemma + "' points to unknown synset " + std::to_string(off));
      if (std::find(list.begin(), list.end(), *s) == list.end())
        list.push_back(*s);
    }
  }
  for (SynsetIndex i = 0; i < n; ++i) {
    for (const std::string &lemma : lemmas[i]) {
      auto &list = senses[lemma];
      if (std::find(list.begin(), list.end(), i) == list.end())
        list.push_back(i);
    }
  }
  std::vector<std::string> words;
  std::vector<std::vector<std::uint32_t>> sense_rows;
  words.reserve(senses.size());
  sense_rows.reserve(senses.size());
  for (auto &[form, list] : senses) {
    words.push_back(form);
    sense_rows.push_back(std::move(list));
  }

  Database db;
  SynsetIndex root = roots.empty() ? 0 : roots.front();
  db.taxonomy = Taxonomy(std::move(ids), std::move(lemmas), build_csr(parents),
                         build_csr(children), root, std::move(topo));
  db.lexicon = Lexicon(std::move(words), build_csr(sense_rows));
  db.exceptions = parse_exceptions(noun_exc, source + "/noun.exc");
  return db;
}

Database load_database(const std::filesystem::path &dir) {
  auto open = [&](const char *name) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in)
      throw Error(ErrorCode::Database, "missing database file: " + (dir / name).string());
    return in;
  };
  std::ifstream data = open("data.noun");
  std::ifstream index = open("index.noun");
  std::ifstream exc = open("noun.exc");
  return parse_database(data, index, exc, dir.string());
}

DbConstants compute_constants(const Database &db, const TaxonomyStats &stats) {
  const Taxonomy &tax = db.taxonomy;
  const Lexicon &lex = db.lexicon;
  DbConstants c;
  c.max_vertices = tax.size();
  c.m_edges = tax.edge_count();
  c.word_count = lex.size();
  c.w_edges = lex.edge_count();
  for (SynsetIndex i = 0; i < tax.size(); ++i) {
    if (tax.is_leaf(i))
      ++c.max_leaves;
    c.max_depth = std::max<std::uint32_t>(c.max_depth, stats.depth[i]);
  }

  // A word's leaves contain every sense's leaves, so its commonness is at
  // least the largest sense commonness and at most the root's.
  auto word_commonness = [&](WordIndex w) {
    auto s = lex.senses(w);
    if (s.size() == 1)
      return stats.commonness[s[0]];
    return sense_union(tax, stats, s).commonness;
  };
  auto lower_bound = [&](WordIndex w) {
    double b = 0.0;
    for (SynsetIndex s : lex.senses(w))
      b = std::max(b, stats.commonness[s]);
    return b;
  };

  double best = std::numeric_limits<double>::infinity();
  for (WordIndex w = 0; w < lex.size(); ++w)
    if (lex.senses(w).size() == 1)
      best = std::min(best, stats.commonness[lex.senses(w)[0]]);
  std::vector<std::pair<WordIndex, double>> exact;
  for (WordIndex w = 0; w < lex.size(); ++w) {
    if (lex.senses(w).empty())
      continue;
    if (lex.senses(w).size() == 1 || lower_bound(w) <= best * (1 + 1e-12)) {
      double v = word_commonness(w);
      best = std::min(best, v);
      exact.emplace_back(w, v);
    }
  }
  c.min_commonness = std::isfinite(best) ? best : 0.0;
  for (auto [w, v] : exact)
    if (std::abs(v - c.min_commonness) <= 1e-12 * c.min_commonness)
      c.min_commonness_words.push_back(lex.word(w));
  std::sort(c.min_commonness_words.begin(), c.min_commonness_words.end());
  if (c.min_commonness > 0)
    c.min_commonness_denominator = static_cast<std::uint32_t>(std::lround(1.0 / c.min_commonness));

  bool root_has_word = !tax.lemmas(tax.root()).empty();
  if (root_has_word) {
    c.max_commonness = stats.commonness[tax.root()];
  } else {
    for (WordIndex w = 0; w < lex.size(); ++w)
      c.max_commonness = std::max(c.max_commonness, word_commonness(w));
  }
  return c;
}

DbConstants wordnet31_reference() {
  DbConstants c;
  c.max_vertices = 82192;
  c.max_leaves = 65031;
  c.max_depth = 19;
  c.min_commonness = 1.0 / 35.0;
  c.max_commonness = 6863.6;
  c.word_count = 158441;
  c.m_edges = 84505;
  c.w_edges = 189555;
  c.min_commonness_words = {"Saint_Ambrose"};
  c.min_commonness_denominator = 35;
  return c;
}

std::vector<ConstantCheck> check_constants(const DbConstants &a, const DbConstants &e) {
  std::vector<ConstantCheck> out;
  auto count = [&](const char *name, std::uint64_t expected, std::uint64_t actual) {
    out.push_back({name, std::to_string(expected), std::to_string(actual), expected == actual});
  };
  auto real = [&](const char *name, double expected, double actual, double tol) {
    std::ostringstream ex, ac;
    ex.precision(10);
    ac.precision(10);
    ex << expected;
    ac << actual;
    out.push_back({name, ex.str(), ac.str(), std::abs(expected - actual) <= tol});
  };
  count("max_vertices", e.max_vertices, a.max_vertices);
  count("max_leaves", e.max_leaves, a.max_leaves);
  count("max_depth", e.max_depth, a.max_depth);
  real("min_commonness", e.min_commonness, a.min_commonness, 1e-12);
  real("max_commonness", e.max_commonness, a.max_commonness, 0.1);
  count("word_count", e.word_count, a.word_count);
  count("m_edges", e.m_edges, a.m_edges);
  count("w_edges", e.w_edges, a.w_edges);
  for (const std::string &w : e.min_commonness_words) {
    bool found = std::find(a.min_commonness_words.begin(), a.min_commonness_words.end(), w) !=
                 a.min_commonness_words.end();
    out.push_back({"min_commonness_word", w, found ? w : "(absent)", found});
  }
  return out;
}

WordGraph build_wordgraph(Database db) {
  WordGraph g;
  g.db = std::move(db);
  g.stats = precompute_stats(g.db.taxonomy);
  g.constants = compute_constants(g.db, g.stats);
  return g;
}

WordGraph open_wordgraph(const std::filesystem::path &dir, ConstantsMode mode) {
  WordGraph g = build_wordgraph(load_database(dir));
  g.checks = check_constants(g.constants, wordnet31_reference());
  if (mode == ConstantsMode::Strict) {
    std::vector<std::string> bad;
    for (const auto &c : g.checks)
      if (!c.ok)
        bad.push_back(c.name + ": expected " + c.expected + ", got " + c.actual);
    if (!bad.empty())
      throw Error(ErrorCode::Database,
                  "database constants deviate from WordNet 3.1 (" + std::to_string(bad.size()) +
                      " mismatches)",
                  bad);
  }
  return g;
}

} // namespace wordgraph

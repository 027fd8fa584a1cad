/* Versioned binary cache of a loaded and precomputed WordGraph.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/database.hpp"
#include "wordgraph/error.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>

namespace wordgraph {

namespace {

constexpr char kMagic[4] = {'W', 'G', 'P', 'H'};

class Writer {
public:
  void bytes(const void *p, std::size_t n) {
    buf_.append(static_cast<const char *>(p), n);
  }
  template <typename T> void uint(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
      buf_.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
  }
  void f64(double v) { uint(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string &s) {
    uint<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  template <typename T> void vec(const std::vector<T> &v) {
    uint<std::uint32_t>(static_cast<std::uint32_t>(v.size()));
    for (const T &x : v) {
      if constexpr (std::is_same_v<T, double>)
        f64(x);
      else
        uint(x);
    }
  }
  void csr(const Csr &c) {
    vec(c.starts);
    vec(c.targets);
  }
  std::string &buffer() { return buf_; }

private:
  std::string buf_;
};

class Reader {
public:
  explicit Reader(std::string_view data) : data_(data) {}

  void need(std::size_t n) const {
    if (data_.size() - pos_ < n)
      throw Error(ErrorCode::Database, "cache file truncated");
  }
  template <typename T> T uint() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }
  std::string str() {
    auto n = uint<std::uint32_t>();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  template <typename T> std::vector<T> vec() {
    auto n = uint<std::uint32_t>();
    need(static_cast<std::size_t>(n) * (std::is_same_v<T, double> ? 8 : sizeof(T)));
    std::vector<T> v(n);
    for (auto &x : v) {
      if constexpr (std::is_same_v<T, double>)
        x = f64();
      else
        x = uint<T>();
    }
    return v;
  }
  Csr csr() {
    Csr c;
    c.starts = vec<std::uint32_t>();
    c.targets = vec<std::uint32_t>();
    if (c.starts.empty() || c.starts.back() != c.targets.size())
      throw Error(ErrorCode::Database, "cache file corrupt: inconsistent adjacency");
    return c;
  }
  bool done() const { return pos_ == data_.size(); }

private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::uint32_t checksum(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  const auto *p = reinterpret_cast<const Bytef *>(bytes.data());
  std::size_t left = bytes.size();
  while (left > 0) {
    auto chunk = static_cast<uInt>(std::min<std::size_t>(left, 1u << 30));
    crc = crc32(crc, p, chunk);
    p += chunk;
    left -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

} // namespace

std::string encode_cache(const WordGraph &g) {
  Writer w;
  w.bytes(kMagic, 4);
  w.uint<std::uint8_t>(kCacheFormatVersion);

  const Taxonomy &tax = g.db.taxonomy;
  w.uint<std::uint32_t>(static_cast<std::uint32_t>(tax.size()));
  for (SynsetIndex i = 0; i < tax.size(); ++i) {
    w.uint<std::uint32_t>(tax.id(i).offset);
    w.uint<std::uint32_t>(static_cast<std::uint32_t>(tax.lemmas(i).size()));
    for (const auto &l : tax.lemmas(i))
      w.str(l);
  }
  w.csr(tax.hypernym_csr());
  w.csr(tax.hyponym_csr());
  w.uint<std::uint32_t>(tax.root());
  w.vec(tax.topological_order());

  const Lexicon &lex = g.db.lexicon;
  w.uint<std::uint32_t>(static_cast<std::uint32_t>(lex.size()));
  for (const auto &word : lex.words())
    w.str(word);
  w.csr(lex.sense_csr());

  std::vector<const MorphExceptions::value_type *> exc;
  for (const auto &e : g.db.exceptions)
    exc.push_back(&e);
  std::sort(exc.begin(), exc.end(), [](auto *a, auto *b) { return a->first < b->first; });
  w.uint<std::uint32_t>(static_cast<std::uint32_t>(exc.size()));
  for (const auto *e : exc) {
    w.str(e->first);
    w.uint<std::uint32_t>(static_cast<std::uint32_t>(e->second.size()));
    for (const auto &b : e->second)
      w.str(b);
  }

  w.vec(g.stats.depth);
  w.vec(g.stats.subsumer_count);
  w.vec(g.stats.subvertex_count);
  w.vec(g.stats.leaf_count);
  w.vec(g.stats.commonness);
  w.vec(g.stats.inverse_depth_sum);

  const DbConstants &c = g.constants;
  w.uint(c.max_vertices);
  w.uint(c.max_leaves);
  w.uint(c.max_depth);
  w.f64(c.min_commonness);
  w.f64(c.max_commonness);
  w.uint(c.word_count);
  w.uint(c.m_edges);
  w.uint(c.w_edges);
  w.uint(c.min_commonness_denominator);
  w.uint<std::uint32_t>(static_cast<std::uint32_t>(c.min_commonness_words.size()));
  for (const auto &word : c.min_commonness_words)
    w.str(word);

  std::uint32_t crc = checksum(w.buffer());
  w.uint(crc);
  return std::move(w.buffer());
}

WordGraph decode_cache(std::string_view bytes) {
  if (bytes.size() < 5 || !std::equal(kMagic, kMagic + 4, bytes.begin()))
    throw Error(ErrorCode::Database, "not a wordgraph cache (bad magic)");
  auto version = static_cast<std::uint8_t>(bytes[4]);
  if (version != kCacheFormatVersion)
    throw Error(ErrorCode::Database, "cache format version " + std::to_string(version) +
                                         " is not supported (expected " +
                                         std::to_string(kCacheFormatVersion) + "); rebuild it");
  if (bytes.size() < 9)
    throw Error(ErrorCode::Database, "cache file truncated");
  std::string_view body = bytes.substr(0, bytes.size() - 4);
  Reader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.uint<std::uint32_t>() != checksum(body))
    throw Error(ErrorCode::Database, "cache checksum mismatch");

  Reader r(body.substr(5));
  auto n = r.uint<std::uint32_t>();
  std::vector<SynsetId> ids(n);
  std::vector<std::vector<std::string>> lemmas(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    ids[i].offset = r.uint<std::uint32_t>();
    auto k = r.uint<std::uint32_t>();
    for (std::uint32_t j = 0; j < k; ++j)
      lemmas[i].push_back(r.str());
  }
  Csr hyper = r.csr();
  Csr hypo = r.csr();
  auto root = r.uint<std::uint32_t>();
  auto topo = r.vec<std::uint32_t>();
  if (hyper.rows() != n || hypo.rows() != n || topo.size() != n || (n > 0 && root >= n))
    throw Error(ErrorCode::Database, "cache file corrupt: taxonomy sizes disagree");

  auto wn = r.uint<std::uint32_t>();
  std::vector<std::string> words(wn);
  for (auto &word : words)
    word = r.str();
  Csr senses = r.csr();
  if (senses.rows() != wn)
    throw Error(ErrorCode::Database, "cache file corrupt: lexicon sizes disagree");

  WordGraph g;
  auto en = r.uint<std::uint32_t>();
  for (std::uint32_t i = 0; i < en; ++i) {
    std::string key = r.str();
    auto k = r.uint<std::uint32_t>();
    auto &bases = g.db.exceptions[key];
    for (std::uint32_t j = 0; j < k; ++j)
      bases.push_back(r.str());
  }

  g.stats.depth = r.vec<std::uint16_t>();
  g.stats.subsumer_count = r.vec<std::uint32_t>();
  g.stats.subvertex_count = r.vec<std::uint32_t>();
  g.stats.leaf_count = r.vec<std::uint32_t>();
  g.stats.commonness = r.vec<double>();
  g.stats.inverse_depth_sum = r.vec<double>();
  if (g.stats.depth.size() != n || g.stats.commonness.size() != n)
    throw Error(ErrorCode::Database, "cache file corrupt: statistics sizes disagree");

  DbConstants &c = g.constants;
  c.max_vertices = r.uint<std::uint64_t>();
  c.max_leaves = r.uint<std::uint64_t>();
  c.max_depth = r.uint<std::uint32_t>();
  c.min_commonness = r.f64();
  c.max_commonness = r.f64();
  c.word_count = r.uint<std::uint64_t>();
  c.m_edges = r.uint<std::uint64_t>();
  c.w_edges = r.uint<std::uint64_t>();
  c.min_commonness_denominator = r.uint<std::uint32_t>();
  auto mw = r.uint<std::uint32_t>();
  for (std::uint32_t i = 0; i < mw; ++i)
    c.min_commonness_words.push_back(r.str());
  if (!r.done())
    throw Error(ErrorCode::Database, "cache file corrupt: trailing bytes");

  g.db.taxonomy = Taxonomy(std::move(ids), std::move(lemmas), std::move(hyper), std::move(hypo),
                           root, std::move(topo));
  g.db.lexicon = Lexicon(std::move(words), std::move(senses));
  g.checks = check_constants(g.constants, wordnet31_reference());
  return g;
}

void save_cache(const WordGraph &graph, const std::filesystem::path &path) {
  std::string bytes = encode_cache(graph);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::Database, "cannot write cache file: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error(ErrorCode::Database, "failed writing cache file: " + path.string());
}

WordGraph load_cache(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::Database, "cannot open cache file: " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_cache(bytes);
}

} // namespace wordgraph

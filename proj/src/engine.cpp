/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/engine.hpp"
#include "wordgraph/error.hpp"

#include <limits>

namespace wordgraph {

namespace {

struct Traversal {
  VisitMarker marker;
  std::vector<std::uint32_t> dist;
  std::vector<SynsetIndex> order;

  void reset(std::size_t n) {
    marker.reset(n);
    if (dist.size() != n)
      dist.assign(n, 0);
    order.clear();
  }
  bool reach(SynsetIndex v, std::uint32_t d) {
    if (!marker.visit(v))
      return false;
    dist[v] = d;
    order.push_back(v);
    return true;
  }
};

// Shortest directed distances from the senses up to each of their subsumers.
void upward(const Taxonomy &tax, std::span<const SynsetIndex> senses, Traversal &t) {
  t.reset(tax.size());
  for (SynsetIndex s : senses)
    t.reach(s, 0);
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    SynsetIndex v = t.order[head];
    for (SynsetIndex p : tax.hypernyms(v))
      t.reach(p, t.dist[v] + 1);
  }
}

} // namespace

Engine::Engine(std::shared_ptr<const WordGraph> graph) : graph_(std::move(graph)) {
  if (!graph_)
    throw Error(ErrorCode::Internal, "engine needs a loaded word graph");
}

std::optional<WordIndex> Engine::try_resolve(std::string_view word) const {
  return lexicon().find(word);
}

WordIndex Engine::resolve(std::string_view word) const {
  if (auto w = lexicon().find(word))
    return *w;
  throw Error(ErrorCode::Input, "unknown word '" + std::string(word) + "'",
              lexicon().nearest(word));
}

WordStats Engine::compute_word_stats(WordIndex w) const {
  auto senses = lexicon().senses(w);
  WordStats ws;
  ws.word = w;
  ws.polysemy = static_cast<std::uint32_t>(senses.size());
  if (senses.size() == 1) {
    SynsetIndex s = senses[0];
    ws.depth = stats().depth[s];
    ws.subsumers = stats().subsumer_count[s];
    ws.subvertices = stats().subvertex_count[s];
    ws.leaves = stats().leaf_count[s];
    ws.commonness = stats().commonness[s];
    ws.inverse_depth_sum = stats().inverse_depth_sum[s];
    return ws;
  }
  SenseUnion u = sense_union(taxonomy(), stats(), senses);
  ws.depth = u.min_depth;
  ws.subsumers = static_cast<std::uint32_t>(u.subsumers.size());
  ws.subvertices = static_cast<std::uint32_t>(u.subvertices.size());
  ws.leaves = static_cast<std::uint32_t>(u.leaves.size());
  ws.commonness = u.commonness;
  ws.inverse_depth_sum = u.inverse_depth_sum;
  return ws;
}

WordStats Engine::word_stats(WordIndex w) const {
  {
    std::lock_guard lock(word_mutex_);
    if (auto it = word_cache_.find(w); it != word_cache_.end())
      return it->second;
  }
  WordStats ws = compute_word_stats(w);
  std::lock_guard lock(word_mutex_);
  word_cache_.emplace(w, ws);
  return ws;
}

std::vector<SynsetIndex> Engine::subsumers(WordIndex w) const {
  return sense_union(taxonomy(), stats(), lexicon().senses(w)).subsumers;
}
std::vector<SynsetIndex> Engine::subvertices(WordIndex w) const {
  return sense_union(taxonomy(), stats(), lexicon().senses(w)).subvertices;
}
std::vector<SynsetIndex> Engine::leaves(WordIndex w) const {
  return sense_union(taxonomy(), stats(), lexicon().senses(w)).leaves;
}

PairInfo Engine::pair(WordIndex x, WordIndex y) const {
  if (x == y)
    throw Error(ErrorCode::Constraint,
                "similarity needs two different words (got '" + lexicon().word(x) + "' twice)");
  if (x > y)
    std::swap(x, y);
  const std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | y;
  {
    std::lock_guard lock(pair_mutex_);
    if (auto it = pair_cache_.find(key); it != pair_cache_.end())
      return it->second;
  }
  PairInfo info = compute_pair(x, y);
  std::lock_guard lock(pair_mutex_);
  pair_cache_.emplace(key, info);
  return info;
}

std::size_t Engine::cached_pairs() const {
  std::lock_guard lock(pair_mutex_);
  return pair_cache_.size();
}

PairInfo Engine::compute_pair(WordIndex x, WordIndex y) const {
  PairInfo p;
  p.lcs = compute_lcs(x, y);
  p.lcs_depth = stats().depth[p.lcs];
  p.distance = compute_distance(x, y);
  return p;
}

// Among common subsumers, minimize dist(z, x) + dist(z, y); then prefer the
// deepest; then the lowest synset offset.
SynsetIndex Engine::compute_lcs(WordIndex x, WordIndex y) const {
  thread_local Traversal tx, ty;
  const Taxonomy &tax = taxonomy();
  upward(tax, lexicon().senses(x), tx);
  upward(tax, lexicon().senses(y), ty);

  SynsetIndex best = tax.root();
  std::uint32_t best_sum = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t best_depth = 0;
  for (SynsetIndex z : ty.order) {
    if (!tx.marker.seen(z))
      continue;
    std::uint32_t sum = tx.dist[z] + ty.dist[z];
    std::uint32_t depth = stats().depth[z];
    if (sum < best_sum || (sum == best_sum && depth > best_depth) ||
        (sum == best_sum && depth == best_depth && tax.id(z) < tax.id(best))) {
      best = z;
      best_sum = sum;
      best_depth = depth;
    }
  }
  return best;
}

// Bidirectional breadth-first search over the undirected is-a graph, one full
// level at a time from the smaller frontier.
std::uint32_t Engine::compute_distance(WordIndex x, WordIndex y) const {
  thread_local Traversal ta, tb;
  const Taxonomy &tax = taxonomy();
  const std::size_t n = tax.size();
  ta.reset(n);
  tb.reset(n);
  for (SynsetIndex s : lexicon().senses(x))
    ta.reach(s, 0);
  for (SynsetIndex s : lexicon().senses(y)) {
    if (ta.marker.seen(s))
      return 0;
    tb.reach(s, 0);
  }

  std::size_t a_begin = 0, b_begin = 0;  // current frontier = order[begin..]
  std::uint32_t a_level = 0, b_level = 0;
  while (a_begin < ta.order.size() && b_begin < tb.order.size()) {
    bool expand_a = ta.order.size() - a_begin <= tb.order.size() - b_begin;
    Traversal &self = expand_a ? ta : tb;
    Traversal &other = expand_a ? tb : ta;
    std::size_t &begin = expand_a ? a_begin : b_begin;
    std::uint32_t &level = expand_a ? a_level : b_level;

    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::size_t end = self.order.size();
    for (std::size_t i = begin; i < end; ++i) {
      SynsetIndex v = self.order[i];
      auto visit = [&](SynsetIndex u) {
        if (other.marker.seen(u))
          best = std::min(best, level + 1 + other.dist[u]);
        self.reach(u, level + 1);
      };
      for (SynsetIndex u : tax.hypernyms(v)) visit(u);
      for (SynsetIndex u : tax.hyponyms(v)) visit(u);
    }
    begin = end;
    ++level;
    if (best != std::numeric_limits<std::uint32_t>::max())
      return best;
  }
  // The taxonomy is connected through the root, so this is unreachable for a
  // loaded database.
  throw Error(ErrorCode::Internal, "words are not connected in the taxonomy");
}

} // namespace wordgraph

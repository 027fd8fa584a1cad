/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

namespace wgtest {

using namespace wordgraph;

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Every vertex reachable from `start` through `next`, start included. `seen`
// is all zero on entry and on return.
template <typename Next>
std::vector<SynsetIndex> reach(std::vector<char> &seen, SynsetIndex start, Next next) {
  std::vector<SynsetIndex> out, stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    SynsetIndex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (SynsetIndex u : next(v))
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  for (SynsetIndex v : out)
    seen[v] = 0;
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

Oracle::Oracle(const Database &db)
    : db_(db), depth_(db.taxonomy.size(), kUnreached), ancestor_count_(db.taxonomy.size(), -1),
      synset_memo_(db.taxonomy.size()), synset_done_(db.taxonomy.size(), false),
      seen_(db.taxonomy.size(), 0) {
  // Depth = vertex count of the shortest root path; BFS down the hyponyms.
  const Taxonomy &t = db.taxonomy;
  std::deque<SynsetIndex> queue{t.root()};
  depth_[t.root()] = 1;
  while (!queue.empty()) {
    SynsetIndex v = queue.front();
    queue.pop_front();
    for (SynsetIndex c : t.hyponyms(v))
      if (depth_[c] == kUnreached) {
        depth_[c] = depth_[v] + 1;
        queue.push_back(c);
      }
  }
}

std::vector<SynsetIndex> Oracle::ancestors(SynsetIndex s) const {
  const Taxonomy &t = db_.taxonomy;
  return reach(seen_, s, [&](SynsetIndex v) { return t.hypernyms(v); });
}

std::vector<SynsetIndex> Oracle::descendants(SynsetIndex s) const {
  const Taxonomy &t = db_.taxonomy;
  return reach(seen_, s, [&](SynsetIndex v) { return t.hyponyms(v); });
}

std::uint32_t Oracle::ancestor_count(SynsetIndex s) {
  if (ancestor_count_[s] < 0)
    ancestor_count_[s] = static_cast<std::int64_t>(ancestors(s).size());
  return static_cast<std::uint32_t>(ancestor_count_[s]);
}

Oracle::Counts Oracle::closure_counts(const std::vector<SynsetIndex> &senses) {
  const Taxonomy &t = db_.taxonomy;
  std::vector<SynsetIndex> up, down;
  for (SynsetIndex s : senses) {
    auto a = ancestors(s);
    auto d = descendants(s);
    up.insert(up.end(), a.begin(), a.end());
    down.insert(down.end(), d.begin(), d.end());
  }
  std::sort(up.begin(), up.end());
  up.erase(std::unique(up.begin(), up.end()), up.end());
  std::sort(down.begin(), down.end());
  down.erase(std::unique(down.begin(), down.end()), down.end());

  Counts k;
  k.depth = std::numeric_limits<double>::infinity();
  for (SynsetIndex s : senses)
    k.depth = std::min(k.depth, static_cast<double>(depth_[s]));
  k.subsumers = static_cast<double>(up.size());
  k.subvertices = static_cast<double>(down.size());
  for (SynsetIndex v : down) {
    k.inverse_depth_sum += 1.0 / depth_[v];
    if (t.hyponyms(v).empty()) {
      k.leaves += 1;
      k.commonness += 1.0 / ancestor_count(v);
    }
  }
  return k;
}

Oracle::Counts Oracle::synset(SynsetIndex s) {
  if (!synset_done_[s]) {
    synset_memo_[s] = closure_counts({s});
    synset_done_[s] = true;
  }
  return synset_memo_[s];
}

Oracle::Counts Oracle::word(WordIndex w) {
  auto senses = db_.lexicon.senses(w);
  return closure_counts(std::vector<SynsetIndex>(senses.begin(), senses.end()));
}

Oracle::Pair Oracle::pair(WordIndex x, WordIndex y) const {
  if (x == y)
    throw std::invalid_argument("oracle pair needs x != y");
  const Taxonomy &t = db_.taxonomy;
  const std::size_t n = t.size();

  // Shortest upward distance from any sense of the word to every ancestor.
  auto upward = [&](WordIndex w) {
    std::map<SynsetIndex, std::uint32_t> dist;
    std::deque<SynsetIndex> queue;
    for (SynsetIndex s : db_.lexicon.senses(w))
      if (dist.emplace(s, 0).second)
        queue.push_back(s);
    while (!queue.empty()) {
      SynsetIndex v = queue.front();
      queue.pop_front();
      for (SynsetIndex p : t.hypernyms(v))
        if (!dist.count(p)) {
          dist[p] = dist[v] + 1;
          queue.push_back(p);
        }
    }
    return dist;
  };
  const auto dx = upward(x), dy = upward(y);

  Pair best;
  std::uint32_t best_sum = kUnreached;
  for (const auto &[z, a] : dx) {
    auto it = dy.find(z);
    if (it == dy.end())
      continue;
    const std::uint32_t sum = a + it->second;
    const bool better = sum < best_sum ||
                        (sum == best_sum && depth_[z] > best.lcs_depth) ||
                        (sum == best_sum && depth_[z] == best.lcs_depth && t.id(z) < t.id(best.lcs));
    if (better) {
      best_sum = sum;
      best.lcs = z;
      best.lcs_depth = depth_[z];
    }
  }

  // Plain single-source-set BFS over the undirected taxonomy.
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<char> target(n, 0);
  for (SynsetIndex s : db_.lexicon.senses(y))
    target[s] = 1;
  std::deque<SynsetIndex> queue;
  for (SynsetIndex s : db_.lexicon.senses(x))
    if (dist[s] == kUnreached) {
      dist[s] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    SynsetIndex v = queue.front();
    queue.pop_front();
    if (target[v]) {
      best.distance = dist[v];
      return best;
    }
    auto visit = [&](SynsetIndex u) {
      if (dist[u] == kUnreached) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    };
    for (SynsetIndex u : t.hypernyms(v))
      visit(u);
    for (SynsetIndex u : t.hyponyms(v))
      visit(u);
  }
  throw std::logic_error("oracle: words are disconnected");
}

Oracle::Constants Oracle::constants() {
  const Taxonomy &t = db_.taxonomy;
  Constants c;
  c.max_vertices = static_cast<double>(t.size());
  for (SynsetIndex s = 0; s < t.size(); ++s) {
    if (t.hyponyms(s).empty())
      c.max_leaves += 1;
    c.max_depth = std::max(c.max_depth, static_cast<double>(depth_[s]));
  }
  c.min_commonness = std::numeric_limits<double>::infinity();
  for (WordIndex w = 0; w < db_.lexicon.size(); ++w) {
    const double cm = word(w).commonness;
    if (cm < c.min_commonness) {
      c.min_commonness = cm;
      c.min_commonness_words.clear();
    }
    if (cm == c.min_commonness)
      c.min_commonness_words.push_back(db_.lexicon.word(w));
    c.max_commonness = std::max(c.max_commonness, cm);
  }
  std::sort(c.min_commonness_words.begin(), c.min_commonness_words.end());
  return c;
}

// The seven IC formulas, one line each as printed.
double Oracle::ic(IcFormula f, const Counts &k, const Constants &c) const {
  using std::log;
  switch (f) {
  case IcFormula::Blanchard:
    return 1 - log(k.leaves) / log(c.max_leaves);
  case IcFormula::Meng:
    return (log(k.depth) / log(c.max_depth)) * (1 - log(1 + k.inverse_depth_sum) / log(c.max_vertices));
  case IcFormula::Sanchez:
    return log(k.leaves / (c.max_leaves * k.subsumers)) / log(c.min_commonness / c.max_leaves);
  case IcFormula::SanchezBatet:
    return log(k.commonness / c.max_commonness) / log(c.min_commonness / c.max_commonness);
  case IcFormula::Seco:
    return 1 - log(k.subvertices) / log(c.max_vertices);
  case IcFormula::Yuan:
    return (log(k.depth) / log(c.max_depth)) * (1 - log(k.leaves) / log(c.max_leaves)) +
           log(k.subsumers) / log(c.max_vertices);
  case IcFormula::Zhou:
    return 0.5 * (1 - log(k.subvertices) / log(c.max_vertices) + log(k.depth) / log(c.max_depth));
  }
  throw std::logic_error("oracle: IC formula");
}

double Oracle::word_measure(WordIndex w, MeasureId m, const Constants &c) {
  const Counts k = word(w);
  switch (m.kind()) {
  case MeasureKind::Abstraction:
    return 1 - (k.depth - 1) / (c.max_depth - 1);
  case MeasureKind::Polysemy:
    return static_cast<double>(db_.lexicon.senses(w).size());
  case MeasureKind::Ic:
    return ic(m.ic_formula(), k, c);
  default:
    throw std::invalid_argument("oracle: not a word measure");
  }
}

double Oracle::pair_measure(WordIndex x, WordIndex y, MeasureId m, const Constants &c) {
  using std::exp;
  using std::log;
  const Pair p = pair(x, y);
  const double D = p.distance, L = p.lcs_depth, M = c.max_depth;
  if (m.kind() == MeasureKind::PathSimilarity) {
    switch (m.path_formula()) {
    case PathFormula::AlMubaidNguyen:
      return 1 - log(1 + D * (M - L)) / log(1 + 2 * (M - 1) * (M - 1));
    case PathFormula::LeacockChodorow:
      return 1 - log(D + 1) / log(2 * M - 1);
    case PathFormula::Li:
      return exp(-0.2 * D) * (exp(1.2 * L) - 1) / (exp(1.2 * L) + 1);
    case PathFormula::Rada:
      return 1 - D / (2 * (M - 1));
    case PathFormula::WuPalmer:
      // 0/0 only when the LCS is the root and the words share a sense.
      if (2 * (L - 1) + D == 0)
        return 1;
      return 2 * (L - 1) / (2 * (L - 1) + D);
    }
  }
  if (m.kind() != MeasureKind::IcSimilarity)
    throw std::invalid_argument("oracle: not a similarity");
  const IcFormula f = m.ic_formula();
  const double icx = ic(f, word(x), c), icy = ic(f, word(y), c), icl = ic(f, synset(p.lcs), c);
  switch (m.ic_sim_formula()) {
  case IcSimFormula::JiangConrath:
    return 1 - (icx + icy - 2 * icl) / 2;
  case IcSimFormula::Lin:
    return icx + icy == 0 ? 0 : 2 * icl / (icx + icy);
  case IcSimFormula::Meng:
    if (icx + icy == 0)
      return 0;
    return std::pow(2 * icl / (icx + icy), (1 - exp(-0.08 * D)) / exp(-0.08 * D));
  case IcSimFormula::Resnik:
    return icl;
  case IcSimFormula::Zhou:
    return 1 - 0.5 * (1 - log(D + 1) / log(2 * M - 1)) - 0.25 * (icx + icy - 2 * icl);
  }
  throw std::logic_error("oracle: similarity formula");
}

} // namespace wgtest

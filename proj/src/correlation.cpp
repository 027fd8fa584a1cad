/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/correlation.hpp"
#include "wordgraph/error.hpp"
#include "wordgraph/format.hpp"
#include "wordgraph/parallel.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace wordgraph {

std::uint64_t SeededRng::below(std::uint64_t n) {
  // reject the low values that would bias r % n
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = gen_();
    if (r >= threshold)
      return r % n;
  }
}

std::vector<std::uint32_t> sample_indices(std::uint32_t population, std::size_t n, SeededRng &rng) {
  if (n > population)
    throw Error(ErrorCode::Input, "sample of " + std::to_string(n) + " exceeds population " +
                                      std::to_string(population));
  std::vector<std::uint32_t> out;
  std::set<std::uint32_t> seen;
  while (out.size() < n) {
    auto i = static_cast<std::uint32_t>(rng.below(population));
    if (seen.insert(i).second)
      out.push_back(i);
  }
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> sample_pairs(std::uint32_t population,
                                                                  std::size_t n, SeededRng &rng) {
  const double possible = 0.5 * population * (population - 1.0);
  if (population < 2 || static_cast<double>(n) > possible)
    throw Error(ErrorCode::Input, "cannot draw " + std::to_string(n) + " distinct pairs from " +
                                      std::to_string(population) + " items");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  while (out.size() < n) {
    auto x = static_cast<std::uint32_t>(rng.below(population));
    auto y = static_cast<std::uint32_t>(rng.below(population));
    if (x == y)
      continue;
    if (x > y)
      std::swap(x, y);
    if (seen.insert({x, y}).second)
      out.emplace_back(x, y);
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorCode::Input, "pearson needs two equally long columns of at least 2 values");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0)
    return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

CorrelationMatrix correlate(std::vector<std::string> names, const std::vector<std::vector<double>> &columns) {
  if (names.size() != columns.size())
    throw Error(ErrorCode::Internal, "correlate: names and columns differ in length");
  CorrelationMatrix m;
  const std::size_t k = names.size();
  m.names = std::move(names);
  m.samples = k ? columns[0].size() : 0;
  m.r.assign(k * k, std::nan(""));
  m.zero_variance.assign(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double r = pearson(columns[i], columns[j]);
      if (i == j && !std::isnan(r))
        r = 1.0;
      m.r[i * k + j] = m.r[j * k + i] = r;
    }
    m.zero_variance[i] = std::isnan(m.r[i * k + i]);
  }
  return m;
}

std::string matrix_csv(const CorrelationMatrix &m) {
  std::string out = "measure";
  for (const auto &n : m.names)
    out += "," + csv_field(n);
  out += '\n';
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    out += csv_field(m.names[i]);
    for (std::size_t j = 0; j < m.names.size(); ++j)
      out += "," + format_double(m.at(i, j));
    out += '\n';
  }
  return out;
}

std::vector<std::string> Dendrogram::members(int node) const {
  std::vector<std::string> out;
  std::function<void(int)> walk = [&](int v) {
    const DendrogramNode &n = nodes[static_cast<std::size_t>(v)];
    if (n.leaf >= 0) {
      out.push_back(labels[static_cast<std::size_t>(n.leaf)]);
      return;
    }
    walk(n.left);
    walk(n.right);
  };
  walk(node);
  return out;
}

std::pair<std::vector<std::string>, std::vector<std::string>> Dendrogram::top_split() const {
  const DendrogramNode &r = nodes.at(static_cast<std::size_t>(root));
  if (r.leaf >= 0)
    return {members(root), {}};
  return {members(r.left), members(r.right)};
}

std::vector<std::vector<std::string>> Dendrogram::cut(double height) const {
  std::vector<std::vector<std::string>> out;
  std::function<void(int)> walk = [&](int v) {
    const DendrogramNode &n = nodes[static_cast<std::size_t>(v)];
    if (n.leaf >= 0 || n.height <= height) {
      out.push_back(members(v));
      return;
    }
    walk(n.left);
    walk(n.right);
  };
  if (root >= 0)
    walk(root);
  return out;
}

Dendrogram average_linkage(std::vector<std::string> labels, const std::vector<double> &distance) {
  const std::size_t n = labels.size();
  if (n == 0)
    throw Error(ErrorCode::Input, "nothing to cluster");
  if (distance.size() != n * n)
    throw Error(ErrorCode::Internal, "distance matrix has the wrong size");
  Dendrogram d;
  d.labels = std::move(labels);
  const std::size_t total = 2 * n - 1;
  std::vector<double> dist(total * total, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    DendrogramNode leaf;
    leaf.leaf = static_cast<int>(i);
    d.nodes.push_back(leaf);
    for (std::size_t j = 0; j < n; ++j)
      dist[i * total + j] = distance[i * n + j];
  }
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i)
    active[i] = i;

  while (active.size() > 1) {
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double v = dist[active[i] * total + active[j]];
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    const std::size_t a = active[bi], b = active[bj];
    const std::size_t id = d.nodes.size();
    DendrogramNode merged;
    merged.left = static_cast<int>(a);
    merged.right = static_cast<int>(b);
    merged.height = best;
    merged.size = d.nodes[a].size + d.nodes[b].size;
    const double wa = static_cast<double>(d.nodes[a].size), wb = static_cast<double>(d.nodes[b].size);
    d.nodes.push_back(merged);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bi));
    for (std::size_t k : active) {
      const double v = (wa * dist[a * total + k] + wb * dist[b * total + k]) / (wa + wb);
      dist[id * total + k] = dist[k * total + id] = v;
    }
    active.push_back(id);
  }
  d.root = static_cast<int>(active[0]);
  return d;
}

Dendrogram cluster_correlations(const CorrelationMatrix &m) {
  const std::size_t k = m.names.size();
  std::vector<double> dist(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j)
        dist[i * k + j] = std::isnan(m.at(i, j)) ? 1.0 : 1.0 - m.at(i, j);
  return average_linkage(m.names, dist);
}

nlohmann::ordered_json dendrogram_json(const Dendrogram &d) {
  std::function<nlohmann::ordered_json(int)> node = [&](int v) {
    const DendrogramNode &n = d.nodes[static_cast<std::size_t>(v)];
    nlohmann::ordered_json j;
    if (n.leaf >= 0) {
      j["label"] = d.labels[static_cast<std::size_t>(n.leaf)];
      return j;
    }
    j["height"] = n.height;
    j["size"] = n.size;
    j["children"] = {node(n.left), node(n.right)};
    return j;
  };
  return d.root >= 0 ? node(d.root) : nlohmann::ordered_json();
}

std::string dendrogram_text(const Dendrogram &d) {
  std::string out;
  std::function<void(int, const std::string &, bool, bool)> walk =
      [&](int v, const std::string &prefix, bool last, bool top) {
        const DendrogramNode &n = d.nodes[static_cast<std::size_t>(v)];
        out += prefix;
        if (!top)
          out += last ? "`-- " : "|-- ";
        if (n.leaf >= 0) {
          out += d.labels[static_cast<std::size_t>(n.leaf)];
          out += '\n';
          return;
        }
        out += "[" + format_fixed(n.height, 4) + "]\n";
        const std::string child = top ? prefix : prefix + (last ? "    " : "|   ");
        walk(n.left, child, false, false);
        walk(n.right, child, true, false);
      };
  if (d.root >= 0)
    walk(d.root, "", true, true);
  return out;
}

CorrelationStudy run_correlation(const Measures &measures, std::size_t word_sample,
                                 std::size_t pair_sample, std::uint64_t seed, unsigned threads) {
  if (word_sample < 100 || pair_sample < 100)
    throw Error(ErrorCode::Input, "correlation samples need at least 100 items (got " +
                                      std::to_string(std::min(word_sample, pair_sample)) + ")");
  const auto population = static_cast<std::uint32_t>(measures.engine().lexicon().size());
  SeededRng rng(seed);
  CorrelationStudy study;
  study.seed = seed;

  const auto words = sample_indices(population, word_sample, rng);
  const auto word_ms = word_measures();
  std::vector<std::vector<double>> wcols(word_ms.size(), std::vector<double>(words.size()));
  parallel_for(words.size(), threads, [&](std::size_t i) {
    for (std::size_t k = 0; k < word_ms.size(); ++k)
      wcols[k][i] = measures.word_value(words[i], word_ms[k]);
  });
  std::vector<std::string> wnames;
  for (const auto &m : word_ms)
    wnames.push_back(m.name());
  study.words = correlate(std::move(wnames), wcols);
  study.word_tree = cluster_correlations(study.words);

  const auto pairs = sample_pairs(population, pair_sample, rng);
  const auto sim_ms = similarity_measures();
  std::vector<std::vector<double>> pcols(sim_ms.size(), std::vector<double>(pairs.size()));
  std::vector<std::size_t> degenerate(pairs.size(), 0);
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    for (std::size_t k = 0; k < sim_ms.size(); ++k) {
      auto detail = measures.similarity_detail(pairs[i].first, pairs[i].second, sim_ms[k]);
      pcols[k][i] = detail.value;
      degenerate[i] += detail.degenerate ? 1 : 0;
    }
  });
  for (std::size_t d : degenerate)
    study.degenerate_pairs += d;
  std::vector<std::string> pnames;
  for (const auto &m : sim_ms)
    pnames.push_back(m.name());
  study.pairs = correlate(std::move(pnames), pcols);
  study.pair_tree = cluster_correlations(study.pairs);
  return study;
}

} // namespace wordgraph

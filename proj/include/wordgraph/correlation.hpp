/* Measure correlation over random samples and average-linkage clustering.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/measures.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wordgraph {

/// mt19937_64 with a bounded draw that does not depend on the standard
/// library's distribution implementation, so samples are portable.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

private:
  std::mt19937_64 gen_;
};

/// `n` distinct indices below `population`, in draw order.
std::vector<std::uint32_t> sample_indices(std::uint32_t population, std::size_t n, SeededRng &rng);
/// `n` distinct unordered pairs (x < y) below `population`, in draw order.
std::vector<std::pair<std::uint32_t, std::uint32_t>> sample_pairs(std::uint32_t population,
                                                                  std::size_t n, SeededRng &rng);

/// NaN when either column has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<double> r;  // row-major names.size()^2
  std::vector<bool> zero_variance;
  std::size_t samples = 0;

  double at(std::size_t i, std::size_t j) const { return r[i * names.size() + j]; }
};

/// columns[k] holds one value per sample for names[k].
CorrelationMatrix correlate(std::vector<std::string> names,
                            const std::vector<std::vector<double>> &columns);

std::string matrix_csv(const CorrelationMatrix &m);

struct DendrogramNode {
  int left = -1, right = -1;  // children; -1 for leaves
  int leaf = -1;              // label index for leaves
  double height = 0;          // merge distance
  std::size_t size = 1;
};

struct Dendrogram {
  std::vector<std::string> labels;
  std::vector<DendrogramNode> nodes;  // leaves first, then merges in order
  int root = -1;

  std::vector<std::string> members(int node) const;
  /// Leaf labels under the two children of the root.
  std::pair<std::vector<std::string>, std::vector<std::string>> top_split() const;
  /// Groups obtained by cutting every merge above `height`.
  std::vector<std::vector<std::string>> cut(double height) const;
};

/// Average-linkage (UPGMA) agglomeration on a symmetric distance matrix
/// (row-major). Ties merge the pair of earliest-created clusters.
Dendrogram average_linkage(std::vector<std::string> labels, const std::vector<double> &distance);

/// Clustering on 1 - r; undefined correlations count as distance 1.
Dendrogram cluster_correlations(const CorrelationMatrix &m);

nlohmann::ordered_json dendrogram_json(const Dendrogram &d);
std::string dendrogram_text(const Dendrogram &d);

struct CorrelationStudy {
  std::uint64_t seed = 0;
  CorrelationMatrix words;  // abstraction, polysemy, IC over sampled nouns
  Dendrogram word_tree;
  CorrelationMatrix pairs;  // the 40 similarities over sampled pairs
  Dendrogram pair_tree;
  std::size_t degenerate_pairs = 0;
};

/// Samples `word_sample` nouns and `pair_sample` noun pairs from the whole
/// lexicon with SeededRng(seed). Throws Error(Input) below 100 samples.
CorrelationStudy run_correlation(const Measures &measures, std::size_t word_sample,
                                 std::size_t pair_sample, std::uint64_t seed, unsigned threads = 1);

} // namespace wordgraph

/* Per-synset precomputed graph statistics.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/taxonomy.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace wordgraph {

/// Column-per-field statistics indexed by SynsetIndex. Set sizes are exact
/// (a vertex reached along several parents counts once) and every vertex is
/// its own subsumer and subvertex.
struct TaxonomyStats {
  std::vector<std::uint16_t> depth;            // root = 1
  std::vector<std::uint32_t> subsumer_count;
  std::vector<std::uint32_t> subvertex_count;
  std::vector<std::uint32_t> leaf_count;
  std::vector<double> commonness;              // sum over leaves of 1/subsumer_count(leaf)
  std::vector<double> inverse_depth_sum;       // sum over subvertices of 1/depth

  std::size_t size() const { return depth.size(); }
  bool operator==(const TaxonomyStats &) const = default;
};

TaxonomyStats precompute_stats(const Taxonomy &taxonomy);

/// Ancestor / descendant closure of a set of synsets (the senses of one word).
/// Sums run over the sorted leaf and subvertex lists, so a single synset
/// reproduces its TaxonomyStats entries bit for bit.
struct SenseUnion {
  std::vector<SynsetIndex> subsumers;    // sorted
  std::vector<SynsetIndex> subvertices;  // sorted
  std::vector<SynsetIndex> leaves;       // sorted
  std::uint32_t min_depth = 0;
  double commonness = 0.0;
  double inverse_depth_sum = 0.0;
};

SenseUnion sense_union(const Taxonomy &taxonomy, const TaxonomyStats &stats,
                       std::span<const SynsetIndex> senses);

/// Stamp-based visited set reused across traversals.
class VisitMarker {
public:
  void reset(std::size_t n) {
    if (stamp_.size() != n) {
      stamp_.assign(n, 0);
      current_ = 0;
    }
    if (++current_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      current_ = 1;
    }
  }
  bool visit(std::size_t i) {
    if (stamp_[i] == current_)
      return false;
    stamp_[i] = current_;
    return true;
  }
  bool seen(std::size_t i) const { return stamp_[i] == current_; }

private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t current_ = 0;
};

} // namespace wordgraph

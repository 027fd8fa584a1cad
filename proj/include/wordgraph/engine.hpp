/* Word-level graph queries: word statistics, lowest common subsumer, distance.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/database.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wordgraph {

/// Statistics of a word vertex, taken over the union of its senses. Counts
/// are meaning vertices only; the word itself is never included.
struct WordStats {
  WordIndex word = 0;
  std::uint32_t polysemy = 0;
  std::uint32_t depth = 0;        // minimum sense depth; "entity" -> 1
  std::uint32_t subsumers = 0;
  std::uint32_t subvertices = 0;
  std::uint32_t leaves = 0;
  double commonness = 0.0;
  double inverse_depth_sum = 0.0;
};

struct PairInfo {
  SynsetIndex lcs = 0;
  std::uint32_t lcs_depth = 0;
  std::uint32_t distance = 0;
};

/// Read-only query engine over a WordGraph. Results are memoized; all member
/// functions are safe to call concurrently.
class Engine {
public:
  explicit Engine(std::shared_ptr<const WordGraph> graph);

  const WordGraph &graph() const { return *graph_; }
  const Taxonomy &taxonomy() const { return graph_->db.taxonomy; }
  const Lexicon &lexicon() const { return graph_->db.lexicon; }
  const TaxonomyStats &stats() const { return graph_->stats; }
  const DbConstants &constants() const { return graph_->constants; }

  /// Normalizes and looks up a word; throws Error(Input) listing the nearest
  /// lexicon entries when absent.
  WordIndex resolve(std::string_view word) const;
  std::optional<WordIndex> try_resolve(std::string_view word) const;

  WordStats word_stats(WordIndex w) const;
  WordStats word_stats(std::string_view word) const { return word_stats(resolve(word)); }

  /// Sorted sets behind the WordStats counts.
  std::vector<SynsetIndex> subsumers(WordIndex w) const;
  std::vector<SynsetIndex> subvertices(WordIndex w) const;
  std::vector<SynsetIndex> leaves(WordIndex w) const;

  /// LCS and distance of two distinct words. Throws Error(Constraint) when
  /// x == y.
  PairInfo pair(WordIndex x, WordIndex y) const;
  SynsetIndex lcs(WordIndex x, WordIndex y) const { return pair(x, y).lcs; }
  std::uint32_t distance(WordIndex x, WordIndex y) const { return pair(x, y).distance; }

  std::size_t cached_pairs() const;

private:
  PairInfo compute_pair(WordIndex x, WordIndex y) const;
  SynsetIndex compute_lcs(WordIndex x, WordIndex y) const;
  std::uint32_t compute_distance(WordIndex x, WordIndex y) const;
  WordStats compute_word_stats(WordIndex w) const;

  std::shared_ptr<const WordGraph> graph_;

  mutable std::mutex word_mutex_;
  mutable std::unordered_map<WordIndex, WordStats> word_cache_;
  mutable std::mutex pair_mutex_;
  mutable std::unordered_map<std::uint64_t, PairInfo> pair_cache_;
};

} // namespace wordgraph

/* In-memory noun taxonomy and lexicon.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wordgraph {

/// Byte offset of a synset record in `data.noun`. Ordering by offset is the
/// "entry number" order used to break LCS ties.
struct SynsetId {
  std::uint32_t offset = 0;
  auto operator<=>(const SynsetId &) const = default;
};

/// Dense 0..N-1 index into the taxonomy arrays. Dense order follows offset
/// order, so comparing indices also compares offsets.
using SynsetIndex = std::uint32_t;
using WordIndex = std::uint32_t;

/// Compressed adjacency: row i is targets[starts[i] .. starts[i+1]).
struct Csr {
  std::vector<std::uint32_t> starts{0};
  std::vector<std::uint32_t> targets;

  std::size_t rows() const { return starts.size() - 1; }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {targets.data() + starts[i], targets.data() + starts[i + 1]};
  }
  std::size_t edges() const { return targets.size(); }
};

/// Immutable is-a DAG over noun synsets (hypernym -> hyponym edges).
class Taxonomy {
public:
  Taxonomy() = default;
  Taxonomy(std::vector<SynsetId> ids, std::vector<std::vector<std::string>> lemmas,
           Csr hypernyms, Csr hyponyms, SynsetIndex root,
           std::vector<SynsetIndex> topo_order);

  std::size_t size() const { return ids_.size(); }
  std::size_t edge_count() const { return hyponyms_.edges(); }
  SynsetIndex root() const { return root_; }

  SynsetId id(SynsetIndex i) const { return ids_[i]; }
  std::optional<SynsetIndex> index_of(SynsetId id) const;

  const std::vector<std::string> &lemmas(SynsetIndex i) const { return lemmas_[i]; }
  std::span<const SynsetIndex> hypernyms(SynsetIndex i) const { return hypernyms_.row(i); }
  std::span<const SynsetIndex> hyponyms(SynsetIndex i) const { return hyponyms_.row(i); }
  bool is_leaf(SynsetIndex i) const { return hyponyms_.row(i).empty(); }

  /// Parents before children.
  const std::vector<SynsetIndex> &topological_order() const { return topo_; }

  const std::vector<SynsetId> &ids() const { return ids_; }
  const std::vector<std::vector<std::string>> &all_lemmas() const { return lemmas_; }
  const Csr &hypernym_csr() const { return hypernyms_; }
  const Csr &hyponym_csr() const { return hyponyms_; }

private:
  std::vector<SynsetId> ids_;
  std::vector<std::vector<std::string>> lemmas_;
  Csr hypernyms_;
  Csr hyponyms_;
  SynsetIndex root_ = 0;
  std::vector<SynsetIndex> topo_;
};

/// Case-sensitive word vertices and their word -> meaning edges.
class Lexicon {
public:
  Lexicon() = default;
  Lexicon(std::vector<std::string> words, Csr senses);

  std::size_t size() const { return words_.size(); }
  std::size_t edge_count() const { return senses_.edges(); }

  const std::string &word(WordIndex w) const { return words_[w]; }
  std::span<const SynsetIndex> senses(WordIndex w) const { return senses_.row(w); }

  /// Exact, case-sensitive lookup.
  std::optional<WordIndex> find_exact(std::string_view form) const;
  /// Spaces become underscores; exact case first, then lowercase.
  std::optional<WordIndex> find(std::string_view form) const;

  /// Up to `limit` entries sharing the longest prefix with `form`, for
  /// "did you mean" diagnostics.
  std::vector<std::string> nearest(std::string_view form, std::size_t limit = 5) const;

  const std::vector<std::string> &words() const { return words_; }
  const Csr &sense_csr() const { return senses_; }

private:
  std::vector<std::string> words_;
  Csr senses_;
  std::unordered_map<std::string, WordIndex> by_form_;
  std::vector<WordIndex> sorted_;  // lexicographic order, for nearest()
};

/// Irregular plural -> base forms from `noun.exc`.
using MorphExceptions = std::unordered_map<std::string, std::vector<std::string>>;

std::string normalize_word(std::string_view form);
std::string to_lower_ascii(std::string_view s);

} // namespace wordgraph

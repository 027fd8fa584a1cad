/* WordNet noun database: flat-file loading, derived constants, binary cache.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/stats.hpp"
#include "wordgraph/taxonomy.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace wordgraph {

struct Database {
  Taxonomy taxonomy;
  Lexicon lexicon;
  MorphExceptions exceptions;
};

/// Reads `data.noun`, `index.noun` and `noun.exc` from `dir`.
///
/// Is-a edges come from both generic (`@`) and instance (`@i`) hypernym
/// pointers. Word vertices are the cased lemma fields of the synset records
/// together with the lowercased forms listed in the index; a form's senses are
/// the union of both sources, index order first.
///
/// Throws Error(ErrorCode::Database) on a missing file, a malformed record
/// (with its line number), a cycle, or more than one root.
Database load_database(const std::filesystem::path &dir);

/// Same as load_database() over already-open streams; `source` names the
/// origin in error messages.
Database parse_database(std::istream &data_noun, std::istream &index_noun,
                        std::istream &noun_exc, const std::string &source = "<stream>");

struct DbConstants {
  std::uint64_t max_vertices = 0;
  std::uint64_t max_leaves = 0;
  std::uint32_t max_depth = 0;
  double min_commonness = 0.0;
  double max_commonness = 0.0;
  std::uint64_t word_count = 0;
  std::uint64_t m_edges = 0;
  std::uint64_t w_edges = 0;

  /// Words whose commonness equals min_commonness, sorted.
  std::vector<std::string> min_commonness_words;
  /// Reciprocal of min_commonness, i.e. the largest leaf subsumer count.
  std::uint32_t min_commonness_denominator = 0;

  bool operator==(const DbConstants &) const = default;
};

DbConstants compute_constants(const Database &db, const TaxonomyStats &stats);

/// Published WordNet 3.1 figures that a strict load is compared against.
DbConstants wordnet31_reference();

struct ConstantCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

/// One row per constant; commonness values compare at 0.1 absolute (the
/// published maximum is rounded to one decimal).
std::vector<ConstantCheck> check_constants(const DbConstants &actual,
                                           const DbConstants &expected);

enum class ConstantsMode { Lenient, Strict };

/// Loaded database plus its precomputed statistics and constants.
struct WordGraph {
  Database db;
  TaxonomyStats stats;
  DbConstants constants;
  std::vector<ConstantCheck> checks;  // empty unless compared to a reference
};

WordGraph build_wordgraph(Database db);

/// Loads a directory, precomputes, and compares against the WordNet 3.1
/// reference. Strict mode throws Error(ErrorCode::Database) on any mismatch;
/// lenient mode records the mismatches in `checks`.
WordGraph open_wordgraph(const std::filesystem::path &dir,
                         ConstantsMode mode = ConstantsMode::Lenient);

/// Binary cache: "WGPH", format version byte, little-endian payload,
/// CRC-32 trailer over everything before it.
inline constexpr std::uint8_t kCacheFormatVersion = 2;

void save_cache(const WordGraph &graph, const std::filesystem::path &path);
WordGraph load_cache(const std::filesystem::path &path);

std::string encode_cache(const WordGraph &graph);
WordGraph decode_cache(std::string_view bytes);

} // namespace wordgraph

/* The 49 semantic measures: abstraction level, polysemy, seven intrinsic
 * information content formulas, five path-based and 5x7 IC-based
 * similarities.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/engine.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordgraph {

enum class MeasureKind : std::uint8_t { Abstraction, Polysemy, Ic, PathSimilarity, IcSimilarity };

enum class IcFormula : std::uint8_t { Blanchard, Meng, Sanchez, SanchezBatet, Seco, Yuan, Zhou };
enum class PathFormula : std::uint8_t { AlMubaidNguyen, LeacockChodorow, Li, Rada, WuPalmer };
enum class IcSimFormula : std::uint8_t { JiangConrath, Lin, Meng, Resnik, Zhou };

inline constexpr std::size_t kIcFormulaCount = 7;
inline constexpr std::size_t kPathFormulaCount = 5;
inline constexpr std::size_t kIcSimFormulaCount = 5;
inline constexpr std::size_t kMeasureCount = 2 + kIcFormulaCount + kPathFormulaCount +
                                             kIcSimFormulaCount * kIcFormulaCount;

/// One of the 49 measures. Dense index order: abstraction, polysemy, the 7 IC
/// formulas, the 5 path formulas, then IC similarities grouped by family
/// (each family over the 7 IC formulas).
class MeasureId {
public:
  static MeasureId abstraction() { return MeasureId(MeasureKind::Abstraction, 0, IcFormula::Blanchard); }
  static MeasureId polysemy() { return MeasureId(MeasureKind::Polysemy, 0, IcFormula::Blanchard); }
  static MeasureId ic(IcFormula f) { return MeasureId(MeasureKind::Ic, 0, f); }
  static MeasureId path(PathFormula f) {
    return MeasureId(MeasureKind::PathSimilarity, static_cast<std::uint8_t>(f), IcFormula::Blanchard);
  }
  static MeasureId ic_similarity(IcSimFormula s, IcFormula f) {
    return MeasureId(MeasureKind::IcSimilarity, static_cast<std::uint8_t>(s), f);
  }

  static MeasureId from_index(std::size_t index);
  /// Accepts catalog names such as "lin:sanchez-batet", "rada", "ic:seco".
  static std::optional<MeasureId> parse(std::string_view name);

  std::size_t index() const;
  std::string name() const;

  MeasureKind kind() const { return kind_; }
  IcFormula ic_formula() const { return ic_; }
  PathFormula path_formula() const { return static_cast<PathFormula>(family_); }
  IcSimFormula ic_sim_formula() const { return static_cast<IcSimFormula>(family_); }

  bool is_similarity() const {
    return kind_ == MeasureKind::PathSimilarity || kind_ == MeasureKind::IcSimilarity;
  }
  /// True for measures bounded to [0,1] by construction.
  bool normalized() const;

  bool operator==(const MeasureId &) const = default;

private:
  MeasureId(MeasureKind kind, std::uint8_t family, IcFormula ic)
      : kind_(kind), family_(family), ic_(ic) {}

  MeasureKind kind_;
  std::uint8_t family_;
  IcFormula ic_;
};

std::vector<MeasureId> all_measures();
std::vector<MeasureId> similarity_measures();
std::vector<MeasureId> word_measures();
/// Comma-separated names or "all" / "similarity" / "ic" / "word".
std::vector<MeasureId> parse_measure_list(std::string_view spec);

std::string_view ic_formula_name(IcFormula f);
std::string_view path_formula_name(PathFormula f);
std::string_view ic_sim_formula_name(IcSimFormula f);

struct CatalogEntry {
  std::size_t index;
  std::string id;
  std::string kind;     // abstraction | polysemy | ic | path | ic-similarity
  std::string family;   // formula family, empty for abstraction/polysemy
  std::string ic;       // IC formula, empty when not IC-based
  bool normalized;
  std::string note;
};

std::vector<CatalogEntry> measure_catalog();

/// Database constants feeding the formulas. `log_base` only rescales the
/// logarithms; every formula is a ratio of logs so results do not depend on it.
struct MeasureContext {
  double max_vertices = 0;
  double max_leaves = 0;
  double max_depth = 0;
  double min_commonness = 0;
  double max_commonness = 0;
  double log_base = std::numbers::e;

  static MeasureContext from(const DbConstants &c, double log_base = std::numbers::e);
  double log(double x) const { return std::log(x) / std::log(log_base); }
};

/// Structural counts an IC formula reads.
struct IcInputs {
  double depth;
  double subsumers;
  double subvertices;
  double leaves;
  double commonness;
  double inverse_depth_sum;
};

IcInputs ic_inputs(const WordStats &w);
IcInputs ic_inputs(const TaxonomyStats &s, SynsetIndex i);

double ic_value(IcFormula f, const IcInputs &in, const MeasureContext &ctx);
double abstraction_value(double depth, const MeasureContext &ctx);
double path_similarity_value(PathFormula f, double distance, double lcs_depth,
                             const MeasureContext &ctx);
/// `degenerate` is set when IC(x) + IC(y) == 0 for a ratio family; the value
/// is then 0.
double ic_similarity_value(IcSimFormula f, double ic_x, double ic_y, double ic_lcs,
                           double distance, const MeasureContext &ctx,
                           bool *degenerate = nullptr);

struct SimilarityDetail {
  std::uint32_t distance;
  SynsetId lcs;
  std::uint32_t lcs_depth;
  double ic_x = std::nan("");
  double ic_y = std::nan("");
  double ic_lcs = std::nan("");
  double value;
  bool degenerate = false;
};

struct SweepDiagnostics {
  std::size_t pairs = 0;
  std::size_t degenerate_pairs = 0;
};

/// Measure evaluation bound to an engine and constants.
class Measures {
public:
  Measures(const Engine &engine, MeasureContext ctx);
  explicit Measures(const Engine &engine);

  const Engine &engine() const { return engine_; }
  const MeasureContext &context() const { return ctx_; }

  double abstraction_level(WordIndex w) const;
  double polysemy(WordIndex w) const;
  double ic(WordIndex w, IcFormula f) const;
  double ic_synset(SynsetIndex s, IcFormula f) const;

  /// Single-word measure (abstraction, polysemy, IC).
  double word_value(WordIndex w, MeasureId m) const;
  /// Similarity of two distinct words; throws Error(Constraint) if x == y.
  double similarity(WordIndex x, WordIndex y, MeasureId m) const;
  SimilarityDetail similarity_detail(WordIndex x, WordIndex y, MeasureId m) const;

  /// Mean over unordered pairs of `words` (taken as given, must be distinct),
  /// summed in index order of the pair list regardless of `threads`.
  double average_pairwise(std::span<const WordIndex> words, MeasureId m,
                          unsigned threads = 1, SweepDiagnostics *diag = nullptr) const;

private:
  const Engine &engine_;
  MeasureContext ctx_;
};

/// Resolves nouns, drops duplicates, sorts them lexicographically and averages
/// the similarity over all unordered pairs. Throws Error(Constraint) with
/// fewer than two distinct resolvable nouns; unresolvable ones go to
/// `unresolved` when given, otherwise they raise Error(Input).
double average_pairwise_similarity(const Measures &measures,
                                   std::span<const std::string> nouns, MeasureId m,
                                   std::vector<std::string> *unresolved = nullptr,
                                   unsigned threads = 1);

} // namespace wordgraph

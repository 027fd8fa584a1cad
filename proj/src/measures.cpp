/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/measures.hpp"
#include "wordgraph/error.hpp"
#include "wordgraph/parallel.hpp"

#include <algorithm>
#include <array>

namespace wordgraph {

namespace {

constexpr std::array<std::string_view, kIcFormulaCount> kIcNames = {
    "blanchard", "meng", "sanchez", "sanchez-batet", "seco", "yuan", "zhou"};
constexpr std::array<std::string_view, kPathFormulaCount> kPathNames = {
    "al-mubaid-nguyen", "leacock-chodorow", "li", "rada", "wu-palmer"};
constexpr std::array<std::string_view, kIcSimFormulaCount> kIcSimNames = {
    "jiang-conrath", "lin", "meng", "resnik", "zhou"};

constexpr std::size_t kFirstIc = 2;
constexpr std::size_t kFirstPath = kFirstIc + kIcFormulaCount;
constexpr std::size_t kFirstIcSim = kFirstPath + kPathFormulaCount;

} // namespace

std::string_view ic_formula_name(IcFormula f) { return kIcNames[static_cast<std::size_t>(f)]; }
std::string_view path_formula_name(PathFormula f) { return kPathNames[static_cast<std::size_t>(f)]; }
std::string_view ic_sim_formula_name(IcSimFormula f) {
  return kIcSimNames[static_cast<std::size_t>(f)];
}

MeasureId MeasureId::from_index(std::size_t i) {
  if (i >= kMeasureCount)
    throw Error(ErrorCode::Input, "measure index out of range: " + std::to_string(i));
  if (i == 0)
    return abstraction();
  if (i == 1)
    return polysemy();
  if (i < kFirstPath)
    return ic(static_cast<IcFormula>(i - kFirstIc));
  if (i < kFirstIcSim)
    return path(static_cast<PathFormula>(i - kFirstPath));
  std::size_t k = i - kFirstIcSim;
  return ic_similarity(static_cast<IcSimFormula>(k / kIcFormulaCount),
                       static_cast<IcFormula>(k % kIcFormulaCount));
}

std::size_t MeasureId::index() const {
  switch (kind_) {
  case MeasureKind::Abstraction: return 0;
  case MeasureKind::Polysemy: return 1;
  case MeasureKind::Ic: return kFirstIc + static_cast<std::size_t>(ic_);
  case MeasureKind::PathSimilarity: return kFirstPath + family_;
  case MeasureKind::IcSimilarity:
    return kFirstIcSim + family_ * kIcFormulaCount + static_cast<std::size_t>(ic_);
  }
  return 0;
}

std::string MeasureId::name() const {
  switch (kind_) {
  case MeasureKind::Abstraction: return "abstraction";
  case MeasureKind::Polysemy: return "polysemy";
  case MeasureKind::Ic: return "ic:" + std::string(ic_formula_name(ic_));
  case MeasureKind::PathSimilarity: return std::string(path_formula_name(path_formula()));
  case MeasureKind::IcSimilarity:
    return std::string(ic_sim_formula_name(ic_sim_formula())) + ":" +
           std::string(ic_formula_name(ic_));
  }
  return {};
}

std::optional<MeasureId> MeasureId::parse(std::string_view name) {
  std::string key = to_lower_ascii(name);
  std::replace(key.begin(), key.end(), '_', '-');
  std::replace(key.begin(), key.end(), '/', ':');
  for (std::size_t i = 0; i < kMeasureCount; ++i) {
    MeasureId m = from_index(i);
    if (m.name() == key)
      return m;
  }
  return std::nullopt;
}

bool MeasureId::normalized() const {
  switch (kind_) {
  case MeasureKind::Abstraction: return true;
  case MeasureKind::Polysemy: return false;
  case MeasureKind::Ic:
    return ic_ == IcFormula::Blanchard || ic_ == IcFormula::Sanchez ||
           ic_ == IcFormula::SanchezBatet || ic_ == IcFormula::Seco;
  case MeasureKind::PathSimilarity: return true;
  case MeasureKind::IcSimilarity: return false;
  }
  return false;
}

std::vector<MeasureId> all_measures() {
  std::vector<MeasureId> out;
  for (std::size_t i = 0; i < kMeasureCount; ++i)
    out.push_back(MeasureId::from_index(i));
  return out;
}

std::vector<MeasureId> similarity_measures() {
  std::vector<MeasureId> out;
  for (std::size_t i = kFirstPath; i < kMeasureCount; ++i)
    out.push_back(MeasureId::from_index(i));
  return out;
}

std::vector<MeasureId> word_measures() {
  std::vector<MeasureId> out;
  for (std::size_t i = 0; i < kFirstPath; ++i)
    out.push_back(MeasureId::from_index(i));
  return out;
}

std::vector<MeasureId> parse_measure_list(std::string_view spec) {
  std::vector<MeasureId> out;
  auto add = [&](MeasureId m) {
    if (std::find(out.begin(), out.end(), m) == out.end())
      out.push_back(m);
  };
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos)
      comma = spec.size();
    std::string item = to_lower_ascii(normalize_word(spec.substr(pos, comma - pos)));
    pos = comma + 1;
    if (item.empty())
      continue;
    if (item == "all") {
      for (auto m : all_measures()) add(m);
    } else if (item == "similarity") {
      for (auto m : similarity_measures()) add(m);
    } else if (item == "word") {
      for (auto m : word_measures()) add(m);
    } else if (item == "ic") {
      for (std::size_t i = 0; i < kIcFormulaCount; ++i) add(MeasureId::ic(static_cast<IcFormula>(i)));
    } else if (auto m = MeasureId::parse(item)) {
      add(*m);
    } else {
      throw Error(ErrorCode::Input, "unknown measure '" + item + "'");
    }
  }
  if (out.empty())
    throw Error(ErrorCode::Input, "empty measure list");
  return out;
}

std::vector<CatalogEntry> measure_catalog() {
  std::vector<CatalogEntry> out;
  for (MeasureId m : all_measures()) {
    CatalogEntry e{m.index(), m.name(), "", "", "", m.normalized(), ""};
    switch (m.kind()) {
    case MeasureKind::Abstraction:
      e.kind = "abstraction";
      e.note = "1 - (Depth - 1)/(Max_depth - 1)";
      break;
    case MeasureKind::Polysemy:
      e.kind = "polysemy";
      e.note = "sense count; reports also carry log2";
      break;
    case MeasureKind::Ic:
      e.kind = "ic";
      e.family = std::string(ic_formula_name(m.ic_formula()));
      e.ic = e.family;
      if (!m.normalized())
        e.note = "not bounded above by construction";
      break;
    case MeasureKind::PathSimilarity:
      e.kind = "path";
      e.family = std::string(path_formula_name(m.path_formula()));
      break;
    case MeasureKind::IcSimilarity:
      e.kind = "ic-similarity";
      e.family = std::string(ic_sim_formula_name(m.ic_sim_formula()));
      e.ic = std::string(ic_formula_name(m.ic_formula()));
      if (m.ic_sim_formula() == IcSimFormula::Zhou)
        e.note = "printed form: 0.5 (not 1) for zero-distance pairs with equal IC";
      break;
    }
    out.push_back(std::move(e));
  }
  return out;
}

MeasureContext MeasureContext::from(const DbConstants &c, double log_base) {
  MeasureContext ctx;
  ctx.max_vertices = static_cast<double>(c.max_vertices);
  ctx.max_leaves = static_cast<double>(c.max_leaves);
  ctx.max_depth = static_cast<double>(c.max_depth);
  ctx.min_commonness = c.min_commonness;
  ctx.max_commonness = c.max_commonness;
  ctx.log_base = log_base;
  return ctx;
}

IcInputs ic_inputs(const WordStats &w) {
  return {static_cast<double>(w.depth),  static_cast<double>(w.subsumers),
          static_cast<double>(w.subvertices), static_cast<double>(w.leaves),
          w.commonness, w.inverse_depth_sum};
}

IcInputs ic_inputs(const TaxonomyStats &s, SynsetIndex i) {
  return {static_cast<double>(s.depth[i]),  static_cast<double>(s.subsumer_count[i]),
          static_cast<double>(s.subvertex_count[i]), static_cast<double>(s.leaf_count[i]),
          s.commonness[i], s.inverse_depth_sum[i]};
}

double ic_value(IcFormula f, const IcInputs &in, const MeasureContext &ctx) {
  auto log = [&](double v) { return ctx.log(v); };
  switch (f) {
  case IcFormula::Blanchard:
    return 1.0 - log(in.leaves) / log(ctx.max_leaves);
  case IcFormula::Meng:
    return log(in.depth) / log(ctx.max_depth) *
           (1.0 - log(1.0 + in.inverse_depth_sum) / log(ctx.max_vertices));
  case IcFormula::Sanchez:
    return log(in.leaves / (ctx.max_leaves * in.subsumers)) /
           log(ctx.min_commonness / ctx.max_leaves);
  case IcFormula::SanchezBatet:
    return log(in.commonness / ctx.max_commonness) /
           log(ctx.min_commonness / ctx.max_commonness);
  case IcFormula::Seco:
    return 1.0 - log(in.subvertices) / log(ctx.max_vertices);
  case IcFormula::Yuan:
    return log(in.depth) / log(ctx.max_depth) * (1.0 - log(in.leaves) / log(ctx.max_leaves)) +
           log(in.subsumers) / log(ctx.max_vertices);
  case IcFormula::Zhou:
    return 0.5 * (1.0 - log(in.subvertices) / log(ctx.max_vertices) +
                  log(in.depth) / log(ctx.max_depth));
  }
  return 0.0;
}

double abstraction_value(double depth, const MeasureContext &ctx) {
  return 1.0 - (depth - 1.0) / (ctx.max_depth - 1.0);
}

double path_similarity_value(PathFormula f, double distance, double lcs_depth,
                             const MeasureContext &ctx) {
  auto log = [&](double v) { return ctx.log(v); };
  const double md = ctx.max_depth;
  switch (f) {
  case PathFormula::AlMubaidNguyen:
    return 1.0 - log(1.0 + distance * (md - lcs_depth)) / log(1.0 + 2.0 * (md - 1.0) * (md - 1.0));
  case PathFormula::LeacockChodorow:
    return 1.0 - log(distance + 1.0) / log(2.0 * md - 1.0);
  case PathFormula::Li:
    return std::exp(-0.2 * distance) * (std::exp(1.2 * lcs_depth) - 1.0) /
           (std::exp(1.2 * lcs_depth) + 1.0);
  case PathFormula::Rada:
    return 1.0 - distance / (2.0 * (md - 1.0));
  case PathFormula::WuPalmer: {
    double num = 2.0 * (lcs_depth - 1.0);
    double den = num + distance;
    return den == 0.0 ? 1.0 : num / den;
  }
  }
  return 0.0;
}

double ic_similarity_value(IcSimFormula f, double ic_x, double ic_y, double ic_lcs,
                           double distance, const MeasureContext &ctx, bool *degenerate) {
  if (degenerate)
    *degenerate = false;
  auto ratio = [&]() -> std::optional<double> {
    double den = ic_x + ic_y;
    if (den == 0.0) {
      if (degenerate)
        *degenerate = true;
      return std::nullopt;
    }
    return 2.0 * ic_lcs / den;
  };
  switch (f) {
  case IcSimFormula::JiangConrath:
    return 1.0 - (ic_x + ic_y - 2.0 * ic_lcs) / 2.0;
  case IcSimFormula::Lin:
    return ratio().value_or(0.0);
  case IcSimFormula::Meng: {
    auto r = ratio();
    if (!r)
      return 0.0;
    double e = std::exp(-0.08 * distance);
    return std::pow(*r, (1.0 - e) / e);
  }
  case IcSimFormula::Resnik:
    return ic_lcs;
  case IcSimFormula::Zhou:
    return 1.0 - 0.5 * (1.0 - ctx.log(distance + 1.0) / ctx.log(2.0 * ctx.max_depth - 1.0)) -
           0.25 * (ic_x + ic_y - 2.0 * ic_lcs);
  }
  return 0.0;
}

Measures::Measures(const Engine &engine, MeasureContext ctx) : engine_(engine), ctx_(ctx) {}
Measures::Measures(const Engine &engine)
    : engine_(engine), ctx_(MeasureContext::from(engine.constants())) {}

double Measures::abstraction_level(WordIndex w) const {
  return abstraction_value(engine_.word_stats(w).depth, ctx_);
}

double Measures::polysemy(WordIndex w) const {
  return static_cast<double>(engine_.lexicon().senses(w).size());
}

double Measures::ic(WordIndex w, IcFormula f) const {
  return ic_value(f, ic_inputs(engine_.word_stats(w)), ctx_);
}

double Measures::ic_synset(SynsetIndex s, IcFormula f) const {
  return ic_value(f, ic_inputs(engine_.stats(), s), ctx_);
}

double Measures::word_value(WordIndex w, MeasureId m) const {
  switch (m.kind()) {
  case MeasureKind::Abstraction: return abstraction_level(w);
  case MeasureKind::Polysemy: return polysemy(w);
  case MeasureKind::Ic: return ic(w, m.ic_formula());
  default:
    throw Error(ErrorCode::Input, "'" + m.name() + "' is a similarity, not a word measure");
  }
}

SimilarityDetail Measures::similarity_detail(WordIndex x, WordIndex y, MeasureId m) const {
  if (!m.is_similarity())
    throw Error(ErrorCode::Input, "'" + m.name() + "' is a word measure, not a similarity");
  PairInfo p = engine_.pair(x, y);
  SimilarityDetail d{};
  d.distance = p.distance;
  d.lcs = engine_.taxonomy().id(p.lcs);
  d.lcs_depth = p.lcs_depth;
  if (m.kind() == MeasureKind::PathSimilarity) {
    d.value = path_similarity_value(m.path_formula(), p.distance, p.lcs_depth, ctx_);
    return d;
  }
  d.ic_x = ic(x, m.ic_formula());
  d.ic_y = ic(y, m.ic_formula());
  d.ic_lcs = ic_synset(p.lcs, m.ic_formula());
  d.value = ic_similarity_value(m.ic_sim_formula(), d.ic_x, d.ic_y, d.ic_lcs, p.distance, ctx_,
                                &d.degenerate);
  return d;
}

double Measures::similarity(WordIndex x, WordIndex y, MeasureId m) const {
  return similarity_detail(x, y, m).value;
}

double Measures::average_pairwise(std::span<const WordIndex> words, MeasureId m,
                                  unsigned threads, SweepDiagnostics *diag) const {
  const std::size_t n = words.size();
  if (n < 2)
    throw Error(ErrorCode::Constraint, "average similarity needs at least 2 distinct nouns");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      pairs.emplace_back(i, j);
  std::vector<SimilarityDetail> values(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    values[k] = similarity_detail(words[pairs[k].first], words[pairs[k].second], m);
  });
  double sum = 0.0;
  std::size_t degenerate = 0;
  for (const auto &v : values) {
    sum += v.value;
    degenerate += v.degenerate ? 1 : 0;
  }
  if (diag) {
    diag->pairs += pairs.size();
    diag->degenerate_pairs += degenerate;
  }
  return sum / static_cast<double>(pairs.size());
}

double average_pairwise_similarity(const Measures &measures, std::span<const std::string> nouns,
                                   MeasureId m, std::vector<std::string> *unresolved,
                                   unsigned threads) {
  const Engine &engine = measures.engine();
  std::vector<WordIndex> words;
  std::vector<std::string> missing;
  for (const auto &noun : nouns) {
    if (auto w = engine.try_resolve(noun))
      words.push_back(*w);
    else
      missing.push_back(noun);
  }
  if (!missing.empty()) {
    if (!unresolved)
      throw Error(ErrorCode::Input, "unknown nouns", missing);
    *unresolved = missing;
  }
  const Lexicon &lex = engine.lexicon();
  std::sort(words.begin(), words.end(),
            [&](WordIndex a, WordIndex b) { return lex.word(a) < lex.word(b); });
  words.erase(std::unique(words.begin(), words.end()), words.end());
  if (words.size() < 2)
    throw Error(ErrorCode::Constraint, "average similarity needs at least 2 distinct nouns");
  return measures.average_pairwise(words, m, threads);
}

} // namespace wordgraph

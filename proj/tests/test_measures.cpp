#include "common.hpp"
#include "oracle.hpp"

#include "wordgraph/error.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace wordgraph;

namespace {

wgtest::Oracle::Constants &oracle_constants() {
  static wgtest::Oracle::Constants c = [] {
    wgtest::Oracle o(wgtest::wordnet()->db);
    return o.constants();
  }();
  return c;
}

std::vector<WordIndex> sample_words(std::size_t n, std::uint64_t seed) {
  const auto size = wgtest::wordnet()->db.lexicon.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<WordIndex> pick(0, static_cast<WordIndex>(size - 1));
  std::vector<WordIndex> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(pick(rng));
  return out;
}

} // namespace

TEST_CASE("catalog has 49 measures with stable names") {
  auto all = all_measures();
  REQUIRE(all.size() == 49);
  CHECK(similarity_measures().size() == 40);
  CHECK(word_measures().size() == 9);
  std::set<std::string> names;
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].index() == i);
    CHECK(MeasureId::from_index(i) == all[i]);
    auto back = MeasureId::parse(all[i].name());
    REQUIRE(back);
    CHECK(*back == all[i]);
    names.insert(all[i].name());
  }
  CHECK(names.size() == 49);
  CHECK(MeasureId::parse("lin:sanchez-batet") ==
        MeasureId::ic_similarity(IcSimFormula::Lin, IcFormula::SanchezBatet));
  CHECK(MeasureId::parse("rada") == MeasureId::path(PathFormula::Rada));
  CHECK_FALSE(MeasureId::parse("lin:nobody"));
  CHECK(parse_measure_list("ic").size() == 7);
  CHECK(parse_measure_list("rada, rada,wu-palmer").size() == 2);
  CHECK_THROWS_AS(parse_measure_list("bogus"), Error);
  CHECK(measure_catalog().size() == 49);
}

TEST_CASE("normalized flags") {
  CHECK(MeasureId::abstraction().normalized());
  CHECK_FALSE(MeasureId::polysemy().normalized());
  CHECK(MeasureId::ic(IcFormula::Seco).normalized());
  CHECK(MeasureId::ic(IcFormula::SanchezBatet).normalized());
  CHECK_FALSE(MeasureId::ic(IcFormula::Yuan).normalized());
  for (int f = 0; f < 5; ++f)
    CHECK(MeasureId::path(static_cast<PathFormula>(f)).normalized());
}

TEST_CASE("IC endpoints on WordNet") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  const Measures &m = b.measures;
  WordIndex entity = b.engine.resolve("entity"), ambrose = b.engine.resolve("Saint_Ambrose");
  CHECK(m.ic(entity, IcFormula::Seco) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m.ic(entity, IcFormula::Blanchard) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m.ic(entity, IcFormula::SanchezBatet) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m.ic(ambrose, IcFormula::SanchezBatet) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.abstraction_level(entity) == 1.0);
}

TEST_CASE("fixture IC values by hand") {
  wgtest::Bench b(wgtest::fig1());
  const Measures &m = b.measures;
  WordIndex x = b.engine.resolve("x");
  // x: 4 subvertices of 9, 3 leaves of 4, depth 3 of 4.
  CHECK(m.ic(x, IcFormula::Seco) == doctest::Approx(1 - std::log(4.0) / std::log(9.0)).epsilon(1e-14));
  CHECK(m.ic(x, IcFormula::Blanchard) == doctest::Approx(1 - std::log(3.0) / std::log(4.0)).epsilon(1e-14));
  CHECK(m.ic(x, IcFormula::Zhou) ==
        doctest::Approx(0.5 * (1 - std::log(4.0) / std::log(9.0) + std::log(3.0) / std::log(4.0))).epsilon(1e-14));
  CHECK(m.abstraction_level(x) == doctest::Approx(1 - 2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("word measures equal the oracle on 20 random words") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  wgtest::Oracle oracle(b.graph->db);
  const auto &c = oracle_constants();
  for (WordIndex w : sample_words(20, 11)) {
    INFO(b.engine.lexicon().word(w));
    for (MeasureId id : word_measures())
      CHECK(wgtest::rel_close(b.measures.word_value(w, id), oracle.word_measure(w, id, c), 1e-12));
  }
}

TEST_CASE("monosemous words take the IC of their synset") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  const Lexicon &lex = b.engine.lexicon();
  int seen = 0;
  for (WordIndex w : sample_words(400, 3)) {
    auto s = lex.senses(w);
    if (s.size() != 1)
      continue;
    for (int f = 0; f < 7; ++f) {
      auto icf = static_cast<IcFormula>(f);
      CHECK(b.measures.ic(w, icf) == b.measures.ic_synset(s[0], icf));
    }
    if (++seen == 50)
      break;
  }
  CHECK(seen == 50);
}

TEST_CASE("all 40 similarities equal the oracle on 100 random pairs") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  wgtest::Oracle oracle(b.graph->db);
  const auto &c = oracle_constants();
  auto words = sample_words(200, 17);
  for (std::size_t i = 0; i + 1 < words.size(); i += 2) {
    WordIndex x = words[i], y = words[i + 1];
    if (x == y)
      continue;
    INFO(b.engine.lexicon().word(x) << " / " << b.engine.lexicon().word(y));
    for (MeasureId id : similarity_measures()) {
      INFO(id.name());
      CHECK(wgtest::rel_close(b.measures.similarity(x, y, id), oracle.pair_measure(x, y, id, c), 1e-12));
    }
  }
}

TEST_CASE("log base does not change any measure") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  Measures base2(b.engine, MeasureContext::from(b.engine.constants(), 2.0));
  Measures base10(b.engine, MeasureContext::from(b.engine.constants(), 10.0));
  auto words = sample_words(40, 23);
  for (std::size_t i = 0; i + 1 < words.size(); i += 2) {
    if (words[i] == words[i + 1])
      continue;
    for (MeasureId id : similarity_measures()) {
      double e = b.measures.similarity(words[i], words[i + 1], id);
      CHECK(wgtest::rel_close(e, base2.similarity(words[i], words[i + 1], id), 1e-12));
      CHECK(wgtest::rel_close(e, base10.similarity(words[i], words[i + 1], id), 1e-12));
    }
  }
}

TEST_CASE("similarities are symmetric; identical words are rejected") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  auto words = sample_words(60, 29);
  for (std::size_t i = 0; i + 1 < words.size(); i += 2) {
    if (words[i] == words[i + 1])
      continue;
    for (MeasureId id : similarity_measures())
      CHECK(b.measures.similarity(words[i], words[i + 1], id) == b.measures.similarity(words[i + 1], words[i], id));
  }
  WordIndex w = b.engine.resolve("bird");
  try {
    b.measures.similarity(w, w, MeasureId::path(PathFormula::Rada));
    FAIL("identical words accepted");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::Constraint);
  }
  CHECK_THROWS_AS(b.measures.word_value(w, MeasureId::path(PathFormula::Rada)), Error);
}

TEST_CASE("synonyms score 1 on the normalized families and 0.5 on the Zhou family") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  WordIndex x = b.engine.resolve("motorcar");
  // Find another monosemous lemma of the same synset.
  SynsetIndex s = b.engine.lexicon().senses(x)[0];
  std::optional<WordIndex> y;
  for (const auto &lemma : b.engine.taxonomy().lemmas(s)) {
    auto w = b.engine.try_resolve(lemma);
    if (w && *w != x && b.engine.lexicon().senses(*w).size() == 1)
      y = w;
  }
  REQUIRE(y);
  for (MeasureId id : similarity_measures()) {
    INFO(id.name());
    double v = b.measures.similarity(x, *y, id);
    if (id.kind() == MeasureKind::PathSimilarity && id.path_formula() == PathFormula::Li)
      CHECK(v < 1.0);
    else if (id.kind() == MeasureKind::PathSimilarity)
      CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
    else if (id.ic_sim_formula() == IcSimFormula::Lin || id.ic_sim_formula() == IcSimFormula::Meng ||
             id.ic_sim_formula() == IcSimFormula::JiangConrath)
      CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
    else if (id.ic_sim_formula() == IcSimFormula::Zhou)
      CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("degenerate ratio guard") {
  MeasureContext ctx;
  ctx.max_depth = 19;
  bool degenerate = false;
  CHECK(ic_similarity_value(IcSimFormula::Lin, 0, 0, 0, 2, ctx, &degenerate) == 0.0);
  CHECK(degenerate);
  CHECK(ic_similarity_value(IcSimFormula::Meng, 0, 0, 0, 2, ctx, &degenerate) == 0.0);
  CHECK(degenerate);
  CHECK(ic_similarity_value(IcSimFormula::Lin, 0.5, 0.5, 0.25, 2, ctx, &degenerate) == 0.5);
  CHECK_FALSE(degenerate);
  CHECK(path_similarity_value(PathFormula::WuPalmer, 0, 1, ctx) == 1.0);
}

TEST_CASE("pairwise average equals explicit enumeration and ignores thread count") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  std::vector<std::string> nouns{"paper", "bird", "crayon", "desk", "hand", "bird"};
  MeasureId lin = MeasureId::ic_similarity(IcSimFormula::Lin, IcFormula::SanchezBatet);
  std::vector<std::string> sorted{"bird", "crayon", "desk", "hand", "paper"};
  double sum = 0;
  int n = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j, ++n)
      sum += b.measures.similarity(b.engine.resolve(sorted[i]), b.engine.resolve(sorted[j]), lin);
  double avg = average_pairwise_similarity(b.measures, nouns, lin);
  CHECK(avg == sum / n);
  CHECK(avg == doctest::Approx(0.389275).epsilon(1e-5));

  auto words = sample_words(60, 31);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  double one = b.measures.average_pairwise(words, lin, 1);
  CHECK(b.measures.average_pairwise(words, lin, 4) == one);
  CHECK(b.measures.average_pairwise(words, lin, 7) == one);

  std::vector<std::string> unresolved;
  std::vector<std::string> with_bad{"bird", "crayon", "qqqzzz"};
  average_pairwise_similarity(b.measures, with_bad, lin, &unresolved);
  CHECK(unresolved == std::vector<std::string>{"qqqzzz"});
  std::vector<std::string> single{"bird", "bird"};
  CHECK_THROWS_AS(average_pairwise_similarity(b.measures, single, lin), Error);
}

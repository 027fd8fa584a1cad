#include "common.hpp"
#include "oracle.hpp"

#include "wordgraph/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace wordgraph;

namespace {

std::vector<std::pair<WordIndex, WordIndex>> random_pairs(std::size_t lexicon, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<WordIndex> pick(0, static_cast<WordIndex>(lexicon - 1));
  std::vector<std::pair<WordIndex, WordIndex>> out;
  while (out.size() < n) {
    WordIndex x = pick(rng), y = pick(rng);
    if (x != y)
      out.emplace_back(x, y);
  }
  return out;
}

} // namespace

TEST_CASE("graph-function fixture: caption values") {
  wgtest::Bench b(wgtest::fig1());
  const Engine &e = b.engine;
  WordStats x = e.word_stats("x");
  CHECK(x.polysemy == 2);
  CHECK(x.depth == 3);
  CHECK(x.subsumers == 6);
  CHECK(x.subvertices == 4);
  CHECK(x.leaves == 3);
  CHECK(x.commonness == 0.75);
  PairInfo p = e.pair(e.resolve("x"), e.resolve("y"));
  CHECK(p.lcs_depth == 2);
  CHECK(p.distance == 2);
  CHECK(e.taxonomy().lemmas(p.lcs) == std::vector<std::string>{"gamma"});
}

TEST_CASE("root word and leaves") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  const Engine &e = b.engine;
  WordStats root = e.word_stats("entity");
  CHECK(root.depth == 1);
  CHECK(root.subsumers == 1);
  CHECK(root.subvertices == 82192);
  CHECK(root.commonness == doctest::Approx(6863.6).epsilon(0.1 / 6863.6));
  CHECK(e.subsumers(e.resolve("entity")) == std::vector<SynsetIndex>{e.taxonomy().root()});

  const auto &st = e.stats();
  std::size_t leaves = 0;
  for (SynsetIndex s = 0; s < e.taxonomy().size(); ++s)
    if (e.taxonomy().is_leaf(s)) {
      ++leaves;
      CHECK(st.leaf_count[s] == 1);
    }
  CHECK(leaves == 65031);
  CHECK(e.word_stats("Saint_Ambrose").commonness == doctest::Approx(1.0 / 35).epsilon(1e-15));
}

TEST_CASE("per-synset statistics equal brute-force closures on a sample") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  wgtest::Oracle oracle(b.graph->db);
  const auto &st = b.engine.stats();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<SynsetIndex> pick(0, static_cast<SynsetIndex>(st.size() - 1));
  for (int i = 0; i < 300; ++i) {
    SynsetIndex s = i == 0 ? b.engine.taxonomy().root() : pick(rng);
    auto k = oracle.synset(s);
    CHECK(st.depth[s] == oracle.depth(s));
    CHECK(st.subsumer_count[s] == k.subsumers);
    CHECK(st.subvertex_count[s] == k.subvertices);
    CHECK(st.leaf_count[s] == k.leaves);
    CHECK(wgtest::rel_close(st.commonness[s], k.commonness, 1e-12));
    CHECK(wgtest::rel_close(st.inverse_depth_sum[s], k.inverse_depth_sum, 1e-12));
  }
}

TEST_CASE("LCS and distance equal exhaustive search on 200 random pairs") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  const Engine &e = b.engine;
  wgtest::Oracle oracle(b.graph->db);
  for (auto [x, y] : random_pairs(e.lexicon().size(), 200, 2024)) {
    PairInfo p = e.pair(x, y);
    auto o = oracle.pair(x, y);
    INFO(e.lexicon().word(x) << " / " << e.lexicon().word(y));
    CHECK(p.lcs == o.lcs);
    CHECK(p.lcs_depth == o.lcs_depth);
    CHECK(p.distance == o.distance);
  }
}

TEST_CASE("shared senses: distance 0, LCS is the shared synset") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  const Engine &e = b.engine;
  // car / automobile share their first sense.
  WordIndex car = e.resolve("automobile"), motorcar = e.resolve("motorcar");
  PairInfo p = e.pair(car, motorcar);
  CHECK(p.distance == 0);
  auto senses = e.lexicon().senses(motorcar);
  REQUIRE(senses.size() == 1);
  CHECK(p.lcs == senses[0]);
  CHECK_THROWS_AS(e.pair(car, car), Error);
}

TEST_CASE("distance is a symmetric metric on samples") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  const Engine &e = b.engine;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<WordIndex> pick(0, static_cast<WordIndex>(e.lexicon().size() - 1));
  for (int i = 0; i < 100; ++i) {
    WordIndex x = pick(rng), y = pick(rng), z = pick(rng);
    if (x == y || y == z || x == z)
      continue;
    const auto dxy = e.distance(x, y), dyx = e.distance(y, x);
    CHECK(dxy == dyx);
    CHECK(e.lcs(x, y) == e.lcs(y, x));
    // Triangle inequality over sense sets holds when y is monosemous.
    if (e.lexicon().senses(y).size() == 1)
      CHECK(e.distance(x, z) <= dxy + e.distance(y, z));
  }
}

TEST_CASE("LCS is an ancestor of a sense of each word") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  const Engine &e = b.engine;
  for (auto [x, y] : random_pairs(e.lexicon().size(), 100, 5)) {
    SynsetIndex l = e.lcs(x, y);
    auto ax = e.subsumers(x), ay = e.subsumers(y);
    CHECK(std::binary_search(ax.begin(), ax.end(), l));
    CHECK(std::binary_search(ay.begin(), ay.end(), l));
    CHECK(std::binary_search(ax.begin(), ax.end(), e.taxonomy().root()));
  }
}

TEST_CASE("ties prefer depth, then the smallest offset") {
  // entity -> a, b; x under a and b (two senses via two synsets), y under a and b.
  const char *data =
      "00000001 03 n 01 entity 0 002 ~ 00000002 n 0000 ~ 00000003 n 0000 | r\n"
      "00000002 03 n 01 a 0 001 @ 00000001 n 0000 | a\n"
      "00000003 03 n 01 b 0 001 @ 00000001 n 0000 | b\n"
      "00000004 03 n 01 x 0 002 @ 00000002 n 0000 @ 00000003 n 0000 | x\n"
      "00000005 03 n 01 y 0 002 @ 00000002 n 0000 @ 00000003 n 0000 | y\n";
  std::istringstream d(data), i, ex;
  auto g = std::make_shared<const WordGraph>(build_wordgraph(parse_database(d, i, ex)));
  Engine e(g);
  PairInfo p = e.pair(e.resolve("x"), e.resolve("y"));
  CHECK(p.distance == 2);
  CHECK(p.lcs_depth == 2);
  CHECK(e.taxonomy().id(p.lcs).offset == 2);
}

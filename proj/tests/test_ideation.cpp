#include "common.hpp"

#include "wordgraph/error.hpp"
#include "wordgraph/ideation.hpp"

#include <doctest.h>

using namespace wordgraph;

namespace {

const std::vector<std::string> kBase{"bird", "crayon", "desk", "hand", "paper"};
const std::vector<std::string> kCandidates{"drawing", "sketch", "greeting card", "origami"};

MeasureId lin_sb() { return MeasureId::ic_similarity(IcSimFormula::Lin, IcFormula::SanchezBatet); }

double explicit_average(const Measures &m, std::vector<std::string> nouns) {
  double sum = 0;
  int n = 0;
  for (std::size_t i = 0; i < nouns.size(); ++i)
    for (std::size_t j = i + 1; j < nouns.size(); ++j, ++n)
      sum += m.similarity(m.engine().resolve(nouns[i]), m.engine().resolve(nouns[j]), lin_sb());
  return sum / n;
}

} // namespace

TEST_CASE("worked suggestion example") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  Ranking r = rank_candidates(b.measures, kBase, kCandidates, lin_sb());
  CHECK(r.base == kBase);
  CHECK(r.base_average == doctest::Approx(0.39).epsilon(0.01 / 0.39));
  REQUIRE(r.proposals.size() == 4);
  CHECK(r.proposals[0].noun == "origami");
  CHECK(r.proposals[1].noun == "greeting_card");
  CHECK(r.proposals[2].noun == "sketch");
  CHECK(r.proposals[3].noun == "drawing");
  CHECK(std::fabs(r.proposals[0].average - 0.29) <= 0.01);
  CHECK(std::fabs(r.proposals[1].average - 0.35) <= 0.01);
  CHECK(std::fabs(r.proposals[2].average - 0.39) <= 0.01);
  CHECK(std::fabs(r.proposals[3].average - 0.40) <= 0.01);
  for (const auto &p : r.proposals) {
    auto with = kBase;
    with.push_back(p.noun);
    CHECK(p.average == doctest::Approx(explicit_average(b.measures, with)).epsilon(1e-14));
    CHECK(p.delta == doctest::Approx(p.average - r.base_average).epsilon(1e-14));
  }
}

TEST_CASE("duplicates and unknown candidates are reported, not fatal") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  Ranking r = rank_candidates(b.measures, kBase, {"origami", "bird", "origami", "qqqzzz", "Origami"}, lin_sb());
  REQUIRE(r.proposals.size() == 1);
  CHECK(r.proposals[0].noun == "origami");
  CHECK(r.unresolved == std::vector<std::string>{"qqqzzz"});
  CHECK(r.duplicates.size() == 3);

  auto code_of = [&](const std::vector<std::string> &base) {
    try {
      rank_candidates(b.measures, base, kCandidates, lin_sb());
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code_of({"bird", "qqqzzz"}) == ErrorCode::Input);
  CHECK(code_of({"bird", "bird"}) == ErrorCode::Constraint);
  CHECK(code_of({"bird"}) == ErrorCode::Constraint);

  auto single = rank_candidates(b.measures, kBase, {"origami"}, lin_sb());
  CHECK(single.proposals.size() == 1);
  CHECK(rank_candidates(b.measures, kBase, kCandidates, lin_sb(), 4).proposals[0].average ==
        rank_candidates(b.measures, kBase, kCandidates, lin_sb(), 1).proposals[0].average);
}

TEST_CASE("session: reject the top proposal, then the next one comes up") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  CHECK(default_session_measure() == lin_sb());
  IdeationSession s(b.measures, "s1", kBase, lin_sb(), kCandidates);
  CHECK(s.average() == doctest::Approx(0.389275).epsilon(1e-5));
  auto first = s.propose(1);
  REQUIRE(first.size() == 1);
  CHECK(first[0].noun == "origami");
  s.decide("origami", Decision::Rejected);
  CHECK(s.average() == doctest::Approx(0.389275).epsilon(1e-5));
  auto second = s.propose(1);
  REQUIRE(second.size() == 1);
  CHECK(second[0].noun == "greeting_card");

  const HistoryEntry &h = s.decide("greeting_card", Decision::Accepted);
  CHECK(h.decision == Decision::Accepted);
  auto grown = kBase;
  grown.push_back("greeting_card");
  CHECK(s.average() == doctest::Approx(explicit_average(b.measures, grown)).epsilon(1e-14));
  CHECK(std::find(s.base().begin(), s.base().end(), "greeting_card") != s.base().end());
  CHECK(s.history().size() == 2);
  CHECK(s.propose(0).size() == 2);

  auto j = s.to_json();
  CHECK(j["id"] == "s1");
  CHECK(j["history"].size() == 2);
}

TEST_CASE("session decision errors") {
  wgtest::Bench &b = wgtest::wordnet_bench();
  IdeationSession s(b.measures, "s2", kBase, lin_sb(), kCandidates);
  auto code_of = [&](std::string_view noun) {
    try {
      s.decide(noun, Decision::Accepted);
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code_of("lamp") == ErrorCode::Input);
  CHECK(code_of("sketch") == ErrorCode::Constraint);  // not proposed yet
  s.propose(0);
  s.decide("sketch", Decision::Rejected);
  CHECK(code_of("sketch") == ErrorCode::Constraint);  // already decided
  CHECK(parse_decision("accept") == Decision::Accepted);
  CHECK(parse_decision("rejected") == Decision::Rejected);
  CHECK_THROWS_AS(parse_decision("maybe"), Error);
}

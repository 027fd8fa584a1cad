#include "common.hpp"

#include "wordgraph/error.hpp"
#include "wordgraph/text.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace wordgraph;

namespace {

const NounExtractor &extractor() {
  static NounExtractor ex(wgtest::wordnet()->db);
  return ex;
}

std::vector<TaggedSentence> tagged(const std::string &name) {
  std::ifstream in(wgtest::fixture("corpus/" + name));
  return parse_pretagged(in, name);
}

std::vector<std::string> nouns_of(const NounSequence &s) {
  std::vector<std::string> out;
  for (const auto &n : s.nouns)
    out.push_back(n.noun);
  return out;
}

// Fraction of tokens on which the two extraction modes agree about nounhood,
// running the dictionary pipeline over the tagged tokens so positions align.
double mode_agreement(const std::string &tsv) {
  auto sentences = tagged(tsv);
  Transcript t;
  std::size_t total = 0;
  for (const auto &s : sentences) {
    std::string text;
    for (const auto &tok : s)
      text += tok.token + " ";
    total += s.size();
    t.utterances.push_back({"", text, text});
  }
  std::set<std::size_t> dict, tag;
  for (const auto &n : extractor().extract(t).nouns)
    dict.insert(n.token_index);
  for (const auto &n : extractor().extract(sentences).nouns)
    tag.insert(n.token_index);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < total; ++i)
    agree += dict.contains(i) == tag.contains(i);
  return static_cast<double>(agree) / static_cast<double>(total);
}

} // namespace

TEST_CASE("cleaning strips labels, annotations and timestamps") {
  std::string speaker;
  CHECK(clean_line("J3: We tried it [Laughter] at 00:01:22", &speaker) == "We tried it at");
  CHECK(speaker == "J3");
  CHECK(clean_line("[inaudible] the  lamp\tshade ") == "the lamp shade");
  Transcript t = clean("S1: Hello there.\n\n   \n[Crosstalk]\nS2: A base [pause] for it.\n");
  REQUIRE(t.utterances.size() == 2);
  CHECK(t.utterances[1].speaker == "S2");
  CHECK(t.utterances[1].text == "A base for it.");
  CHECK(clean("[Music]\n\n").empty());
}

TEST_CASE("cleaning is idempotent on generated documents") {
  const std::vector<std::string> pieces{"S1:", "Client:", "[Laughter]", "(noise)", "00:12:09", "the", "bird",
                                        "feeder", "is", "here.", "Why?", "  ", "Dr.", "Smith", "went", "home!"};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1), len(1, 12), lines(1, 6);
  for (int doc = 0; doc < 50; ++doc) {
    std::string raw;
    for (std::size_t l = lines(rng); l > 0; --l) {
      for (std::size_t w = len(rng); w > 0; --w)
        raw += pieces[pick(rng)] + " ";
      raw += "\n";
    }
    std::string once = render(clean(raw));
    CHECK(render(clean(once)) == once);
  }
}

TEST_CASE("sentence splitting and tokenization") {
  CHECK(split_sentences("We built it. Does it work? Yes!") ==
        std::vector<std::string>{"We built it.", "Does it work?", "Yes!"});
  CHECK(split_sentences("Dr. Smith saw it. Then e.g. nothing") ==
        std::vector<std::string>{"Dr. Smith saw it.", "Then e.g. nothing"});
  CHECK(split_sentences("version 2.5 is out") == std::vector<std::string>{"version 2.5 is out"});
  CHECK(tokenize("Don't re-use the bird's seed, ok?") ==
        std::vector<std::string>{"Don't", "re-use", "the", "bird's", "seed", "ok"});
}

TEST_CASE("singular forms come from the lexicon and the exception list") {
  Morphology m(wgtest::wordnet()->db);
  CHECK(m.singularize("ideas") == "idea");
  CHECK(m.singularize("feet") == "foot");
  CHECK(m.singularize("entity") == "entity");
  CHECK(m.singularize("Crayons") == "crayon");
  CHECK(m.singularize("boxes") == "box");
  CHECK_FALSE(m.singularize("qqqzzz"));
}

TEST_CASE("dictionary extraction keeps nouns in text order") {
  Transcript t = clean("The bird held two crayons.");
  NounSequence s = extractor().extract(t);
  CHECK(nouns_of(s) == std::vector<std::string>{"bird", "crayon"});
  CHECK(s.word_count == 5);
  CHECK(s.nouns[1].token == "crayons");
  CHECK(s.nouns[1].token_index == 4);
  CHECK(s.nouns[0].synset_count >= 1);
}

TEST_CASE("collocations are optional") {
  Transcript t = clean("We bought a greeting card.");
  CHECK(nouns_of(extractor().extract(t)) == std::vector<std::string>{"greeting", "card"});
  ExtractOptions o;
  o.collocations = true;
  NounExtractor with(wgtest::wordnet()->db, o);
  CHECK(nouns_of(with.extract(t)) == std::vector<std::string>{"greeting_card"});
}

TEST_CASE("pretagged input") {
  std::istringstream ok("The\tDT\nbirds\tNNS\n\nflew\tVBD\nhome\tNN\n");
  auto s = parse_pretagged(ok);
  REQUIRE(s.size() == 2);
  NounSequence seq = extractor().extract(s);
  CHECK(nouns_of(seq) == std::vector<std::string>{"bird", "home"});
  CHECK(seq.sentence_tokens == std::vector<std::size_t>{2, 2});

  std::istringstream bad("The\tDT\nbirds NNS\n");
  try {
    parse_pretagged(bad, "talk.tsv");
    FAIL("accepted a malformed line");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::Input);
    CHECK(std::string(e.what()).find("talk.tsv:2") != std::string::npos);
  }
  CHECK(parse_extraction_mode("pretagged") == ExtractionMode::Pretagged);
  CHECK_THROWS_AS(parse_extraction_mode("neural"), Error);
}

TEST_CASE("dictionary and tagged modes agree on most tokens") {
  for (const char *f : {"feeder.tsv", "lamp.tsv"}) {
    INFO(f);
    CHECK(mode_agreement(f) >= 0.80);
  }
}

TEST_CASE("natural speech noun ratio lies in the expected band") {
  Transcript t = clean(wgtest::read_text(wgtest::fixture("corpus/chatty.txt")));
  NounSequence s = extractor().extract(t);
  double ratio = static_cast<double>(s.nouns.size()) / static_cast<double>(s.word_count);
  CHECK(ratio >= 0.05);
  CHECK(ratio <= 0.25);
}

TEST_CASE("json lines output") {
  NounSequence s = extractor().extract(clean("The bird sat. A crayon fell."));
  std::string out = to_json_lines(s);
  CHECK(out.find(R"({"token":"bird","sentence_idx":0,"noun":"bird","synsets":)") == 0);
  CHECK(out.find(R"({"token":"crayon","sentence_idx":1,"noun":"crayon")") != std::string::npos);
  CHECK(std::count(out.begin(), out.end(), '\n') == static_cast<long>(s.nouns.size()));
}

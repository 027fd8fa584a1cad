/* Transcript cleaning, sentence segmentation and noun extraction.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/engine.hpp"

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wordgraph {

struct Utterance {
  std::string speaker;  // empty when the line had no "Name:" label
  std::string text;     // cleaned
  std::string original;
};

struct Transcript {
  std::string source;
  std::vector<Utterance> utterances;
  bool empty() const;
};

/// Drops bracketed annotations, clock timestamps and leading "Name:" speaker
/// labels, then collapses whitespace. One utterance per non-blank input line.
/// Applied to a fixed point, so clean(clean(t)) == clean(t).
Transcript clean(std::string_view raw, std::string source = {});
std::string clean_line(std::string_view line, std::string *speaker = nullptr);

/// Rebuilds raw text ("Speaker: text" lines) from a transcript.
std::string render(const Transcript &t);

/// Splits on . ? ! followed by whitespace and an uppercase letter (or end of
/// text), skipping common abbreviations.
std::vector<std::string> split_sentences(std::string_view text);

/// Word tokens: letters, digits, inner apostrophes and hyphens.
std::vector<std::string> tokenize(std::string_view sentence);

/// Default closed-class stoplist applied in dictionary mode.
const std::set<std::string> &default_stoplist();

/// WordNet-style noun morphology over a lexicon.
class Morphology {
public:
  explicit Morphology(const Database &db) : db_(db) {}

  /// Exception list first, then the detachment rules, then the token itself;
  /// the first candidate found in the lexicon (exact case, then lowercase)
  /// wins. Returns the lexicon form, or nullopt when nothing matches.
  std::optional<std::string> singularize(std::string_view token) const;

private:
  std::optional<std::string> lookup(std::string_view form) const;
  const Database &db_;
};

enum class ExtractionMode { Dictionary, Pretagged };

const char *to_string(ExtractionMode m);
ExtractionMode parse_extraction_mode(std::string_view s);

struct ExtractOptions {
  ExtractionMode mode = ExtractionMode::Dictionary;
  bool collocations = false;
  std::set<std::string> stoplist = default_stoplist();
  std::set<std::string> noun_tags = {"NN", "NNS"};
};

struct NounToken {
  std::string token;            // surface form (both tokens for collocations)
  std::size_t token_index = 0;  // position among all tokens
  std::size_t sentence_index = 0;
  std::size_t utterance_index = 0;
  std::string noun;             // lexicon form
  std::size_t synset_count = 0;
};

struct NounSequence {
  std::vector<NounToken> nouns;
  std::size_t word_count = 0;
  std::vector<std::size_t> sentence_tokens;      // token count per sentence
  std::vector<std::size_t> sentence_utterance;   // utterance index per sentence
  std::vector<std::string> dropped;
  ExtractionMode mode = ExtractionMode::Dictionary;
};

/// Pretagged input: one "token<TAB>tag" per line, blank line = sentence
/// break.
struct TaggedToken {
  std::string token;
  std::string tag;
};
using TaggedSentence = std::vector<TaggedToken>;

/// Throws Error(Input) naming the line of a malformed row.
std::vector<TaggedSentence> parse_pretagged(std::istream &in, const std::string &source = "<tagged>");

class NounExtractor {
public:
  NounExtractor(const Database &db, ExtractOptions options = {});

  NounSequence extract(const Transcript &transcript) const;
  NounSequence extract(const std::vector<TaggedSentence> &tagged) const;

  const ExtractOptions &options() const { return options_; }

private:
  std::optional<std::string> noun_form(std::string_view token) const;
  std::optional<std::string> collocation(std::string_view first, std::string_view second) const;

  const Database &db_;
  Morphology morph_;
  ExtractOptions options_;
};

/// JSON-lines rendering: token, sentence_idx, noun, synsets.
std::string to_json_lines(const NounSequence &seq);

} // namespace wordgraph

/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/text.hpp"
#include "wordgraph/error.hpp"

#include <json.hpp>

#include <array>
#include <istream>
#include <regex>
#include <sstream>

namespace wordgraph {

namespace {

const std::regex &bracket_re() {
  static const std::regex re(R"(\[[^\]]*\])");
  return re;
}
const std::regex &timestamp_re() {
  static const std::regex re(R"(\(?\b\d{1,2}:\d{2}(:\d{2})?(\.\d+)?\b\)?)");
  return re;
}
const std::regex &speaker_re() {
  static const std::regex re(R"(^\s*([A-Z][A-Za-z0-9_.'-]*(?: [A-Z][A-Za-z0-9_.'-]*){0,2})\s*:(\s+|$))");
  return re;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool gap = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      gap = !out.empty();
      continue;
    }
    if (gap)
      out.push_back(' ');
    gap = false;
    out.push_back(c);
  }
  return out;
}

bool is_word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

bool has_letter(std::string_view s) {
  for (unsigned char c : s)
    if (std::isalpha(c) || c >= 0x80)
      return true;
  return false;
}

const std::set<std::string> &abbreviations() {
  static const std::set<std::string> abbr = {"mr", "mrs", "ms", "dr", "prof", "st", "vs", "etc",
                                             "e.g", "i.e", "jr", "sr", "inc", "ltd", "no", "fig",
                                             "approx", "dept", "co"};
  return abbr;
}

} // namespace

bool Transcript::empty() const {
  for (const auto &u : utterances)
    if (!u.text.empty())
      return false;
  return true;
}

std::string clean_line(std::string_view line, std::string *speaker) {
  std::string cur(line);
  bool first = true;
  for (;;) {
    std::string next = std::regex_replace(cur, bracket_re(), " ");
    next = std::regex_replace(next, timestamp_re(), " ");
    std::smatch m;
    if (std::regex_search(next, m, speaker_re())) {
      if (speaker && first)
        *speaker = m[1].str();
      first = false;
      next = next.substr(static_cast<std::size_t>(m.length(0)));
    }
    next = collapse_whitespace(next);
    if (next == cur)
      return next;
    cur = std::move(next);
  }
}

Transcript clean(std::string_view raw, std::string source) {
  Transcript t;
  t.source = std::move(source);
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t nl = raw.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = raw.size();
    std::string_view line = raw.substr(pos, nl - pos);
    pos = nl + 1;
    if (collapse_whitespace(line).empty())
      continue;
    Utterance u;
    u.original = std::string(line);
    u.text = clean_line(line, &u.speaker);
    if (!u.text.empty() || !u.speaker.empty())
      t.utterances.push_back(std::move(u));
  }
  return t;
}

std::string render(const Transcript &t) {
  std::string out;
  for (const auto &u : t.utterances) {
    if (!u.speaker.empty())
      out += u.speaker + ": ";
    out += u.text;
    out += '\n';
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string s = collapse_whitespace(text.substr(start, end - start));
    if (!s.empty())
      out.push_back(std::move(s));
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '?' && c != '!')
      continue;
    std::size_t j = i + 1;
    while (j < text.size() && (text[j] == '.' || text[j] == '?' || text[j] == '!' ||
                               text[j] == '"' || text[j] == '\'' || text[j] == ')'))
      ++j;
    std::size_t k = j;
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    bool at_end = k == text.size();
    bool boundary = at_end || (k > j && std::isupper(static_cast<unsigned char>(text[k])));
    if (!boundary)
      continue;
    if (c == '.') {
      std::size_t w = i;
      while (w > start && (std::isalpha(static_cast<unsigned char>(text[w - 1])) || text[w - 1] == '.'))
        --w;
      std::string word = to_lower_ascii(text.substr(w, i - w));
      bool single_initial = word.size() == 1;
      if (!at_end && (abbreviations().contains(word) || single_initial))
        continue;
    }
    emit(j);
    i = j - 1;
  }
  emit(text.size());
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_word_char(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size()) {
      auto c = static_cast<unsigned char>(s[j]);
      if (is_word_char(c)) {
        ++j;
      } else if ((c == '\'' || c == '-') && j + 1 < s.size() &&
                 is_word_char(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
      } else {
        break;
      }
    }
    out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

const std::set<std::string> &default_stoplist() {
  static const std::set<std::string> stop = {
      "a",     "an",    "the",   "and",   "or",    "but",   "if",    "of",    "to",
      "in",    "on",    "at",    "by",    "for",   "with",  "from",  "as",    "is",
      "are",   "was",   "were",  "be",    "been",  "being", "am",    "do",    "does",
      "did",   "have",  "has",   "had",   "will",  "would", "can",   "could", "shall",
      "should", "may",  "might", "must",  "i",     "you",   "he",    "she",   "we",
      "they",  "it",    "me",    "him",   "her",   "us",    "them",  "my",    "your",
      "our",   "their", "its",   "this",  "that",  "these", "those", "so",    "not",
      "no",    "yes",   "just",  "very",  "there", "here",  "what",  "which", "who",
      "how",   "why",   "when",  "where", "then",  "than",  "also",  "about", "like",
      "okay",  "ok",    "yeah",  "um",    "uh",    "oh",    "one",   "two",   "three",
      "four",  "five",  "six",   "seven", "eight", "nine",  "ten",   "get",   "go",
      "say",   "see",   "well",  "right", "something",
      "mean",  "know",  "think", "want",  "need",  "make",  "up",    "out",
      "all",   "some",  "any",   "more",  "most",  "much",  "many",  "now",   "even"};
  return stop;
}

std::optional<std::string> Morphology::lookup(std::string_view form) const {
  if (auto w = db_.lexicon.find(form))
    return db_.lexicon.word(*w);
  return std::nullopt;
}

std::optional<std::string> Morphology::singularize(std::string_view token) const {
  if (token.empty())
    return std::nullopt;
  std::string lower = to_lower_ascii(normalize_word(token));
  if (auto it = db_.exceptions.find(lower); it != db_.exceptions.end())
    for (const auto &base : it->second)
      if (auto hit = lookup(base))
        return hit;

  static constexpr std::array<std::pair<std::string_view, std::string_view>, 8> rules = {{
      {"s", ""}, {"ses", "s"}, {"xes", "x"}, {"zes", "z"},
      {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"},
  }};
  std::string form = normalize_word(token);
  std::string lform = to_lower_ascii(form);
  for (auto [suffix, repl] : rules) {
    if (lform.size() <= suffix.size() || !lform.ends_with(suffix))
      continue;
    if (suffix == "s" && (lform.ends_with("ss") || lform.size() - 1 < 3))
      continue;
    std::string candidate = form.substr(0, form.size() - suffix.size()) + std::string(repl);
    if (auto hit = lookup(candidate))
      return hit;
  }
  return lookup(form);
}

const char *to_string(ExtractionMode m) {
  return m == ExtractionMode::Dictionary ? "dictionary" : "pretagged";
}

ExtractionMode parse_extraction_mode(std::string_view s) {
  if (s == "dictionary")
    return ExtractionMode::Dictionary;
  if (s == "pretagged")
    return ExtractionMode::Pretagged;
  throw Error(ErrorCode::Input, "unknown extraction mode '" + std::string(s) +
                                    "' (expected dictionary or pretagged)");
}

std::vector<TaggedSentence> parse_pretagged(std::istream &in, const std::string &source) {
  std::vector<TaggedSentence> out(1);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (collapse_whitespace(line).empty()) {
      if (!out.back().empty())
        out.emplace_back();
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
        line.find('\t', tab + 1) != std::string::npos)
      throw Error(ErrorCode::Input, source + ":" + std::to_string(lineno) +
                                        ": expected 'token<TAB>tag'");
    out.back().push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  if (out.back().empty())
    out.pop_back();
  return out;
}

NounExtractor::NounExtractor(const Database &db, ExtractOptions options)
    : db_(db), morph_(db), options_(std::move(options)) {}

std::optional<std::string> NounExtractor::noun_form(std::string_view token) const {
  std::string t(token);
  if (t.ends_with("'s") || t.ends_with("'S"))
    t.resize(t.size() - 2);
  else if (t.ends_with("'"))
    t.pop_back();
  if (t.empty() || !has_letter(t))
    return std::nullopt;
  return morph_.singularize(t);
}

std::optional<std::string> NounExtractor::collocation(std::string_view first,
                                                      std::string_view second) const {
  if (!has_letter(first) || !has_letter(second))
    return std::nullopt;
  std::string joined = std::string(first) + "_" + std::string(second);
  auto hit = morph_.singularize(joined);
  if (hit && hit->find('_') != std::string::npos)
    return hit;
  return std::nullopt;
}

NounSequence NounExtractor::extract(const Transcript &transcript) const {
  NounSequence seq;
  seq.mode = ExtractionMode::Dictionary;
  std::size_t token_index = 0;
  for (std::size_t u = 0; u < transcript.utterances.size(); ++u) {
    for (const std::string &sentence : split_sentences(transcript.utterances[u].text)) {
      std::vector<std::string> tokens = tokenize(sentence);
      const std::size_t sentence_index = seq.sentence_tokens.size();
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string &tok = tokens[i];
        const std::size_t here = token_index + i;
        if (options_.collocations && i + 1 < tokens.size()) {
          if (auto c = collocation(tok, tokens[i + 1])) {
            seq.nouns.push_back({tok + " " + tokens[i + 1], here, sentence_index, u, *c,
                                 db_.lexicon.senses(*db_.lexicon.find_exact(*c)).size()});
            ++i;
            continue;
          }
        }
        std::string lower = to_lower_ascii(tok);
        if (options_.stoplist.contains(lower) || !has_letter(tok))
          continue;
        if (auto n = noun_form(tok)) {
          seq.nouns.push_back({tok, here, sentence_index, u, *n,
                               db_.lexicon.senses(*db_.lexicon.find_exact(*n)).size()});
        } else {
          seq.dropped.push_back(tok);
        }
      }
      token_index += tokens.size();
      seq.sentence_tokens.push_back(tokens.size());
      seq.sentence_utterance.push_back(u);
    }
  }
  seq.word_count = token_index;
  return seq;
}

NounSequence NounExtractor::extract(const std::vector<TaggedSentence> &tagged) const {
  NounSequence seq;
  seq.mode = ExtractionMode::Pretagged;
  std::size_t token_index = 0;
  for (std::size_t s = 0; s < tagged.size(); ++s) {
    const auto &sentence = tagged[s];
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const auto &[tok, tag] = sentence[i];
      if (!options_.noun_tags.contains(tag))
        continue;
      if (options_.collocations && i + 1 < sentence.size() &&
          options_.noun_tags.contains(sentence[i + 1].tag)) {
        if (auto c = collocation(tok, sentence[i + 1].token)) {
          seq.nouns.push_back({tok + " " + sentence[i + 1].token, token_index + i, s, s, *c,
                               db_.lexicon.senses(*db_.lexicon.find_exact(*c)).size()});
          ++i;
          continue;
        }
      }
      if (auto n = noun_form(tok))
        seq.nouns.push_back({tok, token_index + i, s, s, *n,
                             db_.lexicon.senses(*db_.lexicon.find_exact(*n)).size()});
      else
        seq.dropped.push_back(tok);
    }
    token_index += sentence.size();
    seq.sentence_tokens.push_back(sentence.size());
    seq.sentence_utterance.push_back(s);
  }
  seq.word_count = token_index;
  return seq;
}

std::string to_json_lines(const NounSequence &seq) {
  std::string out;
  for (const auto &n : seq.nouns) {
    nlohmann::ordered_json j;
    j["token"] = n.token;
    j["sentence_idx"] = n.sentence_index;
    j["noun"] = n.noun;
    j["synsets"] = n.synset_count;
    out += j.dump();
    out += '\n';
  }
  return out;
}

} // namespace wordgraph

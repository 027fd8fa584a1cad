/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/taxonomy.hpp"
#include "wordgraph/error.hpp"

#include <algorithm>

namespace wordgraph {

const char *to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::Input: return "input_error";
  case ErrorCode::Database: return "database_error";
  case ErrorCode::Constraint: return "constraint_error";
  case ErrorCode::NotFound: return "not_found";
  case ErrorCode::Internal: return "internal_error";
  }
  return "internal_error";
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    if (c >= 'A' && c <= 'Z')
      c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string normalize_word(std::string_view form) {
  std::size_t b = 0, e = form.size();
  while (b < e && (form[b] == ' ' || form[b] == '\t')) ++b;
  while (e > b && (form[e - 1] == ' ' || form[e - 1] == '\t')) --e;
  std::string out;
  out.reserve(e - b);
  bool gap = false;
  for (std::size_t i = b; i < e; ++i) {
    char c = form[i];
    if (c == ' ' || c == '\t') {
      gap = true;
      continue;
    }
    if (gap) {
      out.push_back('_');
      gap = false;
    }
    out.push_back(c);
  }
  return out;
}

Taxonomy::Taxonomy(std::vector<SynsetId> ids, std::vector<std::vector<std::string>> lemmas,
                   Csr hypernyms, Csr hyponyms, SynsetIndex root,
                   std::vector<SynsetIndex> topo_order)
    : ids_(std::move(ids)), lemmas_(std::move(lemmas)), hypernyms_(std::move(hypernyms)),
      hyponyms_(std::move(hyponyms)), root_(root), topo_(std::move(topo_order)) {}

std::optional<SynsetIndex> Taxonomy::index_of(SynsetId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id)
    return std::nullopt;
  return static_cast<SynsetIndex>(it - ids_.begin());
}

Lexicon::Lexicon(std::vector<std::string> words, Csr senses)
    : words_(std::move(words)), senses_(std::move(senses)) {
  by_form_.reserve(words_.size());
  for (WordIndex w = 0; w < words_.size(); ++w)
    by_form_.emplace(words_[w], w);
  sorted_.resize(words_.size());
  for (WordIndex w = 0; w < words_.size(); ++w)
    sorted_[w] = w;
  std::sort(sorted_.begin(), sorted_.end(),
            [this](WordIndex a, WordIndex b) { return words_[a] < words_[b]; });
}

std::optional<WordIndex> Lexicon::find_exact(std::string_view form) const {
  auto it = by_form_.find(std::string(form));
  if (it == by_form_.end())
    return std::nullopt;
  return it->second;
}

std::optional<WordIndex> Lexicon::find(std::string_view form) const {
  std::string norm = normalize_word(form);
  if (norm.empty())
    return std::nullopt;
  if (auto w = find_exact(norm))
    return w;
  std::string lower = to_lower_ascii(norm);
  if (lower != norm)
    return find_exact(lower);
  return std::nullopt;
}

std::vector<std::string> Lexicon::nearest(std::string_view form, std::size_t limit) const {
  std::string key = to_lower_ascii(normalize_word(form));
  std::vector<std::string> out;
  if (sorted_.empty() || limit == 0)
    return out;
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), key,
                             [this](WordIndex w, const std::string &k) { return words_[w] < k; });
  // Take a window around the insertion point, then keep the longest shared
  // prefixes.
  auto lo = it - std::min<std::ptrdiff_t>(it - sorted_.begin(), static_cast<std::ptrdiff_t>(limit));
  auto hi = it + std::min<std::ptrdiff_t>(sorted_.end() - it, static_cast<std::ptrdiff_t>(limit));
  std::vector<std::pair<std::size_t, WordIndex>> scored;
  for (auto p = lo; p != hi; ++p) {
    const std::string &w = words_[*p];
    std::size_t common = 0;
    while (common < w.size() && common < key.size() && w[common] == key[common]) ++common;
    scored.emplace_back(common, *p);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (std::size_t i = 0; i < scored.size() && out.size() < limit; ++i)
    out.push_back(words_[scored[i].second]);
  return out;
}

} // namespace wordgraph

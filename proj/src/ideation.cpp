/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/ideation.hpp"
#include "wordgraph/error.hpp"
#include "wordgraph/parallel.hpp"

#include <algorithm>

namespace wordgraph {

namespace {

std::vector<std::string> resolve_base(const Engine &engine, const std::vector<std::string> &base) {
  std::vector<std::string> out, missing;
  for (const auto &b : base) {
    if (auto w = engine.try_resolve(b))
      out.push_back(engine.lexicon().word(*w));
    else
      missing.push_back(b);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto &m : missing)
      list += (list.empty() ? "'" : ", '") + m + "'";
    throw Error(ErrorCode::Input, "unknown base noun(s): " + list, missing);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() < 2)
    throw Error(ErrorCode::Constraint, "the base set needs at least 2 distinct nouns");
  return out;
}

double set_average(const Measures &m, std::vector<std::string> nouns, MeasureId measure, unsigned threads) {
  return average_pairwise_similarity(m, nouns, measure, nullptr, threads);
}

std::vector<Proposal> project(const Measures &m, const std::vector<std::string> &base, double base_average,
                              const std::vector<std::string> &candidates, MeasureId measure,
                              unsigned threads) {
  std::vector<Proposal> out(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    std::vector<std::string> set = base;
    set.push_back(candidates[i]);
    out[i].noun = candidates[i];
    out[i].average = set_average(m, std::move(set), measure, 1);
    out[i].delta = out[i].average - base_average;
  });
  std::sort(out.begin(), out.end(), [](const Proposal &a, const Proposal &b) {
    return a.average != b.average ? a.average < b.average : a.noun < b.noun;
  });
  return out;
}

} // namespace

Ranking rank_candidates(const Measures &measures, const std::vector<std::string> &base,
                        const std::vector<std::string> &candidates, MeasureId measure, unsigned threads) {
  if (!measure.is_similarity())
    throw Error(ErrorCode::Input, "suggestions need a similarity measure (got " + measure.name() + ")");
  Ranking r;
  r.base = resolve_base(measures.engine(), base);
  r.base_average = set_average(measures, r.base, measure, threads);
  std::vector<std::string> accepted;
  for (const auto &c : candidates) {
    auto w = measures.engine().try_resolve(c);
    if (!w) {
      r.unresolved.push_back(c);
      continue;
    }
    const std::string &form = measures.engine().lexicon().word(*w);
    if (std::binary_search(r.base.begin(), r.base.end(), form) ||
        std::find(accepted.begin(), accepted.end(), form) != accepted.end()) {
      r.duplicates.push_back(c);
      continue;
    }
    accepted.push_back(form);
  }
  r.proposals = project(measures, r.base, r.base_average, accepted, measure, threads);
  return r;
}

MeasureId default_session_measure() {
  return MeasureId::ic_similarity(IcSimFormula::Lin, IcFormula::SanchezBatet);
}

const char *to_string(Decision d) { return d == Decision::Accepted ? "accepted" : "rejected"; }

Decision parse_decision(std::string_view s) {
  if (s == "accept" || s == "accepted")
    return Decision::Accepted;
  if (s == "reject" || s == "rejected")
    return Decision::Rejected;
  throw Error(ErrorCode::Input, "decision must be 'accept' or 'reject' (got '" + std::string(s) + "')");
}

IdeationSession::IdeationSession(const Measures &measures, std::string id,
                                 const std::vector<std::string> &base, MeasureId measure,
                                 const std::vector<std::string> &candidates)
    : measures_(measures), id_(std::move(id)), measure_(measure) {
  Ranking r = rank_candidates(measures, base, {}, measure);
  base_ = r.base;
  average_ = r.base_average;
  for (const auto &c : candidates) {
    auto w = measures.engine().try_resolve(c);
    if (!w) {
      unresolved_.push_back(c);
      continue;
    }
    const std::string &form = measures.engine().lexicon().word(*w);
    if (std::binary_search(base_.begin(), base_.end(), form) ||
        std::find(pool_.begin(), pool_.end(), form) != pool_.end())
      continue;
    pool_.push_back(form);
  }
}

std::vector<Proposal> IdeationSession::propose(std::size_t k) {
  std::vector<std::string> open;
  for (const auto &c : pool_)
    if (!decided_.contains(c))
      open.push_back(c);
  auto ranked = project(measures_, base_, average_, open, measure_, 1);
  if (k != 0 && ranked.size() > k)
    ranked.resize(k);
  for (const auto &p : ranked)
    proposed_.insert(p.noun);
  return ranked;
}

const HistoryEntry &IdeationSession::decide(std::string_view noun, Decision d) {
  auto w = measures_.engine().try_resolve(noun);
  const std::string form = w ? measures_.engine().lexicon().word(*w) : std::string(noun);
  if (std::find(pool_.begin(), pool_.end(), form) == pool_.end())
    throw Error(ErrorCode::Input, "'" + std::string(noun) + "' is not a candidate of session " + id_);
  if (decided_.contains(form))
    throw Error(ErrorCode::Constraint, "'" + form + "' was already decided");
  if (!proposed_.contains(form))
    throw Error(ErrorCode::Constraint, "'" + form + "' has not been proposed yet");
  decided_.insert(form);
  if (d == Decision::Accepted) {
    base_.insert(std::upper_bound(base_.begin(), base_.end(), form), form);
    average_ = set_average(measures_, base_, measure_, 1);
  }
  history_.push_back({form, d, average_});
  return history_.back();
}

nlohmann::ordered_json IdeationSession::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id_;
  j["measure"] = measure_.name();
  j["base"] = base_;
  j["average"] = average_;
  j["pool"] = pool_;
  std::vector<std::string> open;
  for (const auto &c : pool_)
    if (!decided_.contains(c))
      open.push_back(c);
  j["open"] = open;
  j["unresolved"] = unresolved_;
  auto hist = nlohmann::ordered_json::array();
  for (const auto &h : history_)
    hist.push_back({{"noun", h.noun}, {"decision", to_string(h.decision)}, {"average", h.average}});
  j["history"] = hist;
  return j;
}

} // namespace wordgraph

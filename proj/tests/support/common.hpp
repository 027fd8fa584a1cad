/* Shared helpers for the test binaries.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "wordgraph/database.hpp"
#include "wordgraph/measures.hpp"

#include <cmath>
#include <filesystem>
#include <memory>
#include <string>

namespace wgtest {

std::filesystem::path fixture(const std::string &relative);
std::filesystem::path wordnet_dir();
std::string read_text(const std::filesystem::path &p);

/// WordNet 3.1, loaded once per process.
std::shared_ptr<const wordgraph::WordGraph> wordnet();
/// The synthetic graph-function taxonomy, loaded once per process.
std::shared_ptr<const wordgraph::WordGraph> fig1();

/// Engine + measures bundle over a shared graph.
struct Bench {
  explicit Bench(std::shared_ptr<const wordgraph::WordGraph> g)
      : graph(std::move(g)), engine(graph), measures(engine) {}
  std::shared_ptr<const wordgraph::WordGraph> graph;
  wordgraph::Engine engine;
  wordgraph::Measures measures;
};

Bench &wordnet_bench();

/// |a - b| <= tol * max(|a|, |b|); exact equality always passes.
inline bool rel_close(double a, double b, double tol) {
  if (a == b)
    return true;
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

/// Fresh empty directory under the build tree.
std::filesystem::path scratch_dir(const std::string &name);

} // namespace wgtest

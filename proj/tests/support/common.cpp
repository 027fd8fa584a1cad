/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "common.hpp"

#include <fstream>
#include <sstream>

namespace wgtest {

namespace fs = std::filesystem;

fs::path fixture(const std::string &relative) { return fs::path(WG_FIXTURE_DIR) / relative; }

fs::path wordnet_dir() { return fs::path(WG_WORDNET_DIR); }

std::string read_text(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const wordgraph::WordGraph> wordnet() {
  static auto g = std::make_shared<const wordgraph::WordGraph>(wordgraph::open_wordgraph(wordnet_dir()));
  return g;
}

std::shared_ptr<const wordgraph::WordGraph> fig1() {
  static auto g = std::make_shared<const wordgraph::WordGraph>(
      wordgraph::build_wordgraph(wordgraph::load_database(fixture("fig1"))));
  return g;
}

Bench &wordnet_bench() {
  static Bench b(wordnet());
  return b;
}

fs::path scratch_dir(const std::string &name) {
  fs::path p = fs::path(WG_SCRATCH_DIR) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

} // namespace wgtest

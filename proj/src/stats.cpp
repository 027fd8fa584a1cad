/* SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "wordgraph/stats.hpp"

#include <deque>
#include <limits>

namespace wordgraph {

namespace {

std::vector<std::uint16_t> root_depths(const Taxonomy &tax) {
  constexpr auto unset = std::numeric_limits<std::uint16_t>::max();
  std::vector<std::uint16_t> depth(tax.size(), unset);
  std::deque<SynsetIndex> queue{tax.root()};
  depth[tax.root()] = 1;
  while (!queue.empty()) {
    SynsetIndex v = queue.front();
    queue.pop_front();
    for (SynsetIndex c : tax.hyponyms(v)) {
      if (depth[c] == unset) {
        depth[c] = static_cast<std::uint16_t>(depth[v] + 1);
        queue.push_back(c);
      }
    }
  }
  return depth;
}

void collect(const Csr &adj, std::span<const SynsetIndex> seeds, VisitMarker &marker,
             std::vector<SynsetIndex> &out) {
  out.clear();
  for (SynsetIndex s : seeds)
    if (marker.visit(s))
      out.push_back(s);
  for (std::size_t head = 0; head < out.size(); ++head)
    for (SynsetIndex n : adj.row(out[head]))
      if (marker.visit(n))
        out.push_back(n);
}

} // namespace

SenseUnion sense_union(const Taxonomy &tax, const TaxonomyStats &stats,
                       std::span<const SynsetIndex> senses) {
  thread_local VisitMarker marker;
  SenseUnion u;

  marker.reset(tax.size());
  collect(tax.hypernym_csr(), senses, marker, u.subsumers);
  std::sort(u.subsumers.begin(), u.subsumers.end());

  marker.reset(tax.size());
  collect(tax.hyponym_csr(), senses, marker, u.subvertices);
  std::sort(u.subvertices.begin(), u.subvertices.end());

  u.min_depth = std::numeric_limits<std::uint32_t>::max();
  for (SynsetIndex s : senses)
    u.min_depth = std::min<std::uint32_t>(u.min_depth, stats.depth[s]);

  for (SynsetIndex v : u.subvertices) {
    u.inverse_depth_sum += 1.0 / stats.depth[v];
    if (tax.is_leaf(v)) {
      u.leaves.push_back(v);
      u.commonness += 1.0 / stats.subsumer_count[v];
    }
  }
  return u;
}

TaxonomyStats precompute_stats(const Taxonomy &tax) {
  TaxonomyStats st;
  const std::size_t n = tax.size();
  st.depth = root_depths(tax);

  VisitMarker marker;
  std::vector<SynsetIndex> scratch;
  st.subsumer_count.resize(n);
  for (SynsetIndex i = 0; i < n; ++i) {
    marker.reset(n);
    SynsetIndex seed[] = {i};
    collect(tax.hypernym_csr(), seed, marker, scratch);
    st.subsumer_count[i] = static_cast<std::uint32_t>(scratch.size());
  }

  st.subvertex_count.resize(n);
  st.leaf_count.resize(n);
  st.commonness.resize(n);
  st.inverse_depth_sum.resize(n);
  for (SynsetIndex i = 0; i < n; ++i) {
    SynsetIndex seed[] = {i};
    SenseUnion u = sense_union(tax, st, seed);
    st.subvertex_count[i] = static_cast<std::uint32_t>(u.subvertices.size());
    st.leaf_count[i] = static_cast<std::uint32_t>(u.leaves.size());
    st.commonness[i] = u.commonness;
    st.inverse_depth_sum[i] = u.inverse_depth_sum;
  }
  return st;
}

} // namespace wordgraph

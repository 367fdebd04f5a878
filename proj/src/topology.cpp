#include "qnet/topology.hpp"

#include <algorithm>

#include "qnet/errors.hpp"

namespace qnet {

NetworkSegment::NetworkSegment(int n_nodes, int density) : n_nodes_(n_nodes), density_(density) {
  if (n_nodes < 3) {
    throw ValidationError("n_nodes", "must be >= 3 (at least one interior node), got " +
                                         std::to_string(n_nodes));
  }
  if (density < 1 || density > n_nodes - 1) {
    throw ValidationError("density", "must lie in [1, n_nodes-1] = [1, " +
                                         std::to_string(n_nodes - 1) + "], got " +
                                         std::to_string(density));
  }
}

std::uint64_t NetworkSegment::edge_count() const noexcept {
  const auto n = static_cast<std::uint64_t>(n_nodes_);
  const auto c = static_cast<std::uint64_t>(density_);
  return c * (2 * n - c - 1) / 2;
}

bool NetworkSegment::contains(Link link) const noexcept {
  const int hop = link.to - link.from;
  return link.from >= 1 && link.to <= n_nodes_ && hop >= 1 && hop <= density_;
}

std::size_t NetworkSegment::link_index(Link link) const {
  if (!contains(link)) {
    throw ValidationError("link", "(" + link.label() + ") is not an edge of the segment");
  }
  // Nodes k <= N-c have c out-links; later nodes have N-k.
  const long long n = n_nodes_;
  const long long c = density_;
  const long long before = link.from - 1;
  const long long full = std::min(before, n - c);
  long long offset = c * full;
  if (before > full) {
    offset += c * (c - 1) / 2 - (n - before) * (n - before - 1) / 2;
  }
  return static_cast<std::size_t>(offset + (link.to - link.from - 1));
}

NetworkSegment make_segment(int n_nodes, int density) { return NetworkSegment(n_nodes, density); }

std::vector<Link> edges(const NetworkSegment& seg) {
  std::vector<Link> out;
  out.reserve(seg.edge_count());
  for (int from = 1; from < seg.n_nodes(); ++from) {
    const int last = std::min(from + seg.density(), seg.n_nodes());
    for (int to = from + 1; to <= last; ++to) out.push_back({from, to});
  }
  return out;
}

namespace {

void check_node(const NetworkSegment& seg, int node) {
  if (node < 1 || node > seg.n_nodes()) {
    throw ValidationError("node", "must lie in [1, " + std::to_string(seg.n_nodes()) +
                                      "], got " + std::to_string(node));
  }
}

}  // namespace

std::vector<int> out_neighbors(const NetworkSegment& seg, int node) {
  check_node(seg, node);
  std::vector<int> out;
  for (int to = node + 1; to <= std::min(node + seg.density(), seg.n_nodes()); ++to) {
    out.push_back(to);
  }
  return out;
}

std::vector<int> in_neighbors(const NetworkSegment& seg, int node) {
  check_node(seg, node);
  std::vector<int> out;
  for (int from = std::max(node - seg.density(), 1); from < node; ++from) out.push_back(from);
  return out;
}

}  // namespace qnet

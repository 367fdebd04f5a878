#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qnet {

// A QKD link between two trusted nodes. Indices are 1-based and traffic flows
// from the lower to the higher index.
struct Link {
  int from = 0;
  int to = 0;

  auto operator<=>(const Link&) const = default;

  std::string label() const { return std::to_string(from) + "-" + std::to_string(to); }
};

// N serially ordered trusted nodes where each node links forward to the next
// `density` nodes: the adjacency matrix has ones on its first c superdiagonals.
class NetworkSegment {
 public:
  // Throws ValidationError naming "n_nodes" or "density".
  NetworkSegment(int n_nodes, int density);

  int n_nodes() const noexcept { return n_nodes_; }
  int density() const noexcept { return density_; }
  int interior_count() const noexcept { return n_nodes_ - 2; }

  // c(2N - c - 1)/2, exact.
  std::uint64_t edge_count() const noexcept;

  bool contains(Link link) const noexcept;

  // Position of `link` in edges() order. Precondition: contains(link).
  std::size_t link_index(Link link) const;

  bool operator==(const NetworkSegment&) const = default;

 private:
  int n_nodes_;
  int density_;
};

NetworkSegment make_segment(int n_nodes, int density);

// Ascending by `from`, then by `to`.
std::vector<Link> edges(const NetworkSegment& seg);

// {node+1, ..., min(node+c, N)}; throws ValidationError if node is out of range.
std::vector<int> out_neighbors(const NetworkSegment& seg, int node);

// {max(node-c, 1), ..., node-1}
std::vector<int> in_neighbors(const NetworkSegment& seg, int node);

}  // namespace qnet

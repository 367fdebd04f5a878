#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "qnet/bigint.hpp"
#include "qnet/topology.hpp"

namespace qnet {

// Strictly increasing node sequence from 1 to N with hops of length 1..c.
struct Route {
  std::vector<int> nodes;

  bool traverses(Link link) const;
  bool visits(int node) const;
  bool operator==(const Route&) const = default;
};

inline constexpr std::uint64_t kDefaultRouteCap = std::uint64_t{1} << 20;

// All first-to-last routes in lexicographic order. Route i (1-based) carries
// the key K_i.
struct RouteSet {
  NetworkSegment segment;
  std::vector<Route> routes;
  BigInt count;

  const Route& route(std::size_t id) const { return routes.at(id - 1); }
};

// For every link, the ascending list of route ids (1-based) whose key travels
// over that link.
struct RoutingScheme {
  NetworkSegment segment;
  std::size_t route_count = 0;
  std::map<Link, std::vector<std::size_t>> bundles;

  // Empty for links no route uses; throws ValidationError for foreign links.
  const std::vector<std::size_t>& bundle(Link link) const;
};

// Order-`order` Fibonacci generalization indexed so that F_1 = 1 and
// F_k = F_{k-1} + ... + F_{k-order} with F_k = 0 for k <= 0. F_N is the number
// of compositions of N-1 into parts of size 1..order.
BigInt cannacci_number(int index, int order);

// Number of routes of the (n_nodes, density) segment; validates the pair.
BigInt cannacci_count(int n_nodes, int density);

// Throws CapExceededError when the count exceeds `cap`.
RouteSet enumerate_routes(const NetworkSegment& seg, std::uint64_t cap = kDefaultRouteCap);

RoutingScheme build_routing_scheme(const RouteSet& routes);

// Size of the smallest link set covering every route: the c out-links of node
// 1 (or the c in-links of node N).
int min_link_cut_size(const NetworkSegment& seg);

}  // namespace qnet

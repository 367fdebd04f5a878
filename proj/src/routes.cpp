#include "qnet/routes.hpp"

#include <algorithm>

#include "qnet/errors.hpp"

namespace qnet {

bool Route::traverses(Link link) const {
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i] == link.from && nodes[i + 1] == link.to) return true;
  }
  return false;
}

bool Route::visits(int node) const {
  return std::binary_search(nodes.begin(), nodes.end(), node);
}

const std::vector<std::size_t>& RoutingScheme::bundle(Link link) const {
  static const std::vector<std::size_t> kEmpty;
  if (!segment.contains(link)) {
    throw ValidationError("link", "(" + link.label() + ") is not an edge of the segment");
  }
  const auto it = bundles.find(link);
  return it == bundles.end() ? kEmpty : it->second;
}

BigInt cannacci_number(int index, int order) {
  if (order < 1) throw ValidationError("order", "must be >= 1");
  if (index < 1) return 0;
  // Sliding window over the last `order` terms.
  std::vector<BigInt> window(static_cast<std::size_t>(order), 0);
  window[0] = 1;
  BigInt sum = 1;
  std::size_t head = 0;  // slot holding F_k for the current k
  for (int k = 2; k <= index; ++k) {
    const std::size_t slot = (head + 1) % window.size();
    BigInt next = sum;
    sum -= window[slot];
    window[slot] = next;
    sum += next;
    head = slot;
  }
  return window[head];
}

BigInt cannacci_count(int n_nodes, int density) {
  const NetworkSegment seg(n_nodes, density);
  return cannacci_number(seg.n_nodes(), seg.density());
}

RouteSet enumerate_routes(const NetworkSegment& seg, std::uint64_t cap) {
  RouteSet out{seg, {}, cannacci_number(seg.n_nodes(), seg.density())};
  if (out.count > cap) {
    throw CapExceededError("route enumeration", to_decimal(out.count), cap);
  }
  out.routes.reserve(out.count.convert_to<std::size_t>());

  // Iterative DFS trying the shortest hop first gives lexicographic order.
  const int n = seg.n_nodes();
  std::vector<int> path{1};
  std::vector<int> next_hop{1};
  while (!path.empty()) {
    const int at = path.back();
    if (at == n) {
      out.routes.push_back(Route{path});
      path.pop_back();
      next_hop.pop_back();
      continue;
    }
    int& hop = next_hop.back();
    if (hop > seg.density() || at + hop > n) {
      path.pop_back();
      next_hop.pop_back();
      continue;
    }
    path.push_back(at + hop);
    ++hop;
    next_hop.push_back(1);
  }
  return out;
}

RoutingScheme build_routing_scheme(const RouteSet& routes) {
  if (routes.routes.size() != routes.count) {
    throw ValidationError("routes", "route set is not materialized");
  }
  RoutingScheme scheme{routes.segment, routes.routes.size(), {}};
  for (std::size_t i = 0; i < routes.routes.size(); ++i) {
    const auto& nodes = routes.routes[i].nodes;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      scheme.bundles[Link{nodes[k], nodes[k + 1]}].push_back(i + 1);
    }
  }
  return scheme;
}

int min_link_cut_size(const NetworkSegment& seg) { return seg.density(); }

}  // namespace qnet

#include "qnet/detail/reachability.hpp"

#include <algorithm>
#include <vector>

namespace qnet::detail {

bool has_clean_path(const NetworkSegment& seg, std::span<const char> node_blocked,
                    std::span<const char> link_blocked) {
  const int n = seg.n_nodes();
  const int c = seg.density();
  std::vector<char> reached(static_cast<std::size_t>(n) + 1, 0);
  reached[1] = 1;
  for (int to = 2; to <= n; ++to) {
    if (!node_blocked.empty() && node_blocked[to]) continue;
    for (int from = std::max(1, to - c); from < to && !reached[to]; ++from) {
      if (!reached[from]) continue;
      if (!link_blocked.empty() && link_blocked[seg.link_index({from, to})]) continue;
      reached[to] = 1;
    }
  }
  return reached[n] != 0;
}

bool has_blocked_run(const NetworkSegment& seg, std::span<const char> node_blocked, int run) {
  if (node_blocked.empty()) return false;
  int length = 0;
  for (int node = 2; node < seg.n_nodes(); ++node) {
    length = node_blocked[node] ? length + 1 : 0;
    if (length >= run) return true;
  }
  return false;
}

}  // namespace qnet::detail

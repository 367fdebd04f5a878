#pragma once

#include <span>

#include "qnet/topology.hpp"

namespace qnet::detail {

// node_blocked is indexed by node (1..N, entry 0 unused); link_blocked by
// NetworkSegment::link_index. Either span may be empty, meaning nothing blocked.
// Forward pass over node order, O(N c).
bool has_clean_path(const NetworkSegment& seg, std::span<const char> node_blocked,
                    std::span<const char> link_blocked);

// True iff some `run` consecutive interior nodes are all blocked.
bool has_blocked_run(const NetworkSegment& seg, std::span<const char> node_blocked, int run);

}  // namespace qnet::detail

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qnet/topology.hpp"

namespace qnet {

// What an adversary holds in one key-transport session.
struct CompromiseScenario {
  std::set<int> compromised_nodes;   // subset of {2, ..., N-1}
  std::set<Link> intercepted_links;  // subset of edges(seg)

  // Throws ValidationError for endpoints, out-of-range nodes or foreign links.
  void validate(const NetworkSegment& seg) const;
};

// True iff c consecutive interior nodes are compromised. Also runs the
// clean-path check and throws InconsistencyError if the two disagree.
bool node_attack_succeeds(const NetworkSegment& seg, const std::set<int>& compromised);

// True iff no path from 1 to N avoids every compromised node.
bool node_attack_succeeds_by_path(const NetworkSegment& seg, const std::set<int>& compromised);

// True iff every route crosses at least one intercepted link.
bool link_attack_succeeds(const NetworkSegment& seg, const std::set<Link>& intercepted);

// True iff every route crosses a compromised node or an intercepted link.
bool joint_attack_succeeds(const NetworkSegment& seg, const CompromiseScenario& scenario);

struct BatchEstimate {
  std::uint64_t trials = 0;  // cumulative
  double estimate_auth = 0;
  double estimate_link = 0;
  double stderr_auth = 0;
  double stderr_link = 0;
};

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t successes_auth = 0;
  std::uint64_t successes_link = 0;
  std::uint64_t successes_joint = 0;  // diagnostic only
  double estimate_auth = 0;
  double estimate_link = 0;
  double stderr_auth = 0;
  double stderr_link = 0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::vector<BatchEstimate> batches;  // running estimates after each batch
};

struct TrialOptions {
  unsigned threads = 1;
  std::uint64_t batch_size = 0;  // 0: no running estimates
};

// Per trial, each interior node is compromised with p_node and each link
// intercepted with p_link, independently. Trial t draws from
// SplitMix64::stream(seed, t), so the result is identical for any thread count.
TrialStats run_trials(const NetworkSegment& seg, double p_node, double p_link,
                      std::uint64_t trials, std::uint64_t seed, TrialOptions options = {});

}  // namespace qnet

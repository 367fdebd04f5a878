#include "qnet/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qnet/detail/reachability.hpp"
#include "qnet/errors.hpp"
#include "qnet/random.hpp"

namespace qnet {
namespace {

std::vector<char> node_mask(const NetworkSegment& seg, const std::set<int>& nodes) {
  std::vector<char> mask(static_cast<std::size_t>(seg.n_nodes()) + 1, 0);
  for (const int node : nodes) {
    if (node < 2 || node > seg.n_nodes() - 1) {
      throw ValidationError("compromised_nodes", "node " + std::to_string(node) +
                                                     " is not an interior node of the segment");
    }
    mask[node] = 1;
  }
  return mask;
}

std::vector<char> link_mask(const NetworkSegment& seg, const std::set<Link>& links) {
  std::vector<char> mask(seg.edge_count(), 0);
  for (const Link link : links) {
    if (!seg.contains(link)) {
      throw ValidationError("intercepted_links", "(" + link.label() + ") is not an edge");
    }
    mask[seg.link_index(link)] = 1;
  }
  return mask;
}

double standard_error(double estimate, std::uint64_t trials) {
  return std::sqrt(estimate * (1 - estimate) / static_cast<double>(trials));
}

struct BatchCounts {
  std::uint64_t trials = 0;
  std::uint64_t auth = 0;
  std::uint64_t link = 0;
  std::uint64_t joint = 0;
};

BatchCounts run_batch(const NetworkSegment& seg, double p_node, double p_link,
                      std::uint64_t first, std::uint64_t last, std::uint64_t seed) {
  BatchCounts counts;
  std::vector<char> nodes(static_cast<std::size_t>(seg.n_nodes()) + 1, 0);
  std::vector<char> links(seg.edge_count(), 0);
  for (std::uint64_t t = first; t < last; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    for (int v = 2; v < seg.n_nodes(); ++v) nodes[v] = bernoulli(rng, p_node);
    for (auto& l : links) l = bernoulli(rng, p_link);

    counts.auth += detail::has_blocked_run(seg, nodes, seg.density());
    counts.link += !detail::has_clean_path(seg, {}, links);
    counts.joint += !detail::has_clean_path(seg, nodes, links);
  }
  counts.trials = last - first;
  return counts;
}

}  // namespace

void CompromiseScenario::validate(const NetworkSegment& seg) const {
  node_mask(seg, compromised_nodes);
  link_mask(seg, intercepted_links);
}

bool node_attack_succeeds(const NetworkSegment& seg, const std::set<int>& compromised) {
  const auto mask = node_mask(seg, compromised);
  const bool by_run = detail::has_blocked_run(seg, mask, seg.density());
  const bool by_path = !detail::has_clean_path(seg, mask, {});
  if (by_run != by_path) {
    throw InconsistencyError("run-of-c check and clean-path check disagree");
  }
  return by_run;
}

bool node_attack_succeeds_by_path(const NetworkSegment& seg, const std::set<int>& compromised) {
  return !detail::has_clean_path(seg, node_mask(seg, compromised), {});
}

bool link_attack_succeeds(const NetworkSegment& seg, const std::set<Link>& intercepted) {
  return !detail::has_clean_path(seg, {}, link_mask(seg, intercepted));
}

bool joint_attack_succeeds(const NetworkSegment& seg, const CompromiseScenario& scenario) {
  return !detail::has_clean_path(seg, node_mask(seg, scenario.compromised_nodes),
                                 link_mask(seg, scenario.intercepted_links));
}

constexpr std::uint64_t kDefaultChunk = 16384;

TrialStats run_trials(const NetworkSegment& seg, double p_node, double p_link,
                      std::uint64_t trials, std::uint64_t seed, TrialOptions options) {
  if (trials < 1) throw ValidationError("trials", "must be >= 1");
  if (!(p_node >= 0 && p_node <= 1)) throw ValidationError("p_node", "must lie in [0, 1]");
  if (!(p_link >= 0 && p_link <= 1)) throw ValidationError("p_link", "must lie in [0, 1]");

  const std::uint64_t batch = options.batch_size == 0 ? kDefaultChunk : options.batch_size;
  const std::uint64_t batch_count = (trials + batch - 1) / batch;
  std::vector<BatchCounts> results(batch_count);

  // Batches are claimed dynamically but each one covers a fixed trial range,
  // so the totals do not depend on scheduling.
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < batch_count; b = next++) {
      const std::uint64_t first = b * batch;
      results[b] = run_batch(seg, p_node, p_link, first, std::min(trials, first + batch), seed);
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, batch_count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  TrialStats stats;
  stats.seed = seed;
  stats.rng_algorithm = SplitMix64::kAlgorithm;
  for (const auto& r : results) {
    stats.trials += r.trials;
    stats.successes_auth += r.auth;
    stats.successes_link += r.link;
    stats.successes_joint += r.joint;
    if (options.batch_size != 0) {
      BatchEstimate running;
      running.trials = stats.trials;
      running.estimate_auth = static_cast<double>(stats.successes_auth) / stats.trials;
      running.estimate_link = static_cast<double>(stats.successes_link) / stats.trials;
      running.stderr_auth = standard_error(running.estimate_auth, stats.trials);
      running.stderr_link = standard_error(running.estimate_link, stats.trials);
      stats.batches.push_back(running);
    }
  }
  stats.estimate_auth = static_cast<double>(stats.successes_auth) / stats.trials;
  stats.estimate_link = static_cast<double>(stats.successes_link) / stats.trials;
  stats.stderr_auth = standard_error(stats.estimate_auth, stats.trials);
  stats.stderr_link = standard_error(stats.estimate_link, stats.trials);
  return stats;
}

}  // namespace qnet

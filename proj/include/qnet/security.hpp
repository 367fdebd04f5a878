#pragma once

#include <optional>
#include <string>

#include "qnet/bigint.hpp"
#include "qnet/topology.hpp"

namespace qnet {

struct SecurityParams {
  Real eps_auth = 0;  // per-node authentication failure
  Real eps_qkd = 0;   // per-link QKD failure

  // Throws ValidationError unless both lie in [0, 1].
  void validate() const;
};

struct Estimate {
  Real value = 0;
  bool regime_valid = false;
};

enum class Mode { exact, approx };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct SecurityReport {
  NetworkSegment segment;
  SecurityParams params;
  Mode mode = Mode::approx;

  Real eps1_approx = 0;
  Real eps2_approx = 0;
  // Absent in approx mode when the exact evaluation is over its cap.
  std::optional<Real> eps1_exact{};
  std::optional<Real> eps2_exact{};

  // eps1 + eps2 for the selected mode, before and after clamping to [0, 1].
  Real eps_qn_unclamped = 0;
  Real eps_qn = 0;

  bool eps1_regime_valid = false;
  bool eps2_regime_valid = false;
  bool saturated = false;
};

inline constexpr int kDefaultFrontierDensityCap = 20;
inline constexpr std::uint64_t kDefaultExhaustiveEdgeCap = 30;

// eps1 ~ (N-c-1) eps_auth^c. Requires c <= N-2.
Estimate epsilon1_approx(const NetworkSegment& seg, Real eps_auth);

// Exact probability that some c consecutive interior nodes all fail authentication.
Real epsilon1_exact(const NetworkSegment& seg, Real eps_auth);

// eps2 ~ 2 eps_qkd^c for c > 1 and (N-1) eps_qkd for c = 1.
Estimate epsilon2_approx(const NetworkSegment& seg, Real eps_qkd);

// Exact probability that independently intercepted links (each with
// probability eps_qkd) leave no clean path from node 1 to node N.
//
// Evaluated by a transfer-matrix pass over node order: the state is which of
// the last c nodes are reachable over clean links, so the cost is O(N 2^c).
// Throws CapExceededError when density > density_cap.
Real epsilon2_exact(const NetworkSegment& seg, Real eps_qkd,
                    int density_cap = kDefaultFrontierDensityCap);

// Same quantity by summing over all 2^E interception subsets.
Real epsilon2_exhaustive(const NetworkSegment& seg, Real eps_qkd,
                         std::uint64_t edge_cap = kDefaultExhaustiveEdgeCap);

// eps_qn = eps1 + eps2. In exact mode both exact components are required and
// cap errors propagate.
SecurityReport epsilon_qn(const NetworkSegment& seg, const SecurityParams& params, Mode mode);

// Root of (N-c-1) ln(N-c-1) = c on [1, N-2] by bisection.
double optimal_c_root(int n_nodes, double tolerance = 1e-9);

// (N-1) ln(N-1) / (ln(N-1) + 2)
double optimal_c_estimate(int n_nodes);

// Integer c in [1, N-3] maximizing hash_reduction_factor; ties go to the
// smaller c.
int optimal_c_integer(int n_nodes);

// c log_{N-2}(N-c-1): how much shorter a hash output may be at density c for
// the same eps1.
double hash_reduction_factor(int n_nodes, int density);

}  // namespace qnet

#pragma once

#include <cstdint>

#include "qnet/bigint.hpp"

namespace qnet {

// Counting of compromised-node placements that sever every route. Positions
// are the N-2 interior nodes only; the endpoints are never attacked.

inline constexpr std::uint64_t kDefaultBruteforceCap = 10'000'000;

struct RunCountResult {
  int n_nodes = 0;
  int compromised = 0;
  int density = 0;
  BigInt count;
};

struct AttackProbability {
  Real exact = 0;
  Real approx = 0;
  bool regime_valid = false;
};

// C(a, b); zero when b < 0 or b > a.
BigInt binomial(long long a, long long b);

// f(N,m,c) = sum_{j=1}^{floor(m/c)} (-1)^{j+1} C(N-m-1, j) C(N-2-cj, m-cj)
BigInt f_inclusion_exclusion(int n_nodes, int compromised, int density);

// f(N,m,c) = C(N-2, m) - [x^m] (1 + x + ... + x^{c-1})^{N-m-1}
BigInt f_generating_function(int n_nodes, int compromised, int density);

// Enumerates every m-subset of the interior positions and counts those holding
// a run of at least c consecutive positions. Throws CapExceededError when
// C(N-2, m) > cap.
BigInt f_bruteforce(int n_nodes, int compromised, int density,
                    std::uint64_t cap = kDefaultBruteforceCap);

RunCountResult count_breaking_configurations(int n_nodes, int compromised, int density);

// Bernoulli mass C(N-2, m) p^m (1-p)^{N-m-2}.
Real p_compromise_m(int n_nodes, int compromised, Real p);

// f(N,m,c) / C(N-2,m)
Real p_success_given_m(int n_nodes, int compromised, int density);

// sum_m p(s|m) p_m, compensated.
Real p_success_exact(int n_nodes, int density, Real p);

// (1/(N-c-1))^{1/c}: the p below which (N-c-1)p^c is a usable estimate.
Real approximation_bound(int n_nodes, int density);

// (N-c-1) p^c together with the exact value and the regime flag.
AttackProbability p_success_approx(int n_nodes, int density, Real p);

}  // namespace qnet

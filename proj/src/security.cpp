#include "qnet/security.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "qnet/combinatorics.hpp"
#include "qnet/detail/summation.hpp"
#include "qnet/errors.hpp"

namespace qnet {
namespace {

void check_probability(Real p, const char* name) {
  if (!(p >= 0 && p <= 1)) {
    throw ValidationError(name, "must lie in [0, 1], got " + std::to_string(static_cast<double>(p)));
  }
}

void require_interior_run(const NetworkSegment& seg) {
  if (seg.density() > seg.n_nodes() - 2) {
    throw ValidationError("density", "must be <= n_nodes-2 = " +
                                         std::to_string(seg.n_nodes() - 2) +
                                         " for node-compromise analysis, got " +
                                         std::to_string(seg.density()));
  }
}

Real pow_int(Real base, long long exponent) {
  return std::pow(base, static_cast<Real>(exponent));
}

}  // namespace

void SecurityParams::validate() const {
  check_probability(eps_auth, "eps_auth");
  check_probability(eps_qkd, "eps_qkd");
}

const char* to_string(Mode mode) { return mode == Mode::exact ? "exact" : "approx"; }

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::exact;
  if (text == "approx") return Mode::approx;
  throw ValidationError("mode", "must be 'exact' or 'approx', got '" + text + "'");
}

Estimate epsilon1_approx(const NetworkSegment& seg, Real eps_auth) {
  require_interior_run(seg);
  check_probability(eps_auth, "eps_auth");
  const int n = seg.n_nodes();
  const int c = seg.density();
  return {static_cast<Real>(n - c - 1) * pow_int(eps_auth, c),
          eps_auth <= approximation_bound(n, c)};
}

Real epsilon1_exact(const NetworkSegment& seg, Real eps_auth) {
  require_interior_run(seg);
  check_probability(eps_auth, "eps_auth");
  return p_success_exact(seg.n_nodes(), seg.density(), eps_auth);
}

Estimate epsilon2_approx(const NetworkSegment& seg, Real eps_qkd) {
  check_probability(eps_qkd, "eps_qkd");
  const int c = seg.density();
  if (c == 1) {
    const auto links = static_cast<Real>(seg.n_nodes() - 1);
    return {links * eps_qkd, eps_qkd <= 1 / links};
  }
  return {2 * pow_int(eps_qkd, c), eps_qkd <= std::pow(Real{0.5}, Real{1} / c)};
}

Real epsilon2_exact(const NetworkSegment& seg, Real eps_qkd, int density_cap) {
  check_probability(eps_qkd, "eps_qkd");
  const int c = seg.density();
  if (c > density_cap) {
    throw CapExceededError("exact link-failure state space (density)", std::to_string(c),
                           static_cast<std::uint64_t>(density_cap));
  }
  // Bit k of a state: node (j - k) is reachable from node 1 over clean links.
  // Every node in the window links to node j+1, and those c links are fresh
  // independent draws, so j+1 is reachable with probability 1 - q^popcount.
  const std::size_t states = std::size_t{1} << c;
  const std::uint32_t window_mask = static_cast<std::uint32_t>(states - 1);
  std::vector<Real> blocked_prob(static_cast<std::size_t>(c) + 1);
  for (int r = 0; r <= c; ++r) blocked_prob[r] = pow_int(eps_qkd, r);

  std::vector<Real> mass(states, 0);
  std::vector<Real> next(states);
  mass[1] = 1;
  for (int j = 1; j < seg.n_nodes(); ++j) {
    std::fill(next.begin(), next.end(), Real{0});
    for (std::uint32_t s = 0; s < states; ++s) {
      if (mass[s] == 0) continue;
      const Real blocked = blocked_prob[std::popcount(s)];
      const std::uint32_t shifted = (s << 1) & window_mask;
      next[shifted | 1u] += mass[s] * (1 - blocked);
      next[shifted] += mass[s] * blocked;
    }
    mass.swap(next);
  }
  detail::CompensatedSum<Real> failure;
  for (std::uint32_t s = 0; s < states; s += 2) failure.add(mass[s]);
  return std::clamp(failure.value(), Real{0}, Real{1});
}

Real epsilon2_exhaustive(const NetworkSegment& seg, Real eps_qkd, std::uint64_t edge_cap) {
  check_probability(eps_qkd, "eps_qkd");
  const std::uint64_t edge_total = seg.edge_count();
  if (edge_total > edge_cap || edge_total > 62) {
    throw CapExceededError("exhaustive link subsets (edges)", std::to_string(edge_total),
                           std::min<std::uint64_t>(edge_cap, 62));
  }
  const auto all_edges = edges(seg);
  const int n = seg.n_nodes();

  // covering[k]: number of k-link interception sets that leave no clean path.
  std::vector<std::uint64_t> covering(edge_total + 1, 0);
  const std::uint64_t subsets = std::uint64_t{1} << edge_total;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t reached = std::uint64_t{1} << 1;  // bit v: node v reachable
    for (std::size_t e = 0; e < all_edges.size(); ++e) {
      if ((mask >> e) & 1u) continue;
      if ((reached >> all_edges[e].from) & 1u) reached |= std::uint64_t{1} << all_edges[e].to;
    }
    if (!((reached >> n) & 1u)) ++covering[std::popcount(mask)];
  }

  detail::CompensatedSum<Real> total;
  for (std::uint64_t k = 0; k <= edge_total; ++k) {
    if (covering[k] == 0) continue;
    total.add(static_cast<Real>(covering[k]) * pow_int(eps_qkd, static_cast<long long>(k)) *
              pow_int(1 - eps_qkd, static_cast<long long>(edge_total - k)));
  }
  return std::clamp(total.value(), Real{0}, Real{1});
}

SecurityReport epsilon_qn(const NetworkSegment& seg, const SecurityParams& params, Mode mode) {
  params.validate();
  SecurityReport report{.segment = seg, .params = params, .mode = mode};

  const Estimate e1 = epsilon1_approx(seg, params.eps_auth);
  const Estimate e2 = epsilon2_approx(seg, params.eps_qkd);
  report.eps1_approx = e1.value;
  report.eps2_approx = e2.value;
  report.eps1_regime_valid = e1.regime_valid;
  report.eps2_regime_valid = e2.regime_valid;

  if (mode == Mode::exact) {
    report.eps1_exact = epsilon1_exact(seg, params.eps_auth);
    report.eps2_exact = epsilon2_exact(seg, params.eps_qkd);
  } else {
    try {
      report.eps1_exact = epsilon1_exact(seg, params.eps_auth);
      report.eps2_exact = epsilon2_exact(seg, params.eps_qkd);
    } catch (const CapExceededError&) {
      report.eps2_exact.reset();
    }
  }

  const Real eps1 = mode == Mode::exact ? *report.eps1_exact : report.eps1_approx;
  const Real eps2 = mode == Mode::exact ? *report.eps2_exact : report.eps2_approx;
  report.eps_qn_unclamped = eps1 + eps2;

  auto clamp = [&report](Real& value) {
    if (value > 1) {
      value = 1;
      report.saturated = true;
    }
  };
  clamp(report.eps1_approx);
  clamp(report.eps2_approx);
  report.eps_qn = report.eps_qn_unclamped;
  clamp(report.eps_qn);
  return report;
}

namespace {

double optimal_c_residual(int n, double c) {
  const double rest = n - c - 1;
  return rest * std::log(rest) - c;
}

}  // namespace

double optimal_c_root(int n, double tolerance) {
  if (n < 4) throw ValidationError("n_nodes", "must be >= 4, got " + std::to_string(n));
  double lo = 1;
  double hi = n - 2;
  const double g_lo = optimal_c_residual(n, lo);
  const double g_hi = optimal_c_residual(n, hi);
  if (g_lo == 0) return lo;
  if (g_hi == 0) return hi;
  if ((g_lo > 0) == (g_hi > 0)) {
    throw NoRootError("(N-c-1)ln(N-c-1) - c has no sign change on [1, " + std::to_string(n - 2) +
                      "] for N = " + std::to_string(n));
  }
  // The residual decreases in c.
  for (int iter = 0; iter < 200 && hi - lo > tolerance; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g = optimal_c_residual(n, mid);
    if (g == 0) return mid;
    (g > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double optimal_c_estimate(int n) {
  if (n < 4) throw ValidationError("n_nodes", "must be >= 4, got " + std::to_string(n));
  const double l = std::log(n - 1.0);
  return (n - 1.0) * l / (l + 2);
}

double hash_reduction_factor(int n, int c) {
  if (n < 5) throw ValidationError("n_nodes", "must be >= 5, got " + std::to_string(n));
  if (c < 1 || c >= n - 2) {
    throw ValidationError("density", "must lie in [1, n_nodes-3] = [1, " + std::to_string(n - 3) +
                                         "], got " + std::to_string(c));
  }
  return c * std::log(n - c - 1.0) / std::log(n - 2.0);
}

int optimal_c_integer(int n) {
  if (n < 5) throw ValidationError("n_nodes", "must be >= 5, got " + std::to_string(n));
  int best = 1;
  double best_factor = hash_reduction_factor(n, 1);
  for (int c = 2; c <= n - 3; ++c) {
    const double factor = hash_reduction_factor(n, c);
    if (factor > best_factor) {
      best = c;
      best_factor = factor;
    }
  }
  return best;
}

}  // namespace qnet

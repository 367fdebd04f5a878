#include "qnet/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qnet/detail/summation.hpp"
#include "qnet/errors.hpp"

namespace qnet {
namespace {

void check_counting_args(int n, int m, int c) {
  if (n < 3) throw ValidationError("n_nodes", "must be >= 3, got " + std::to_string(n));
  if (c < 1 || c > n - 2) {
    throw ValidationError("density", "must lie in [1, n_nodes-2] = [1, " + std::to_string(n - 2) +
                                         "], got " + std::to_string(c));
  }
  if (m < 0 || m > n - 2) {
    throw ValidationError("compromised", "must lie in [0, n_nodes-2] = [0, " +
                                             std::to_string(n - 2) + "], got " +
                                             std::to_string(m));
  }
}

void check_probability(Real p, const char* name) {
  if (!(p >= 0 && p <= 1)) {
    throw ValidationError(name, "must lie in [0, 1], got " + std::to_string(static_cast<double>(p)));
  }
}

Real pow_int(Real base, int exponent) { return std::pow(base, static_cast<Real>(exponent)); }

}  // namespace

BigInt binomial(long long a, long long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt result = 1;
  for (long long i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;
  }
  return result;
}

BigInt f_inclusion_exclusion(int n, int m, int c) {
  check_counting_args(n, m, c);
  BigInt total = 0;
  for (int j = 1; j <= m / c; ++j) {
    const BigInt term = binomial(n - m - 1, j) * binomial(n - 2 - c * j, m - c * j);
    if (j % 2 == 1) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigInt f_generating_function(int n, int m, int c) {
  check_counting_args(n, m, c);
  // Raise (1 + x + ... + x^{c-1}) to the power N-m-1, keeping degrees <= m.
  // Multiplying by that factor is a width-c window sum over the coefficients.
  const int power = n - m - 1;
  const auto degree = static_cast<std::size_t>(m);
  std::vector<BigInt> coeffs(degree + 1, 0);
  coeffs[0] = 1;
  std::vector<BigInt> next(degree + 1);
  for (int step = 0; step < power; ++step) {
    BigInt window = 0;
    for (std::size_t d = 0; d <= degree; ++d) {
      window += coeffs[d];
      if (d >= static_cast<std::size_t>(c)) window -= coeffs[d - c];
      next[d] = window;
    }
    coeffs.swap(next);
  }
  return binomial(n - 2, m) - coeffs[degree];
}

BigInt f_bruteforce(int n, int m, int c, std::uint64_t cap) {
  check_counting_args(n, m, c);
  const BigInt subsets = binomial(n - 2, m);
  if (subsets > cap) throw CapExceededError("brute-force subsets", to_decimal(subsets), cap);

  const int slots = n - 2;
  // positions[k] is the k-th chosen interior slot (0-based), ascending.
  std::vector<int> positions(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) positions[k] = k;

  BigInt count = 0;
  while (true) {
    int run = 0;
    bool hit = false;
    for (int k = 0; k < m && !hit; ++k) {
      run = (k > 0 && positions[k] == positions[k - 1] + 1) ? run + 1 : 1;
      hit = run >= c;
    }
    if (hit) ++count;

    int k = m - 1;
    while (k >= 0 && positions[k] == slots - m + k) --k;
    if (k < 0) break;
    ++positions[k];
    for (int j = k + 1; j < m; ++j) positions[j] = positions[j - 1] + 1;
  }
  return count;
}

RunCountResult count_breaking_configurations(int n, int m, int c) {
  return {n, m, c, f_inclusion_exclusion(n, m, c)};
}

Real p_compromise_m(int n, int m, Real p) {
  if (n < 3) throw ValidationError("n_nodes", "must be >= 3, got " + std::to_string(n));
  if (m < 0 || m > n - 2) {
    throw ValidationError("compromised", "must lie in [0, n_nodes-2], got " + std::to_string(m));
  }
  check_probability(p, "p");
  return binomial(n - 2, m).convert_to<Real>() * pow_int(p, m) * pow_int(1 - p, n - m - 2);
}

Real p_success_given_m(int n, int m, int c) {
  return ratio_to_real(f_inclusion_exclusion(n, m, c), binomial(n - 2, m));
}

Real p_success_exact(int n, int c, Real p) {
  check_counting_args(n, 0, c);
  check_probability(p, "p");
  // p(s|m) p_m = f(N,m,c) p^m (1-p)^{N-2-m}; f vanishes below m = c.
  detail::CompensatedSum<Real> sum;
  for (int m = c; m <= n - 2; ++m) {
    const Real weight = pow_int(p, m) * pow_int(1 - p, n - 2 - m);
    if (weight == 0) continue;
    sum.add(f_inclusion_exclusion(n, m, c).convert_to<Real>() * weight);
  }
  return std::clamp(sum.value(), Real{0}, Real{1});
}

Real approximation_bound(int n, int c) {
  check_counting_args(n, 0, c);
  return std::pow(Real{1} / static_cast<Real>(n - c - 1), Real{1} / static_cast<Real>(c));
}

AttackProbability p_success_approx(int n, int c, Real p) {
  check_counting_args(n, 0, c);
  check_probability(p, "p");
  AttackProbability out;
  out.approx = static_cast<Real>(n - c - 1) * pow_int(p, c);
  out.exact = p_success_exact(n, c, p);
  out.regime_valid = p <= approximation_bound(n, c);
  return out;
}

}  // namespace qnet

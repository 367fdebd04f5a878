#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qnet/combinatorics.hpp"
#include "qnet/errors.hpp"
#include "qnet/security.hpp"
#include "qnet/serialization.hpp"

using namespace qnet;

namespace {

// Exhaustive sums over all link-interception subsets in exact rational
// arithmetic (2^9 subsets for seg(6,2), 2^9 for seg(5,3)).
constexpr long double kEps2_6_2_q1e3 = 2.0059899940149949e-06L;
constexpr long double kEps2_6_2_q02 = 0.110971392L;
constexpr long double kEps2_5_3_q01 = 0.0038781190000000002L;
constexpr long double kEps1_20_3_q1e4 = 1.5998499999922015e-11L;

bool close(long double a, long double b, long double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("epsilon1_approx") {
  CHECK(epsilon1_approx(make_segment(20, 3), 1e-3L).value == doctest::Approx(16e-9).epsilon(1e-14));
  CHECK(epsilon1_approx(make_segment(20, 3), 0).value == 0);
  CHECK(epsilon1_approx(make_segment(5, 1), 0.01L).value == doctest::Approx(0.03).epsilon(1e-14));
  CHECK(epsilon1_approx(make_segment(20, 3), 0.39L).regime_valid);
  CHECK_FALSE(epsilon1_approx(make_segment(20, 3), 0.4L).regime_valid);
  CHECK_THROWS_AS(epsilon1_approx(make_segment(6, 5), 0.1L), ValidationError);
  CHECK_THROWS_AS(epsilon1_approx(make_segment(6, 2), 1.1L), ValidationError);
}

TEST_CASE("epsilon1_exact") {
  const auto seg = make_segment(20, 3);
  const Real exact = epsilon1_exact(seg, 1e-4L);
  CHECK(close(exact, kEps1_20_3_q1e4, 1e-12L));
  const Real ratio = epsilon1_approx(seg, 1e-4L).value / exact;
  CHECK(ratio >= 1);
  CHECK(ratio <= 2);
  CHECK(epsilon1_exact(seg, 1) == 1);
  CHECK(epsilon1_exact(seg, 0) == 0);
  CHECK_THROWS_AS(epsilon1_exact(make_segment(6, 5), 0.1L), ValidationError);
}

TEST_CASE("exact/approx ratio stays in [0.5, 1.5] at a tenth of the regime bound") {
  for (int n = 3; n <= 25; ++n) {
    for (int c = 1; c <= std::min(5, n - 2); ++c) {
      const auto seg = make_segment(n, c);
      const Real top = approximation_bound(n, c) / 10;
      for (Real eps = top; eps > 1e-7L; eps /= 4) {
        const Real ratio = epsilon1_exact(seg, eps) / epsilon1_approx(seg, eps).value;
        CHECK(ratio >= 0.5);
        CHECK(ratio <= 1.5);
      }
    }
  }
}

TEST_CASE("epsilon2_approx") {
  CHECK(epsilon2_approx(make_segment(6, 2), 1e-3L).value == doctest::Approx(2e-6).epsilon(1e-14));
  CHECK(epsilon2_approx(make_segment(6, 1), 1e-3L).value == doctest::Approx(5e-3).epsilon(1e-14));
  CHECK(epsilon2_approx(make_segment(6, 2), 0).value == 0);
  CHECK(epsilon2_approx(make_segment(6, 1), 0).value == 0);
  CHECK(epsilon2_approx(make_segment(9, 3), 0.79L).regime_valid);
  CHECK_FALSE(epsilon2_approx(make_segment(9, 3), 0.8L).regime_valid);
}

TEST_CASE("epsilon2_exact spot values") {
  for (const long double q : {0.0L, 0.05L, 0.5L, 0.93L, 1.0L}) {
    CHECK(close(epsilon2_exact(make_segment(3, 1), q), 1 - (1 - q) * (1 - q), 1e-15L));
  }
  const Real small = epsilon2_exact(make_segment(6, 2), 1e-3L);
  CHECK(close(small, kEps2_6_2_q1e3, 1e-13L));
  CHECK(small >= 2e-6L * (1 - 1e-3L));
  CHECK(close(epsilon2_exact(make_segment(6, 2), 0.2L), kEps2_6_2_q02, 1e-14L));
  CHECK(close(epsilon2_exact(make_segment(5, 3), 0.1L), kEps2_5_3_q01, 1e-14L));
  CHECK(epsilon2_exact(make_segment(6, 2), 1) == 1);
  CHECK(epsilon2_exact(make_segment(6, 2), 0) == 0);
}

TEST_CASE("transfer-matrix evaluation agrees with exhaustive subsets") {
  for (int n = 3; n <= 12; ++n) {
    for (int c = 1; c <= n - 1; ++c) {
      const auto seg = make_segment(n, c);
      if (seg.edge_count() > 18) continue;
      for (const long double q : {1e-4L, 0.01L, 0.2L, 0.5L, 0.8L}) {
        const Real dp = epsilon2_exact(seg, q);
        const Real brute = epsilon2_exhaustive(seg, q);
        CHECK(close(dp, brute, 1e-13L));
      }
    }
  }
}

TEST_CASE("epsilon2_exact bounds and special cases") {
  for (int n = 3; n <= 14; ++n) {
    for (const long double q : {1e-3L, 0.1L, 0.4L}) {
      const Real serial = 1 - std::pow(1 - q, static_cast<long double>(n - 1));
      CHECK(close(epsilon2_exact(make_segment(n, 1), q), serial, 1e-14L));
    }
    for (int c = 2; c <= std::min(6, n - 1); ++c) {
      const auto seg = make_segment(n, c);
      const auto others = static_cast<long double>(seg.edge_count() - c);
      for (const long double q : {1e-3L, 0.05L, 0.3L}) {
        const Real two_cuts = 2 * std::pow(q, static_cast<long double>(c)) * std::pow(1 - q, others);
        CHECK(epsilon2_exact(seg, q) >= two_cuts * (1 - 1e-15L));
      }
    }
  }
}

TEST_CASE("exact evaluation caps") {
  CHECK_THROWS_AS(epsilon2_exact(make_segment(30, 21), 0.1L), CapExceededError);
  CHECK_NOTHROW(epsilon2_exact(make_segment(30, 21), 0.1L, 21));
  CHECK_THROWS_AS(epsilon2_exhaustive(make_segment(20, 3), 0.1L), CapExceededError);
  CHECK_THROWS_AS(epsilon2_exact(make_segment(6, 2), -0.5L), ValidationError);
}

TEST_CASE("epsilon_qn composition") {
  const auto seg20 = make_segment(20, 3);
  const auto approx = epsilon_qn(seg20, {1e-3L, 1e-3L}, Mode::approx);
  CHECK(approx.eps_qn == doctest::Approx(1.8e-8).epsilon(1e-12));
  CHECK(approx.eps_qn == approx.eps1_approx + approx.eps2_approx);
  CHECK_FALSE(approx.saturated);
  REQUIRE(approx.eps1_exact.has_value());
  REQUIRE(approx.eps2_exact.has_value());

  const auto zero = epsilon_qn(seg20, {0, 0}, Mode::exact);
  CHECK(zero.eps_qn == 0);

  const auto seg6 = make_segment(6, 2);
  const auto exact = epsilon_qn(seg6, {0.05L, 0.02L}, Mode::exact);
  CHECK(exact.eps_qn == epsilon1_exact(seg6, 0.05L) + epsilon2_exact(seg6, 0.02L));
  CHECK(exact.eps_qn_unclamped == *exact.eps1_exact + *exact.eps2_exact);

  for (int n = 4; n <= 12; ++n) {
    for (int c = 1; c <= n - 2; ++c) {
      for (const Mode mode : {Mode::exact, Mode::approx}) {
        const auto r = epsilon_qn(make_segment(n, c), {0.01L, 0.02L}, mode);
        const Real e1 = mode == Mode::exact ? *r.eps1_exact : r.eps1_approx;
        const Real e2 = mode == Mode::exact ? *r.eps2_exact : r.eps2_approx;
        if (!r.saturated) CHECK(r.eps_qn == e1 + e2);
      }
    }
  }
}

TEST_CASE("epsilon_qn saturates instead of failing") {
  const auto r = epsilon_qn(make_segment(20, 1), {0.5L, 0.5L}, Mode::approx);
  CHECK(r.saturated);
  CHECK(r.eps_qn == 1);
  CHECK(r.eps_qn_unclamped > 1);
  CHECK(r.eps1_approx <= 1);

  const auto e = epsilon_qn(make_segment(20, 2), {0.9L, 0.9L}, Mode::exact);
  CHECK(e.saturated);
  CHECK(e.eps_qn == 1);
}

TEST_CASE("epsilon_qn validation and large density") {
  CHECK_THROWS_AS(epsilon_qn(make_segment(6, 2), {1.5L, 0}, Mode::approx), ValidationError);
  CHECK_THROWS_AS(epsilon_qn(make_segment(6, 5), {0.1L, 0.1L}, Mode::approx), ValidationError);
  const auto seg = make_segment(40, 25);
  CHECK_THROWS_AS(epsilon_qn(seg, {0.1L, 0.1L}, Mode::exact), CapExceededError);
  const auto r = epsilon_qn(seg, {0.1L, 0.1L}, Mode::approx);
  CHECK_FALSE(r.eps2_exact.has_value());
  CHECK(to_json(r)["eps2_exact"].is_null());
}

TEST_CASE("optimal_c_root") {
  const double root = optimal_c_root(20);
  CHECK(root > 12);
  CHECK(root < 13);
  CHECK(std::abs((20 - root - 1) * std::log(20 - root - 1) - root) < 1e-8);

  const double four = optimal_c_root(4);
  CHECK(four >= 1);
  CHECK(four <= 2);
  CHECK_THROWS_AS(optimal_c_root(3), ValidationError);

  for (int n = 4; n <= 300; ++n) {
    const double c = optimal_c_root(n);
    CHECK(std::abs((n - c - 1) * std::log(n - c - 1) - c) < 1e-8);
  }
}

TEST_CASE("hash reduction factor and integer optimum") {
  for (int n = 5; n <= 60; ++n) {
    CHECK(hash_reduction_factor(n, 1) == doctest::Approx(1.0).epsilon(1e-15));
    for (int c = 1; c <= n - 3; ++c) CHECK(hash_reduction_factor(n, c) > 0);

    int best = 1;
    for (int c = 2; c <= n - 3; ++c) {
      if (c * std::log(n - c - 1.0) > best * std::log(n - best - 1.0)) best = c;
    }
    const int chosen = optimal_c_integer(n);
    CHECK(chosen == best);
    CHECK(chosen >= 1);
    CHECK(chosen < n - 2);
  }
  CHECK(hash_reduction_factor(20, 3) == doctest::Approx(2.8777495988175774).epsilon(1e-13));
  CHECK(optimal_c_integer(20) == 12);
  CHECK_THROWS_AS(hash_reduction_factor(20, 18), ValidationError);
  CHECK_THROWS_AS(hash_reduction_factor(4, 1), ValidationError);
  CHECK_THROWS_AS(optimal_c_integer(4), ValidationError);
}

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qnet::cli {

enum class Spacing { linear, log };

// One swept parameter over a grid; every other parameter held fixed.
struct SweepSpec {
  std::string parameter = "p";  // p | eps_auth | eps_qkd | c | n
  double start = 1e-3;
  double stop = 1;
  int points = 31;
  Spacing spacing = Spacing::log;

  int n = 20;
  int c = 3;
  double p = 1e-3;
  double eps_auth = 1e-3;
  double eps_qkd = 1e-3;

  // Throws ValidationError naming the offending field.
  void validate() const;
  std::vector<double> grid() const;
};

Spacing parse_spacing(const std::string& text);

// Header plus one row per grid point:
//   p        -> p,p_s_exact,p_s_approx,regime_valid
//   eps_auth -> eps_auth,eps1_exact,eps1_approx,regime_valid
//   eps_qkd  -> eps_qkd,eps2_exact,eps2_approx,regime_valid
//   c        -> c,p_s_exact,p_s_approx,regime_valid   (at fixed p)
//   n        -> n,p_s_exact,p_s_approx,regime_valid   (at fixed p)
void write_sweep_csv(const SweepSpec& spec, std::ostream& out);

}  // namespace qnet::cli

#include "sweep.hpp"

#include <cmath>

#include "qnet/combinatorics.hpp"
#include "qnet/errors.hpp"
#include "qnet/security.hpp"
#include "qnet/serialization.hpp"

namespace qnet::cli {
namespace {

bool is_integer_parameter(const std::string& name) { return name == "c" || name == "n"; }

std::vector<double> raw_grid(const SweepSpec& spec) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    const double t = static_cast<double>(i) / (spec.points - 1);
    if (spec.spacing == Spacing::log) {
      const double lo = std::log10(spec.start);
      const double hi = std::log10(spec.stop);
      out.push_back(i == spec.points - 1 ? spec.stop : std::pow(10.0, lo + t * (hi - lo)));
    } else {
      out.push_back(i == spec.points - 1 ? spec.stop : spec.start + t * (spec.stop - spec.start));
    }
  }
  if (is_integer_parameter(spec.parameter)) {
    for (auto& x : out) x = std::round(x);
  }
  return out;
}

void check_unit(double value, const char* name) {
  if (!(value >= 0 && value <= 1)) {
    throw ValidationError(name, "must lie in [0, 1], got " + format_probability(value));
  }
}

void write_row(std::ostream& out, const std::string& x, Real exact, Real approx, bool valid) {
  out << x << ',' << format_probability(exact) << ',' << format_probability(approx) << ','
      << (valid ? "true" : "false") << '\n';
}

}  // namespace

Spacing parse_spacing(const std::string& text) {
  if (text == "log") return Spacing::log;
  if (text == "linear") return Spacing::linear;
  throw ValidationError("spacing", "must be 'log' or 'linear', got '" + text + "'");
}

void SweepSpec::validate() const {
  if (parameter != "p" && parameter != "eps_auth" && parameter != "eps_qkd" && parameter != "c" &&
      parameter != "n") {
    throw ValidationError("param", "must be one of p, eps_auth, eps_qkd, c, n; got '" + parameter + "'");
  }
  if (!(start < stop)) throw ValidationError("start", "must be < stop");
  if (points < 2) throw ValidationError("points", "must be >= 2");
  if (spacing == Spacing::log && !(start > 0)) {
    throw ValidationError("start", "must be > 0 for log spacing");
  }

  const auto grid_values = raw_grid(*this);
  if (is_integer_parameter(parameter)) {
    for (std::size_t i = 1; i < grid_values.size(); ++i) {
      if (grid_values[i] == grid_values[i - 1]) {
        throw ValidationError("points", "integer grid repeats " +
                                            std::to_string(static_cast<long long>(grid_values[i])));
      }
    }
  }
  for (const double x : grid_values) {
    if (parameter == "p" || parameter == "eps_auth" || parameter == "eps_qkd") {
      check_unit(x, parameter.c_str());
    }
    const int nn = parameter == "n" ? static_cast<int>(x) : n;
    const int cc = parameter == "c" ? static_cast<int>(x) : c;
    // Every row evaluates a node-compromise quantity except eps_qkd sweeps.
    if (parameter == "eps_qkd") {
      make_segment(nn, cc);
    } else {
      if (nn < 3) throw ValidationError("n", "must be >= 3 at every grid point");
      if (cc < 1 || cc > nn - 2) {
        throw ValidationError("c", "must lie in [1, n-2] at every grid point, got c=" +
                                       std::to_string(cc) + " with n=" + std::to_string(nn));
      }
    }
  }
  if (parameter == "c" || parameter == "n") check_unit(p, "p");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  return raw_grid(*this);
}

void write_sweep_csv(const SweepSpec& spec, std::ostream& out) {
  const auto values = spec.grid();
  if (spec.parameter == "p") {
    out << "p,p_s_exact,p_s_approx,regime_valid\n";
  } else if (spec.parameter == "eps_auth") {
    out << "eps_auth,eps1_exact,eps1_approx,regime_valid\n";
  } else if (spec.parameter == "eps_qkd") {
    out << "eps_qkd,eps2_exact,eps2_approx,regime_valid\n";
  } else {
    out << spec.parameter << ",p_s_exact,p_s_approx,regime_valid\n";
  }

  for (const double x : values) {
    if (spec.parameter == "eps_qkd") {
      const auto seg = make_segment(spec.n, spec.c);
      const auto approx = epsilon2_approx(seg, x);
      write_row(out, format_probability(x), epsilon2_exact(seg, x), approx.value,
                approx.regime_valid);
    } else if (spec.parameter == "c" || spec.parameter == "n") {
      const int nn = spec.parameter == "n" ? static_cast<int>(x) : spec.n;
      const int cc = spec.parameter == "c" ? static_cast<int>(x) : spec.c;
      const auto r = p_success_approx(nn, cc, spec.p);
      write_row(out, std::to_string(static_cast<long long>(x)), r.exact, r.approx, r.regime_valid);
    } else {
      const auto r = p_success_approx(spec.n, spec.c, x);
      write_row(out, format_probability(x), r.exact, r.approx, r.regime_valid);
    }
  }
}

}  // namespace qnet::cli

// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [--criterion K] [--qnet PATH]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"
#include "qnet/combinatorics.hpp"
#include "qnet/errors.hpp"
#include "qnet/protocol.hpp"
#include "qnet/routes.hpp"
#include "qnet/security.hpp"
#include "qnet/simulator.hpp"
#include "sweep.hpp"

using namespace qnet;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (detail.tellp() > 0) detail << "; ";
    pass = false;
    detail << why;
  }

  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // <= 0: untimed
  std::function<void(Outcome&)> body;
};

std::string qnet_binary;

std::string fmt(double v, const char* spec = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void route_count(Outcome& o) {
  const auto seg = make_segment(6, 2);
  const BigInt count = cannacci_count(6, 2);
  const auto routes = enumerate_routes(seg);
  const std::set<std::vector<int>> distinct = [&] {
    std::set<std::vector<int>> s;
    for (const auto& r : routes.routes) s.insert(r.nodes);
    return s;
  }();
  o.detail << "count=" << count << " enumerated=" << routes.routes.size() << " distinct=" << distinct.size();
  if (count != 8) o.fail("cannacci_count(6,2) = " + count.str());
  if (routes.routes.size() != 8 || distinct.size() != 8) o.fail("enumeration did not give 8 distinct routes");
}

void triple_agreement(Outcome& o) {
  std::size_t checked = 0;
  for (int n = 4; n <= 16; ++n) {
    for (int c = 1; c <= n - 2; ++c) {
      for (int m = 0; m <= n - 2; ++m) {
        const BigInt ie = f_inclusion_exclusion(n, m, c);
        const BigInt gf = f_generating_function(n, m, c);
        const BigInt bf = f_bruteforce(n, m, c);
        ++checked;
        if (ie != gf || gf != bf) {
          o.fail("N=" + std::to_string(n) + " c=" + std::to_string(c) + " m=" + std::to_string(m) + ": " +
                 ie.str() + "/" + gf.str() + "/" + bf.str());
        }
      }
    }
  }
  if (o.pass) o.detail << checked << " (N,c,m) triples agree exactly";
}

void desk_curve(Outcome& o) {
  cli::SweepSpec spec;  // p over [1e-3, 1], 31 log-spaced points
  spec.n = 20;
  const auto grid = spec.grid();
  for (const int c : {3, 5}) {
    const Real window = approximation_bound(spec.n, c) / 4;
    double worst = 0;
    double worst_p = 0;
    Real high_min = 1;
    for (const double p : grid) {
      const Real exact = p_success_exact(spec.n, c, p);
      const Real approx = p_success_approx(spec.n, c, p).approx;
      if (p <= window) {
        const double rel = static_cast<double>(std::abs(exact - approx) / exact);
        if (rel > worst) {
          worst = rel;
          worst_p = p;
        }
      }
      if (p >= 0.9) high_min = std::min(high_min, exact);
    }
    high_min = std::min(high_min, p_success_exact(spec.n, c, 0.9L));
    std::ostringstream line;
    line << "c=" << c << ": max rel err " << fmt(100 * worst, "%.2f") << "% at p=" << fmt(worst_p)
         << " (window p<=" << fmt(static_cast<double>(window)) << "), min p_s(p>=0.9)="
         << fmt(static_cast<double>(high_min), "%.6f");
    if (worst > 0.10 || high_min < 0.99) {
      o.fail(line.str() + (worst > 0.10 ? " [rel err > 10%]" : "") + (high_min < 0.99 ? " [p_s < 0.99]" : ""));
    } else {
      o.note(line.str());
    }
  }
}

void predicate_equivalence(Outcome& o) {
  std::size_t subsets = 0;
  for (int n = 3; n <= 12; ++n) {
    for (int c = 1; c <= std::min(4, n - 1); ++c) {
      const auto seg = make_segment(n, c);
      const int interior = n - 2;
      for (std::uint32_t mask = 0; mask < (1u << interior); ++mask) {
        std::set<int> nodes;
        for (int k = 0; k < interior; ++k) {
          if ((mask >> k) & 1u) nodes.insert(k + 2);
        }
        ++subsets;
        try {
          const bool run = node_attack_succeeds(seg, nodes);
          if (run != node_attack_succeeds_by_path(seg, nodes)) {
            o.fail("disagreement at N=" + std::to_string(n) + " c=" + std::to_string(c));
          }
        } catch (const InconsistencyError& e) {
          o.fail(e.what());
        }
      }
    }
  }
  if (o.pass) o.detail << subsets << " subsets, zero exceptions";
}

void minimal_cut(Outcome& o) {
  std::size_t interior_cuts = 0;
  std::ostringstream per_segment;
  for (int n = 3; n <= 9; ++n) {
    for (int c = 1; c <= std::min(3, n - 1); ++c) {
      const auto seg = make_segment(n, c);
      const auto all = edges(seg);
      const std::uint32_t subsets = 1u << all.size();
      std::size_t size_c_cuts = 0;
      for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        const int size = std::popcount(mask);
        if (size > c) continue;
        std::set<Link> cut;
        for (std::size_t e = 0; e < all.size(); ++e) {
          if ((mask >> e) & 1u) cut.insert(all[e]);
        }
        const bool disconnects = link_attack_succeeds(seg, cut);
        if (size < c && disconnects) {
          o.fail("size " + std::to_string(size) + " cut at N=" + std::to_string(n) + " c=" + std::to_string(c));
        }
        if (size == c && disconnects) ++size_c_cuts;
      }
      std::set<Link> first;
      std::set<Link> last;
      for (const int to : out_neighbors(seg, 1)) first.insert({1, to});
      for (const int from : in_neighbors(seg, n)) last.insert({from, n});
      if (!link_attack_succeeds(seg, first) || !link_attack_succeeds(seg, last)) {
        o.fail("endpoint cut does not disconnect at N=" + std::to_string(n) + " c=" + std::to_string(c));
      }
      const std::size_t endpoint_cuts = first == last ? 1 : 2;
      const std::size_t extra = size_c_cuts - endpoint_cuts;
      interior_cuts += extra;
      if (c > 1 && extra > 0) per_segment << " (" << n << "," << c << "):" << extra;
    }
  }
  if (o.pass) {
    o.detail << "no cut below size c; endpoint cuts disconnect; other size-c cuts " << interior_cuts
             << " in total, for c>1 (N,c):count" << (per_segment.str().empty() ? " none" : per_segment.str());
  }
}

void monte_carlo(Outcome& o) {
  const std::uint64_t trials = 100000;
  const TrialOptions options{.threads = 4, .batch_size = 0};

  const auto seg20 = make_segment(20, 3);
  const auto auth = run_trials(seg20, 0.3, 0.0, trials, 20240601, options);
  const double exact_auth = static_cast<double>(p_success_exact(20, 3, 0.3));
  const double sigma_auth = std::sqrt(exact_auth * (1 - exact_auth) / trials);
  const double z_auth = (auth.estimate_auth - exact_auth) / sigma_auth;

  const auto seg6 = make_segment(6, 2);
  const auto link = run_trials(seg6, 0.0, 0.2, trials, 20240602, options);
  const double exact_link = static_cast<double>(epsilon2_exact(seg6, 0.2L));
  const double sigma_link = std::sqrt(exact_link * (1 - exact_link) / trials);
  const double z_link = (link.estimate_link - exact_link) / sigma_link;

  o.detail << "auth " << fmt(auth.estimate_auth, "%.5f") << " vs " << fmt(exact_auth, "%.5f") << " (z="
           << fmt(z_auth, "%.2f") << "); link " << fmt(link.estimate_link, "%.5f") << " vs "
           << fmt(exact_link, "%.5f") << " (z=" << fmt(z_link, "%.2f") << ")";
  if (std::abs(z_auth) > 4) o.fail("node estimate outside 4 sigma: z=" + fmt(z_auth));
  if (std::abs(z_link) > 4) o.fail("link estimate outside 4 sigma: z=" + fmt(z_link));
}

void protocol_round_trip(Outcome& o) {
  std::size_t sessions = 0;
  std::size_t single_node_views = 0;
  for (int n = 3; n <= 9; ++n) {
    for (int c = 1; c <= std::min(3, n - 1); ++c) {
      const auto seg = make_segment(n, c);
      const auto scheme = build_routing_scheme(enumerate_routes(seg));
      for (const std::size_t key_len : {1u, 8u, 128u}) {
        const auto session = run_session(seg, scheme, key_len, static_cast<std::uint64_t>(n * 1000 + c * 10) + key_len);
        BitString expected(key_len);
        for (const auto& k : session.keys.route_keys) expected ^= k;
        std::map<Link, BitString> endpoint;
        for (const int from : in_neighbors(seg, n)) {
          endpoint.emplace(Link{from, n}, session.keys.link_keys.at({from, n}));
        }
        ++sessions;
        if (reconstruct_at_endpoint(seg, scheme, session.transcript, endpoint) != expected ||
            session.final_key != expected) {
          o.fail("reconstruction mismatch at N=" + std::to_string(n) + " c=" + std::to_string(c));
        }
        if (c < 2) continue;
        for (int v = 2; v < n; ++v) {
          ++single_node_views;
          const auto view = adversary_view(seg, scheme, session.transcript, {{v}, {}});
          if (view.knows_final_key() || adversary_final_key(session.transcript, session.keys, view)) {
            o.fail("node " + std::to_string(v) + " alone learns the key at N=" + std::to_string(n) +
                   " c=" + std::to_string(c));
          }
        }
      }
    }
  }
  if (o.pass) {
    o.detail << sessions << " sessions reconstructed; " << single_node_views
             << " single-node views learn nothing";
  }
}

void scaling_spot_values(Outcome& o) {
  const auto seg = make_segment(20, 3);
  const auto r = epsilon_qn(seg, {1e-3L, 1e-3L}, Mode::approx);
  auto near = [](Real got, Real want) { return std::abs(got - want) <= 1e-12L * want; };
  o.detail << "eps1=" << fmt(static_cast<double>(r.eps1_approx)) << " eps2=" << fmt(static_cast<double>(r.eps2_approx))
           << " eps_qn=" << fmt(static_cast<double>(r.eps_qn));
  if (!near(r.eps1_approx, 1.6e-8L)) o.fail("eps1 != 1.6e-8");
  if (!near(r.eps2_approx, 2e-9L)) o.fail("eps2 != 2e-9");
  if (r.eps_qn != r.eps1_approx + r.eps2_approx || !near(r.eps_qn, 1.8e-8L)) o.fail("eps_qn != eps1 + eps2");

  double worst = 1;
  for (Real eps = 1e-6L; eps <= 0.3L; eps *= 1.5L) {
    const auto e1 = epsilon1_approx(seg, eps);
    if (e1.regime_valid) {
      const double ratio = static_cast<double>(epsilon1_exact(seg, eps) / e1.value);
      worst = std::max(worst, std::max(ratio, 1 / ratio));
    }
    const auto e2 = epsilon2_approx(seg, eps);
    if (e2.regime_valid) {
      const double ratio = static_cast<double>(epsilon2_exact(seg, eps) / e2.value);
      worst = std::max(worst, std::max(ratio, 1 / ratio));
    }
  }
  o.detail << "; worst exact/approx factor in regime " << fmt(worst, "%.3f");
  if (worst > 2) o.fail("exact and approximate differ by factor " + fmt(worst));
}

void optimal_c(Outcome& o) {
  const double root = optimal_c_root(20);
  const double residual = std::abs((20 - root - 1) * std::log(20 - root - 1) - root);
  o.detail << "N=20 root=" << fmt(root, "%.9f") << " residual=" << fmt(residual, "%.2e");
  if (!(root > 12 && root < 13)) o.fail("root " + fmt(root) + " outside (12,13)");
  if (!(residual < 1e-8)) o.fail("residual " + fmt(residual));

  int first_bad = 0;
  int bad = 0;
  double worst = 0;
  int worst_n = 0;
  for (int n = 6; n <= 100; ++n) {
    const double gap = std::abs(optimal_c_estimate(n) - optimal_c_root(n));
    if (gap > worst) {
      worst = gap;
      worst_n = n;
    }
    if (gap > 1.5) {
      ++bad;
      if (first_bad == 0) first_bad = n;
    }
  }
  if (bad > 0) {
    o.fail("approximate formula off by more than 1.5 for " + std::to_string(bad) + " N in [6,100], first N=" +
           std::to_string(first_bad) + ", worst " + fmt(worst, "%.2f") + " at N=" + std::to_string(worst_n));
  } else {
    o.detail << "; formula within 1.5 for N in [6,100]";
  }
}

std::string capture(const std::vector<std::string>& args) {
  if (qnet_binary.empty()) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str();
  }
  std::string command = qnet_binary;
  for (const auto& a : args) command += " " + a;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(command.c_str(), "r"), ::pclose);
  if (!pipe) throw std::runtime_error("cannot run " + command);
  std::string out;
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe.get())) > 0;) out.append(buf, got);
  return out;
}

void determinism(Outcome& o) {
  const std::vector<std::vector<std::string>> commands{
      {"simulate", "--n", "20", "--c", "3", "--p-node", "0.3", "--p-link", "0.2", "--trials", "50000", "--seed", "7",
       "--threads", "4"},
      {"demo-protocol", "--n", "6", "--c", "2", "--seed", "7"},
      {"demo-protocol", "--n", "6", "--c", "2", "--seed", "7", "--json"},
  };
  for (const auto& args : commands) {
    const std::string first = capture(args);
    const std::string second = capture(args);
    if (first.empty() || first != second) o.fail(args.front() + " output differs between runs");
  }
  if (o.pass) {
    o.detail << commands.size() << " commands byte-identical across two runs"
             << (qnet_binary.empty() ? " (in process)" : " (separate processes)");
  }
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "route count reproduction", 0.001, route_count},
      {2, "combinatorics triple agreement", 120, triple_agreement},
      {3, "attack probability curve, exact vs approximate", 1, desk_curve},
      {4, "node-attack predicate equivalence", 60, predicate_equivalence},
      {5, "minimal link cut", 60, minimal_cut},
      {6, "Monte Carlo vs exact", 10, monte_carlo},
      {7, "protocol round trip and single-node secrecy", 10, protocol_round_trip},
      {8, "security scaling spot values", 1, scaling_spot_values},
      {9, "optimal-c solver", 1, optimal_c},
      {10, "determinism", 0, determinism},
  };
  return all;
}

bool run_one(const Criterion& c) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
    o.fail("took " + fmt(seconds, "%.3f") + " s, limit " + fmt(c.limit_seconds) + " s");
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << fmt(seconds * 1000, "%.1f")
            << " ms): " << o.detail.str() << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 10));
  app.add_option("--qnet", qnet_binary, "qnet executable for the determinism check");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    if (!run_one(c)) ++failed;
  }
  if (only == 0) std::cout << (criteria().size() - failed) << "/" << criteria().size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

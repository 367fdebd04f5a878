#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>

#include "qnet/combinatorics.hpp"
#include "qnet/errors.hpp"
#include "qnet/protocol.hpp"
#include "qnet/routes.hpp"
#include "qnet/security.hpp"
#include "qnet/serialization.hpp"
#include "qnet/simulator.hpp"
#include "sweep.hpp"

namespace qnet::cli {
namespace {

std::uint64_t route_cap() {
  const char* text = std::getenv(kRouteCapEnv);
  if (text == nullptr || *text == '\0') return kDefaultRouteCap;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text, &end, 10);
  if (*end != '\0' || value == 0) {
    throw ValidationError(kRouteCapEnv, "must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::string hex64(std::uint64_t value) {
  char buffer[19];
  std::snprintf(buffer, sizeof buffer, "0x%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

std::string bundle_text(const std::vector<std::size_t>& ids) {
  std::string out = "(";
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k > 0) out += ' ';
    out += "K" + std::to_string(ids[k]);
  }
  return out + ")";
}

struct AnalyzeArgs {
  int n = 0;
  int c = 0;
  double eps_auth = 0;
  double eps_qkd = 0;
  std::string mode = "approx";
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto seg = make_segment(a.n, a.c);
  const SecurityParams params{a.eps_auth, a.eps_qkd};
  out << to_json(epsilon_qn(seg, params, parse_mode(a.mode))).dump(2) << '\n';
  return kSuccess;
}

struct RoutesArgs {
  int n = 0;
  int c = 0;
  bool count_only = false;
  bool enumerate = false;
  bool scheme = false;
};

int cmd_routes(const RoutesArgs& a, std::ostream& out) {
  const auto seg = make_segment(a.n, a.c);
  Json json{{"segment", to_json(seg)}, {"count", to_decimal(cannacci_count(a.n, a.c))}};
  if (a.enumerate || a.scheme) {
    const auto routes = enumerate_routes(seg, route_cap());
    if (routes.routes.size() != routes.count) {
      throw InconsistencyError("enumerated route count disagrees with the c-annacci count");
    }
    if (a.enumerate) json["routes"] = routes_json(routes)["routes"];
    if (a.scheme) json["scheme"] = to_json(build_routing_scheme(routes));
  }
  out << json.dump(2) << '\n';
  return kSuccess;
}

int cmd_edges(int n, int c, std::ostream& out) {
  out << edges_csv(make_segment(n, c));
  return kSuccess;
}

struct SimulateArgs {
  int n = 0;
  int c = 0;
  double p_node = 0;
  double p_link = 0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t batch_size = 0;
  std::string batches_csv;
  bool verify = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto seg = make_segment(a.n, a.c);
  TrialOptions options{a.threads, a.batch_size};
  if (!a.batches_csv.empty() && options.batch_size == 0) {
    options.batch_size = std::max<std::uint64_t>(1, a.trials / 100);
  }
  const TrialStats stats = run_trials(seg, a.p_node, a.p_link, a.trials, a.seed, options);

  Json json{{"segment", to_json(seg)},
            {"p_node", probability_json(a.p_node)},
            {"p_link", probability_json(a.p_link)}};
  const Json stats_json = to_json(stats);
  for (const auto& [key, value] : stats_json.items()) json[key] = value;

  int code = kSuccess;
  if (a.verify) {
    // 4 standard errors; the exact-value sigma covers estimates stuck at 0 or 1.
    auto agrees = [trials = stats.trials](double estimate, double stderr_, Real exact) {
      const double e = static_cast<double>(exact);
      const double sigma = std::max(stderr_, std::sqrt(e * (1 - e) / static_cast<double>(trials)));
      const double gap = std::abs(estimate - e);
      return sigma > 0 ? gap <= 4 * sigma : gap < 1e-12;
    };
    Json verification = Json::object();
    bool pass = true;
    if (seg.density() <= seg.n_nodes() - 2) {
      const Real exact = p_success_exact(seg.n_nodes(), seg.density(), a.p_node);
      verification["exact_auth"] = probability_json(exact);
      pass = pass && agrees(stats.estimate_auth, stats.stderr_auth, exact);
    } else {
      verification["exact_auth"] = nullptr;
    }
    if (seg.density() <= kDefaultFrontierDensityCap) {
      const Real exact = epsilon2_exact(seg, a.p_link);
      verification["exact_link"] = probability_json(exact);
      pass = pass && agrees(stats.estimate_link, stats.stderr_link, exact);
    } else {
      verification["exact_link"] = nullptr;
    }
    verification["pass"] = pass;
    json["verification"] = std::move(verification);
    if (!pass) code = kInconsistency;
  }

  if (!a.batches_csv.empty()) {
    std::ofstream csv(a.batches_csv, std::ios::binary);
    if (!csv) throw ValidationError("batches-csv", "cannot open '" + a.batches_csv + "'");
    csv << "trials,estimate_auth,estimate_link,stderr_auth,stderr_link\n";
    for (const auto& b : stats.batches) {
      csv << b.trials << ',' << format_probability(b.estimate_auth) << ','
          << format_probability(b.estimate_link) << ',' << format_probability(b.stderr_auth)
          << ',' << format_probability(b.stderr_link) << '\n';
    }
  }
  out << json.dump(2) << '\n';
  return code;
}

int cmd_optimize_c(int n, std::ostream& out) {
  const double root = optimal_c_root(n);
  const int best = optimal_c_integer(n);
  Json factors = Json::array();
  for (int c = 1; c <= n - 3; ++c) {
    factors.push_back(Json{{"c", c}, {"factor", probability_json(hash_reduction_factor(n, c))}});
  }
  const Json json{{"N", n},
                  {"c_root", probability_json(root)},
                  {"c_estimate", probability_json(optimal_c_estimate(n))},
                  {"c_integer", best},
                  {"factor", probability_json(hash_reduction_factor(n, best))},
                  {"factors", std::move(factors)}};
  out << json.dump(2) << '\n';
  return kSuccess;
}

struct DemoArgs {
  int n = 6;
  int c = 2;
  std::size_t key_len = 128;
  std::uint64_t seed = 1;
  bool json = false;
  bool corrupt = false;
};

int cmd_demo_protocol(const DemoArgs& a, std::ostream& out) {
  const auto seg = make_segment(a.n, a.c);
  const auto routes = enumerate_routes(seg, route_cap());
  const auto scheme = build_routing_scheme(routes);
  Session session = run_session(seg, scheme, a.key_len, a.seed);

  if (a.corrupt && !session.transcript.messages.empty()) {
    session.transcript.messages.back().ciphertext.flip(0);
  }

  std::map<Link, BitString> last_keys;
  for (const int from : in_neighbors(seg, seg.n_nodes())) {
    const Link link{from, seg.n_nodes()};
    last_keys.emplace(link, session.keys.link_keys.at(link));
  }
  const BitString recovered = reconstruct_at_endpoint(seg, scheme, session.transcript, last_keys);
  const bool pass = recovered == session.final_key;

  if (a.json) {
    const Json json{{"segment", to_json(seg)},
                    {"routes", to_decimal(routes.count)},
                    {"key_len", a.key_len},
                    {"seed", a.seed},
                    {"rng_algorithm", SplitMix64::kAlgorithm},
                    {"transcript", to_json(session.transcript)},
                    {"final_key", session.final_key.to_hex()},
                    {"reconstructed_key", recovered.to_hex()},
                    {"result", pass ? "PASS" : "FAIL"}};
    out << json.dump(2) << '\n';
  } else {
    out << "key transport session: n=" << a.n << " c=" << a.c << " routes=" << routes.count
        << " key_len=" << a.key_len << " seed=" << a.seed << '\n';
    out << "routes:\n";
    for (std::size_t i = 0; i < routes.routes.size(); ++i) {
      out << "  K" << (i + 1) << ":";
      for (const int v : routes.routes[i].nodes) out << ' ' << v;
      out << '\n';
    }
    out << "messages (" << session.transcript.messages.size() << "):\n";
    for (const Message& m : session.transcript.messages) {
      const std::string link = std::to_string(m.link.from) + "," + std::to_string(m.link.to);
      out << "  " << std::left << std::setw(8) << ("k_" + link) << ' '
          << bundle_text(m.route_ids) << " xor k_" << link << "  digest "
          << hex64(m.ciphertext.digest()) << '\n';
    }
    out << "final key digest      " << hex64(session.final_key.digest()) << '\n';
    out << "reconstructed digest  " << hex64(recovered.digest()) << '\n';
    out << "endpoint reconstruction: " << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kSuccess : kInconsistency;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: invalid " << e.what() << '\n';
    return kValidationError;
  } catch (const NoRootError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << '\n';
    return kCapError;
  } catch (const InconsistencyError& e) {
    err << "error: internal inconsistency: " << e.what() << '\n';
    return kInconsistency;
  } catch (const MalformedTranscriptError& e) {
    err << "error: malformed transcript: " << e.what() << '\n';
    return kInconsistency;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Security analysis of trusted-node QKD network segments", "qnet"};
  app.require_subcommand(1);
  std::function<int()> action;

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "eps1, eps2 and eps_qn as JSON");
  analyze_cmd->add_option("--n", analyze.n, "number of nodes N")->required();
  analyze_cmd->add_option("--c", analyze.c, "connection density c")->required();
  analyze_cmd->add_option("--eps-auth", analyze.eps_auth, "per-node authentication failure")->required();
  analyze_cmd->add_option("--eps-qkd", analyze.eps_qkd, "per-link QKD failure")->required();
  analyze_cmd->add_option("--mode", analyze.mode, "approx | exact");
  analyze_cmd->callback([&] { action = [&] { return cmd_analyze(analyze, out); }; });

  SweepSpec sweep;
  std::string spacing = "auto";
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV sweep of one parameter");
  sweep_cmd->add_option("--param", sweep.parameter, "p | eps_auth | eps_qkd | c | n");
  sweep_cmd->add_option("--start", sweep.start);
  sweep_cmd->add_option("--stop", sweep.stop);
  sweep_cmd->add_option("--points", sweep.points);
  sweep_cmd->add_option("--spacing", spacing, "log | linear (default: log for probabilities, linear for c and n)");
  sweep_cmd->add_option("--n", sweep.n);
  sweep_cmd->add_option("--c", sweep.c);
  sweep_cmd->add_option("--p", sweep.p, "fixed p for c and n sweeps");
  sweep_cmd->add_option("--eps-auth", sweep.eps_auth);
  sweep_cmd->add_option("--eps-qkd", sweep.eps_qkd);
  sweep_cmd->callback([&] {
    action = [&] {
      if (spacing == "auto") {
        spacing = sweep.parameter == "c" || sweep.parameter == "n" ? "linear" : "log";
      }
      sweep.spacing = parse_spacing(spacing);
      write_sweep_csv(sweep, out);
      return kSuccess;
    };
  });

  RoutesArgs routes;
  auto* routes_cmd = app.add_subcommand("routes", "route count, list and routing scheme");
  routes_cmd->add_option("--n", routes.n)->required();
  routes_cmd->add_option("--c", routes.c)->required();
  auto* count_flag = routes_cmd->add_flag("--count-only", routes.count_only);
  auto* enum_flag = routes_cmd->add_flag("--enumerate", routes.enumerate);
  auto* scheme_flag = routes_cmd->add_flag("--scheme", routes.scheme);
  count_flag->excludes(enum_flag)->excludes(scheme_flag);
  routes_cmd->callback([&] { action = [&] { return cmd_routes(routes, out); }; });

  int edge_n = 0;
  int edge_c = 0;
  auto* edges_cmd = app.add_subcommand("edges", "links as CSV rows from,to");
  edges_cmd->add_option("--n", edge_n)->required();
  edges_cmd->add_option("--c", edge_c)->required();
  edges_cmd->callback([&] { action = [&] { return cmd_edges(edge_n, edge_c, out); }; });

  SimulateArgs simulate;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of eps1 and eps2");
  sim_cmd->add_option("--n", simulate.n)->required();
  sim_cmd->add_option("--c", simulate.c)->required();
  sim_cmd->add_option("--p-node", simulate.p_node, "node compromise probability");
  sim_cmd->add_option("--p-link", simulate.p_link, "link interception probability");
  sim_cmd->add_option("--trials", simulate.trials);
  sim_cmd->add_option("--seed", simulate.seed);
  sim_cmd->add_option("--threads", simulate.threads);
  sim_cmd->add_option("--batch-size", simulate.batch_size);
  sim_cmd->add_option("--batches-csv", simulate.batches_csv, "write running estimates here");
  sim_cmd->add_flag("--verify", simulate.verify, "compare against exact values (exit 4 beyond 4 sigma)");
  sim_cmd->callback([&] { action = [&] { return cmd_simulate(simulate, out); }; });

  int opt_n = 0;
  auto* opt_cmd = app.add_subcommand("optimize-c", "density maximizing the hash-length reduction");
  opt_cmd->add_option("--n", opt_n)->required();
  opt_cmd->callback([&] { action = [&] { return cmd_optimize_c(opt_n, out); }; });

  DemoArgs demo;
  auto* demo_cmd = app.add_subcommand("demo-protocol", "run and print one key-transport session");
  demo_cmd->add_option("--n", demo.n);
  demo_cmd->add_option("--c", demo.c);
  demo_cmd->add_option("--key-len", demo.key_len);
  demo_cmd->add_option("--seed", demo.seed);
  demo_cmd->add_flag("--json", demo.json, "emit the transcript as JSON");
  demo_cmd->add_flag("--corrupt", demo.corrupt, "flip one ciphertext bit (debug)");
  demo_cmd->callback([&] { action = [&] { return cmd_demo_protocol(demo, out); }; });

  for (auto* sub : app.get_subcommands({})) {
    for (auto* opt : sub->get_options()) {
      if (opt->get_expected_min() > 0 && !opt->get_required()) opt->capture_default_str();
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidationError;
  }
  return guarded(action, err);
}

}  // namespace qnet::cli

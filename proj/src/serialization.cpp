#include "qnet/serialization.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qnet/errors.hpp"

namespace qnet {

std::string format_probability(Real value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*Lg", kProbabilityDigits, value);
  return buffer;
}

Json probability_json(Real value) { return std::strtod(format_probability(value).c_str(), nullptr); }

Json to_json(const NetworkSegment& seg) { return Json{{"n", seg.n_nodes()}, {"c", seg.density()}}; }

NetworkSegment segment_from_json(const Json& json) {
  if (!json.is_object() || !json.contains("n") || !json.contains("c") ||
      !json["n"].is_number_integer() || !json["c"].is_number_integer()) {
    throw ValidationError("segment", "expected an object {\"n\": int, \"c\": int}");
  }
  return make_segment(json["n"].get<int>(), json["c"].get<int>());
}

std::string edges_csv(const NetworkSegment& seg) {
  std::ostringstream out;
  out << "from,to\n";
  for (const Link link : edges(seg)) out << link.from << ',' << link.to << '\n';
  return out.str();
}

Json to_json(const Route& route) { return Json(route.nodes); }

Json routes_json(const RouteSet& routes) {
  Json out{{"segment", to_json(routes.segment)}, {"count", to_decimal(routes.count)}};
  Json list = Json::array();
  for (const Route& r : routes.routes) list.push_back(to_json(r));
  out["routes"] = std::move(list);
  return out;
}

Json to_json(const RoutingScheme& scheme) {
  Json out = Json::object();
  for (const auto& [link, ids] : scheme.bundles) out[link.label()] = ids;
  return out;
}

namespace {

Json optional_probability(const std::optional<Real>& value) {
  return value ? probability_json(*value) : Json(nullptr);
}

}  // namespace

Json to_json(const SecurityReport& report) {
  return Json{
      {"segment", to_json(report.segment)},
      {"mode", to_string(report.mode)},
      {"eps_auth", probability_json(report.params.eps_auth)},
      {"eps_qkd", probability_json(report.params.eps_qkd)},
      {"eps1_approx", probability_json(report.eps1_approx)},
      {"eps1_exact", optional_probability(report.eps1_exact)},
      {"eps2_approx", probability_json(report.eps2_approx)},
      {"eps2_exact", optional_probability(report.eps2_exact)},
      {"eps_qn", probability_json(report.eps_qn)},
      {"eps_qn_unclamped", probability_json(report.eps_qn_unclamped)},
      {"regime_flags",
       Json{{"eps1", report.eps1_regime_valid}, {"eps2", report.eps2_regime_valid}}},
      {"saturated", report.saturated},
  };
}

Json to_json(const TrialStats& stats) {
  return Json{
      {"trials", stats.trials},
      {"successes_auth", stats.successes_auth},
      {"successes_link", stats.successes_link},
      {"successes_joint", stats.successes_joint},
      {"estimate_auth", probability_json(stats.estimate_auth)},
      {"estimate_link", probability_json(stats.estimate_link)},
      {"stderr_auth", probability_json(stats.stderr_auth)},
      {"stderr_link", probability_json(stats.stderr_link)},
      {"seed", stats.seed},
      {"rng_algorithm", stats.rng_algorithm},
  };
}

Json to_json(const SessionTranscript& transcript) {
  Json messages = Json::array();
  for (const Message& m : transcript.messages) {
    messages.push_back(Json{{"link", m.link.label()},
                            {"from", m.link.from},
                            {"to", m.link.to},
                            {"route_ids", m.route_ids},
                            {"bits", m.ciphertext.size()},
                            {"ciphertext", m.ciphertext.to_hex()}});
  }
  return Json{{"key_len", transcript.key_len}, {"messages", std::move(messages)}};
}

SessionTranscript transcript_from_json(const Json& json) {
  try {
    SessionTranscript out;
    out.key_len = json.at("key_len").get<std::size_t>();
    for (const auto& m : json.at("messages")) {
      Message message;
      message.link = {m.at("from").get<int>(), m.at("to").get<int>()};
      message.route_ids = m.at("route_ids").get<std::vector<std::size_t>>();
      message.ciphertext =
          BitString::from_hex(m.at("ciphertext").get<std::string>(), m.at("bits").get<std::size_t>());
      out.messages.push_back(std::move(message));
    }
    return out;
  } catch (const Json::exception& e) {
    throw MalformedTranscriptError(std::string("transcript JSON: ") + e.what());
  } catch (const ValidationError& e) {
    throw MalformedTranscriptError(std::string("transcript JSON: ") + e.what());
  }
}

}  // namespace qnet

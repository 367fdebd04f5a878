#pragma once

#include <string>

#include <json.hpp>

#include "qnet/bigint.hpp"
#include "qnet/protocol.hpp"
#include "qnet/routes.hpp"
#include "qnet/security.hpp"
#include "qnet/simulator.hpp"
#include "qnet/topology.hpp"

namespace qnet {

using Json = nlohmann::ordered_json;

// Every probability leaves the library with 12 significant digits.
inline constexpr int kProbabilityDigits = 12;

std::string format_probability(Real value);
Json probability_json(Real value);

Json to_json(const NetworkSegment& seg);
NetworkSegment segment_from_json(const Json& json);

std::string edges_csv(const NetworkSegment& seg);

Json to_json(const Route& route);
Json routes_json(const RouteSet& routes);
Json to_json(const RoutingScheme& scheme);
Json to_json(const SecurityReport& report);
Json to_json(const TrialStats& stats);
Json to_json(const SessionTranscript& transcript);
SessionTranscript transcript_from_json(const Json& json);

}  // namespace qnet

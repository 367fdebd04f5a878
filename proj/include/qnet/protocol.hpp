#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qnet/bitstring.hpp"
#include "qnet/routes.hpp"
#include "qnet/simulator.hpp"
#include "qnet/topology.hpp"

namespace qnet {

struct SessionKeys {
  std::map<Link, BitString> link_keys;  // k_ij, one per QKD link
  std::vector<BitString> route_keys;    // K_i, route id i at position i-1
  std::size_t key_len = 0;
};

// One classical message over a link: the route ids travel in the clear as
// routing instructions, the concatenated route keys are encrypted under the
// link key stream.
struct Message {
  Link link;
  std::vector<std::size_t> route_ids;
  BitString ciphertext;

  bool operator==(const Message&) const = default;
};

struct SessionTranscript {
  std::size_t key_len = 0;
  std::vector<Message> messages;  // routing-scheme link order

  const Message* find(Link link) const;
};

struct Session {
  SessionKeys keys;
  SessionTranscript transcript;
  BitString final_key;
};

struct AdversaryView {
  std::set<int> known_nodes;
  std::set<Link> known_links;
  std::set<std::size_t> recovered_route_keys;
  std::size_t route_count = 0;

  bool knows_final_key() const noexcept {
    return route_count > 0 && recovered_route_keys.size() == route_count;
  }
};

// Expands a link key into `bits` of pad by counter mode over a keyed mixing
// function. Simulation stub only: it has no cryptographic strength.
BitString keystream(const BitString& link_key, std::size_t bits);

// Runs one session: node 1 draws the route keys, every node in order decrypts
// what it received, splits by route id and forwards along the scheme.
// final_key is the XOR of all route keys.
Session run_session(const NetworkSegment& seg, const RoutingScheme& scheme, std::size_t key_len,
                    std::uint64_t seed);

// Node N's view: decrypts its incoming messages with its own link keys and
// XORs the route keys. Throws MalformedTranscriptError on missing messages,
// wrong lengths or duplicate/missing route ids.
BitString reconstruct_at_endpoint(const NetworkSegment& seg, const RoutingScheme& scheme,
                                  const SessionTranscript& transcript,
                                  const std::map<Link, BitString>& last_node_keys);

// A compromised node learns the keys of its incident links and so every
// bundle through it; an intercepted link leaks its own bundle.
AdversaryView adversary_view(const NetworkSegment& seg, const RoutingScheme& scheme,
                             const SessionTranscript& transcript,
                             const CompromiseScenario& scenario);

// Decrypts what the view gives access to; returns the final key when every
// route key was recovered.
std::optional<BitString> adversary_final_key(const SessionTranscript& transcript,
                                             const SessionKeys& keys, const AdversaryView& view);

// Length-prefixed big-endian layout:
//   u32 from | u32 to | u32 n_ids | n_ids x u32 id | u64 n_bits | ceil(n_bits/8) bytes
std::vector<std::uint8_t> encode_message(const Message& message);
Message decode_message(const std::vector<std::uint8_t>& bytes);

}  // namespace qnet

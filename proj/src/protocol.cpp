#include "qnet/protocol.hpp"

#include <algorithm>

#include "qnet/errors.hpp"

namespace qnet {
namespace {

using Holdings = std::map<std::size_t, BitString>;

BitString concat_bundle(const Holdings& held, const std::vector<std::size_t>& ids) {
  BitString out;
  for (const auto id : ids) {
    const auto it = held.find(id);
    if (it == held.end()) {
      throw InconsistencyError("route key K_" + std::to_string(id) +
                               " must be forwarded by a node that never received it");
    }
    out.append(it->second);
  }
  return out;
}

void split_bundle(const BitString& plain, const std::vector<std::size_t>& ids,
                  std::size_t key_len, Holdings& into) {
  for (std::size_t k = 0; k < ids.size(); ++k) into[ids[k]] = plain.slice(k * key_len, key_len);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint64_t value) {
  if (value > 0xffffffffULL) throw ValidationError("message", "field exceeds 32 bits");
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(value >> shift));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t value) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(value >> shift));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint64_t read(int width) {
    if (pos_ + static_cast<std::size_t>(width) > bytes_.size()) {
      throw MalformedTranscriptError("message truncated");
    }
    std::uint64_t value = 0;
    for (int k = 0; k < width; ++k) value = (value << 8) | bytes_[pos_++];
    return value;
  }

  std::uint8_t byte() { return static_cast<std::uint8_t>(read(1)); }
  bool done() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

const Message* SessionTranscript::find(Link link) const {
  const auto it = std::find_if(messages.begin(), messages.end(),
                               [link](const Message& m) { return m.link == link; });
  return it == messages.end() ? nullptr : &*it;
}

BitString keystream(const BitString& link_key, std::size_t bits) {
  const std::uint64_t key = SplitMix64::mix(link_key.digest());
  std::vector<std::uint64_t> words((bits + 63) / 64);
  for (std::size_t counter = 0; counter < words.size(); ++counter) {
    words[counter] = SplitMix64::mix(key ^ SplitMix64::mix(counter + 1));
  }
  return BitString::from_words(std::move(words), bits);
}

Session run_session(const NetworkSegment& seg, const RoutingScheme& scheme, std::size_t key_len,
                    std::uint64_t seed) {
  if (!(scheme.segment == seg)) {
    throw ValidationError("scheme", "routing scheme was built for a different segment");
  }
  if (key_len < 1) throw ValidationError("key_len", "must be >= 1");

  Session session;
  session.keys.key_len = key_len;
  session.transcript.key_len = key_len;

  // Step 2: one QKD key per link. Step 4: node 1 draws one key per route.
  auto rng = SplitMix64::stream(seed, 0);
  for (const Link link : edges(seg)) session.keys.link_keys[link] = BitString::random(key_len, rng);
  session.final_key = BitString(key_len);
  for (std::size_t id = 1; id <= scheme.route_count; ++id) {
    session.keys.route_keys.push_back(BitString::random(key_len, rng));
    session.final_key ^= session.keys.route_keys.back();
  }

  std::vector<Holdings> held(static_cast<std::size_t>(seg.n_nodes()) + 1);
  for (std::size_t id = 1; id <= scheme.route_count; ++id) {
    held[1][id] = session.keys.route_keys[id - 1];
  }

  // Every message into node b comes from a lower-numbered node, so visiting
  // senders in order delivers a node's whole input before it forwards.
  for (int from = 1; from < seg.n_nodes(); ++from) {
    for (const int to : out_neighbors(seg, from)) {
      const Link link{from, to};
      const auto& ids = scheme.bundle(link);
      if (ids.empty()) continue;
      const BitString& k = session.keys.link_keys.at(link);
      const BitString plain = concat_bundle(held[from], ids);
      Message message{link, ids, plain ^ keystream(k, plain.size())};

      split_bundle(message.ciphertext ^ keystream(k, plain.size()), ids, key_len, held[to]);
      session.transcript.messages.push_back(std::move(message));
    }
  }
  return session;
}

BitString reconstruct_at_endpoint(const NetworkSegment& seg, const RoutingScheme& scheme,
                                  const SessionTranscript& transcript,
                                  const std::map<Link, BitString>& last_node_keys) {
  if (transcript.key_len < 1) throw MalformedTranscriptError("key_len must be >= 1");
  const std::size_t key_len = transcript.key_len;
  const int last = seg.n_nodes();

  Holdings received;
  for (const int from : in_neighbors(seg, last)) {
    const Link link{from, last};
    const auto& expected = scheme.bundle(link);
    if (expected.empty()) continue;
    const Message* message = transcript.find(link);
    if (message == nullptr) throw MalformedTranscriptError("no message on link " + link.label());
    if (message->route_ids != expected) {
      throw MalformedTranscriptError("routing header on link " + link.label() +
                                     " does not match the scheme");
    }
    if (message->ciphertext.size() != expected.size() * key_len) {
      throw MalformedTranscriptError("ciphertext length on link " + link.label() +
                                     " does not match its bundle");
    }
    const auto key = last_node_keys.find(link);
    if (key == last_node_keys.end()) {
      throw MalformedTranscriptError("missing link key for " + link.label());
    }
    const BitString plain = message->ciphertext ^ keystream(key->second, message->ciphertext.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (!received.emplace(expected[k], plain.slice(k * key_len, key_len)).second) {
        throw MalformedTranscriptError("route key K_" + std::to_string(expected[k]) +
                                       " delivered twice");
      }
    }
  }
  if (received.size() != scheme.route_count) {
    throw MalformedTranscriptError("endpoint received " + std::to_string(received.size()) +
                                   " of " + std::to_string(scheme.route_count) + " route keys");
  }

  BitString final_key(key_len);
  for (const auto& [id, k] : received) final_key ^= k;
  return final_key;
}

AdversaryView adversary_view(const NetworkSegment& seg, const RoutingScheme& scheme,
                             const SessionTranscript& transcript,
                             const CompromiseScenario& scenario) {
  scenario.validate(seg);
  AdversaryView view;
  view.route_count = scheme.route_count;
  view.known_nodes = scenario.compromised_nodes;
  view.known_links = scenario.intercepted_links;
  for (const int node : scenario.compromised_nodes) {
    for (const int from : in_neighbors(seg, node)) view.known_links.insert({from, node});
    for (const int to : out_neighbors(seg, node)) view.known_links.insert({node, to});
  }
  for (const Message& message : transcript.messages) {
    if (view.known_links.contains(message.link)) {
      view.recovered_route_keys.insert(message.route_ids.begin(), message.route_ids.end());
    }
  }
  return view;
}

std::optional<BitString> adversary_final_key(const SessionTranscript& transcript,
                                             const SessionKeys& keys, const AdversaryView& view) {
  Holdings recovered;
  for (const Message& message : transcript.messages) {
    if (!view.known_links.contains(message.link)) continue;
    const BitString& k = keys.link_keys.at(message.link);
    const BitString plain = message.ciphertext ^ keystream(k, message.ciphertext.size());
    split_bundle(plain, message.route_ids, transcript.key_len, recovered);
  }
  if (recovered.size() != view.route_count || view.route_count == 0) return std::nullopt;
  BitString final_key(transcript.key_len);
  for (const auto& [id, k] : recovered) final_key ^= k;
  return final_key;
}

std::vector<std::uint8_t> encode_message(const Message& message) {
  std::vector<std::uint8_t> out;
  put_u32(out, static_cast<std::uint64_t>(message.link.from));
  put_u32(out, static_cast<std::uint64_t>(message.link.to));
  put_u32(out, message.route_ids.size());
  for (const auto id : message.route_ids) put_u32(out, id);
  put_u64(out, message.ciphertext.size());
  const std::string hex = message.ciphertext.to_hex();
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(std::stoi(hex.substr(i, 2), nullptr, 16)));
  }
  return out;
}

Message decode_message(const std::vector<std::uint8_t>& bytes) {
  Reader in(bytes);
  Message message;
  message.link.from = static_cast<int>(in.read(4));
  message.link.to = static_cast<int>(in.read(4));
  const std::uint64_t count = in.read(4);
  if (count * 4 > in.remaining()) throw MalformedTranscriptError("route id list truncated");
  message.route_ids.resize(count);
  for (auto& id : message.route_ids) id = in.read(4);
  const std::uint64_t bits = in.read(8);
  const std::uint64_t byte_count = (bits + 7) / 8;
  if (byte_count != in.remaining()) throw MalformedTranscriptError("ciphertext length mismatch");
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * byte_count);
  for (std::uint64_t i = 0; i < byte_count; ++i) {
    const std::uint8_t b = in.byte();
    hex.push_back(kDigits[b >> 4]);
    hex.push_back(kDigits[b & 15]);
  }
  try {
    message.ciphertext = BitString::from_hex(hex, bits);
  } catch (const ValidationError& e) {
    throw MalformedTranscriptError(std::string("ciphertext: ") + e.what());
  }
  return message;
}

}  // namespace qnet

#include "qnet/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

#include "qnet/errors.hpp"

namespace qnet {
namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(std::size_t bits) : words_(words_for(bits), 0), bits_(bits) {}

BitString BitString::random(std::size_t bits, SplitMix64& rng) {
  BitString out(bits);
  for (auto& w : out.words_) w = rng();
  out.clear_tail();
  return out;
}

BitString BitString::from_words(std::vector<std::uint64_t> words, std::size_t bits) {
  BitString out;
  words.resize(words_for(bits), 0);
  out.words_ = std::move(words);
  out.bits_ = bits;
  out.clear_tail();
  return out;
}

BitString BitString::from_hex(const std::string& hex, std::size_t bits) {
  if (hex.size() != 2 * ((bits + 7) / 8)) {
    throw ValidationError("hex", "length does not match " + std::to_string(bits) + " bits");
  }
  BitString out(bits);
  for (std::size_t byte = 0; byte < hex.size() / 2; ++byte) {
    const int hi = hex_value(hex[2 * byte]);
    const int lo = hex_value(hex[2 * byte + 1]);
    if (hi < 0 || lo < 0) throw ValidationError("hex", "invalid digit");
    const int value = hi * 16 + lo;
    for (int k = 0; k < 8; ++k) {
      const std::size_t i = byte * 8 + k;
      const bool b = (value >> (7 - k)) & 1;
      if (i < bits) {
        out.set(i, b);
      } else if (b) {
        throw ValidationError("hex", "nonzero padding bits");
      }
    }
  }
  return out;
}

bool BitString::bit(std::size_t i) const {
  if (i >= bits_) throw std::out_of_range("BitString::bit");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= bits_) throw std::out_of_range("BitString::set");
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitString::flip(std::size_t i) { set(i, !bit(i)); }

void BitString::append(const BitString& other) {
  const std::size_t offset = bits_;
  bits_ += other.bits_;
  words_.resize(words_for(bits_), 0);
  if (offset % kWordBits == 0) {
    std::copy(other.words_.begin(), other.words_.end(),
              words_.begin() + static_cast<std::ptrdiff_t>(offset / kWordBits));
    return;
  }
  for (std::size_t i = 0; i < other.bits_; ++i) set(offset + i, other.bit(i));
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > bits_) throw std::out_of_range("BitString::slice");
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) out.set(i, bit(offset + i));
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.bits_ != bits_) {
    throw ValidationError("bits", "XOR of " + std::to_string(bits_) + " and " +
                                      std::to_string(other.bits_) + " bit strings");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitString::is_zero() const noexcept {
  for (const auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const std::size_t bytes = (bits_ + 7) / 8;
  out.reserve(2 * bytes);
  for (std::size_t byte = 0; byte < bytes; ++byte) {
    int value = 0;
    for (int k = 0; k < 8; ++k) {
      const std::size_t i = byte * 8 + k;
      value = (value << 1) | (i < bits_ && bit(i) ? 1 : 0);
    }
    out.push_back(kDigits[value >> 4]);
    out.push_back(kDigits[value & 15]);
  }
  return out;
}

std::uint64_t BitString::digest() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t word) {
    for (int k = 0; k < 8; ++k) {
      h ^= (word >> (8 * k)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  feed(bits_);
  for (const auto w : words_) feed(w);
  return h;
}

void BitString::clear_tail() noexcept {
  if (bits_ % kWordBits != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (bits_ % kWordBits)) - 1;
  }
}

}  // namespace qnet

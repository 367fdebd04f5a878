#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qnet/random.hpp"

namespace qnet {

// Packed bit string of arbitrary length. Bits past size() are kept zero so
// equality is word-wise.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t bits);

  static BitString random(std::size_t bits, SplitMix64& rng);
  static BitString from_hex(const std::string& hex, std::size_t bits);
  // Bit i is bit (i % 64) of words[i / 64]; surplus words and tail bits are dropped.
  static BitString from_words(std::vector<std::uint64_t> words, std::size_t bits);

  std::size_t size() const noexcept { return bits_; }
  bool empty() const noexcept { return bits_ == 0; }

  bool bit(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  void append(const BitString& other);
  BitString slice(std::size_t offset, std::size_t length) const;

  // Sizes must match.
  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString lhs, const BitString& rhs) { return lhs ^= rhs; }

  bool operator==(const BitString&) const = default;

  bool is_zero() const noexcept;
  std::string to_hex() const;        // ceil(size/8) bytes, MSB-first within a byte
  std::uint64_t digest() const noexcept;  // FNV-1a over the hex bytes and length

 private:
  void clear_tail() noexcept;

  std::vector<std::uint64_t> words_;
  std::size_t bits_ = 0;
};

}  // namespace qnet

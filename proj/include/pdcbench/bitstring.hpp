// Copyright 2026 The pdcbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdcbench {

/// Fixed-length binary string. Index 0 is the most significant bit, which is
/// also the first character of every textual rendering.
///
/// Values are immutable once built; operations that "change" a bit return a
/// new string.
class BitString {
 public:
  BitString() = default;

  /// All-zero string of `len` bits.
  explicit BitString(std::size_t len);

  /// Takes ownership of 0/1 symbols; throws std::invalid_argument on any
  /// other byte value.
  explicit BitString(std::vector<std::uint8_t> bits);

  /// Low `len` bits of `value`, most significant first. `len` <= 64.
  static BitString from_uint(std::uint64_t value, std::size_t len);

  /// Parses either binary text ("0101 1100", whitespace ignored) or the
  /// length-annotated hex form "<len>:<hex>", e.g. "16:00ff".
  static BitString parse(std::string_view text);

  /// Hex digits holding a `len`-bit value, right aligned. An optional "0x"
  /// prefix is accepted.
  static BitString from_hex(std::string_view hex, std::size_t len);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  bool at(std::size_t i) const;
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::size_t popcount() const noexcept;

  /// Requires size() <= 64.
  std::uint64_t to_uint() const;

  BitString flipped(std::size_t i) const;
  BitString slice(std::size_t pos, std::size_t len) const;
  BitString concat(const BitString& other) const;
  BitString operator^(const BitString& other) const;

  /// Binary text, most significant first.
  std::string to_string() const;
  /// Length-annotated hex, "<len>:<hex>".
  std::string to_hex() const;
  /// Bare hex digits without the length annotation.
  std::string hex_digits() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

 private:
  std::vector<std::uint8_t> bits_;
};

std::ostream& operator<<(std::ostream& os, const BitString& s);

/// Concatenates a sequence of strings in order.
BitString concat(std::span<const BitString> parts);

}  // namespace pdcbench

template <>
struct std::hash<pdcbench::BitString> {
  std::size_t operator()(const pdcbench::BitString& s) const noexcept;
};

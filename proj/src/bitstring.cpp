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

#include "pdcbench/bitstring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace pdcbench {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

BitString::BitString(std::size_t len) : bits_(len, 0) {}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("BitString: symbols must be 0 or 1");
  }
}

BitString BitString::from_uint(std::uint64_t value, std::size_t len) {
  if (len > 64) throw std::invalid_argument("BitString::from_uint: length exceeds 64");
  if (len < 64 && (value >> len) != 0) {
    throw std::invalid_argument("BitString::from_uint: value does not fit in length");
  }
  std::vector<std::uint8_t> bits(len);
  for (std::size_t i = 0; i < len; ++i) {
    bits[i] = static_cast<std::uint8_t>((value >> (len - 1 - i)) & 1U);
  }
  BitString out;
  out.bits_ = std::move(bits);
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t len) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  std::vector<std::uint8_t> raw;
  raw.reserve(hex.size() * 4);
  for (char c : hex) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    int v = hex_value(c);
    if (v < 0) throw std::invalid_argument("BitString::from_hex: bad hex digit '" + std::string(1, c) + "'");
    for (int b = 3; b >= 0; --b) raw.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  }
  if (raw.size() < len) raw.insert(raw.begin(), len - raw.size(), 0);
  std::size_t excess = raw.size() - len;
  if (std::any_of(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(excess), [](auto b) { return b != 0; })) {
    throw std::invalid_argument("BitString::from_hex: value does not fit in " + std::to_string(len) + " bits");
  }
  raw.erase(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(excess));
  BitString out;
  out.bits_ = std::move(raw);
  return out;
}

BitString BitString::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto len_text = text.substr(0, colon);
    while (!len_text.empty() && std::isspace(static_cast<unsigned char>(len_text.front()))) len_text.remove_prefix(1);
    std::size_t len = 0;
    auto [ptr, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), len);
    if (ec != std::errc{} || ptr != len_text.data() + len_text.size()) {
      throw std::invalid_argument("BitString::parse: bad length prefix in '" + std::string(text) + "'");
    }
    return from_hex(text.substr(colon + 1), len);
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("BitString::parse: unexpected character '" + std::string(1, c) + "'");
    }
  }
  BitString out;
  out.bits_ = std::move(bits);
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("BitString::at");
  return bits_[i] != 0;
}

std::size_t BitString::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::uint64_t BitString::to_uint() const {
  if (bits_.size() > 64) throw std::invalid_argument("BitString::to_uint: longer than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

BitString BitString::flipped(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("BitString::flipped");
  BitString out = *this;
  out.bits_[i] ^= 1U;
  return out;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos > bits_.size() || len > bits_.size() - pos) throw std::out_of_range("BitString::slice");
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

BitString BitString::concat(const BitString& other) const {
  BitString out = *this;
  out.bits_.insert(out.bits_.end(), other.bits_.begin(), other.bits_.end());
  return out;
}

BitString BitString::operator^(const BitString& other) const {
  if (other.size() != size()) throw std::invalid_argument("BitString xor: length mismatch");
  BitString out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= other.bits_[i];
  return out;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

std::string BitString::hex_digits() const {
  std::size_t digits = (bits_.size() + 3) / 4;
  std::string s(digits, '0');
  // Right-align: the leading digit absorbs the padding.
  std::size_t pad = digits * 4 - bits_.size();
  for (std::size_t d = 0; d < digits; ++d) {
    int v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      std::size_t idx = d * 4 + b;
      int bit = idx < pad ? 0 : bits_[idx - pad];
      v = (v << 1) | bit;
    }
    s[d] = kHexDigits[v];
  }
  return s;
}

std::string BitString::to_hex() const { return std::to_string(bits_.size()) + ":" + hex_digits(); }

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.bits_.begin(), a.bits_.end(), b.bits_.begin(), b.bits_.end());
}

std::ostream& operator<<(std::ostream& os, const BitString& s) { return os << s.to_string(); }

BitString concat(std::span<const BitString> parts) {
  std::vector<std::uint8_t> bits;
  for (const auto& p : parts) bits.insert(bits.end(), p.bits().begin(), p.bits().end());
  return BitString(std::move(bits));
}

}  // namespace pdcbench

std::size_t std::hash<pdcbench::BitString>::operator()(const pdcbench::BitString& s) const noexcept {
  // FNV-1a over the symbols plus the length.
  std::uint64_t h = 1469598103934665603ULL ^ s.size();
  for (auto b : s.bits()) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pdcbench/bitflip.hpp"
#include "pdcbench/bitstring.hpp"
#include "pdcbench/lattice.hpp"

namespace pdcbench {

/// One unit of a channel stream.
using Unit = std::variant<BitString, Path>;

/// Binary stream layout, all integers big endian:
///   unit   := tag:u8 length:u32 payload[length]
///   tag 1  := bits:u32 packed bits, most significant first, zero padded
///   tag 2  := ray:u16 circle:u16 steps:u32 packed 2-bit steps
///             (U=00 D=01 L=10 R=11), first step in the top bits
std::vector<std::uint8_t> encode_units(std::span<const Unit> units);
/// Throws std::runtime_error on truncated or malformed input.
std::vector<Unit> decode_units(std::span<const std::uint8_t> bytes);

void write_units(std::ostream& out, std::span<const Unit> units);
std::vector<Unit> read_units(std::istream& in);

std::vector<Unit> as_units(std::span<const BitString> s);
std::vector<Unit> as_units(std::span<const Path> p);
/// Throws if any unit holds the other alternative.
std::vector<BitString> bitstring_units(std::span<const Unit> units);
std::vector<Path> path_units(std::span<const Unit> units);

/// Text form of a keybook:
///   n_bits 8
///   h 4
///   alphabet AB_
///   A: 3c a1
/// '_' stands for the space symbol, key strings are bare hex.
void write_keybook(std::ostream& out, const BitFlipKeyBook& book);
BitFlipKeyBook read_keybook(std::istream& in);

/// Text form of a lattice:
///   circles 3
///   rays 6
///   extent ray=0 2
///   letter A start=(0,1) terminal=(3,2)
void write_lattice(std::ostream& out, const PolarLattice& lat);
PolarLattice read_lattice(std::istream& in);

/// "(ray,circle)" followed by the step letters, e.g. "(0,0) RU".
std::string path_to_string(const Path& p);
Path parse_path(std::string_view text);

}  // namespace pdcbench

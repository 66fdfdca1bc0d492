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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdcbench/rng.hpp"

namespace pdcbench {

/// Intersection of a ray and a circle. Circle 0 is the innermost.
struct Point {
  int ray = 0;
  int circle = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// U and D move along the ray (outward and inward); L and R move to the
/// previous and next ray along the current circle, wrapping around.
enum class Step : std::uint8_t { U = 0, D = 1, L = 2, R = 3 };

char step_char(Step s);
/// Throws std::invalid_argument for anything but U, D, L, R.
Step parse_step(char c);

struct Path {
  Point origin;
  std::vector<Step> steps;
  friend bool operator==(const Path&, const Path&) = default;
};

struct LetterEnds {
  Point start;
  Point terminal;
  friend bool operator==(const LetterEnds&, const LetterEnds&) = default;
};

/// Secret material of a lattice channel: the ray extents and the letter map.
struct PolarLattice {
  int circles = 1;
  int rays = 2;
  /// Highest circle index each ray reaches, in [0, circles - 1].
  std::vector<int> extent;
  std::map<char, LetterEnds> letter_map;

  void validate() const;
  bool valid(Point p) const noexcept;
  /// Destination of one step, or nullopt when the step leaves the lattice.
  std::optional<Point> move(Point p, Step s) const noexcept;
  /// Where the path ends, or nullopt if any step is illegal.
  std::optional<Point> replay(const Path& path) const;
  /// Fewest steps from `from` to `to`.
  int shortest_path(Point from, Point to) const;
};

/// Lattice with random ray extents (all full when `full_extent`) and a
/// letter map of random distinct (start, terminal) pairs.
PolarLattice lattice_keygen(std::string_view alphabet, int circles, int rays, std::uint64_t seed,
                            bool full_extent = false);

/// Random walk from start(sym) to terminal(sym), biased toward the terminal,
/// of at most max_len steps. Throws std::invalid_argument when max_len is
/// below the shortest path.
Path lattice_encode(const PolarLattice& lat, char sym, int max_len, Rng& rng);
Path lattice_encode(const PolarLattice& lat, char sym, int max_len, std::uint64_t seed);

/// The letter whose (start, terminal) pair matches the path's endpoints, or
/// nullopt for illegal paths and unmatched endpoints.
std::optional<char> lattice_decode(const PolarLattice& lat, const Path& path);

/// Legal random path whose endpoints match no letter.
Path lattice_noise(const PolarLattice& lat, int max_len, Rng& rng);

std::vector<Path> lattice_encode_message(const PolarLattice& lat, std::string_view text, int max_len,
                                         double noise_rate, std::uint64_t seed);
std::string lattice_decode_message(const PolarLattice& lat, std::span<const Path> units);

}  // namespace pdcbench

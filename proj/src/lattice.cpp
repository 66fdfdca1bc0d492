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


#include "pdcbench/lattice.hpp"

#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

#include "pdcbench/bitflip.hpp"

namespace pdcbench {

namespace {

constexpr Step kSteps[] = {Step::U, Step::D, Step::L, Step::R};
constexpr double kTowardBias = 0.7;
constexpr double kStopAtTerminal = 0.5;

std::vector<Point> valid_points(const PolarLattice& lat) {
  std::vector<Point> pts;
  for (int r = 0; r < lat.rays; ++r) {
    for (int c = 0; c <= lat.extent[static_cast<std::size_t>(r)]; ++c) pts.push_back({r, c});
  }
  return pts;
}

// BFS distance of every grid cell to `target`; unreachable or invalid cells
// hold INT_MAX. Moves are symmetric, so this is also the distance from.
std::vector<int> distances_to(const PolarLattice& lat, Point target) {
  auto idx = [&](Point p) { return static_cast<std::size_t>(p.ray * lat.circles + p.circle); };
  std::vector<int> d(static_cast<std::size_t>(lat.rays * lat.circles), std::numeric_limits<int>::max());
  std::deque<Point> q{target};
  d[idx(target)] = 0;
  while (!q.empty()) {
    Point p = q.front();
    q.pop_front();
    for (Step s : kSteps) {
      auto nb = lat.move(p, s);
      if (nb && d[idx(*nb)] == std::numeric_limits<int>::max()) {
        d[idx(*nb)] = d[idx(p)] + 1;
        q.push_back(*nb);
      }
    }
  }
  return d;
}

}  // namespace

char step_char(Step s) {
  switch (s) {
    case Step::U: return 'U';
    case Step::D: return 'D';
    case Step::L: return 'L';
    case Step::R: return 'R';
  }
  return '?';
}

Step parse_step(char c) {
  switch (c) {
    case 'U': return Step::U;
    case 'D': return Step::D;
    case 'L': return Step::L;
    case 'R': return Step::R;
    default: throw std::invalid_argument(std::string("unknown step '") + c + "'");
  }
}

void PolarLattice::validate() const {
  if (circles < 1) throw std::invalid_argument("lattice: circles must be >= 1");
  if (rays < 2) throw std::invalid_argument("lattice: rays must be >= 2");
  if (extent.size() != static_cast<std::size_t>(rays)) throw std::invalid_argument("lattice: one extent per ray required");
  for (int e : extent) {
    if (e < 0 || e >= circles) throw std::invalid_argument("lattice: extent out of range");
  }
  std::set<std::pair<Point, Point>> pairs;
  for (const auto& [c, ends] : letter_map) {
    if (!valid(ends.start) || !valid(ends.terminal)) {
      throw std::invalid_argument(std::string("lattice: letter '") + c + "' maps outside the lattice");
    }
    if (ends.start == ends.terminal) throw std::invalid_argument(std::string("lattice: letter '") + c + "' has start == terminal");
    if (!pairs.insert({ends.start, ends.terminal}).second) {
      throw std::invalid_argument(std::string("lattice: letter '") + c + "' shares its endpoints with another letter");
    }
  }
}

bool PolarLattice::valid(Point p) const noexcept {
  return p.ray >= 0 && p.ray < rays && p.circle >= 0 && p.circle <= extent[static_cast<std::size_t>(p.ray)];
}

std::optional<Point> PolarLattice::move(Point p, Step s) const noexcept {
  if (!valid(p)) return std::nullopt;
  Point q = p;
  switch (s) {
    case Step::U: q.circle += 1; break;
    case Step::D: q.circle -= 1; break;
    case Step::L: q.ray = (p.ray + rays - 1) % rays; break;
    case Step::R: q.ray = (p.ray + 1) % rays; break;
  }
  if (!valid(q)) return std::nullopt;
  return q;
}

std::optional<Point> PolarLattice::replay(const Path& path) const {
  if (!valid(path.origin)) return std::nullopt;
  Point p = path.origin;
  for (Step s : path.steps) {
    auto q = move(p, s);
    if (!q) return std::nullopt;
    p = *q;
  }
  return p;
}

int PolarLattice::shortest_path(Point from, Point to) const {
  if (!valid(from) || !valid(to)) throw std::invalid_argument("shortest_path: point outside the lattice");
  return distances_to(*this, to)[static_cast<std::size_t>(from.ray * circles + from.circle)];
}

PolarLattice lattice_keygen(std::string_view alphabet, int circles, int rays, std::uint64_t seed, bool full_extent) {
  if (circles < 1 || rays < 2) throw std::invalid_argument("lattice_keygen: need circles >= 1 and rays >= 2");
  Rng rng(seed);
  PolarLattice lat;
  lat.circles = circles;
  lat.rays = rays;
  for (int r = 0; r < rays; ++r) {
    lat.extent.push_back(full_extent ? circles - 1 : static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(circles))));
  }
  auto pts = valid_points(lat);
  const double capacity = static_cast<double>(pts.size()) * static_cast<double>(pts.size() - 1);
  if (static_cast<double>(alphabet.size()) > capacity) {
    throw std::invalid_argument("lattice_keygen: lattice too small for " + std::to_string(alphabet.size()) + " letters");
  }
  std::set<std::pair<Point, Point>> used;
  for (char c : alphabet) {
    if (lat.letter_map.contains(c)) throw std::invalid_argument("lattice_keygen: repeated symbol in alphabet");
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kRetryBudget) throw std::runtime_error("lattice_keygen: cannot place letters");
      Point s = pts[uniform_below(rng, pts.size())];
      Point t = pts[uniform_below(rng, pts.size())];
      if (s == t || !used.insert({s, t}).second) continue;
      lat.letter_map[c] = {s, t};
      break;
    }
  }
  lat.validate();
  return lat;
}

Path lattice_encode(const PolarLattice& lat, char sym, int max_len, Rng& rng) {
  auto it = lat.letter_map.find(sym);
  if (it == lat.letter_map.end()) throw std::invalid_argument(std::string("lattice_encode: symbol '") + sym + "' not in map");
  const auto [start, terminal] = it->second;
  auto d = distances_to(lat, terminal);
  auto dist = [&](Point p) { return d[static_cast<std::size_t>(p.ray * lat.circles + p.circle)]; };
  if (dist(start) > max_len) {
    throw std::invalid_argument("lattice_encode: max_len " + std::to_string(max_len) + " is below the shortest path " +
                                std::to_string(dist(start)));
  }
  Path path{start, {}};
  Point pos = start;
  int remaining = max_len;
  while (true) {
    if (pos == terminal && (remaining == 0 || uniform01(rng) < kStopAtTerminal)) break;
    std::vector<std::pair<Step, Point>> feasible, closer;
    for (Step s : kSteps) {
      auto nb = lat.move(pos, s);
      if (!nb || dist(*nb) > remaining - 1) continue;
      feasible.emplace_back(s, *nb);
      if (dist(*nb) < dist(pos)) closer.emplace_back(s, *nb);
    }
    if (feasible.empty()) break;
    const auto& pool = (!closer.empty() && uniform01(rng) < kTowardBias) ? closer : feasible;
    auto [s, nb] = pool[uniform_below(rng, pool.size())];
    path.steps.push_back(s);
    pos = nb;
    --remaining;
  }
  if (!(lat.replay(path) == std::optional<Point>(terminal))) throw std::logic_error("lattice_encode: walk missed the terminal");
  // Re-check the confusion test; the letter map makes endpoint pairs unique.
  if (lattice_decode(lat, path) != sym) throw std::logic_error("lattice_encode: path decodes to another letter");
  return path;
}

Path lattice_encode(const PolarLattice& lat, char sym, int max_len, std::uint64_t seed) {
  Rng rng(seed);
  return lattice_encode(lat, sym, max_len, rng);
}

std::optional<char> lattice_decode(const PolarLattice& lat, const Path& path) {
  auto end = lat.replay(path);
  if (!end) return std::nullopt;
  std::optional<char> hit;
  for (const auto& [c, ends] : lat.letter_map) {
    if (ends.start == path.origin && ends.terminal == *end) {
      if (hit) return std::nullopt;
      hit = c;
    }
  }
  return hit;
}

Path lattice_noise(const PolarLattice& lat, int max_len, Rng& rng) {
  if (max_len < 1) throw std::invalid_argument("lattice_noise: max_len must be >= 1");
  auto pts = valid_points(lat);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    Path path{pts[uniform_below(rng, pts.size())], {}};
    auto len = 1 + uniform_below(rng, static_cast<std::uint64_t>(max_len));
    Point pos = path.origin;
    for (std::uint64_t i = 0; i < len; ++i) {
      std::vector<std::pair<Step, Point>> legal;
      for (Step s : kSteps) {
        if (auto nb = lat.move(pos, s)) legal.emplace_back(s, *nb);
      }
      auto [s, nb] = legal[uniform_below(rng, legal.size())];
      path.steps.push_back(s);
      pos = nb;
    }
    if (!lattice_decode(lat, path)) return path;
  }
  throw std::runtime_error("lattice_noise: no unmatched path within the retry budget");
}

std::vector<Path> lattice_encode_message(const PolarLattice& lat, std::string_view text, int max_len,
                                         double noise_rate, std::uint64_t seed) {
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) throw std::invalid_argument("noise rate must be in [0, 1)");
  Rng rng(seed);
  std::vector<Path> out;
  auto pad = [&] {
    while (uniform01(rng) < noise_rate) out.push_back(lattice_noise(lat, max_len, rng));
  };
  for (char c : text) {
    pad();
    out.push_back(lattice_encode(lat, c, max_len, rng));
  }
  pad();
  return out;
}

std::string lattice_decode_message(const PolarLattice& lat, std::span<const Path> units) {
  std::string out;
  for (const auto& u : units) {
    if (auto c = lattice_decode(lat, u)) out.push_back(*c);
  }
  return out;
}

}  // namespace pdcbench

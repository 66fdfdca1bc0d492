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


#include "pdcbench/wire.hpp"

#include <cctype>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pdcbench {

namespace {

constexpr std::uint8_t kTagBits = 1;
constexpr std::uint8_t kTagPath = 2;

void put_u16(std::vector<std::uint8_t>& out, std::uint32_t v) {
  if (v > 0xFFFF) throw std::invalid_argument("wire: value does not fit 16 bits");
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint64_t v) {
  if (v > 0xFFFFFFFFULL) throw std::invalid_argument("wire: value does not fit 32 bits");
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}
  bool done() const { return pos_ == b_.size(); }
  std::size_t pos() const { return pos_; }
  std::uint8_t u8() {
    need(1);
    return b_[pos_++];
  }
  std::uint32_t u16() {
    std::uint32_t v = u8();
    return (v << 8) | u8();
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | u8();
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = b_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw std::runtime_error("wire: truncated stream at byte " + std::to_string(pos_));
  }
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> pack_bits(const BitString& s) {
  std::vector<std::uint8_t> out((s.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

char sym_out(char c) { return c == ' ' ? '_' : c; }
char sym_in(char c) { return c == '_' ? ' ' : c; }

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

Point parse_point(std::string_view t) {
  // "(r,c)"
  if (t.size() < 5 || t.front() != '(' || t.back() != ')') throw std::invalid_argument("bad point '" + std::string(t) + "'");
  auto comma = t.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("bad point '" + std::string(t) + "'");
  return {std::stoi(std::string(t.substr(1, comma - 1))), std::stoi(std::string(t.substr(comma + 1, t.size() - comma - 2)))};
}

std::string point_str(Point p) { return "(" + std::to_string(p.ray) + "," + std::to_string(p.circle) + ")"; }

}  // namespace

std::vector<std::uint8_t> encode_units(std::span<const Unit> units) {
  std::vector<std::uint8_t> out;
  for (const auto& u : units) {
    std::vector<std::uint8_t> payload;
    std::uint8_t tag = 0;
    if (const auto* s = std::get_if<BitString>(&u)) {
      tag = kTagBits;
      put_u32(payload, s->size());
      auto packed = pack_bits(*s);
      payload.insert(payload.end(), packed.begin(), packed.end());
    } else {
      const auto& p = std::get<Path>(u);
      tag = kTagPath;
      if (p.origin.ray < 0 || p.origin.circle < 0) throw std::invalid_argument("wire: negative path origin");
      put_u16(payload, static_cast<std::uint32_t>(p.origin.ray));
      put_u16(payload, static_cast<std::uint32_t>(p.origin.circle));
      put_u32(payload, p.steps.size());
      std::vector<std::uint8_t> packed((p.steps.size() + 3) / 4, 0);
      for (std::size_t i = 0; i < p.steps.size(); ++i) {
        packed[i / 4] |= static_cast<std::uint8_t>(static_cast<unsigned>(p.steps[i]) << (6 - 2 * (i % 4)));
      }
      payload.insert(payload.end(), packed.begin(), packed.end());
    }
    out.push_back(tag);
    put_u32(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
  }
  return out;
}

std::vector<Unit> decode_units(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  std::vector<Unit> out;
  while (!r.done()) {
    std::size_t at = r.pos();
    std::uint8_t tag = r.u8();
    std::uint32_t len = r.u32();
    Reader p(r.take(len));
    if (tag == kTagBits) {
      std::uint32_t nbits = p.u32();
      auto packed = p.take((static_cast<std::size_t>(nbits) + 7) / 8);
      std::vector<std::uint8_t> bits(nbits);
      for (std::size_t i = 0; i < nbits; ++i) bits[i] = (packed[i / 8] >> (7 - i % 8)) & 1U;
      out.emplace_back(BitString(std::move(bits)));
    } else if (tag == kTagPath) {
      Path path;
      path.origin.ray = static_cast<int>(p.u16());
      path.origin.circle = static_cast<int>(p.u16());
      std::uint32_t nsteps = p.u32();
      auto packed = p.take((static_cast<std::size_t>(nsteps) + 3) / 4);
      path.steps.reserve(nsteps);
      for (std::size_t i = 0; i < nsteps; ++i) {
        path.steps.push_back(static_cast<Step>((packed[i / 4] >> (6 - 2 * (i % 4))) & 3U));
      }
      out.emplace_back(std::move(path));
    } else {
      throw std::runtime_error("wire: unknown unit tag " + std::to_string(tag) + " at byte " + std::to_string(at));
    }
    if (!p.done()) throw std::runtime_error("wire: unit at byte " + std::to_string(at) + " has trailing bytes");
  }
  return out;
}

void write_units(std::ostream& out, std::span<const Unit> units) {
  auto bytes = encode_units(units);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<Unit> read_units(std::istream& in) {
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_units(bytes);
}

std::vector<Unit> as_units(std::span<const BitString> s) { return {s.begin(), s.end()}; }
std::vector<Unit> as_units(std::span<const Path> p) { return {p.begin(), p.end()}; }

std::vector<BitString> bitstring_units(std::span<const Unit> units) {
  std::vector<BitString> out;
  for (const auto& u : units) {
    const auto* s = std::get_if<BitString>(&u);
    if (!s) throw std::runtime_error("stream holds a path unit where a bit string was expected");
    out.push_back(*s);
  }
  return out;
}

std::vector<Path> path_units(std::span<const Unit> units) {
  std::vector<Path> out;
  for (const auto& u : units) {
    const auto* p = std::get_if<Path>(&u);
    if (!p) throw std::runtime_error("stream holds a bit string unit where a path was expected");
    out.push_back(*p);
  }
  return out;
}

void write_keybook(std::ostream& out, const BitFlipKeyBook& book) {
  out << "# pdcbench bitflip keybook\n";
  out << "n_bits " << book.n_bits << "\n";
  out << "h " << book.h << "\n";
  out << "alphabet ";
  for (char c : book.alphabet) out << sym_out(c);
  out << "\n";
  for (char c : book.alphabet) {
    out << sym_out(c) << ":";
    for (const auto& s : book.strings.at(c)) out << " " << s.hex_digits();
    out << "\n";
  }
}

BitFlipKeyBook read_keybook(std::istream& in) {
  BitFlipKeyBook b;
  std::string line;
  int lineno = 0;
  bool have_alphabet = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      return std::invalid_argument("keybook line " + std::to_string(lineno) + ": " + why);
    };
    std::istringstream ls(line);
    if (line.size() >= 2 && line[1] == ':') {
      if (b.n_bits <= 0 || !have_alphabet) throw fail("key strings before the header");
      char c = sym_in(line[0]);
      if (b.alphabet.find(c) == std::string::npos) throw fail("letter not in alphabet");
      std::istringstream rest(line.substr(2));
      std::string hex;
      auto& list = b.strings[c];
      while (rest >> hex) list.push_back(BitString::from_hex(hex, static_cast<std::size_t>(b.n_bits)));
      continue;
    }
    std::string key;
    ls >> key;
    if (key == "n_bits") {
      ls >> b.n_bits;
    } else if (key == "h") {
      ls >> b.h;
    } else if (key == "alphabet") {
      std::string a;
      ls >> a;
      for (char c : a) b.alphabet.push_back(sym_in(c));
      have_alphabet = true;
    } else {
      throw fail("unexpected '" + key + "'");
    }
    if (ls.fail()) throw fail("malformed value");
  }
  b.validate();
  return b;
}

void write_lattice(std::ostream& out, const PolarLattice& lat) {
  out << "# pdcbench polar lattice\n";
  out << "circles " << lat.circles << "\n";
  out << "rays " << lat.rays << "\n";
  for (int r = 0; r < lat.rays; ++r) out << "extent ray=" << r << " " << lat.extent[static_cast<std::size_t>(r)] << "\n";
  for (const auto& [c, ends] : lat.letter_map) {
    out << "letter " << sym_out(c) << " start=" << point_str(ends.start) << " terminal=" << point_str(ends.terminal)
        << "\n";
  }
}

PolarLattice read_lattice(std::istream& in) {
  PolarLattice lat;
  lat.circles = 0;
  lat.rays = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      return std::invalid_argument("lattice line " + std::to_string(lineno) + ": " + why);
    };
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    try {
      if (key == "circles") {
        ls >> lat.circles;
      } else if (key == "rays") {
        ls >> lat.rays;
        if (lat.rays < 2) throw fail("rays must be >= 2");
        lat.extent.assign(static_cast<std::size_t>(lat.rays), -1);
      } else if (key == "extent") {
        std::string ray;
        int e = -1;
        ls >> ray >> e;
        if (!ray.starts_with("ray=")) throw fail("expected ray=<index>");
        int r = std::stoi(ray.substr(4));
        if (r < 0 || r >= lat.rays) throw fail("ray index out of range");
        lat.extent[static_cast<std::size_t>(r)] = e;
      } else if (key == "letter") {
        std::string sym, start, term;
        ls >> sym >> start >> term;
        if (sym.size() != 1 || !start.starts_with("start=") || !term.starts_with("terminal=")) {
          throw fail("expected: letter X start=(r,c) terminal=(r,c)");
        }
        lat.letter_map[sym_in(sym[0])] = {parse_point(start.substr(6)), parse_point(term.substr(9))};
      } else {
        throw fail("unexpected '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).starts_with("lattice line")) throw;
      throw fail(e.what());
    }
    if (ls.fail()) throw fail("malformed value");
  }
  lat.validate();
  return lat;
}

std::string path_to_string(const Path& p) {
  std::string s = point_str(p.origin) + " ";
  for (Step st : p.steps) s.push_back(step_char(st));
  return s;
}

Path parse_path(std::string_view text) {
  auto sp = text.find(' ');
  Path p;
  p.origin = parse_point(text.substr(0, sp));
  if (sp != std::string_view::npos) {
    for (char c : text.substr(sp + 1)) {
      if (!std::isspace(static_cast<unsigned char>(c))) p.steps.push_back(parse_step(c));
    }
  }
  return p;
}

}  // namespace pdcbench

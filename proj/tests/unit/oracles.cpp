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


#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

Bits bits_of(std::uint64_t v, int len) {
  Bits b(static_cast<std::size_t>(len), '0');
  for (int i = 0; i < len; ++i) {
    if ((v >> (len - 1 - i)) & 1) b[static_cast<std::size_t>(i)] = '1';
  }
  return b;
}

std::uint64_t value_of(const Bits& b) {
  std::uint64_t v = 0;
  for (char c : b) v = (v << 1) | (c == '1' ? 1u : 0u);
  return v;
}

int hamming(const Bits& x, const Bits& y) {
  if (x.size() != y.size()) throw std::invalid_argument("oracle::hamming");
  int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

int levenshtein(const Bits& x, const Bits& y) {
  std::vector<std::vector<int>> t(x.size() + 1, std::vector<int>(y.size() + 1));
  for (std::size_t i = 0; i <= x.size(); ++i) t[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= y.size(); ++j) t[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      t[i][j] = std::min({t[i - 1][j] + 1, t[i][j - 1] + 1, t[i - 1][j - 1] + (x[i - 1] != y[j - 1])});
    }
  }
  return t[x.size()][y.size()];
}

int lcs(const Bits& x, const Bits& y) {
  std::vector<std::vector<int>> t(x.size() + 1, std::vector<int>(y.size() + 1, 0));
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      t[i][j] = x[i - 1] == y[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[x.size()][y.size()];
}

double jaccard(const Bits& x, const Bits& y) {
  int inter = 0, uni = 0;
  for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i) {
    bool a = i < x.size() && x[i] == '1';
    bool b = i < y.size() && y[i] == '1';
    inter += a && b;
    uni += a || b;
  }
  return uni == 0 ? 0.0 : 1.0 - static_cast<double>(inter) / uni;
}

double cosine(const Bits& x, const Bits& y) {
  double dot = 0, nx = 0, ny = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double a = x[i] == '1', b = y[i] == '1';
    dot += a * b;
    nx += a * a;
    ny += b * b;
  }
  if (nx == 0 || ny == 0) throw std::domain_error("oracle::cosine: zero vector");
  return 1.0 - dot / std::sqrt(nx * ny);
}

double euclidean(const Bits& x, const Bits& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = (x[i] == '1') - (y[i] == '1');
    s += d * d;
  }
  return std::sqrt(s);
}

double manhattan(const Bits& x, const Bits& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs((x[i] == '1') - (y[i] == '1'));
  return s;
}

Bits q_summarize(const Bits& s, int q) {
  Bits out;
  for (std::size_t i = 0; i < s.size(); i += static_cast<std::size_t>(q)) {
    auto g = s.substr(i, static_cast<std::size_t>(q));
    auto ones = std::count(g.begin(), g.end(), '1');
    out.push_back(2 * ones > static_cast<long>(g.size()) ? '1' : '0');
  }
  return out;
}

QDist q_summary_distance(Bits x, Bits y, int q) {
  int t = 0;
  while (x != y) {
    if (x.size() == 1) return {t + 1, false};
    x = q_summarize(x, q);
    y = q_summarize(y, q);
    ++t;
  }
  return {t, true};
}

std::uint64_t binomial(int n, int k) {
  std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    c[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) {
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          c[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] +
          c[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)];
    }
  }
  return c[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

const int kPresentSbox[16] = {0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2};
const int kSpnPbox[16] = {0, 4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11, 15};

std::uint16_t spn_encrypt(std::uint16_t p, std::uint16_t k, int rounds, const int sbox[16], const int pbox[16]) {
  auto rk = [&](int i) {
    int r = i % 16;
    std::uint16_t rot = static_cast<std::uint16_t>((k << r) | (r ? k >> (16 - r) : 0));
    return static_cast<std::uint16_t>(rot ^ ((0x9E37 * i) & 0xFFFF));
  };
  Bits s = bits_of(p, 16);
  for (int r = 0; r < rounds; ++r) {
    s = bits_of(value_of(s) ^ rk(r), 16);
    for (int n = 0; n < 4; ++n) {
      auto v = value_of(s.substr(static_cast<std::size_t>(4 * n), 4));
      s.replace(static_cast<std::size_t>(4 * n), 4, bits_of(static_cast<std::uint64_t>(sbox[v]), 4));
    }
    Bits moved(16, '0');
    for (int i = 0; i < 16; ++i) moved[static_cast<std::size_t>(pbox[i])] = s[static_cast<std::size_t>(i)];
    s = moved;
  }
  return static_cast<std::uint16_t>(value_of(s) ^ rk(rounds));
}

namespace {
std::uint16_t ror(std::uint16_t x, int r) { return static_cast<std::uint16_t>((x >> r) | (x << (16 - r))); }
std::uint16_t rol(std::uint16_t x, int r) { return static_cast<std::uint16_t>((x << r) | (x >> (16 - r))); }
}  // namespace

std::uint32_t speck32_encrypt(std::uint32_t pt, std::uint64_t key, int rounds) {
  std::uint16_t x = static_cast<std::uint16_t>(pt >> 16), y = static_cast<std::uint16_t>(pt);
  std::vector<std::uint16_t> l = {static_cast<std::uint16_t>(key >> 16), static_cast<std::uint16_t>(key >> 32),
                                  static_cast<std::uint16_t>(key >> 48)};
  std::uint16_t k = static_cast<std::uint16_t>(key);
  for (int i = 0; i < rounds; ++i) {
    x = static_cast<std::uint16_t>((ror(x, 7) + y) ^ k);
    y = static_cast<std::uint16_t>(rol(y, 2) ^ x);
    std::uint16_t nl = static_cast<std::uint16_t>((k + ror(l[static_cast<std::size_t>(i)], 7)) ^ i);
    l.push_back(nl);
    k = static_cast<std::uint16_t>(rol(k, 2) ^ nl);
  }
  return (static_cast<std::uint32_t>(x) << 16) | y;
}

double kl_uniform_bits(const std::vector<double>& w) {
  double n = static_cast<double>(w.size()), s = 0;
  for (double p : w) {
    if (p > 0) s += p * std::log2(p * n);
  }
  return s;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, eq = 0;
      for (double u : v) {
        less += u < v[i];
        eq += u == v[i];
      }
      r[i] = less + (eq + 1) / 2;
    }
    return r;
  };
  auto rx = ranks(x), ry = ranks(y);
  double n = static_cast<double>(x.size()), mx = (n + 1) / 2, sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - mx);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - mx) * (ry[i] - mx);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracle

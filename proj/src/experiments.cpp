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


#include "pdcbench/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pdcbench/analysis.hpp"
#include "pdcbench/decoy.hpp"
#include "pdcbench/lang.hpp"
#include "pdcbench/lattice.hpp"
#include "pdcbench/parallel.hpp"
#include "pdcbench/rng.hpp"
#include "pdcbench/stats.hpp"
#include "pdcbench/wire.hpp"
#include "textio.hpp"

namespace pdcbench {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) { return BitString::from_uint(v, 64).hex_digits(); }

std::vector<std::string> split_list(std::string_view text, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, sep)) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<int> int_list(const Config& cfg, std::string_view section, std::string_view key, std::string fallback) {
  std::vector<int> out;
  for (const auto& s : split_list(cfg.get_or(section, key, std::move(fallback)))) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(s, &used));
      if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(std::string(section) + "." + std::string(key), "expected integers, got '" + s + "'");
    }
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::int64_t positive(const Config& cfg, std::string_view section, std::string_view key, std::int64_t fallback,
                      std::int64_t min = 1) {
  auto v = cfg.get_int_or(section, key, fallback);
  if (v < min) {
    throw ConfigError(std::string(section) + "." + std::string(key), "must be >= " + std::to_string(min));
  }
  return v;
}

// Output directory plus the metadata every data file starts with.
class Artifacts {
 public:
  Artifacts(const ExperimentConfig& cfg, std::string recipe) : dir_(cfg.output_dir), recipe_(std::move(recipe)) {
    std::filesystem::create_directories(dir_);
    meta_ = {"pdcbench recipe=" + recipe_, "config_hash=" + hex64(cfg.hash()), "seed=" + std::to_string(cfg.seed)};
  }

  void add_meta(std::string line) { meta_.push_back(std::move(line)); }
  const std::vector<std::string>& meta() const { return meta_; }

  std::ofstream open(const std::string& name, bool binary = false) {
    auto path = (dir_ / name).string();
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    files_.push_back(path);
    return out;
  }

  void put(const std::string& key, const std::string& value) { summary_.emplace_back(key, value); }
  void put(const std::string& key, double value) { put(key, detail::real(value)); }
  void put_count(const std::string& key, std::uint64_t value) { put(key, std::to_string(value)); }

  RunResult finish() {
    std::ostringstream s;
    for (const auto& m : meta_) s << "# " << m << "\n";
    for (const auto& [k, v] : summary_) s << k << " = " << v << "\n";
    {
      auto out = open("summary.txt");
      out << s.str();
    }
    return {files_, s.str()};
  }

 private:
  std::filesystem::path dir_;
  std::string recipe_;
  std::vector<std::string> meta_;
  std::vector<std::string> files_;
  std::vector<std::pair<std::string, std::string>> summary_;
};

std::string sym_text(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

std::string unsym_text(std::string s) {
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

ExperimentConfig ExperimentConfig::from_config(const Config& cfg) {
  ExperimentConfig e;
  e.raw = cfg;
  e.experiment = cfg.get("experiment", "name");
  e.seed = static_cast<std::uint64_t>(positive(cfg, "experiment", "seed", 1, 0));
  e.output_dir = cfg.get_or("experiment", "output", "out");
  e.workers = static_cast<std::size_t>(positive(cfg, "experiment", "workers", 1));
  e.cipher = CipherSpec::from_config(cfg, "cipher");
  try {
    e.metrics = parse_metric_list(cfg.get_or("metrics", "list", "hamming,qsum3,levenshtein,jaccard,cosine,euclidean,manhattan,lcs"));
  } catch (const std::invalid_argument& ex) {
    throw ConfigError("metrics.list", ex.what());
  }
  if (e.metrics.empty()) throw ConfigError("metrics.list", "at least one metric required");
  e.m = static_cast<std::uint64_t>(positive(cfg, "budget", "m", 2000));
  e.t = static_cast<std::size_t>(positive(cfg, "budget", "t", 64));
  e.max_rounds = static_cast<int>(positive(cfg, "budget", "max_rounds", 0, 0));
  e.trials = static_cast<std::size_t>(positive(cfg, "budget", "trials", 10));
  if (cfg.has("lang", "theta")) e.theta = cfg.get_double_or("lang", "theta", 0.0);
  return e;
}

std::uint64_t ExperimentConfig::hash() const {
  Config c;
  for (const auto& [section, kv] : raw.sections()) {
    for (const auto& [k, v] : kv) {
      if (section == "experiment" && (k == "output" || k == "workers")) continue;
      c.set(section, k, v);
    }
  }
  return fnv1a64(c.to_string());
}

double ExperimentConfig::resolved_theta() const { return theta ? *theta : lang::default_threshold(); }

// ---------------------------------------------------------------------------
// Kernels

AttackTarget make_attack_target(const CipherSpec& spec, std::uint64_t seed, std::uint64_t index, std::size_t decoys) {
  Cipher cipher(spec);
  const int bb = cipher.block_bits();
  const auto letters = static_cast<std::size_t>(2 * bb / lang::kLetterBits);
  const auto& lm = lang::LanguageModel::english();
  const double theta = lang::default_threshold();
  static const std::string text = lang::normalize_text(lang::corpus_text());

  Rng rng(derive_seed(seed, "attack.target", index));
  auto window = [&] {
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
      auto off = uniform_below(rng, text.size() - letters + 1);
      auto w = text.substr(off, letters);
      auto bits = lang::encode_padded(w, bb);
      if (lang::is_plausible(lm, lang::letter_payload(bits), theta)) return bits;
    }
    throw std::runtime_error("make_attack_target: no plausible corpus window");
  };
  AttackTarget t;
  t.plaintext = window();
  t.key = random_bits(rng, static_cast<std::size_t>(cipher.key_bits())).to_uint();
  t.ciphertext = cipher.encrypt_ecb(t.plaintext, BitString::from_uint(t.key, static_cast<std::size_t>(cipher.key_bits())));
  t.plausible.ciphertext_id = index;
  t.plausible.candidates.push_back(t.plaintext);
  while (t.plausible.candidates.size() < decoys + 1) {
    auto w = window();
    if (std::find(t.plausible.candidates.begin(), t.plausible.candidates.end(), w) == t.plausible.candidates.end()) {
      t.plausible.candidates.push_back(std::move(w));
    }
  }
  // The genuine plaintext should not always sit first.
  std::swap(t.plausible.candidates[0], t.plausible.candidates[uniform_below(rng, t.plausible.candidates.size())]);
  return t;
}

StopPredicate candidate_stop(const PlausibleSet& plausible, double theta) {
  return [cands = plausible.candidates, theta](const BitString& p) {
    if (std::find(cands.begin(), cands.end(), p) == cands.end()) return false;
    return lang::is_plausible(lang::LanguageModel::english(), lang::letter_payload(p), theta);
  };
}

BitFlipKeyBook demo_bitflip_book(std::uint64_t seed) { return bitflip_keygen("ABCD ", 8, 2, seed); }

ReverseAvalancheSummary reverse_avalanche_experiment(const CipherSpec& spec, std::size_t series, int h,
                                                     const MetricId& metric, std::uint64_t seed, std::size_t workers) {
  Cipher cipher(spec);
  const auto kb = static_cast<std::size_t>(cipher.key_bits());
  if (h < 1 || static_cast<std::size_t>(h) > kb) throw std::invalid_argument("reverse_avalanche_experiment: bad h");
  ReverseAvalancheSummary s;
  s.series = series;
  s.reports.resize(series);
  parallel_for(series, workers, [&](std::size_t i) {
    Rng rng(derive_seed(seed, "reverse.series", i));
    auto c = random_bits(rng, static_cast<std::size_t>(cipher.block_bits()));
    auto k0 = random_bits(rng, kb);
    std::vector<std::size_t> pos(kb);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    auto k1 = k0;
    for (int j = 0; j < h; ++j) {
      auto r = static_cast<std::size_t>(j) + uniform_below(rng, kb - static_cast<std::size_t>(j));
      std::swap(pos[static_cast<std::size_t>(j)], pos[r]);
      k1 = k1.flipped(pos[static_cast<std::size_t>(j)]);
    }
    auto pts = reverse_avalanche_series(spec, c, k0, k1, derive_seed(seed, "reverse.order", i));
    std::vector<BitString> plains;
    for (auto& p : pts) plains.push_back(p.plaintext);
    s.reports[i] = reverse_avalanche_probe(plains, metric, derive_seed(seed, "reverse.probe", i));
  });
  s.mean_endpoint_distance.assign(static_cast<std::size_t>(h) + 1, 0.0);
  for (const auto& r : s.reports) {
    s.recovered += r.order_recovered ? 1 : 0;
    s.mean_spearman += r.spearman;
    for (std::size_t i = 0; i < r.endpoint_distances.size(); ++i) s.mean_endpoint_distance[i] += r.endpoint_distances[i];
  }
  if (series > 0) {
    s.chance = s.reports.front().chance;
    s.mean_spearman /= static_cast<double>(series);
    for (double& v : s.mean_endpoint_distance) v /= static_cast<double>(series);
  }
  return s;
}

UnicityVarietyResult unicity_variety(const UnicityVarietyOptions& o, std::uint64_t seed) {
  if (o.max_letters < 1 || o.fixtures < 1 || o.truncated_bits < 1 || o.truncated_bits > 16) {
    throw std::invalid_argument("unicity_variety: bad options");
  }
  if (o.bitflip_bits < 2 || o.bitflip_bits > 16 || o.bitflip_bits % 2 != 0) {
    throw std::invalid_argument("unicity_variety: bitflip_bits must be even and in [2, 16]");
  }
  UnicityVarietyResult res;
  const auto& lm = lang::LanguageModel::english();
  res.theta = std::isnan(o.theta) ? lang::default_threshold() : o.theta;
  res.unicity_letters = lang::unicity_distance(o.truncated_bits, lm.redundancy_bits_per_letter());
  const auto L = static_cast<std::size_t>(o.max_letters);
  res.rows.resize(L);
  for (std::size_t i = 0; i < L; ++i) res.rows[i].letters = static_cast<int>(i + 1);

  // Block cipher part: the key space is cut to the low truncated_bits bits,
  // the rest fixed to the true key.
  {
    Cipher cipher(CipherSpec::spn(o.spn_rounds));
    const int bb = cipher.block_bits();
    std::vector<std::string> pool;
    for (auto& s : lang::corpus_sentences()) {
      if (s.size() >= L) pool.push_back(std::move(s));
    }
    if (pool.empty()) throw std::runtime_error("unicity_variety: no corpus sentence is long enough");
    Rng pick(derive_seed(seed, "unicity.fixtures"));
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[uniform_below(pick, i)]);
    const auto nf = std::min(pool.size(), static_cast<std::size_t>(o.fixtures));
    const std::uint64_t low = (std::uint64_t{1} << o.truncated_bits) - 1;
    res.wrong_keys = low;

    std::vector<std::vector<double>> counts(nf, std::vector<double>(L, 0.0));
    parallel_for(nf, o.workers, [&](std::size_t f) {
      Rng rng(derive_seed(seed, "unicity.key", f));
      std::uint64_t key = rng() & 0xFFFF;
      auto kbits = BitString::from_uint(key, 16);
      for (std::size_t l = 1; l <= L; ++l) {
        auto p = lang::encode_padded(std::string_view(pool[f]).substr(0, l), bb);
        auto blocks = to_blocks(cipher.encrypt_ecb(p, kbits), bb);
        std::size_t n = 0;
        for (std::uint64_t j = 0; j <= low; ++j) {
          std::uint64_t k = (key & ~low) | j;
          if (k == key) continue;
          auto d = from_blocks(cipher.decrypt_ecb_words(blocks, k), bb).slice(0, l * lang::kLetterBits);
          if (lang::is_plausible(lm, d, res.theta)) ++n;
        }
        counts[f][l - 1] = static_cast<double>(n);
      }
    });
    for (std::size_t l = 0; l < L; ++l) {
      double sum = 0.0;
      for (std::size_t f = 0; f < nf; ++f) sum += counts[f][l];
      res.rows[l].spn_plausible_keys = sum / static_cast<double>(nf);
    }
  }

  // BitFlip part: every book over {A, B} with one string per letter.
  {
    const int nb = o.bitflip_bits;
    const int h = nb / 2;
    const std::uint64_t space = std::uint64_t{1} << nb;
    // a letter is encodable if some string sits at distance h from it and not from the other
    auto encodable = [&](std::uint64_t x, std::uint64_t y) {
      for (std::uint64_t u = 0; u < space; ++u) {
        if (std::popcount(u ^ x) == h && std::popcount(u ^ y) != h) return true;
      }
      return false;
    };
    std::vector<std::pair<std::uint64_t, std::uint64_t>> family;
    for (std::uint64_t a = 0; a < space; ++a) {
      for (std::uint64_t b = 0; b < space; ++b) {
        // complements (h = nb/2) can never be encoded, so keygen never yields them
        if (a != b && encodable(a, b) && encodable(b, a)) family.emplace_back(a, b);
      }
    }
    res.wrong_books = family.size() - 1;
    auto reads = [&](const std::pair<std::uint64_t, std::uint64_t>& bk, std::uint64_t u) {
      bool a = std::popcount(u ^ bk.first) == h;
      bool b = std::popcount(u ^ bk.second) == h;
      return a != b;
    };
    const auto ns = static_cast<std::size_t>(std::max(1, o.bitflip_streams));
    std::vector<std::vector<double>> noisy(ns, std::vector<double>(L, 0.0));
    std::vector<std::vector<double>> clean(ns, std::vector<double>(L, 0.0));
    parallel_for(ns, o.workers, [&](std::size_t s) {
      Rng rng(derive_seed(seed, "unicity.bitflip", s));
      auto truth_index = uniform_below(rng, family.size());
      const auto& truth = family[truth_index];
      auto book = make_keybook({{'A', {BitString::from_uint(truth.first, static_cast<std::size_t>(nb))}},
                                {'B', {BitString::from_uint(truth.second, static_cast<std::size_t>(nb))}}});
      std::string msg;
      for (std::size_t i = 0; i < L; ++i) msg.push_back(uniform_below(rng, 2) ? 'B' : 'A');
      auto stream_seed = derive_seed(seed, "unicity.stream", s);
      auto to_words = [](const std::vector<BitString>& units) {
        std::vector<std::uint64_t> w;
        for (const auto& u : units) w.push_back(u.to_uint());
        return w;
      };
      auto noisy_units = to_words(bitflip_encode_message(book, msg, o.noise_rate, stream_seed));
      auto clean_units = to_words(bitflip_encode_message(book, msg, 0.0, stream_seed));
      // Position of the l-th message unit in the noisy stream.
      std::vector<std::size_t> letter_pos;
      for (std::size_t i = 0; i < noisy_units.size(); ++i) {
        if (reads(truth, noisy_units[i])) letter_pos.push_back(i);
      }
      for (std::size_t b = 0; b < family.size(); ++b) {
        if (b == truth_index) continue;
        std::size_t seen = 0, next = 0;
        for (std::size_t i = 0; i < noisy_units.size() && next < L; ++i) {
          seen += reads(family[b], noisy_units[i]) ? 1 : 0;
          if (i == letter_pos[next]) {
            if (seen == next + 1) noisy[s][next] += 1.0;
            ++next;
          }
        }
        std::size_t run = 0;
        while (run < L && reads(family[b], clean_units[run])) {
          clean[s][run] += 1.0;
          ++run;
        }
      }
    });
    for (std::size_t l = 0; l < L; ++l) {
      double a = 0.0, c = 0.0;
      for (std::size_t s = 0; s < ns; ++s) {
        a += noisy[s][l];
        c += clean[s][l];
      }
      res.rows[l].bitflip_consistent_books = a / static_cast<double>(ns);
      res.rows[l].bitflip_noiseless_books = c / static_cast<double>(ns);
    }
  }

  // Verdicts.
  for (const auto& r : res.rows) {
    if (r.letters <= res.unicity_letters && r.spn_plausible_keys >= 1.0) res.spn_ambiguous_before_horizon = true;
  }
  if (res.rows.back().spn_plausible_keys < 1.0) {
    std::size_t i = res.rows.size();
    while (i > 0 && res.rows[i - 1].spn_plausible_keys < 1.0) --i;
    res.crossing_letters = res.rows[i].letters;
    res.effective_redundancy = static_cast<double>(o.truncated_bits) / res.crossing_letters;
  }
  res.bitflip_never_collapses = std::all_of(res.rows.begin(), res.rows.end(),
                                            [](const UnicityVarietyRow& r) { return r.bitflip_consistent_books >= 1.0; });
  return res;
}

// ---------------------------------------------------------------------------
// Recipes

namespace {

RunResult recipe_avalanche(const ExperimentConfig& cfg) {
  Artifacts art(cfg, "avalanche");
  const auto trials = static_cast<std::size_t>(positive(cfg.raw, "budget", "trials", 10000));
  auto rep = measure_avalanche(cfg.cipher, trials, derive_seed(cfg.seed, "avalanche"));
  {
    auto out = art.open("avalanche.csv");
    write_avalanche_csv(out, rep, art.meta());
  }
  {
    auto out = art.open("rounds_sweep.csv");
    detail::write_meta(out, art.meta());
    out << "rounds,mean_flip,min_deviation,max_deviation\n";
    for (int r : int_list(cfg.raw, "avalanche", "sweep", "1,2,3,4,5,6")) {
      auto spec = cfg.cipher;
      spec.rounds = r;
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError("avalanche.sweep", e.what());
      }
      auto s = measure_avalanche(spec, trials, derive_seed(cfg.seed, "avalanche.sweep", static_cast<std::uint64_t>(r)));
      out << r << "," << detail::real(s.mean) << "," << detail::real(s.min_deviation) << ","
          << detail::real(s.max_deviation) << "\n";
    }
  }
  art.put("cipher", std::string(to_string(cfg.cipher.family)) + " rounds=" + std::to_string(cfg.cipher.rounds));
  art.put_count("trials", trials);
  art.put("mean_flip_fraction", rep.mean);
  art.put("min_per_bit", *std::min_element(rep.per_bit.begin(), rep.per_bit.end()));
  art.put("max_per_bit", *std::max_element(rep.per_bit.begin(), rep.per_bit.end()));
  art.put("max_deviation", rep.max_deviation);
  return art.finish();
}

RunResult recipe_scatter(const ExperimentConfig& cfg) {
  Artifacts art(cfg, "scatter");
  auto data = generate_analysis_dataset(cfg.cipher, cfg.metrics, cfg.m, derive_seed(cfg.seed, "scatter"), cfg.workers);
  art.add_meta("k0=" + data.k0.to_hex() + " p0=" + data.p0.to_hex() + " c0=" + data.c0.to_hex());
  {
    auto out = art.open("dataset.csv");
    write_dataset_csv(out, data, art.meta());
  }
  MetricId dk, dp;
  try {
    dk = MetricId::parse(cfg.raw.get_or("scatter", "dk", cfg.metrics.front().name()));
    dp = MetricId::parse(cfg.raw.get_or("scatter", "dp", cfg.metrics.front().name()));
    data.column(dk);
    data.column(dp);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scatter.dk", e.what());
  }
  auto sc = project_scatter(data, dk, dp);
  {
    auto out = art.open("scatter_" + dk.name() + "_" + dp.name() + ".csv");
    write_scatter_csv(out, sc, art.meta());
  }
  double worst = 0.0;
  {
    auto out = art.open("correlations.csv");
    detail::write_meta(out, art.meta());
    out << "metric_k,metric_p,spearman\n";
    for (const auto& mk : cfg.metrics) {
      for (const auto& mp : cfg.metrics) {
        double rho = project_scatter(data, mk, mp).spearman();
        if (!std::isnan(rho)) worst = std::max(worst, std::abs(rho));
        out << mk.name() << "," << mp.name() << "," << detail::real(rho) << "\n";
      }
    }
  }
  art.put_count("m", cfg.m);
  art.put("pair", dk.name() + "," + dp.name());
  art.put("spearman", sc.spearman());
  art.put("max_abs_spearman_all_pairs", worst);
  return art.finish();
}

RunResult recipe_ai2_vs_blind(const ExperimentConfig& cfg) {
  Artifacts art(cfg, "ai2-vs-blind");
  const double theta = cfg.resolved_theta();
  art.add_meta("theta=" + detail::real(theta));
  Cipher cipher(cfg.cipher);
  const KeySpace ks{cipher.key_bits()};
  int max_rounds = cfg.max_rounds;
  if (max_rounds == 0) {
    if (!ks.enumerable()) throw ConfigError("budget.max_rounds", "required for key spaces over 24 bits");
    max_rounds = static_cast<int>((ks.size() + cfg.t - 1) / cfg.t) + 1;
  }
  const std::uint64_t blind_budget = std::min<std::uint64_t>(ks.size() == 0 ? ~std::uint64_t{0} : ks.size(),
                                                             static_cast<std::uint64_t>(max_rounds) * cfg.t);
  auto names = split_list(cfg.raw.get_or("ai2-vs-blind", "rankers", "random,hillclimb,regression"));
  for (const auto& n : names) {
    try {
      make_ranker(n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("ai2-vs-blind.rankers", e.what());
    }
  }
  const auto trace_trial = static_cast<std::size_t>(positive(cfg.raw, "ai2-vs-blind", "trace_trial", 0, 0));
  const int stagnation = static_cast<int>(positive(cfg.raw, "ai2-vs-blind", "stagnation_rounds", 5));

  struct Outcome {
    std::uint64_t tried = 0;
    bool found = false;
    bool correct = false;
  };
  const std::size_t columns = names.size() + 1;
  std::vector<Outcome> results(cfg.trials * columns);
  std::vector<SearchState> traces(names.size());
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t trial) {
    auto target = make_attack_target(cfg.cipher, cfg.seed, trial);
    auto blind = blind_bruteforce(cfg.cipher, target.ciphertext, candidate_stop(target.plausible, theta),
                                  SearchOrder::seeded_random, blind_budget, derive_seed(cfg.seed, "blind", trial));
    auto& b = results[trial * columns];
    b.tried = blind.keys_tried();
    b.found = blind.found().has_value();
    b.correct = b.found && blind.found()->key == target.key;
    for (std::size_t r = 0; r < names.size(); ++r) {
      auto ranker = make_ranker(names[r]);
      Ai2Options opts;
      opts.t = cfg.t;
      opts.max_rounds = max_rounds;
      opts.seed = derive_seed(cfg.seed, "ai2." + names[r], trial);
      opts.theta = theta;
      opts.track_spikedness = trial == trace_trial && ks.enumerable(16);
      opts.fallback_metrics.assign(cfg.metrics.begin() + 1, cfg.metrics.end());
      opts.stagnation_rounds = stagnation;
      auto st = ai2_search(cfg.cipher, target.ciphertext, target.plausible, cfg.metrics.front(), *ranker, opts);
      auto& o = results[trial * columns + r + 1];
      o.tried = st.keys_tried();
      o.found = st.found().has_value();
      o.correct = o.found && st.found()->key == target.key;
      if (trial == trace_trial) traces[r] = std::move(st);
    }
  });

  {
    auto out = art.open("trials.csv");
    detail::write_meta(out, art.meta());
    out << "ranker,trial,keys_tried,found,correct_key\n";
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      for (std::size_t c = 0; c < columns; ++c) {
        const auto& o = results[trial * columns + c];
        out << (c == 0 ? std::string("blind") : names[c - 1]) << "," << trial << "," << o.tried << "," << o.found << ","
            << o.correct << "\n";
      }
    }
  }
  if (trace_trial < cfg.trials) {
    for (std::size_t r = 0; r < names.size(); ++r) {
      auto out = art.open("trace_" + names[r] + ".csv");
      write_trace_csv(out, traces[r], art.meta());
    }
  }
  auto column = [&](std::size_t c) {
    std::vector<double> v;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) v.push_back(static_cast<double>(results[trial * columns + c].tried));
    return v;
  };
  auto blind = column(0);
  double blind_median = stats::median(blind);
  art.put_count("trials", cfg.trials);
  art.put("blind_median_keys", blind_median);
  art.put("blind_mean_keys", stats::mean(blind));
  for (std::size_t r = 0; r < names.size(); ++r) {
    auto v = column(r + 1);
    std::size_t ok = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) ok += results[trial * columns + r + 1].correct ? 1 : 0;
    art.put(names[r] + "_median_keys", stats::median(v));
    art.put(names[r] + "_median_ratio_to_blind", stats::median(v) / blind_median);
    art.put_count(names[r] + "_correct", ok);
    if (cfg.trials >= 2) art.put(names[r] + "_ks_p_vs_blind", stats::ks_two_sample(v, blind).p_value);
  }
  return art.finish();
}

RunResult recipe_reverse_avalanche(const ExperimentConfig& cfg) {
  Artifacts art(cfg, "reverse-avalanche");
  const auto series = static_cast<std::size_t>(positive(cfg.raw, "reverse-avalanche", "series", 200));
  const int h = static_cast<int>(positive(cfg.raw, "reverse-avalanche", "h", 4));
  if (h > cfg.cipher.key_bits()) throw ConfigError("reverse-avalanche.h", "exceeds the key length");
  auto rounds = int_list(cfg.raw, "reverse-avalanche", "rounds", "1,4");
  auto rows = art.open("series.csv");
  detail::write_meta(rows, art.meta());
  rows << "rounds,series,order_recovered,minimal_orders,spearman\n";
  auto means = art.open("mean_distance.csv");
  detail::write_meta(means, art.meta());
  means << "rounds,index,mean_distance_to_p0\n";
  for (int r : rounds) {
    auto spec = cfg.cipher;
    spec.rounds = r;
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("reverse-avalanche.rounds", e.what());
    }
    auto s = reverse_avalanche_experiment(spec, series, h, cfg.metrics.front(),
                                          derive_seed(cfg.seed, "reverse-avalanche", static_cast<std::uint64_t>(r)),
                                          cfg.workers);
    for (std::size_t i = 0; i < s.reports.size(); ++i) {
      const auto& p = s.reports[i];
      rows << r << "," << i << "," << p.order_recovered << "," << p.minimal_orders << "," << detail::real(p.spearman) << "\n";
    }
    for (std::size_t i = 0; i < s.mean_endpoint_distance.size(); ++i) {
      means << r << "," << i << "," << detail::real(s.mean_endpoint_distance[i]) << "\n";
    }
    auto ci = stats::binomial_count_interval(series, s.chance, 0.99);
    const std::string pre = "rounds" + std::to_string(r) + "_";
    art.put_count(pre + "recovered", s.recovered);
    art.put(pre + "success_rate", static_cast<double>(s.recovered) / static_cast<double>(series));
    art.put(pre + "chance_rate", s.chance);
    art.put(pre + "chance_99_interval", std::to_string(ci.first) + ".." + std::to_string(ci.second));
    art.put(pre + "p_above_chance", stats::binomial_upper_tail(s.recovered, series, s.chance));
    art.put(pre + "mean_spearman", s.mean_spearman);
  }
  art.put_count("series_per_cipher", series);
  art.put_count("h", static_cast<std::uint64_t>(h));
  return art.finish();
}

RunResult recipe_unicity_variety(const ExperimentConfig& cfg) {
  Artifacts art(cfg, "unicity-variety");
  UnicityVarietyOptions o;
  o.max_letters = static_cast<int>(positive(cfg.raw, "unicity-variety", "max_letters", 40));
  o.fixtures = static_cast<int>(positive(cfg.raw, "unicity-variety", "fixtures", 20));
  o.truncated_bits = static_cast<int>(positive(cfg.raw, "unicity-variety", "truncated_bits", 10));
  o.spn_rounds = cfg.cipher.rounds;
  o.theta = cfg.resolved_theta();
  o.bitflip_bits = static_cast<int>(positive(cfg.raw, "unicity-variety", "bitflip_bits", 6));
  o.bitflip_streams = static_cast<int>(positive(cfg.raw, "unicity-variety", "bitflip_streams", 10));
  o.noise_rate = cfg.raw.get_double_or("unicity-variety", "noise_rate", 0.5);
  o.workers = cfg.workers;
  if (cfg.cipher.family != CipherFamily::spn) throw ConfigError("cipher.family", "unicity-variety needs the spn");
  if (o.truncated_bits > 16) throw ConfigError("unicity-variety.truncated_bits", "must be <= 16");
  if (o.bitflip_bits % 2 != 0 || o.bitflip_bits > 16) throw ConfigError("unicity-variety.bitflip_bits", "must be even and <= 16");
  if (!(o.noise_rate >= 0.0 && o.noise_rate < 1.0)) throw ConfigError("unicity-variety.noise_rate", "must be in [0, 1)");
  auto res = unicity_variety(o, derive_seed(cfg.seed, "unicity-variety"));
  art.add_meta("theta=" + detail::real(res.theta));
  {
    auto out = art.open("unicity_variety.csv");
    detail::write_meta(out, art.meta());
    out << "letters,spn_plausible_keys,bitflip_consistent_books,bitflip_noiseless_books\n";
    for (const auto& r : res.rows) {
      out << r.letters << "," << detail::real(r.spn_plausible_keys) << "," << detail::real(r.bitflip_consistent_books)
          << "," << detail::real(r.bitflip_noiseless_books) << "\n";
    }
  }
  art.put_count("wrong_keys", res.wrong_keys);
  art.put_count("wrong_books", res.wrong_books);
  art.put("unicity_letters", res.unicity_letters);
  art.put("crossing_letters", static_cast<double>(res.crossing_letters));
  art.put("effective_redundancy_bits_per_letter", res.effective_redundancy);
  art.put("spn_ambiguous_before_horizon", res.spn_ambiguous_before_horizon ? "true" : "false");
  art.put("bitflip_never_collapses", res.bitflip_never_collapses ? "true" : "false");
  return art.finish();
}

RunResult recipe_bitflip_demo(const ExperimentConfig& cfg) {
  Artifacts art(cfg, "bitflip-demo");
  const double noise = cfg.raw.get_double_or("bitflip-demo", "noise_rate", 0.5);
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("bitflip-demo.noise_rate", "must be in [0, 1)");
  // '_' stands for space, as in keybook files.
  const auto message = unsym_text(cfg.raw.get_or("bitflip-demo", "message", "ABBA CAB DAD"));
  const auto alphabet = unsym_text(cfg.raw.get_or("bitflip-demo", "alphabet", "ABCD_"));
  const int n_bits = static_cast<int>(positive(cfg.raw, "bitflip-demo", "n_bits", 8, 2));
  const int max_strings = static_cast<int>(positive(cfg.raw, "bitflip-demo", "max_strings", 2));
  for (char c : message) {
    if (alphabet.find(c) == std::string::npos) throw ConfigError("bitflip-demo.message", "uses a symbol outside the alphabet");
  }
  BitFlipKeyBook book;
  try {
    book = bitflip_keygen(alphabet, n_bits, max_strings, derive_seed(cfg.seed, "bitflip-demo.book"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bitflip-demo", e.what());
  }
  auto units = bitflip_encode_message(book, message, noise, derive_seed(cfg.seed, "bitflip-demo.stream"));
  {
    auto out = art.open("keybook.txt");
    write_keybook(out, book);
  }
  {
    auto out = art.open("stream.bin", true);
    write_units(out, as_units(units));
  }
  {
    auto out = art.open("units.csv");
    detail::write_meta(out, art.meta());
    out << "index,bits,decoded\n";
    for (std::size_t i = 0; i < units.size(); ++i) {
      auto d = bitflip_decode(book, units[i]);
      out << i << "," << units[i].to_string() << "," << (d ? sym_text(std::string(1, *d)) : "none") << "\n";
    }
  }
  std::size_t false_decodes = 0;
  if (n_bits <= 16) {
    auto out = art.open("exhaustive.csv");
    detail::write_meta(out, art.meta());
    out << "bits,decoded,noise_eligible\n";
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n_bits); ++v) {
      auto s = BitString::from_uint(v, static_cast<std::size_t>(n_bits));
      auto d = bitflip_decode(book, s);
      bool noise_ok = bitflip_is_noise(book, s);
      if (noise_ok && d) ++false_decodes;
      out << s.to_string() << "," << (d ? sym_text(std::string(1, *d)) : "none") << "," << noise_ok << "\n";
    }
  }
  auto decoded = bitflip_decode_message(book, units);
  art.put("message", sym_text(message));
  art.put("decoded", sym_text(decoded));
  art.put("round_trip", decoded == message ? "ok" : "FAILED");
  art.put_count("units", units.size());
  art.put_count("message_units", message.size());
  art.put_count("noise_false_decodes", false_decodes);
  art.put_count("key_strings", book.total_strings());
  // The per-letter string counts are secret, so the ciphertext says nothing
  // about how large the space of candidate books is.
  art.put("keyspace_bound_from_ciphertext", "none");
  if (decoded != message) throw std::runtime_error("bitflip-demo: decoded text differs from the message");
  return art.finish();
}

RunResult recipe_lattice_demo(const ExperimentConfig& cfg) {
  Artifacts art(cfg, "lattice-demo");
  const double noise = cfg.raw.get_double_or("lattice-demo", "noise_rate", 0.5);
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("lattice-demo.noise_rate", "must be in [0, 1)");
  const auto message = unsym_text(cfg.raw.get_or("lattice-demo", "message", "MEET AT NOON"));
  const auto alphabet = unsym_text(cfg.raw.get_or("lattice-demo", "alphabet", "ABCDEFGHIJKLMNOPQRSTUVWXYZ_"));
  const int circles = static_cast<int>(positive(cfg.raw, "lattice-demo", "circles", 4));
  const int rays = static_cast<int>(positive(cfg.raw, "lattice-demo", "rays", 8, 2));
  const int max_len = static_cast<int>(positive(cfg.raw, "lattice-demo", "max_len", 16));
  for (char c : message) {
    if (alphabet.find(c) == std::string::npos) throw ConfigError("lattice-demo.message", "uses a symbol outside the alphabet");
  }
  PolarLattice lat;
  try {
    lat = lattice_keygen(alphabet, circles, rays, derive_seed(cfg.seed, "lattice-demo.lattice"));
    for (char c : alphabet) {
      const auto& e = lat.letter_map.at(c);
      if (lat.shortest_path(e.start, e.terminal) > max_len) {
        throw std::invalid_argument("max_len is shorter than the path of letter '" + std::string(1, c) + "'");
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("lattice-demo", e.what());
  }
  auto units = lattice_encode_message(lat, message, max_len, noise, derive_seed(cfg.seed, "lattice-demo.stream"));
  {
    auto out = art.open("lattice.txt");
    write_lattice(out, lat);
  }
  {
    auto out = art.open("stream.bin", true);
    write_units(out, as_units(units));
  }
  {
    auto out = art.open("paths.csv");
    detail::write_meta(out, art.meta());
    out << "index,path,decoded\n";
    for (std::size_t i = 0; i < units.size(); ++i) {
      auto d = lattice_decode(lat, units[i]);
      out << i << "," << path_to_string(units[i]) << "," << (d ? sym_text(std::string(1, *d)) : "none") << "\n";
    }
  }
  auto decoded = lattice_decode_message(lat, units);
  art.put("message", sym_text(message));
  art.put("decoded", sym_text(decoded));
  art.put("round_trip", decoded == message ? "ok" : "FAILED");
  art.put_count("units", units.size());
  if (decoded != message) throw std::runtime_error("lattice-demo: decoded text differs from the message");
  return art.finish();
}

RunResult recipe_decoy_demo(const ExperimentConfig& cfg) {
  Artifacts art(cfg, "decoy-demo");
  std::vector<std::string> plain;
  for (int i = 1;; ++i) {
    auto v = cfg.raw.find("decoy-demo", "message" + std::to_string(i));
    if (!v) break;
    plain.push_back(*v);
  }
  if (plain.empty()) plain = {"ATTACK AT DAWN", "RETREAT AT DUSK", "HOLD THE BRIDGE", "SUPPLY LINES CUT"};
  if (plain.size() < 2) throw ConfigError("decoy-demo.message2", "need at least two messages");
  DecoyOptions o;
  o.n_bits = static_cast<int>(positive(cfg.raw, "decoy-demo", "n_bits", 64, 2));
  o.h = static_cast<int>(positive(cfg.raw, "decoy-demo", "h", 16));
  o.max_strings_per_letter = static_cast<int>(positive(cfg.raw, "decoy-demo", "max_strings", 3));
  for (std::size_t i = 0; i < plain.size(); ++i) {
    for (char c : plain[i]) {
      if (o.alphabet.find(c) == std::string::npos) {
        throw ConfigError("decoy-demo.message" + std::to_string(i + 1), "uses a symbol outside A-Z and space");
      }
    }
  }
  DecoyTransmission tx;
  try {
    tx = decoy_channel_send(plain, o, derive_seed(cfg.seed, "decoy-demo"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("decoy-demo", e.what());
  }
  for (std::size_t j = 0; j < tx.books.size(); ++j) {
    auto out = art.open("keybook_" + std::to_string(j + 1) + ".txt");
    write_keybook(out, tx.books[j]);
  }
  {
    auto out = art.open("combined.bin", true);
    write_units(out, as_units(tx.units));
  }
  bool all = true;
  {
    auto out = art.open("decoded.csv");
    detail::write_meta(out, art.meta());
    out << "book,decoded,matches\n";
    for (std::size_t j = 0; j < tx.books.size(); ++j) {
      auto d = decoy_channel_recv(tx.books[j], tx.units);
      all = all && d == plain[j];
      out << j + 1 << "," << sym_text(d) << "," << (d == plain[j]) << "\n";
    }
  }
  art.put_count("messages", plain.size());
  art.put_count("combined_units", tx.units.size());
  art.put_count("reencoded_units", tx.reencoded);
  art.put("every_book_reads_its_message", all ? "true" : "false");
  if (!all) throw std::runtime_error("decoy-demo: a keybook misread the combined ciphertext");
  return art.finish();
}

struct Recipe {
  RecipeInfo info;
  std::function<RunResult(const ExperimentConfig&)> run;
};

const std::vector<Recipe>& registry() {
  static const std::vector<Recipe> r = {
      {{"avalanche", "key-bit avalanche of the configured cipher plus a sweep over round counts",
        "[experiment]\nname = avalanche\nseed = 1\n\n[cipher]\nfamily = spn\nrounds = 4\n\n[budget]\ntrials = 10000\n\n"
        "[avalanche]\nsweep = 1,2,3,4,5,6\n"},
       recipe_avalanche},
      {{"scatter", "wrong-key distance dataset and key/plaintext distance correlations",
        "[experiment]\nname = scatter\nseed = 1\n\n[cipher]\nfamily = spn\nrounds = 4\n\n[budget]\nm = 2000\n\n"
        "[metrics]\nlist = hamming,qsum3,levenshtein,jaccard,cosine,euclidean,manhattan,lcs\n\n"
        "[scatter]\ndk = hamming\ndp = hamming\n"},
       recipe_scatter},
      {{"ai2-vs-blind", "paired trials of ranked key search against blind random-order search",
        "[experiment]\nname = ai2-vs-blind\nseed = 1\n\n[cipher]\nfamily = spn\nrounds = 1\n\n"
        "[budget]\nt = 64\ntrials = 6\n\n[metrics]\nlist = hamming\n\n"
        "[ai2-vs-blind]\nrankers = random,hillclimb,regression\nstagnation_rounds = 5\ntrace_trial = 0\n"},
       recipe_ai2_vs_blind},
      {{"reverse-avalanche", "one-bit key walks and order-recovery probes per round count",
        "[experiment]\nname = reverse-avalanche\nseed = 1\n\n[cipher]\nfamily = spn\n\n[metrics]\nlist = hamming\n\n"
        "[reverse-avalanche]\nrounds = 1,4\nseries = 200\nh = 4\n"},
       recipe_reverse_avalanche},
      {{"unicity-variety", "plausible wrong keys versus message length, against noisy BitFlip keybooks",
        "[experiment]\nname = unicity-variety\nseed = 1\n\n[cipher]\nfamily = spn\nrounds = 4\n\n"
        "[unicity-variety]\nmax_letters = 40\nfixtures = 20\ntruncated_bits = 10\nbitflip_bits = 6\n"
        "bitflip_streams = 10\nnoise_rate = 0.5\n"},
       recipe_unicity_variety},
      {{"bitflip-demo", "BitFlip keybook, noisy stream and exhaustive decode table",
        "[experiment]\nname = bitflip-demo\nseed = 1\n\n[bitflip-demo]\nalphabet = ABCD_\nmessage = ABBA CAB DAD\n"
        "n_bits = 8\nmax_strings = 2\nnoise_rate = 0.5\n"},
       recipe_bitflip_demo},
      {{"lattice-demo", "polar lattice keygen, noisy path stream and decode",
        "[experiment]\nname = lattice-demo\nseed = 1\n\n[lattice-demo]\nmessage = MEET AT NOON\ncircles = 4\nrays = 8\n"
        "max_len = 16\nnoise_rate = 0.5\n"},
       recipe_lattice_demo},
      {{"decoy-demo", "four messages under four keybooks merged into one combined ciphertext",
        "[experiment]\nname = decoy-demo\nseed = 1\n\n[decoy-demo]\nmessage1 = ATTACK AT DAWN\nmessage2 = RETREAT AT DUSK\n"
        "message3 = HOLD THE BRIDGE\nmessage4 = SUPPLY LINES CUT\nn_bits = 64\nh = 16\nmax_strings = 3\n"},
       recipe_decoy_demo},
  };
  return r;
}

}  // namespace

const std::vector<RecipeInfo>& list_recipes() {
  static const std::vector<RecipeInfo> infos = [] {
    std::vector<RecipeInfo> v;
    for (const auto& r : registry()) v.push_back(r.info);
    return v;
  }();
  return infos;
}

std::string nearest_recipe(std::string_view name) {
  std::string best;
  std::size_t best_d = ~std::size_t{0};
  for (const auto& r : registry()) {
    auto d = edit_distance(name, r.info.name);
    if (d < best_d) {
      best_d = d;
      best = r.info.name;
    }
  }
  return best;
}

Config recipe_default_config(std::string_view name) {
  for (const auto& r : registry()) {
    if (r.info.name == name) return Config::parse(r.info.default_config);
  }
  throw ConfigError("experiment.name",
                    "unknown recipe '" + std::string(name) + "'; did you mean '" + nearest_recipe(name) + "'?");
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  const Recipe* recipe = nullptr;
  for (const auto& r : registry()) {
    if (r.info.name == cfg.experiment) recipe = &r;
  }
  if (!recipe) {
    throw ConfigError("experiment.name",
                      "unknown recipe '" + cfg.experiment + "'; did you mean '" + nearest_recipe(cfg.experiment) + "'?");
  }
  std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  std::filesystem::remove(dir / "INCOMPLETE");
  try {
    return recipe->run(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    std::ofstream marker(dir / "INCOMPLETE");
    marker << e.what() << "\n";
    throw;
  }
}

}  // namespace pdcbench

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


// pdcbench command line tool.
// Exit status: 0 success, 1 configuration or usage error, 2 runtime failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdcbench/analysis.hpp"
#include "pdcbench/bitflip.hpp"
#include "pdcbench/cipher.hpp"
#include "pdcbench/config.hpp"
#include "pdcbench/decoy.hpp"
#include "pdcbench/experiments.hpp"
#include "pdcbench/lang.hpp"
#include "pdcbench/lattice.hpp"
#include "pdcbench/rng.hpp"
#include "pdcbench/search.hpp"
#include "pdcbench/stats.hpp"
#include "pdcbench/wire.hpp"

namespace {

using namespace pdcbench;
namespace fs = std::filesystem;

struct Globals {
  std::string config;
  std::uint64_t seed = 1;
  std::string out;
  std::string recipe;
  std::size_t workers = 1;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void kv(const std::string& k, const std::string& v) { std::cout << k << " = " << v << "\n"; }
void kv(const std::string& k, double v) { kv(k, fmt(v)); }
void kv_n(const std::string& k, std::uint64_t v) { kv(k, std::to_string(v)); }

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

Config load_config(const Globals& g) { return g.config.empty() ? Config{} : Config::load(g.config); }

std::ifstream open_in(const std::string& path, const std::string& flag, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw ConfigError(flag, "cannot open '" + path + "'");
  return in;
}

std::string out_dir(const Globals& g) {
  if (!g.out.empty()) return g.out;
  if (const char* env = std::getenv("PDCBENCH_OUT"); env && *env) return env;
  return {};
}

std::ofstream open_out(const Globals& g, const std::string& name, bool binary = false) {
  auto dir = out_dir(g);
  if (dir.empty()) throw ConfigError("--out", "an output directory is required");
  fs::create_directories(dir);
  auto path = (fs::path(dir) / name).string();
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

// [cipher] from the config file, with command line overrides.
CipherSpec cipher_from(const Globals& g, const std::string& family, int rounds) {
  auto cfg = load_config(g);
  if (!family.empty()) cfg.set("cipher", "family", family);
  if (rounds > 0) cfg.set("cipher", "rounds", std::to_string(rounds));
  return CipherSpec::from_config(cfg, "cipher");
}

std::vector<MetricId> metrics_from(const Globals& g, const std::string& list) {
  auto text = list;
  if (text.empty()) text = load_config(g).get_or("metrics", "list", "hamming");
  try {
    auto m = parse_metric_list(text);
    if (m.empty()) throw std::invalid_argument("empty list");
    return m;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("metrics.list", e.what());
  }
}

double theta_from(const Globals& g, std::optional<double> flag) {
  if (flag) return *flag;
  auto cfg = load_config(g);
  if (cfg.has("lang", "theta")) return cfg.get_double_or("lang", "theta", 0.0);
  return lang::default_threshold();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void cmd_run(const Globals& g) {
  Config user = load_config(g);
  std::string name = g.recipe.empty() ? user.get_or("experiment", "name", "") : g.recipe;
  if (name.empty()) throw ConfigError("experiment.name", "give --recipe or [experiment] name");
  Config cfg = recipe_default_config(name);
  for (const auto& [section, entries] : user.sections()) {
    for (const auto& [k, v] : entries) cfg.set(section, k, v);
  }
  cfg.set("experiment", "name", name);
  if (g.seed_opt->count() > 0) cfg.set("experiment", "seed", std::to_string(g.seed));
  if (g.workers_opt->count() > 0) cfg.set("experiment", "workers", std::to_string(g.workers));
  if (auto dir = out_dir(g); !dir.empty()) {
    cfg.set("experiment", "output", dir);
  } else if (!cfg.has("experiment", "output")) {
    cfg.set("experiment", "output", (fs::path("out") / name).string());
  }
  auto ec = ExperimentConfig::from_config(cfg);
  auto res = run_experiment(ec);
  std::cout << res.summary;
  for (const auto& f : res.files) std::cout << "# wrote " << f << "\n";
}

void cmd_recipes(const std::string& show) {
  if (!show.empty()) {
    std::cout << recipe_default_config(show).to_string();
    return;
  }
  for (const auto& r : list_recipes()) std::cout << r.name << "\t" << r.doc << "\n";
}

void cmd_unicity(double key_bits, double redundancy) {
  double ud = lang::unicity_distance(key_bits, redundancy);
  kv("key_entropy_bits", key_bits);
  kv("redundancy_bits_per_letter", redundancy);
  kv("unicity_letters", ud);
}

void cmd_calibrate(std::size_t letters, std::size_t samples, const Globals& g) {
  auto c = g.seed_opt->count() > 0 || letters != 12 || samples != 10000
               ? lang::calibrate_threshold(lang::LanguageModel::english(), lang::corpus_text(), letters, samples,
                                           derive_seed(g.seed, "lang.calibration"))
               : lang::default_calibration();
  kv_n("letters", c.letters);
  kv_n("samples", c.samples);
  kv("english_mean", c.english_mean);
  kv("random_mean", c.random_mean);
  kv("midpoint", c.midpoint);
  kv("threshold", c.threshold);
  kv("english_miss_rate", c.english_miss_rate);
  kv("random_accept_rate", c.random_accept_rate);
}

struct AttackFlags {
  std::string family;
  int rounds = 0;
  std::string ciphertext;
  std::string plaintext;
  std::uint64_t target = 0;
  std::optional<double> theta;
};

void cmd_bruteforce(const Globals& g, const AttackFlags& a, const std::string& order, std::uint64_t budget) {
  auto spec = cipher_from(g, a.family, a.rounds);
  const KeySpace ks{spec.key_bits()};
  if (budget == 0) {
    if (!ks.enumerable()) throw ConfigError("--budget", "required for key spaces over 24 bits");
    budget = ks.size();
  }
  SearchOrder so;
  if (order == "sequential") {
    so = SearchOrder::sequential;
  } else if (order == "random") {
    so = SearchOrder::seeded_random;
  } else {
    throw ConfigError("--order", "expected sequential or random");
  }
  const double theta = theta_from(g, a.theta);
  BitString c;
  StopPredicate stop;
  std::optional<std::uint64_t> truth;
  if (!a.ciphertext.empty()) {
    try {
      c = BitString::parse(a.ciphertext);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--ciphertext", e.what());
    }
    if (c.empty() || c.size() % static_cast<std::size_t>(spec.block_bits()) != 0) {
      throw ConfigError("--ciphertext", "length must be a positive multiple of the block size");
    }
    if (!a.plaintext.empty()) {
      auto p = BitString::parse(a.plaintext);
      stop = [p](const BitString& x) { return x == p; };
    } else {
      stop = [theta](const BitString& x) {
        return lang::is_plausible(lang::LanguageModel::english(), lang::letter_payload(x), theta);
      };
    }
  } else {
    auto t = make_attack_target(spec, g.seed, a.target);
    c = t.ciphertext;
    truth = t.key;
    stop = candidate_stop(t.plausible, theta);
  }
  auto t0 = std::chrono::steady_clock::now();
  auto st = blind_bruteforce(spec, c, stop, so, budget, derive_seed(g.seed, "cli.bruteforce"));
  kv("cipher", std::string(to_string(spec.family)) + " rounds=" + std::to_string(spec.rounds));
  kv("ciphertext", c.to_hex());
  kv_n("keys_tried", st.keys_tried());
  if (st.found()) {
    kv("found_key", st.key_string(st.found()->key).to_hex());
    kv("plaintext", st.found()->plaintext.to_hex());
    kv("plaintext_text", lang::decode_text(st.found()->plaintext));
  } else {
    kv("found_key", "none");
  }
  if (truth) kv("correct", st.found() && st.found()->key == *truth ? "true" : "false");
  kv("wall_time_s", seconds_since(t0));
}

struct Ai2Flags {
  std::string ranker = "hillclimb";
  std::size_t targets = 1;
  std::size_t t = 64;
  int max_rounds = 0;
  std::string metrics;
  int stagnation = 5;
  bool trace = false;
  bool known_plaintext = false;
};

void cmd_ai2(const Globals& g, const AttackFlags& a, const Ai2Flags& f) {
  auto spec = cipher_from(g, a.family, a.rounds);
  const KeySpace ks{spec.key_bits()};
  auto metrics = metrics_from(g, f.metrics);
  int max_rounds = f.max_rounds;
  if (max_rounds == 0) {
    if (!ks.enumerable()) throw ConfigError("--max-rounds", "required for key spaces over 24 bits");
    max_rounds = static_cast<int>((ks.size() + f.t - 1) / f.t) + 1;
  }
  try {
    make_ranker(f.ranker);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--ranker", e.what());
  }
  if (f.targets == 0) throw ConfigError("--targets", "must be positive");
  const double theta = theta_from(g, a.theta);
  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t total = 0;
  bool done = false;
  kv("cipher", std::string(to_string(spec.family)) + " rounds=" + std::to_string(spec.rounds));
  kv("ranker", f.ranker);
  // Outer loop: when the budget for one captured ciphertext runs out, move to
  // the next one.
  for (std::size_t i = 0; i < f.targets && !done; ++i) {
    auto target = make_attack_target(spec, g.seed, a.target + i);
    auto ranker = make_ranker(f.ranker);
    Ai2Options o;
    o.t = f.t;
    o.max_rounds = max_rounds;
    o.seed = derive_seed(g.seed, "cli.ai2", i);
    o.theta = theta;
    o.known_plaintext = f.known_plaintext;
    o.track_spikedness = f.trace && ks.enumerable(16);
    o.fallback_metrics.assign(metrics.begin() + 1, metrics.end());
    o.stagnation_rounds = f.stagnation;
    o.workers = g.workers;
    auto st = ai2_search(spec, target.ciphertext, target.plausible, metrics.front(), *ranker, o);
    total += st.keys_tried();
    const std::string pre = "ciphertext" + std::to_string(i) + "_";
    kv(pre + "value", target.ciphertext.to_hex());
    kv_n(pre + "keys_tried", st.keys_tried());
    kv(pre + "found_key", st.found() ? st.key_string(st.found()->key).to_hex() : "none");
    if (st.found()) kv(pre + "correct", st.found()->key == target.key ? "true" : "false");
    if (f.trace) {
      auto out = open_out(g, "trace_" + std::to_string(i) + ".csv");
      write_trace_csv(out, st, {"pdcbench ai2 ranker=" + f.ranker, "seed=" + std::to_string(g.seed)});
    }
    done = st.found().has_value();
  }
  kv_n("keys_tried_total", total);
  kv("found", done ? "true" : "false");
  kv("wall_time_s", seconds_since(t0));
}

void cmd_reverse(const Globals& g, const AttackFlags& a, std::size_t series, int h, const std::string& metric) {
  auto spec = cipher_from(g, a.family, a.rounds);
  if (h < 1 || h > spec.key_bits()) throw ConfigError("--flips", "must be in [1, key bits]");
  if (series == 0) throw ConfigError("--series", "must be positive");
  auto m = metrics_from(g, metric).front();
  auto t0 = std::chrono::steady_clock::now();
  auto s = reverse_avalanche_experiment(spec, series, h, m, derive_seed(g.seed, "cli.reverse-avalanche"), g.workers);
  kv("cipher", std::string(to_string(spec.family)) + " rounds=" + std::to_string(spec.rounds));
  kv_n("series", s.series);
  kv_n("recovered", s.recovered);
  kv("chance_rate", s.chance);
  auto ci = stats::binomial_count_interval(series, s.chance, 0.99);
  kv("chance_99_interval", std::to_string(ci.first) + ".." + std::to_string(ci.second));
  kv("mean_spearman", s.mean_spearman);
  if (!out_dir(g).empty()) {
    auto out = open_out(g, "reverse_avalanche.csv");
    out << "# pdcbench reverse-avalanche seed=" << g.seed << "\n";
    out << "series,order_recovered,minimal_orders,spearman\n";
    for (std::size_t i = 0; i < s.reports.size(); ++i) {
      out << i << "," << s.reports[i].order_recovered << "," << s.reports[i].minimal_orders << ","
          << fmt(s.reports[i].spearman) << "\n";
    }
  }
  kv("wall_time_s", seconds_since(t0));
}

// ---------------------------------------------------------------------------
// PDC commands

void cmd_bitflip_keygen(const Globals& g, const std::string& alphabet, int n_bits, int max_strings, int h) {
  std::optional<int> hh;
  if (h > 0) hh = h;
  BitFlipKeyBook book;
  try {
    book = bitflip_keygen(upper(alphabet), n_bits, max_strings, g.seed, hh);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bitflip keygen", e.what());
  }
  if (out_dir(g).empty()) {
    write_keybook(std::cout, book);
  } else {
    auto out = open_out(g, "keybook.txt");
    write_keybook(out, book);
    kv_n("strings", book.total_strings());
  }
}

BitFlipKeyBook load_keybook(const std::string& path) {
  auto in = open_in(path, "--keybook");
  try {
    return read_keybook(in);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--keybook", e.what());
  }
}

std::vector<Unit> load_stream(const std::string& path) {
  auto in = open_in(path, "--in", true);
  return read_units(in);
}

void check_message(const std::string& msg, const std::string& alphabet, const std::string& flag) {
  for (char c : msg) {
    if (alphabet.find(c) == std::string::npos) {
      throw ConfigError(flag, "symbol '" + std::string(1, c) + "' is not in the alphabet");
    }
  }
}

void cmd_bitflip_encode(const Globals& g, const std::string& keybook, const std::string& message, double noise) {
  auto book = load_keybook(keybook);
  auto msg = upper(message);
  check_message(msg, book.alphabet, "--message");
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("--noise", "must be in [0, 1)");
  auto units = bitflip_encode_message(book, msg, noise, derive_seed(g.seed, "cli.bitflip.encode"));
  auto out = open_out(g, "stream.bin", true);
  write_units(out, as_units(units));
  kv_n("units", units.size());
}

void cmd_bitflip_decode(const std::string& keybook, const std::string& in) {
  auto book = load_keybook(keybook);
  auto units = bitstring_units(load_stream(in));
  std::cout << bitflip_decode_message(book, units) << "\n";
}

PolarLattice load_lattice(const std::string& path) {
  auto in = open_in(path, "--lattice");
  try {
    return read_lattice(in);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--lattice", e.what());
  }
}

void cmd_lattice_keygen(const Globals& g, const std::string& alphabet, int circles, int rays, bool full) {
  PolarLattice lat;
  try {
    lat = lattice_keygen(upper(alphabet), circles, rays, g.seed, full);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("lattice keygen", e.what());
  }
  if (out_dir(g).empty()) {
    write_lattice(std::cout, lat);
  } else {
    auto out = open_out(g, "lattice.txt");
    write_lattice(out, lat);
    kv_n("letters", lat.letter_map.size());
  }
}

void cmd_lattice_encode(const Globals& g, const std::string& lattice, const std::string& message, int max_len,
                        double noise) {
  auto lat = load_lattice(lattice);
  auto msg = upper(message);
  std::string alphabet;
  for (const auto& [c, e] : lat.letter_map) alphabet.push_back(c);
  check_message(msg, alphabet, "--message");
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("--noise", "must be in [0, 1)");
  std::vector<Path> units;
  try {
    units = lattice_encode_message(lat, msg, max_len, noise, derive_seed(g.seed, "cli.lattice.encode"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--max-len", e.what());
  }
  auto out = open_out(g, "stream.bin", true);
  write_units(out, as_units(units));
  kv_n("units", units.size());
}

void cmd_lattice_decode(const std::string& lattice, const std::string& in) {
  auto lat = load_lattice(lattice);
  auto units = path_units(load_stream(in));
  std::cout << lattice_decode_message(lat, units) << "\n";
}

void cmd_decoy_send(const Globals& g, const std::vector<std::string>& messages, DecoyOptions o) {
  if (messages.size() < 2) throw ConfigError("--message", "give at least two messages");
  std::vector<std::string> plain;
  for (const auto& m : messages) {
    plain.push_back(upper(m));
    check_message(plain.back(), o.alphabet, "--message");
  }
  DecoyTransmission tx;
  try {
    tx = decoy_channel_send(plain, o, g.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("decoy send", e.what());
  }
  for (std::size_t j = 0; j < tx.books.size(); ++j) {
    auto out = open_out(g, "keybook_" + std::to_string(j + 1) + ".txt");
    write_keybook(out, tx.books[j]);
  }
  auto out = open_out(g, "combined.bin", true);
  write_units(out, as_units(tx.units));
  kv_n("messages", plain.size());
  kv_n("units", tx.units.size());
  kv_n("reencoded", tx.reencoded);
}

void cmd_decoy_recv(const std::string& keybook, const std::string& in) {
  auto book = load_keybook(keybook);
  auto units = bitstring_units(load_stream(in));
  std::cout << decoy_channel_recv(book, units) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdcbench: cryptanalysis workbench for toy block ciphers and PDC"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "config file (INI style)");
  g.seed_opt = app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out, "output directory (PDCBENCH_OUT if unset)");
  app.add_option("--recipe", g.recipe, "recipe name for 'run'");
  g.workers_opt = app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);

  std::function<void()> action;

  auto* run = app.add_subcommand("run", "run a named recipe");
  run->callback([&] { action = [&] { cmd_run(g); }; });

  std::string show;
  auto* recipes = app.add_subcommand("recipes", "list recipes");
  recipes->add_option("--show", show, "print the default config of one recipe");
  recipes->callback([&] { action = [&] { cmd_recipes(show); }; });

  double key_bits = 0, redundancy = lang::kDefaultRedundancy;
  auto* unicity = app.add_subcommand("unicity", "Shannon unicity distance in letters");
  unicity->add_option("--key-bits", key_bits, "key entropy in bits")->required();
  unicity->add_option("--redundancy", redundancy, "redundancy in bits per letter");
  unicity->callback([&] { action = [&] { cmd_unicity(key_bits, redundancy); }; });

  std::size_t cal_letters = 12, cal_samples = 10000;
  auto* calibrate = app.add_subcommand("calibrate", "plausibility threshold calibration");
  calibrate->add_option("--letters", cal_letters, "window length in letters")->check(CLI::PositiveNumber);
  calibrate->add_option("--samples", cal_samples, "samples per class")->check(CLI::PositiveNumber);
  calibrate->callback([&] { action = [&] { cmd_calibrate(cal_letters, cal_samples, g); }; });

  AttackFlags atk;
  auto attack_flags = [&](CLI::App* sub) {
    sub->add_option("--family", atk.family, "spn or arx (overrides [cipher] family)");
    sub->add_option("--rounds", atk.rounds, "round count (overrides [cipher] rounds)");
    sub->add_option("--target", atk.target, "index of the generated attack target");
    sub->add_option("--theta", atk.theta, "plausibility threshold");
  };

  std::string order = "random";
  std::uint64_t budget = 0;
  auto* brute = app.add_subcommand("bruteforce", "blind key search");
  attack_flags(brute);
  brute->add_option("--ciphertext", atk.ciphertext, "len:hex ciphertext (default: generated target)");
  brute->add_option("--plaintext", atk.plaintext, "known plaintext as len:hex");
  brute->add_option("--order", order, "sequential or random");
  brute->add_option("--budget", budget, "maximum keys to try (default: whole space)");
  brute->callback([&] { action = [&] { cmd_bruteforce(g, atk, order, budget); }; });

  Ai2Flags af;
  auto* ai2 = app.add_subcommand("ai2", "ranked key search over one or more captured ciphertexts");
  attack_flags(ai2);
  ai2->add_option("--ranker", af.ranker, "random, hillclimb or regression");
  ai2->add_option("--targets", af.targets, "captured ciphertexts to try in turn");
  ai2->add_option("-t,--batch", af.t, "keys per round")->check(CLI::PositiveNumber);
  ai2->add_option("--max-rounds", af.max_rounds, "rounds per ciphertext (default: cover the key space)");
  ai2->add_option("--metrics", af.metrics, "metric list; the first is used until stagnation");
  ai2->add_option("--stagnation", af.stagnation, "rounds without improvement before switching metric");
  ai2->add_flag("--trace", af.trace, "write per-round trace CSVs to --out");
  ai2->add_flag("--known-plaintext", af.known_plaintext, "stop on an exact candidate match");
  ai2->callback([&] { action = [&] { cmd_ai2(g, atk, af); }; });

  std::size_t series = 200;
  int h = 4;
  std::string ra_metric;
  auto* reverse = app.add_subcommand("reverse-avalanche", "one-bit key walks and order recovery");
  attack_flags(reverse);
  reverse->add_option("--series", series, "series count");
  reverse->add_option("--flips", h, "differing key bits per walk");
  reverse->add_option("--metric", ra_metric, "plaintext distance metric");
  reverse->callback([&] { action = [&] { cmd_reverse(g, atk, series, h, ra_metric); }; });

  std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ ", keybook, lattice, in, message;
  int n_bits = 64, max_strings = 3, bf_h = 0, circles = 4, rays = 8, max_len = 16;
  double noise = 0.5;
  bool full = false;

  auto* bitflip = app.add_subcommand("bitflip", "BitFlip keybooks and streams");
  bitflip->require_subcommand(1);
  auto* bk = bitflip->add_subcommand("keygen", "generate a keybook");
  bk->add_option("--alphabet", alphabet, "symbols, '_' for space");
  bk->add_option("--n-bits", n_bits, "bits per key string");
  bk->add_option("--max-strings", max_strings, "most strings per letter");
  bk->add_option("--flips", bf_h, "flip count (default n_bits/2)");
  bk->callback([&] { action = [&] { cmd_bitflip_keygen(g, alphabet, n_bits, max_strings, bf_h); }; });
  auto* be = bitflip->add_subcommand("encode", "encode a message into --out/stream.bin");
  be->add_option("--keybook", keybook, "keybook file")->required();
  be->add_option("--message", message, "plaintext message")->required();
  be->add_option("--noise", noise, "noise rate in [0, 1)");
  be->callback([&] { action = [&] { cmd_bitflip_encode(g, keybook, message, noise); }; });
  auto* bd = bitflip->add_subcommand("decode", "decode a stream");
  bd->add_option("--keybook", keybook, "keybook file")->required();
  bd->add_option("--in", in, "stream file")->required();
  bd->callback([&] { action = [&] { cmd_bitflip_decode(keybook, in); }; });

  auto* lat = app.add_subcommand("lattice", "polar lattice keys and paths");
  lat->require_subcommand(1);
  auto* lk = lat->add_subcommand("keygen", "generate a lattice key");
  lk->add_option("--alphabet", alphabet, "symbols, '_' for space");
  lk->add_option("--circles", circles, "circle count");
  lk->add_option("--rays", rays, "ray count");
  lk->add_flag("--full-extent", full, "every ray reaches the outer circle");
  lk->callback([&] { action = [&] { cmd_lattice_keygen(g, alphabet, circles, rays, full); }; });
  auto* le = lat->add_subcommand("encode", "encode a message into --out/stream.bin");
  le->add_option("--lattice", lattice, "lattice file")->required();
  le->add_option("--message", message, "plaintext message")->required();
  le->add_option("--max-len", max_len, "longest path in steps");
  le->add_option("--noise", noise, "noise rate in [0, 1)");
  le->callback([&] { action = [&] { cmd_lattice_encode(g, lattice, message, max_len, noise); }; });
  auto* ld = lat->add_subcommand("decode", "decode a stream");
  ld->add_option("--lattice", lattice, "lattice file")->required();
  ld->add_option("--in", in, "stream file")->required();
  ld->callback([&] { action = [&] { cmd_lattice_decode(lattice, in); }; });

  std::vector<std::string> messages;
  DecoyOptions dopt;
  auto* decoy = app.add_subcommand("decoy", "decoy channel");
  decoy->require_subcommand(1);
  auto* ds = decoy->add_subcommand("send", "one keybook per message, combined stream in --out");
  ds->add_option("--message", messages, "repeat once per message")->required();
  ds->add_option("--n-bits", dopt.n_bits, "bits per key string");
  ds->add_option("--flips", dopt.h, "flip count");
  ds->add_option("--max-strings", dopt.max_strings_per_letter, "most strings per letter");
  ds->callback([&] { action = [&] { cmd_decoy_send(g, messages, dopt); }; });
  auto* dr = decoy->add_subcommand("recv", "read the combined stream with one keybook");
  dr->add_option("--keybook", keybook, "keybook file")->required();
  dr->add_option("--in", in, "combined stream file")->required();
  dr->callback([&] { action = [&] { cmd_decoy_recv(keybook, in); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    if (action) action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

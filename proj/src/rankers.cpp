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


#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <Eigen/Dense>

#include "pdcbench/rng.hpp"
#include "pdcbench/search.hpp"
#include "pdcbench/stats.hpp"

namespace pdcbench {

namespace {

std::uint64_t key_mask(int key_bits) {
  return key_bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << key_bits) - 1;
}

std::vector<double> softmax_neg(std::span<const double> scores, double tau) {
  std::vector<double> w(scores.size());
  if (w.empty()) return w;
  double lo = *std::min_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-(scores[i] - lo) / tau);
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

void fill_features(Eigen::Ref<Eigen::VectorXd> x, std::uint64_t key, int key_bits) {
  x(0) = 1.0;
  for (int i = 0; i < key_bits; ++i) x(i + 1) = ((key >> (key_bits - 1 - i)) & 1U) ? 1.0 : -1.0;
}

std::vector<double> solve_ridge(const Eigen::MatrixXd& xtx, const Eigen::VectorXd& xty, double ridge) {
  Eigen::MatrixXd a = xtx;
  a.diagonal().array() += ridge;
  Eigen::VectorXd beta = a.ldlt().solve(xty);
  return {beta.data(), beta.data() + beta.size()};
}

class RandomRanker final : public Ranker {
 public:
  std::string name() const override { return "random"; }

  void reset(int key_bits, std::uint64_t seed) override {
    key_bits_ = key_bits;
    perm_.emplace(KeySpace{key_bits}.size(), seed);
    seen_.clear();
  }

  void observe(const RankedKeys& omega, int) override {
    for (const auto& r : omega.ordered) seen_.insert(r.key);
  }

  std::vector<std::uint64_t> propose(std::size_t t) override {
    std::vector<std::uint64_t> out;
    while (out.size() < t && !perm_->exhausted()) {
      auto k = perm_->next();
      if (seen_.insert(k).second) out.push_back(k);
    }
    return out;
  }

  std::vector<double> weights(std::span<const std::uint64_t> untried) const override {
    return std::vector<double>(untried.size(), 1.0 / static_cast<double>(untried.size()));
  }

 private:
  int key_bits_ = 16;
  std::optional<LazyPermutation> perm_;
  std::unordered_set<std::uint64_t> seen_;
};

class HillClimbRanker final : public Ranker {
 public:
  explicit HillClimbRanker(int patience) : patience_(patience) {}

  std::string name() const override { return "hillclimb"; }

  void reset(int key_bits, std::uint64_t seed) override {
    key_bits_ = key_bits;
    rng_.seed(seed);
    dist_.clear();
    next_bit_.clear();
    frontier_.clear();
    known_.clear();
    best_ = std::numeric_limits<double>::infinity();
    best_key_ = 0;
    last_round_ = -1;
    stagnant_ = 0;
    improved_ = false;
  }

  void observe(const RankedKeys& omega, int round) override {
    if (round != last_round_) {
      if (last_round_ >= 0) stagnant_ = improved_ ? 0 : stagnant_ + 1;
      improved_ = false;
      last_round_ = round;
    }
    for (const auto& r : omega.ordered) {
      known_.insert(r.key);
      auto it = dist_.find(r.key);
      if (it != dist_.end()) {
        frontier_.erase({it->second, r.key});
        it->second = r.min_distance;
      } else {
        dist_.emplace(r.key, r.min_distance);
        next_bit_.emplace(r.key, 0);
      }
      if (next_bit_[r.key] < key_bits_) frontier_.insert({r.min_distance, r.key});
      if (r.min_distance < best_ || (r.min_distance == best_ && r.key < best_key_)) {
        if (r.min_distance < best_) improved_ = true;
        best_ = r.min_distance;
        best_key_ = r.key;
      }
    }
    // A re-scored run may have raised the old incumbent; recompute.
    if (omega.ordered.size() == dist_.size() && !dist_.empty()) {
      best_ = std::numeric_limits<double>::infinity();
      for (const auto& [k, d] : dist_) {
        if (d < best_ || (d == best_ && k < best_key_)) {
          best_ = d;
          best_key_ = k;
        }
      }
    }
  }

  std::vector<std::uint64_t> propose(std::size_t t) override {
    std::vector<std::uint64_t> out;
    if (best_ == 0.0) return out;
    const std::uint64_t n = KeySpace{key_bits_}.size();
    auto space_full = [&] { return n != 0 && known_.size() >= n; };
    auto take = [&](std::uint64_t k) {
      if (known_.insert(k).second) out.push_back(k);
    };

    std::size_t perturb = stagnant_ >= patience_ ? t / 2 : 0;
    while (out.size() < t - perturb && !frontier_.empty()) {
      auto [d, k] = *frontier_.begin();
      int& b = next_bit_[k];
      std::uint64_t nb = k ^ (std::uint64_t{1} << (key_bits_ - 1 - b));
      ++b;
      if (b >= key_bits_) frontier_.erase(frontier_.begin());
      take(nb);
    }
    for (std::size_t tries = 0; out.size() < t && tries < 20 * t && !space_full(); ++tries) {
      std::uint64_t k = best_key_;
      int flips = 2 + static_cast<int>(uniform_below(rng_, 2));
      for (int f = 0; f < flips; ++f) k ^= std::uint64_t{1} << uniform_below(rng_, static_cast<std::uint64_t>(key_bits_));
      take(k);
    }
    while (out.size() < t && !space_full()) take(rng_() & key_mask(key_bits_));
    return out;
  }

  std::vector<double> weights(std::span<const std::uint64_t> untried) const override {
    std::vector<double> hd(untried.size());
    for (std::size_t i = 0; i < untried.size(); ++i) hd[i] = std::popcount(untried[i] ^ best_key_);
    return softmax_neg(hd, 1.0);
  }

 private:
  int patience_;
  int key_bits_ = 16;
  Rng rng_;
  std::unordered_map<std::uint64_t, double> dist_;
  std::unordered_map<std::uint64_t, int> next_bit_;
  std::set<std::pair<double, std::uint64_t>> frontier_;
  std::unordered_set<std::uint64_t> known_;
  double best_ = std::numeric_limits<double>::infinity();
  std::uint64_t best_key_ = 0;
  int last_round_ = -1;
  int stagnant_ = 0;
  bool improved_ = false;
};

class RegressionRanker final : public Ranker {
 public:
  RegressionRanker(double tau, double ridge) : tau_(tau), ridge_(ridge) {
    if (!(tau > 0.0)) throw std::invalid_argument("regression ranker: tau must be positive");
  }

  std::string name() const override { return "regression"; }

  void reset(int key_bits, std::uint64_t seed) override {
    key_bits_ = key_bits;
    rng_.seed(seed);
    keys_.clear();
    y_.clear();
    index_.clear();
    known_.clear();
    xtx_ = Eigen::MatrixXd::Zero(key_bits + 1, key_bits + 1);
    beta_.clear();
    dirty_ = true;
  }

  void observe(const RankedKeys& omega, int) override {
    Eigen::VectorXd x(key_bits_ + 1);
    for (const auto& r : omega.ordered) {
      known_.insert(r.key);
      auto [it, fresh] = index_.try_emplace(r.key, keys_.size());
      if (fresh) {
        keys_.push_back(r.key);
        y_.push_back(r.min_distance);
        fill_features(x, r.key, key_bits_);
        xtx_.noalias() += x * x.transpose();
      } else {
        y_[it->second] = r.min_distance;
      }
    }
    dirty_ = true;
  }

  std::vector<std::uint64_t> propose(std::size_t t) override {
    refit();
    std::vector<std::uint64_t> out;
    const std::uint64_t n = KeySpace{key_bits_}.size();
    if (beta_.empty()) {
      while (out.size() < t && (n == 0 || known_.size() < n)) {
        auto k = rng_() & key_mask(key_bits_);
        if (known_.insert(k).second) out.push_back(k);
      }
      return out;
    }
    // Keys in ascending order of prediction: start from the minimizer and
    // enumerate flip sets by increasing cost.
    std::uint64_t opt = 0;
    std::vector<std::pair<double, int>> cost;
    for (int i = 0; i < key_bits_; ++i) {
      double b = beta_[static_cast<std::size_t>(i + 1)];
      if (b < 0) opt |= std::uint64_t{1} << (key_bits_ - 1 - i);
      cost.emplace_back(2.0 * std::abs(b), i);
    }
    std::sort(cost.begin(), cost.end());
    struct Node {
      double cost;
      std::uint64_t flips;
      int last;
      bool operator>(const Node& o) const { return cost > o.cost || (cost == o.cost && flips > o.flips); }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
    pq.push({0.0, 0, -1});
    auto bit_of = [&](int j) { return std::uint64_t{1} << (key_bits_ - 1 - cost[static_cast<std::size_t>(j)].second); };
    std::uint64_t budget = known_.size() + t + 1;
    while (out.size() < t && !pq.empty() && budget-- > 0) {
      Node nd = pq.top();
      pq.pop();
      std::uint64_t key = opt;
      for (int j = 0; j < key_bits_; ++j) {
        if ((nd.flips >> j) & 1U) key ^= bit_of(j);
      }
      if (known_.insert(key).second) out.push_back(key);
      int nx = nd.last + 1;
      if (nx < key_bits_) {
        double c = cost[static_cast<std::size_t>(nx)].first;
        pq.push({nd.cost + c, nd.flips | (std::uint64_t{1} << nx), nx});
        if (nd.last >= 0) {
          double cl = cost[static_cast<std::size_t>(nd.last)].first;
          pq.push({nd.cost - cl + c, (nd.flips & ~(std::uint64_t{1} << nd.last)) | (std::uint64_t{1} << nx), nx});
        }
      }
    }
    return out;
  }

  std::vector<double> weights(std::span<const std::uint64_t> untried) const override {
    const_cast<RegressionRanker*>(this)->refit();
    std::vector<double> pred(untried.size(), 0.0);
    if (!beta_.empty()) {
      for (std::size_t i = 0; i < untried.size(); ++i) pred[i] = predict(untried[i]);
    }
    return softmax_neg(pred, tau_);
  }

 private:
  double predict(std::uint64_t key) const {
    double v = beta_[0];
    for (int i = 0; i < key_bits_; ++i) {
      v += beta_[static_cast<std::size_t>(i + 1)] * (((key >> (key_bits_ - 1 - i)) & 1U) ? 1.0 : -1.0);
    }
    return v;
  }

  void refit() {
    if (!dirty_) return;
    dirty_ = false;
    if (keys_.size() < 2) {
      beta_.clear();
      return;
    }
    auto ranks = stats::average_ranks(y_);
    const double scale = 1.0 / static_cast<double>(ranks.size() - 1);
    Eigen::VectorXd xty = Eigen::VectorXd::Zero(key_bits_ + 1);
    Eigen::VectorXd x(key_bits_ + 1);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      fill_features(x, keys_[i], key_bits_);
      xty += x * ((ranks[i] - 1.0) * scale);
    }
    beta_ = solve_ridge(xtx_, xty, ridge_);
  }

  double tau_;
  double ridge_;
  int key_bits_ = 16;
  Rng rng_;
  std::vector<std::uint64_t> keys_;
  std::vector<double> y_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::unordered_set<std::uint64_t> known_;
  Eigen::MatrixXd xtx_;
  std::vector<double> beta_;
  bool dirty_ = true;
};

}  // namespace

std::unique_ptr<Ranker> make_random_ranker() { return std::make_unique<RandomRanker>(); }
std::unique_ptr<Ranker> make_hill_climb_ranker(int patience) { return std::make_unique<HillClimbRanker>(patience); }
std::unique_ptr<Ranker> make_regression_ranker(double tau, double ridge) {
  return std::make_unique<RegressionRanker>(tau, ridge);
}

std::vector<std::string> builtin_ranker_names() { return {"random", "hillclimb", "regression"}; }

std::unique_ptr<Ranker> make_ranker(const std::string& name) {
  if (name == "random") return make_random_ranker();
  if (name == "hillclimb") return make_hill_climb_ranker();
  if (name == "regression") return make_regression_ranker();
  throw std::invalid_argument("unknown ranker '" + name + "' (expected random, hillclimb or regression)");
}

BitRegression BitRegression::fit(int key_bits, std::span<const std::uint64_t> keys, std::span<const double> y,
                                 double ridge) {
  if (keys.size() != y.size()) throw std::invalid_argument("BitRegression::fit: size mismatch");
  if (keys.empty()) throw std::invalid_argument("BitRegression::fit: no samples");
  Eigen::MatrixXd xtx = Eigen::MatrixXd::Zero(key_bits + 1, key_bits + 1);
  Eigen::VectorXd xty = Eigen::VectorXd::Zero(key_bits + 1);
  Eigen::VectorXd x(key_bits + 1);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    fill_features(x, keys[i], key_bits);
    xtx.noalias() += x * x.transpose();
    xty += x * y[i];
  }
  BitRegression r;
  r.key_bits_ = key_bits;
  r.beta_ = solve_ridge(xtx, xty, ridge);
  return r;
}

double BitRegression::predict(std::uint64_t key) const {
  double v = beta_.at(0);
  for (int i = 0; i < key_bits_; ++i) {
    v += beta_[static_cast<std::size_t>(i + 1)] * (((key >> (key_bits_ - 1 - i)) & 1U) ? 1.0 : -1.0);
  }
  return v;
}

}  // namespace pdcbench

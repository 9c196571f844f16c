// Copyright 2026 The decept-cue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Gini random forest with bootstrap bookkeeping, OOB accuracy, stratified
// k-fold cross-validation and binary classification metrics.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "decept/common.hpp"
#include "decept/features.hpp"
#include "decept/stats.hpp"

namespace decept {

struct RFConfig {
  std::size_t n_trees = 50;
  std::size_t min_leaf = 5;
  double feature_fraction = 0.5;
  std::uint64_t seed = 42;

  void validate() const {
    if (n_trees < 1) throw Error(Errc::out_of_range, "n_trees must be >= 1");
    if (min_leaf < 1) throw Error(Errc::out_of_range, "min_leaf must be >= 1");
    if (!(feature_fraction > 0.0 && feature_fraction <= 1.0))
      throw Error(Errc::out_of_range, "feature_fraction must be in (0, 1]");
  }
};

inline double gini(double n0, double n1) {
  const double n = n0 + n1;
  if (n == 0) return 0.0;
  const double p0 = n0 / n, p1 = n1 / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0.0;  // go left when x <= threshold
  int left = -1;
  int right = -1;
  int label = 0;  // leaf prediction
};

struct Tree {
  std::vector<TreeNode> nodes;

  int predict(const double* x) const {
    int i = 0;
    while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
      const TreeNode& n = nodes[static_cast<std::size_t>(i)];
      i = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(i)].label;
  }
};

struct Forest {
  RFConfig config;
  std::vector<std::string> feature_names;
  std::vector<std::optional<double>> medians;  // nullopt: column had no values
  std::vector<Tree> trees;
  std::vector<double> importances;             // aligned with feature_names
  std::vector<int> train_labels;
  std::vector<std::array<std::uint32_t, 2>> oob_votes;  // per training row
  bool any_split = false;

  double importance(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
      if (feature_names[i] == name) return importances[i];
    throw Error(Errc::column_mismatch, "unknown feature '" + name + "'");
  }
};

struct Prediction {
  std::vector<Label> labels;
  std::vector<double> prob_deceptive;
};

namespace detail {

inline std::optional<double> median_of(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

/// Dense row-major matrix with missing cells replaced by the given medians.
inline std::vector<double> impute(const FeatureMatrix& m, const std::vector<std::size_t>& cols,
                                  const std::vector<std::optional<double>>& medians) {
  std::vector<double> x(m.n_rows() * cols.size());
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Value& v = m.rows[r][cols[c]];
      x[r * cols.size() + c] = v ? *v : medians[c].value_or(0.0);
    }
  return x;
}

struct TreeBuilder {
  const std::vector<double>& x;
  const std::vector<int>& y;
  std::size_t d;
  const RFConfig& cfg;
  Rng rng;
  std::vector<double> importance;
  double total = 0;

  Tree build(std::vector<std::size_t> sample) {
    importance.assign(d, 0.0);
    total = static_cast<double>(sample.size());
    Tree t;
    grow(t, sample);
    return t;
  }

  int grow(Tree& t, std::vector<std::size_t>& idx) {
    const int me = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    double n1 = 0;
    for (auto i : idx) n1 += y[i];
    const double n = static_cast<double>(idx.size());
    const double n0 = n - n1;
    t.nodes[static_cast<std::size_t>(me)].label = n1 > n0 ? 1 : 0;
    if (idx.size() < 2 * cfg.min_leaf || n0 == 0 || n1 == 0) return me;

    // Draw features without replacement until ceil(ff * d) of them vary
    // within the node (constant ones do not count), then scan the drawn set
    // in index order.
    const std::size_t k = std::min<std::size_t>(
        d, static_cast<std::size_t>(std::ceil(cfg.feature_fraction * static_cast<double>(d) - 1e-12)));
    std::vector<std::size_t> feats(d);
    std::iota(feats.begin(), feats.end(), 0);
    std::size_t drawn = 0, varying = 0;
    while (varying < k && drawn < d) {
      std::swap(feats[drawn], feats[drawn + rng.index(d - drawn)]);
      const std::size_t f = feats[drawn++];
      const double first = x[idx.front() * d + f];
      for (auto i : idx)
        if (x[i * d + f] != first) {
          ++varying;
          break;
        }
    }
    feats.resize(drawn);
    std::sort(feats.begin(), feats.end());

    const double parent = gini(n0, n1);
    double best_gain = 0.0;
    int best_f = -1;
    double best_thr = 0.0;
    std::vector<std::size_t> order(idx);
    for (std::size_t f : feats) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a * d + f] < x[b * d + f]; });
      double l1 = 0;
      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
        l1 += y[order[pos]];
        const double a = x[order[pos] * d + f], b = x[order[pos + 1] * d + f];
        if (a == b) continue;
        const double nl = static_cast<double>(pos + 1), nr = n - nl;
        if (nl < static_cast<double>(cfg.min_leaf) || nr < static_cast<double>(cfg.min_leaf)) continue;
        const double l0 = nl - l1, r1 = n1 - l1, r0 = nr - r1;
        const double gain = parent - (nl / n) * gini(l0, l1) - (nr / n) * gini(r0, r1);
        if (gain > best_gain) {
          best_gain = gain;
          best_f = static_cast<int>(f);
          best_thr = a + (b - a) / 2.0;
        }
      }
    }
    if (best_f < 0) return me;
    importance[static_cast<std::size_t>(best_f)] += (n / total) * best_gain;
    std::vector<std::size_t> left, right;
    for (auto i : idx) (x[i * d + static_cast<std::size_t>(best_f)] <= best_thr ? left : right).push_back(i);
    std::vector<std::size_t>().swap(idx);
    const int l = grow(t, left);
    const int r = grow(t, right);
    TreeNode& node = t.nodes[static_cast<std::size_t>(me)];
    node.feature = best_f;
    node.threshold = best_thr;
    node.left = l;
    node.right = r;
    return me;
  }
};

}  // namespace detail

inline Forest train_random_forest(const FeatureMatrix& m, const RFConfig& cfg = {}) {
  cfg.validate();
  m.validate();
  if (m.n_rows() == 0 || m.n_cols() == 0) throw Error(Errc::empty_matrix, "feature matrix has no rows or columns");
  const auto n_dec = std::count(m.labels.begin(), m.labels.end(), Label::deceptive);
  if (n_dec == 0 || n_dec == static_cast<std::ptrdiff_t>(m.n_rows()))
    throw Error(Errc::single_class, "training data contains a single class");

  Forest f;
  f.config = cfg;
  f.feature_names = m.feature_names;
  const std::size_t n = m.n_rows(), d = m.n_cols();
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<double> present;
    for (const auto& r : m.rows)
      if (r[c]) present.push_back(*r[c]);
    f.medians.push_back(detail::median_of(std::move(present)));
  }
  std::vector<std::size_t> cols(d);
  std::iota(cols.begin(), cols.end(), 0);
  const std::vector<double> x = detail::impute(m, cols, f.medians);
  for (Label l : m.labels) f.train_labels.push_back(as_int(l));

  f.trees.resize(cfg.n_trees);
  std::vector<std::vector<double>> imps(cfg.n_trees);
  std::vector<std::vector<bool>> inbag(cfg.n_trees);
  parallel_for(cfg.n_trees, [&](std::size_t t) {
    Rng rng(derive_seed(cfg.seed, t));
    std::vector<std::size_t> sample(n);
    inbag[t].assign(n, false);
    for (auto& s : sample) {
      s = rng.index(n);
      inbag[t][s] = true;
    }
    detail::TreeBuilder b{x, f.train_labels, d, cfg, Rng(rng.next()), {}, 0};
    f.trees[t] = b.build(std::move(sample));
    imps[t] = std::move(b.importance);
  });

  f.importances.assign(d, 0.0);
  for (const auto& imp : imps) {
    const double s = std::accumulate(imp.begin(), imp.end(), 0.0);
    if (s <= 0) continue;
    f.any_split = true;
    for (std::size_t c = 0; c < d; ++c) f.importances[c] += imp[c] / s;
  }
  const double s = std::accumulate(f.importances.begin(), f.importances.end(), 0.0);
  if (s > 0)
    for (auto& v : f.importances) v /= s;

  f.oob_votes.assign(n, {0, 0});
  for (std::size_t t = 0; t < cfg.n_trees; ++t)
    for (std::size_t r = 0; r < n; ++r)
      if (!inbag[t][r]) ++f.oob_votes[r][static_cast<std::size_t>(f.trees[t].predict(&x[r * d]))];
  return f;
}

/// Majority vote; probability is the deceptive vote fraction and a 50/50
/// split is labelled truthful.
inline Prediction predict(const Forest& f, const FeatureMatrix& m) {
  std::vector<std::size_t> cols;
  for (const auto& name : f.feature_names) {
    auto c = m.column(name);
    if (!c) throw Error(Errc::column_mismatch, "input lacks training column '" + name + "'");
    cols.push_back(*c);
  }
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    if (m.rows[r].size() != m.n_cols()) throw Error(Errc::column_mismatch, "row " + std::to_string(r) + " is ragged");
  const std::vector<double> x = detail::impute(m, cols, f.medians);
  const std::size_t d = cols.size();
  Prediction p;
  p.labels.resize(m.n_rows());
  p.prob_deceptive.resize(m.n_rows());
  parallel_for(m.n_rows(), [&](std::size_t r) {
    std::size_t votes = 0;
    for (const auto& t : f.trees) votes += static_cast<std::size_t>(t.predict(&x[r * d]));
    const double prob = static_cast<double>(votes) / static_cast<double>(f.trees.size());
    p.prob_deceptive[r] = prob;
    p.labels[r] = 2 * votes > f.trees.size() ? Label::deceptive : Label::truthful;
  });
  return p;
}

inline double oob_accuracy(const Forest& f) {
  std::size_t used = 0, correct = 0;
  for (std::size_t r = 0; r < f.oob_votes.size(); ++r) {
    const auto& v = f.oob_votes[r];
    if (v[0] + v[1] == 0) continue;
    ++used;
    const int pred = v[1] > v[0] ? 1 : 0;
    if (pred == f.train_labels[r]) ++correct;
  }
  if (used == 0) throw Error(Errc::no_oob_rows, "every row is in every bootstrap sample");
  return static_cast<double>(correct) / static_cast<double>(used);
}

// ---------------------------------------------------------------------------
// Metrics and cross-validation

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
};

/// Positive class = deceptive. Zero denominators yield 0 and set a flag.
inline Metrics metrics(const std::vector<Label>& pred, const std::vector<Label>& truth) {
  if (pred.size() != truth.size())
    throw Error(Errc::length_mismatch,
                "predictions and truth differ in length (" + std::to_string(pred.size()) + " vs " +
                    std::to_string(truth.size()) + ")");
  double tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == Label::deceptive, t = truth[i] == Label::deceptive;
    if (p && t) ++tp;
    else if (p) ++fp;
    else if (t) ++fn;
    else ++tn;
  }
  Metrics m;
  m.accuracy = pred.empty() ? 0.0 : (tp + tn) / static_cast<double>(pred.size());
  if (tp + fp == 0) m.precision_undefined = true;
  else m.precision = tp / (tp + fp);
  if (tp + fn == 0) m.recall_undefined = true;
  else m.recall = tp / (tp + fn);
  if (m.precision + m.recall == 0) m.f1_undefined = true;
  else m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

struct CVReport {
  std::vector<Metrics> per_fold;
  Metrics mean;
  Metrics std;  // sample standard deviation across folds
  std::vector<std::size_t> fold_of;  // fold index per row
  std::uint64_t seed = 0;
  std::size_t k = 0;
};

/// Stratified fold assignment: each class is shuffled, then rows are dealt
/// round-robin with the counter continuing across classes.
inline std::vector<std::size_t> stratified_folds(const std::vector<Label>& labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(Errc::too_few_rows, "k must be at least 2");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<std::size_t>(as_int(labels[i]))].push_back(i);
  for (int c = 0; c < 2; ++c)
    if (by_class[static_cast<std::size_t>(c)].size() < k)
      throw Error(Errc::too_few_rows, std::string("class ") + to_string(static_cast<Label>(c)) + " has " +
                                          std::to_string(by_class[static_cast<std::size_t>(c)].size()) +
                                          " rows, fewer than k=" + std::to_string(k));
  Rng rng(seed);
  std::vector<std::size_t> fold(labels.size());
  std::size_t counter = 0;
  for (auto& idx : by_class) {
    rng.shuffle(idx);
    for (auto i : idx) fold[i] = counter++ % k;
  }
  return fold;
}

inline CVReport cross_validate(const FeatureMatrix& m, const RFConfig& cfg = {}, std::size_t k = 5,
                               std::optional<std::uint64_t> fold_seed = std::nullopt) {
  CVReport rep;
  rep.k = k;
  rep.seed = fold_seed.value_or(cfg.seed);
  rep.fold_of = stratified_folds(m.labels, k, rep.seed);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> tr, te;
    for (std::size_t i = 0; i < m.n_rows(); ++i) (rep.fold_of[i] == f ? te : tr).push_back(i);
    RFConfig c = cfg;
    c.seed = derive_seed(cfg.seed, 0x10000 + f);
    const Forest forest = train_random_forest(m.subset_rows(tr), c);
    const FeatureMatrix test = m.subset_rows(te);
    rep.per_fold.push_back(metrics(predict(forest, test).labels, test.labels));
  }
  auto agg = [&](double Metrics::*field) {
    std::vector<double> v;
    for (const auto& pm : rep.per_fold) v.push_back(pm.*field);
    rep.mean.*field = mean(v);
    rep.std.*field = std::sqrt(sample_variance(v));
  };
  agg(&Metrics::accuracy);
  agg(&Metrics::precision);
  agg(&Metrics::recall);
  agg(&Metrics::f1);
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::ordered_json to_json(const Metrics& m) {
  nlohmann::ordered_json j;
  j["accuracy"] = m.accuracy;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  if (m.precision_undefined) j["precision_undefined"] = true;
  if (m.recall_undefined) j["recall_undefined"] = true;
  if (m.f1_undefined) j["f1_undefined"] = true;
  return j;
}

inline nlohmann::ordered_json to_json(const CVReport& r) {
  nlohmann::ordered_json j;
  j["k"] = r.k;
  j["fold_seed"] = r.seed;
  j["per_fold"] = nlohmann::ordered_json::array();
  for (const auto& m : r.per_fold) j["per_fold"].push_back(to_json(m));
  j["mean"] = to_json(r.mean);
  j["std"] = to_json(r.std);
  return j;
}

inline nlohmann::ordered_json to_json(const Forest& f) {
  nlohmann::ordered_json j;
  j["format"] = "decept-forest";
  j["version"] = 1;
  j["config"] = {{"n_trees", f.config.n_trees},
                 {"min_leaf", f.config.min_leaf},
                 {"feature_fraction", f.config.feature_fraction},
                 {"criterion", "gini"},
                 {"seed", f.config.seed}};
  j["feature_names"] = f.feature_names;
  j["medians"] = nlohmann::ordered_json::array();
  for (const auto& m : f.medians) j["medians"].push_back(m ? nlohmann::ordered_json(*m) : nlohmann::ordered_json());
  j["importances"] = f.importances;
  j["train_labels"] = f.train_labels;
  j["oob_votes"] = nlohmann::ordered_json::array();
  for (const auto& v : f.oob_votes) j["oob_votes"].push_back({v[0], v[1]});
  j["trees"] = nlohmann::ordered_json::array();
  for (const auto& t : f.trees) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : t.nodes) nodes.push_back({n.feature, n.threshold, n.left, n.right, n.label});
    j["trees"].push_back(nodes);
  }
  return j;
}

inline Forest forest_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "decept-forest" || j.at("version") != 1)
      throw Error(Errc::schema, "not a version-1 forest artifact");
    Forest f;
    const auto& c = j.at("config");
    f.config.n_trees = c.at("n_trees").get<std::size_t>();
    f.config.min_leaf = c.at("min_leaf").get<std::size_t>();
    f.config.feature_fraction = c.at("feature_fraction").get<double>();
    f.config.seed = c.at("seed").get<std::uint64_t>();
    f.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    for (const auto& m : j.at("medians"))
      f.medians.push_back(m.is_null() ? std::nullopt : std::optional<double>(m.get<double>()));
    f.importances = j.at("importances").get<std::vector<double>>();
    f.train_labels = j.at("train_labels").get<std::vector<int>>();
    for (const auto& v : j.at("oob_votes")) f.oob_votes.push_back({v.at(0).get<std::uint32_t>(), v.at(1).get<std::uint32_t>()});
    for (const auto& t : j.at("trees")) {
      Tree tree;
      for (const auto& n : t)
        tree.nodes.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(), n.at(3).get<int>(),
                              n.at(4).get<int>()});
      f.trees.push_back(std::move(tree));
    }
    f.any_split = std::accumulate(f.importances.begin(), f.importances.end(), 0.0) > 0;
    if (f.medians.size() != f.feature_names.size() || f.importances.size() != f.feature_names.size())
      throw Error(Errc::schema, "forest artifact arrays are not aligned");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::schema, std::string("forest artifact: ") + e.what());
  }
}

}  // namespace decept

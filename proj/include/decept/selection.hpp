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

// Three-stage feature selection (importance pruning, colinearity pruning,
// permutation selection) and shared-feature tables across domains.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "decept/common.hpp"
#include "decept/features.hpp"
#include "decept/forest.hpp"
#include "decept/stats.hpp"

namespace decept {

struct StageLogEntry {
  std::string stage;  // importance | colinearity | permutation
  std::vector<std::string> removed;
  double before = 0.0;
  double after = 0.0;
  bool accepted = false;
  std::string metric;  // oob | validation | cv_accuracy
};

struct FeatureSet {
  std::string domain;
  std::vector<std::string> names;
  std::map<std::string, double> importance;
  std::vector<StageLogEntry> stage_log;
};

enum class GuardMetric { oob, validation };

struct SelectionConfig {
  RFConfig rf;
  GuardMetric guard = GuardMetric::oob;
  double validation_fraction = 0.2;
  double colinearity_cut = 0.05;
  std::size_t cv_folds = 5;
  std::size_t permutation_repeats = 3;
};

namespace detail {

/// Stratified holdout: the first ceil(fraction * class size) of each
/// shuffled class go to validation.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> holdout_split(const std::vector<Label>& labels,
                                                                                   double fraction,
                                                                                   std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<std::size_t>(as_int(labels[i]))].push_back(i);
  Rng rng(seed);
  std::vector<std::size_t> train, val;
  for (auto& idx : by_class) {
    rng.shuffle(idx);
    const auto nv = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(idx.size())));
    for (std::size_t k = 0; k < idx.size(); ++k) (k < nv ? val : train).push_back(idx[k]);
  }
  std::sort(train.begin(), train.end());
  std::sort(val.begin(), val.end());
  return {train, val};
}

inline double accuracy_of(const std::vector<Label>& pred, const std::vector<Label>& truth) {
  return metrics(pred, truth).accuracy;
}

struct Guard {
  const FeatureMatrix& m;
  const SelectionConfig& cfg;

  const char* metric_name() const { return cfg.guard == GuardMetric::oob ? "oob" : "validation"; }

  /// Trains on `names` and returns (guard score, forest trained on all rows).
  std::pair<double, Forest> score(const std::vector<std::string>& names) const {
    const FeatureMatrix sub = m.select(names);
    Forest f = train_random_forest(sub, cfg.rf);
    if (cfg.guard == GuardMetric::oob) return {oob_accuracy(f), std::move(f)};
    auto [tr, va] = holdout_split(sub.labels, cfg.validation_fraction, derive_seed(cfg.rf.seed, 0x5eed));
    const Forest fv = train_random_forest(sub.subset_rows(tr), cfg.rf);
    const FeatureMatrix vm = sub.subset_rows(va);
    return {accuracy_of(predict(fv, vm).labels, vm.labels), std::move(f)};
  }
};

inline std::map<std::string, double> importance_map(const Forest& f) {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < f.feature_names.size(); ++i) out[f.feature_names[i]] = f.importances[i];
  return out;
}

inline std::vector<std::string> without(const std::vector<std::string>& v, const std::string& x) {
  std::vector<std::string> out;
  for (const auto& s : v)
    if (s != x) out.push_back(s);
  return out;
}

}  // namespace detail

/// Stage 1: repeatedly drop the least important feature (ties broken by
/// name) while the guard accuracy does not decrease.
inline FeatureSet rf_importance_prune(const FeatureMatrix& m, const SelectionConfig& cfg,
                                      const std::string& domain = {}) {
  detail::Guard guard{m, cfg};
  FeatureSet fs;
  fs.domain = domain;
  fs.names = m.feature_names;
  auto [base, forest] = guard.score(fs.names);
  while (fs.names.size() > 1) {
    const auto imp = detail::importance_map(forest);
    std::string victim;
    double lowest = 0.0;
    for (const auto& [name, v] : imp)  // map order = lexicographic tie-break
      if (victim.empty() || v < lowest) {
        victim = name;
        lowest = v;
      }
    const auto trial = detail::without(fs.names, victim);
    auto [s, f2] = guard.score(trial);
    const bool ok = s >= base;
    fs.stage_log.push_back({"importance", {victim}, base, s, ok, guard.metric_name()});
    if (!ok) break;
    fs.names = trial;
    base = s;
    forest = std::move(f2);
  }
  fs.importance = detail::importance_map(forest);
  return fs;
}

/// Imputed column values (missing -> column median, or 0 if none).
inline std::vector<double> dense_column(const FeatureMatrix& m, std::size_t c) {
  std::vector<double> present;
  for (const auto& r : m.rows)
    if (r[c]) present.push_back(*r[c]);
  const double fill = detail::median_of(present).value_or(0.0);
  std::vector<double> out;
  for (const auto& r : m.rows) out.push_back(r[c] ? *r[c] : fill);
  return out;
}

/// Distance 1 - |spearman|; a constant column is at distance 1 from all.
inline std::vector<std::vector<double>> colinearity_distances(const FeatureMatrix& m,
                                                              const std::vector<std::string>& names) {
  std::vector<std::vector<double>> cols;
  for (const auto& n : names) {
    auto c = m.column(n);
    if (!c) throw Error(Errc::column_mismatch, "unknown feature '" + n + "'");
    cols.push_back(dense_column(m, *c));
  }
  const std::size_t k = names.size();
  std::vector<std::vector<double>> d(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      double dist = 1.0;
      try {
        dist = 1.0 - std::fabs(spearman(cols[i], cols[j]));
      } catch (const Error& e) {
        if (e.code() != Errc::constant_vector && e.code() != Errc::too_few_values) throw;
      }
      d[i][j] = d[j][i] = std::max(0.0, dist);
    }
  return d;
}

/// Stage 2: cluster at 1 - |rho| <= cut; per cluster keep the member with
/// the highest stage-1 importance and try to drop the rest, each guarded.
inline FeatureSet colinearity_prune(const FeatureMatrix& m, const FeatureSet& fs, const SelectionConfig& cfg) {
  FeatureSet out = fs;
  if (fs.names.size() < 2) return out;
  detail::Guard guard{m, cfg};
  const Partition p = single_linkage_cluster(colinearity_distances(m, fs.names), cfg.colinearity_cut);
  auto importance = [&](const std::string& n) {
    auto it = fs.importance.find(n);
    return it == fs.importance.end() ? 0.0 : it->second;
  };
  auto [base, forest] = guard.score(out.names);
  for (const auto& cluster : p.clusters()) {
    if (cluster.size() < 2) continue;
    std::vector<std::string> members;
    for (auto i : cluster) members.push_back(fs.names[i]);
    std::sort(members.begin(), members.end());
    std::string keep = members.front();
    for (const auto& n : members)
      if (importance(n) > importance(keep)) keep = n;
    for (const auto& n : members) {
      if (n == keep) continue;
      const auto trial = detail::without(out.names, n);
      auto [s, f2] = guard.score(trial);
      const bool ok = s >= base;
      out.stage_log.push_back({"colinearity", {n}, base, s, ok, guard.metric_name()});
      if (!ok) continue;
      out.names = trial;
      base = s;
      forest = std::move(f2);
    }
  }
  out.importance = detail::importance_map(forest);
  return out;
}

/// Mean held-out accuracy drop when each feature is permuted, over
/// stratified folds and repeats.
inline std::map<std::string, double> permutation_importance(const FeatureMatrix& m, const std::vector<std::string>& names,
                                                            const SelectionConfig& cfg) {
  const FeatureMatrix sub = m.select(names);
  const auto folds = stratified_folds(sub.labels, cfg.cv_folds, cfg.rf.seed);
  std::vector<double> drop(names.size(), 0.0);
  double trials = 0;
  for (std::size_t f = 0; f < cfg.cv_folds; ++f) {
    std::vector<std::size_t> tr, te;
    for (std::size_t i = 0; i < sub.n_rows(); ++i) (folds[i] == f ? te : tr).push_back(i);
    RFConfig rc = cfg.rf;
    rc.seed = derive_seed(cfg.rf.seed, 0x10000 + f);
    const Forest forest = train_random_forest(sub.subset_rows(tr), rc);
    const FeatureMatrix test = sub.subset_rows(te);
    const double base = detail::accuracy_of(predict(forest, test).labels, test.labels);
    for (std::size_t rep = 0; rep < cfg.permutation_repeats; ++rep) {
      Rng rng(derive_seed(cfg.rf.seed, 0x20000 + f * 1000 + rep));
      for (std::size_t c = 0; c < names.size(); ++c) {
        FeatureMatrix shuffled = test;
        std::vector<std::size_t> perm(test.n_rows());
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        for (std::size_t r = 0; r < test.n_rows(); ++r) shuffled.rows[r][c] = test.rows[perm[r]][c];
        drop[c] += base - detail::accuracy_of(predict(forest, shuffled).labels, test.labels);
      }
    }
    trials += static_cast<double>(cfg.permutation_repeats);
  }
  std::map<std::string, double> out;
  for (std::size_t c = 0; c < names.size(); ++c) out[names[c]] = trials > 0 ? drop[c] / trials : 0.0;
  return out;
}

/// Stage 3: candidates are features with permutation importance <= 0, least
/// important first; each drop is kept only if k-fold CV accuracy does not
/// decrease. The last feature is never dropped.
inline FeatureSet permutation_select(const FeatureMatrix& m, const FeatureSet& fs, const SelectionConfig& cfg) {
  FeatureSet out = fs;
  if (fs.names.size() < 2) return out;
  const auto perm = permutation_importance(m, fs.names, cfg);
  std::vector<std::pair<double, std::string>> candidates;
  for (const auto& [n, v] : perm)
    if (v <= 0.0) candidates.emplace_back(v, n);
  std::sort(candidates.begin(), candidates.end());
  if (candidates.empty()) return out;
  auto cv_acc = [&](const std::vector<std::string>& names) {
    return cross_validate(m.select(names), cfg.rf, cfg.cv_folds).mean.accuracy;
  };
  double base = cv_acc(out.names);
  for (const auto& [v, n] : candidates) {
    if (out.names.size() <= 1) break;
    const auto trial = detail::without(out.names, n);
    const double s = cv_acc(trial);
    const bool ok = s >= base;
    out.stage_log.push_back({"permutation", {n}, base, s, ok, "cv_accuracy"});
    if (!ok) continue;
    out.names = trial;
    base = s;
  }
  const Forest f = train_random_forest(m.select(out.names), cfg.rf);
  out.importance = detail::importance_map(f);
  return out;
}

/// All three stages in order.
inline FeatureSet select_features(const FeatureMatrix& m, const SelectionConfig& cfg, const std::string& domain = {}) {
  FeatureSet fs = rf_importance_prune(m, cfg, domain);
  fs = colinearity_prune(m, fs, cfg);
  return permutation_select(m, fs, cfg);
}

inline nlohmann::ordered_json to_json(const FeatureSet& fs) {
  nlohmann::ordered_json j;
  j["domain"] = fs.domain;
  j["names"] = fs.names;
  nlohmann::ordered_json imp = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fs.importance) imp[k] = v;
  j["importance"] = imp;
  j["stage3"] = "permutation";
  j["stage_log"] = nlohmann::ordered_json::array();
  for (const auto& e : fs.stage_log)
    j["stage_log"].push_back({{"stage", e.stage},
                              {"removed", e.removed},
                              {"metric", e.metric},
                              {"before", e.before},
                              {"after", e.after},
                              {"accepted", e.accepted}});
  return j;
}

inline FeatureSet feature_set_from_json(const nlohmann::json& j, const std::string& where = "feature set") {
  if (!j.is_object() || !j.contains("domain") || !j["domain"].is_string() || !j.contains("names") ||
      !j["names"].is_array())
    throw Error(Errc::schema, where + ": needs string 'domain' and array 'names'");
  FeatureSet fs;
  fs.domain = j["domain"].get<std::string>();
  for (const auto& n : j["names"]) {
    if (!n.is_string()) throw Error(Errc::schema, where + ": names must be strings");
    fs.names.push_back(n.get<std::string>());
  }
  if (j.contains("importance") && j["importance"].is_object())
    for (const auto& [k, v] : j["importance"].items())
      if (v.is_number()) fs.importance[k] = v.get<double>();
  if (j.contains("stage_log") && j["stage_log"].is_array())
    for (const auto& e : j["stage_log"])
      fs.stage_log.push_back({e.value("stage", ""), e.value("removed", std::vector<std::string>{}),
                              e.value("before", 0.0), e.value("after", 0.0), e.value("accepted", false),
                              e.value("metric", "")});
  return fs;
}

inline FeatureSet load_feature_set(const std::string& path) {
  try {
    return feature_set_from_json(nlohmann::json::parse(read_file(path)), path);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Shared features

struct SharedGroup {
  std::uint32_t mask = 0;  // bit i = domain i
  std::vector<std::string> exact_features;
  std::size_t n() const { return exact_features.size(); }
};

struct SharedFeatureTable {
  std::vector<std::string> domains;
  std::vector<std::set<std::string>> sets;
  std::vector<SharedGroup> groups;  // N > 0 only, in display order

  std::uint32_t full_mask() const { return static_cast<std::uint32_t>((1u << domains.size()) - 1); }

  std::uint32_t mask_of(const std::vector<std::string>& subset) const {
    std::uint32_t m = 0;
    for (const auto& d : subset) {
      auto it = std::find(domains.begin(), domains.end(), d);
      if (it == domains.end()) throw Error(Errc::schema, "unknown domain '" + d + "'");
      m |= 1u << static_cast<unsigned>(it - domains.begin());
    }
    return m;
  }

  std::size_t n_of(std::uint32_t mask) const {
    for (const auto& g : groups)
      if (g.mask == mask) return g.n();
    return 0;
  }

  /// |intersection of the member sets|.
  std::size_t cc_direct(std::uint32_t mask) const {
    std::size_t count = 0;
    const int first = std::countr_zero(mask);
    for (const auto& f : sets[static_cast<std::size_t>(first)]) {
      bool all = true;
      for (std::size_t i = 0; i < sets.size() && all; ++i)
        if ((mask >> i) & 1u) all = sets[i].count(f) > 0;
      if (all) ++count;
    }
    return count;
  }
};

inline std::string subset_label(const SharedFeatureTable& t, std::uint32_t mask) {
  if (mask == t.full_mask()) return "All";
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < t.domains.size(); ++i)
    if ((mask >> i) & 1u) parts.push_back(t.domains[i]);
  return join(parts, ", ");
}

namespace detail {

inline bool ci_less(const std::string& a, const std::string& b) {
  const std::string la = ascii_lower(a), lb = ascii_lower(b);
  if (la != lb) return la < lb;
  return a < b;
}

/// Display order: larger subsets first, then by the sorted list of member
/// domain indices.
inline bool subset_before(std::uint32_t a, std::uint32_t b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa > pb;
  std::vector<int> ia, ib;
  for (int i = 0; i < 32; ++i) {
    if ((a >> i) & 1u) ia.push_back(i);
    if ((b >> i) & 1u) ib.push_back(i);
  }
  return ia < ib;
}

}  // namespace detail

/// Decomposes per-domain sets into exact-membership groups shared by two or
/// more domains.
inline SharedFeatureTable shared_features(const std::vector<FeatureSet>& sets) {
  if (sets.size() < 2) throw Error(Errc::schema, "shared-feature analysis needs at least 2 domains");
  if (sets.size() > 16) throw Error(Errc::schema, "at most 16 domains are supported");
  SharedFeatureTable t;
  for (const auto& fs : sets) {
    if (std::find(t.domains.begin(), t.domains.end(), fs.domain) != t.domains.end())
      throw Error(Errc::duplicate_domain, "domain '" + fs.domain + "' appears more than once");
    t.domains.push_back(fs.domain);
    t.sets.emplace_back(fs.names.begin(), fs.names.end());
  }
  std::map<std::string, std::uint32_t> membership;
  for (std::size_t i = 0; i < t.sets.size(); ++i)
    for (const auto& f : t.sets[i]) membership[f] |= 1u << i;
  std::map<std::uint32_t, std::vector<std::string>> by_mask;
  for (const auto& [f, mask] : membership)
    if (std::popcount(mask) >= 2) by_mask[mask].push_back(f);
  for (auto& [mask, feats] : by_mask) {
    std::sort(feats.begin(), feats.end(), detail::ci_less);
    t.groups.push_back({mask, feats});
  }
  std::sort(t.groups.begin(), t.groups.end(),
            [](const SharedGroup& a, const SharedGroup& b) { return detail::subset_before(a.mask, b.mask); });
  return t;
}

/// CC(S) as the sum of N(T) over supersets T of S, cross-checked against the
/// direct intersection size.
inline std::size_t cumulative_count(const SharedFeatureTable& t, std::uint32_t mask) {
  std::size_t cc = 0;
  for (const auto& g : t.groups)
    if ((g.mask & mask) == mask) cc += g.n();
  const std::size_t direct = t.cc_direct(mask);
  if (cc != direct)
    throw std::logic_error("cumulative count mismatch for " + subset_label(t, mask) + ": " + std::to_string(cc) +
                           " vs " + std::to_string(direct));
  return cc;
}

/// CC for every subset of two or more domains.
inline std::map<std::uint32_t, std::size_t> cumulative_counts(const SharedFeatureTable& t) {
  std::map<std::uint32_t, std::size_t> out;
  for (std::uint32_t mask = 1; mask <= t.full_mask(); ++mask)
    if (std::popcount(mask) >= 2) out[mask] = cumulative_count(t, mask);
  return out;
}

/// Markdown table `Subset | N | Common Features | CC`, one row per group.
inline std::string shared_table_markdown(const SharedFeatureTable& t) {
  std::string out = "| Subset | N | Common Features | CC |\n|---|---|---|---|\n";
  for (const auto& g : t.groups)
    out += "| " + subset_label(t, g.mask) + " | " + std::to_string(g.n()) + " | " + join(g.exact_features, ", ") +
           " | " + std::to_string(cumulative_count(t, g.mask)) + " |\n";
  return out;
}

}  // namespace decept

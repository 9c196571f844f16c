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

// Cross-domain experiments: stratified splits, random-forest cross
// evaluation, score tables, multi-domain regression and coin-flip
// generalization tests.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "decept/common.hpp"
#include "decept/corpus.hpp"
#include "decept/csv.hpp"
#include "decept/features.hpp"
#include "decept/forest.hpp"
#include "decept/stats.hpp"

namespace decept {

struct DomainSplit {
  Corpus train, validate, test;
};

/// Stratified by class; per class the three sizes follow largest-remainder
/// rounding of ratio * class size. Each part keeps corpus order.
inline DomainSplit split_domain(const Corpus& c, const std::array<double, 3>& ratios, std::uint64_t seed) {
  double sum = 0;
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(Errc::ratio_error, "split ratios must lie in [0,1]");
    sum += r;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw Error(Errc::ratio_error, "split ratios sum to " + format_double(sum) + ", not 1");
  if (c.documents.empty()) throw Error(Errc::too_few_rows, "cannot split an empty corpus");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < c.documents.size(); ++i)
    by_class[static_cast<std::size_t>(as_int(c.documents[i].label))].push_back(i);
  Rng rng(seed);
  std::array<std::vector<std::size_t>, 3> parts;
  for (auto& idx : by_class) {
    rng.shuffle(idx);
    const double n = static_cast<double>(idx.size());
    std::array<std::size_t, 3> size{};
    std::array<double, 3> frac{};
    std::size_t assigned = 0;
    for (int k = 0; k < 3; ++k) {
      const double q = ratios[static_cast<std::size_t>(k)] * n;
      size[static_cast<std::size_t>(k)] = static_cast<std::size_t>(std::floor(q));
      frac[static_cast<std::size_t>(k)] = q - std::floor(q);
      assigned += size[static_cast<std::size_t>(k)];
    }
    std::array<int, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return frac[static_cast<std::size_t>(a)] > frac[static_cast<std::size_t>(b)]; });
    for (std::size_t k = 0; assigned < idx.size(); ++k, ++assigned) ++size[static_cast<std::size_t>(order[k % 3])];
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k)
      for (std::size_t j = 0; j < size[static_cast<std::size_t>(k)]; ++j) parts[static_cast<std::size_t>(k)].push_back(idx[pos++]);
  }
  DomainSplit s;
  Corpus* out[3] = {&s.train, &s.validate, &s.test};
  for (int k = 0; k < 3; ++k) {
    auto& p = parts[static_cast<std::size_t>(k)];
    std::sort(p.begin(), p.end());
    out[k]->name = c.name;
    out[k]->provenance = c.provenance;
    for (auto i : p) out[k]->documents.push_back(c.documents[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Score tables

struct ScoreEntry {
  std::string train_domain;
  std::string eval_domain;
  std::string run_id;
  double f1 = 0.0;
  bool converged = true;
};

struct ScoreTable {
  std::vector<ScoreEntry> entries;

  /// Domain names in order of first appearance (train column, then eval).
  std::vector<std::string> train_domains() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (std::find(out.begin(), out.end(), e.train_domain) == out.end()) out.push_back(e.train_domain);
    return out;
  }
  std::vector<std::string> eval_domains() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (std::find(out.begin(), out.end(), e.eval_domain) == out.end()) out.push_back(e.eval_domain);
    return out;
  }
};

inline ScoreTable parse_scores(std::string_view text) {
  const auto recs = csv::parse(text);
  ScoreTable t;
  if (recs.empty()) return t;
  const auto& h = recs.front();
  const std::size_t ct = csv::column_index(h, "train_domain"), ce = csv::column_index(h, "eval_domain"),
                    cr = csv::column_index(h, "run_id"), cf = csv::column_index(h, "f1"),
                    cc = csv::column_index(h, "converged");
  for (std::size_t r = 1; r < recs.size(); ++r) {
    const auto& f = recs[r].fields;
    const std::string where = "line " + std::to_string(recs[r].line);
    if (f.size() != h.fields.size()) throw Error(Errc::parse, where + ": expected " + std::to_string(h.fields.size()) + " fields");
    ScoreEntry e;
    e.train_domain = f[ct];
    e.eval_domain = f[ce];
    e.run_id = f[cr];
    char* end = nullptr;
    e.f1 = std::strtod(f[cf].c_str(), &end);
    if (f[cf].empty() || end != f[cf].c_str() + f[cf].size() || std::isnan(e.f1))
      throw Error(Errc::parse, where + ": bad f1 value '" + f[cf] + "'");
    if (e.f1 < 0.0 || e.f1 > 1.0) throw Error(Errc::range_error, where + ": f1 " + f[cf] + " outside [0,1]");
    const std::string conv = ascii_lower(trim(f[cc]));
    if (conv == "true" || conv == "1" || conv == "yes") e.converged = true;
    else if (conv == "false" || conv == "0" || conv == "no") e.converged = false;
    else throw Error(Errc::parse, where + ": bad converged value '" + f[cc] + "'");
    t.entries.push_back(std::move(e));
  }
  return t;
}

inline ScoreTable load_scores(const std::string& path) { return parse_scores(read_file(path)); }

inline std::string scores_to_csv(const ScoreTable& t, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += csv::row({"train_domain", "eval_domain", "run_id", "f1", "converged"});
  for (const auto& e : t.entries)
    out += csv::row({e.train_domain, e.eval_domain, e.run_id, format_double(e.f1), e.converged ? "true" : "false"});
  return out;
}

// ---------------------------------------------------------------------------
// Cross evaluation with random forests

struct CrossEvalConfig {
  RFConfig rf;
  std::size_t runs = 5;
  std::array<double, 3> ratios = {0.8, 0.1, 0.1};
  std::uint64_t seed = 42;
  FeatureOptions features;
  /// Restrict the matrix to these columns when non-empty.
  std::vector<std::string> columns;
};

/// Trains `runs` forests per domain (seed-varied) on its train split and
/// scores F1 on every domain's test split.
inline ScoreTable cross_eval_rf(const std::vector<Corpus>& domains, const std::vector<std::string>& names,
                                const CrossEvalConfig& cfg) {
  if (domains.size() < 2) throw Error(Errc::schema, "cross evaluation needs at least 2 domains");
  if (names.size() != domains.size()) throw Error(Errc::length_mismatch, "one name per domain is required");
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw Error(Errc::duplicate_domain, "domain '" + n + "' appears more than once");
  std::vector<FeatureMatrix> train, test;
  for (std::size_t d = 0; d < domains.size(); ++d) {
    const DomainSplit s = split_domain(domains[d], cfg.ratios, derive_seed(cfg.seed, d));
    FeatureMatrix tr = build_feature_matrix(s.train, cfg.features);
    FeatureMatrix te = build_feature_matrix(s.test, cfg.features);
    if (!cfg.columns.empty()) {
      tr = tr.select(cfg.columns);
      te = te.select(cfg.columns);
    }
    train.push_back(std::move(tr));
    test.push_back(std::move(te));
  }
  const std::size_t nd = domains.size();
  std::vector<std::vector<ScoreEntry>> cells(nd * cfg.runs);
  parallel_for(cells.size(), [&](std::size_t i) {
    const std::size_t x = i / cfg.runs, r = i % cfg.runs;
    RFConfig rc = cfg.rf;
    rc.seed = derive_seed(cfg.seed, 1000 * (x + 1) + r);
    const Forest f = train_random_forest(train[x], rc);
    for (std::size_t y = 0; y < nd; ++y) {
      const auto p = predict(f, test[y]);
      cells[i].push_back({names[x], names[y], std::to_string(r), metrics(p.labels, test[y].labels).f1, true});
    }
  });
  ScoreTable t;
  for (auto& c : cells)
    for (auto& e : c) t.entries.push_back(std::move(e));
  return t;
}

// ---------------------------------------------------------------------------
// Multi-domain correlation

struct PairRegression {
  std::string domain_a;  // x
  std::string domain_b;  // y
  Regression regression;
  std::size_t n_used = 0;
  bool significant = false;  // p_slope < alpha
  bool degenerate = false;   // constant x; slope/r reported as 0, p as 1
};

struct CorrelationReport {
  std::string trained_on;
  std::vector<std::string> domains;
  std::size_t excluded_nonconverged = 0;
  std::map<std::string, std::vector<std::string>> outlier_runs;  // eval domain -> run ids
  std::vector<PairRegression> pairs;
  double alpha = 0.05;
};

/// Runs trained on `trained_on`: drop non-converged runs, flag IQR outliers
/// per evaluation domain, then regress F1 between every pair of domains over
/// the runs that are inliers in both.
inline CorrelationReport multidomain_correlation(const ScoreTable& t, const std::string& trained_on,
                                                 double alpha = 0.05, double k = 1.5) {
  CorrelationReport rep;
  rep.trained_on = trained_on;
  rep.alpha = alpha;
  std::map<std::string, std::map<std::string, double>> f1;  // domain -> run -> f1
  std::set<std::string> bad_runs;
  for (const auto& e : t.entries)
    if (e.train_domain == trained_on && !e.converged) bad_runs.insert(e.run_id);
  rep.excluded_nonconverged = bad_runs.size();
  for (const auto& e : t.entries) {
    if (e.train_domain != trained_on || bad_runs.count(e.run_id)) continue;
    if (std::find(rep.domains.begin(), rep.domains.end(), e.eval_domain) == rep.domains.end())
      rep.domains.push_back(e.eval_domain);
    f1[e.eval_domain][e.run_id] = e.f1;
  }
  if (rep.domains.size() < 2) throw Error(Errc::too_few_runs, "need scores on at least 2 domains for '" + trained_on + "'");
  std::map<std::string, std::set<std::string>> outliers;
  for (const auto& d : rep.domains) {
    std::vector<std::string> runs;
    std::vector<double> vals;
    for (const auto& [run, v] : f1[d]) {
      runs.push_back(run);
      vals.push_back(v);
    }
    if (vals.size() < 4)
      throw Error(Errc::too_few_runs, "domain '" + d + "' has " + std::to_string(vals.size()) + " converged runs");
    const auto mask = iqr_outliers(vals, k);
    for (std::size_t i = 0; i < runs.size(); ++i)
      if (mask[i]) outliers[d].insert(runs[i]);
    rep.outlier_runs[d] = std::vector<std::string>(outliers[d].begin(), outliers[d].end());
  }
  for (std::size_t a = 0; a < rep.domains.size(); ++a)
    for (std::size_t b = a + 1; b < rep.domains.size(); ++b) {
      const auto &da = rep.domains[a], &db = rep.domains[b];
      std::vector<double> x, y;
      for (const auto& [run, v] : f1[da]) {
        auto it = f1[db].find(run);
        if (it == f1[db].end() || outliers[da].count(run) || outliers[db].count(run)) continue;
        x.push_back(v);
        y.push_back(it->second);
      }
      if (x.size() < 4)
        throw Error(Errc::too_few_runs, "pair (" + da + ", " + db + ") has " + std::to_string(x.size()) +
                                            " runs after exclusion, need 4");
      PairRegression pr;
      pr.domain_a = da;
      pr.domain_b = db;
      pr.n_used = x.size();
      try {
        pr.regression = linear_regression(x, y);
      } catch (const Error& e) {
        if (e.code() != Errc::constant_x) throw;
        pr.degenerate = true;
        pr.regression.n = x.size();
        pr.regression.intercept = mean(y);
      }
      pr.significant = !pr.degenerate && pr.regression.p_slope < alpha;
      rep.pairs.push_back(pr);
    }
  return rep;
}

inline nlohmann::ordered_json to_json(const CorrelationReport& r) {
  nlohmann::ordered_json j;
  j["trained_on"] = r.trained_on;
  j["alpha"] = r.alpha;
  j["exclusion_order"] = {"convergence", "iqr_per_eval_domain"};
  j["excluded_nonconverged"] = r.excluded_nonconverged;
  j["outlier_runs"] = r.outlier_runs;
  j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : r.pairs)
    j["pairs"].push_back({{"x", p.domain_a},
                          {"y", p.domain_b},
                          {"n", p.n_used},
                          {"slope", p.regression.slope},
                          {"intercept", p.regression.intercept},
                          {"r", p.regression.r},
                          {"p_slope", p.regression.p_slope},
                          {"significant", p.significant},
                          {"degenerate", p.degenerate}});
  return j;
}

// ---------------------------------------------------------------------------
// Generalization vs coin flip

struct GeneralizationCell {
  double p = 1.0;
  double mean_f1 = 0.0;
  std::size_t n_runs = 0;
  bool significant = false;
  bool degenerate = false;  // zero variance; p is the limiting value
};

struct GeneralizationReport {
  std::vector<std::string> train_domains;
  std::vector<std::string> eval_domains;
  std::map<std::pair<std::string, std::string>, GeneralizationCell> cells;
  std::map<std::string, double> cf_f1;
  double alpha = 0.01;

  const GeneralizationCell& at(const std::string& train, const std::string& eval) const {
    auto it = cells.find({train, eval});
    if (it == cells.end()) throw Error(Errc::schema, "no scores for (" + train + ", " + eval + ")");
    return it->second;
  }
};

/// One-sample t-test per (train, eval) pair of converged F1 runs against the
/// coin-flip F1 of the eval domain, alternative "greater". Zero-variance
/// runs get the limiting p: 0 above the baseline, 1 below, 0.5 at it.
inline GeneralizationReport generalization_test(const ScoreTable& t, const std::map<std::string, double>& q,
                                                double alpha = 0.01) {
  GeneralizationReport rep;
  rep.alpha = alpha;
  rep.train_domains = t.train_domains();
  rep.eval_domains = t.eval_domains();
  for (const auto& y : rep.eval_domains) {
    auto it = q.find(y);
    if (it == q.end()) throw Error(Errc::schema, "no deceptive proportion given for domain '" + y + "'");
    rep.cf_f1[y] = coin_flip_f1(it->second);
  }
  std::map<std::pair<std::string, std::string>, std::vector<double>> runs;
  for (const auto& e : t.entries)
    if (e.converged) runs[{e.train_domain, e.eval_domain}].push_back(e.f1);
  for (const auto& x : rep.train_domains)
    for (const auto& y : rep.eval_domains) {
      auto it = runs.find({x, y});
      if (it == runs.end()) continue;
      const auto& v = it->second;
      if (v.size() < 2)
        throw Error(Errc::degenerate_sample, "pair (" + x + ", " + y + ") has " + std::to_string(v.size()) +
                                                 " converged runs, need 2");
      GeneralizationCell c;
      c.n_runs = v.size();
      c.mean_f1 = mean(v);
      const double mu = rep.cf_f1[y];
      if (sample_variance(v) == 0.0) {
        c.degenerate = true;
        c.p = c.mean_f1 > mu ? 0.0 : (c.mean_f1 < mu ? 1.0 : 0.5);
      } else {
        c.p = one_sample_t_test(v, mu, Alternative::greater).p_value;
      }
      c.significant = c.p < alpha;
      rep.cells[{x, y}] = c;
    }
  return rep;
}

/// Two-decimal p with a dagger when the value is below 0.001.
inline std::string format_table_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", p);
  std::string s = buf;
  if (p < 0.001) s += "†";
  return s;
}

/// Rows = training domain, columns = evaluation domain, diagonal in bold.
inline std::string generalization_markdown(const GeneralizationReport& r) {
  std::string out = "| Train \\ Eval |";
  for (const auto& y : r.eval_domains) out += " " + y + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < r.eval_domains.size(); ++i) out += "---|";
  out += "\n";
  for (const auto& x : r.train_domains) {
    out += "| " + x + " |";
    for (const auto& y : r.eval_domains) {
      auto it = r.cells.find({x, y});
      std::string cell = it == r.cells.end() ? "n/a" : format_table_p(it->second.p);
      if (x == y) cell = "**" + cell + "**";
      out += " " + cell + " |";
    }
    out += "\n";
  }
  return out;
}

inline nlohmann::ordered_json to_json(const GeneralizationReport& r) {
  nlohmann::ordered_json j;
  j["alpha"] = r.alpha;
  j["alternative"] = "greater";
  j["cf_f1"] = r.cf_f1;
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& x : r.train_domains)
    for (const auto& y : r.eval_domains) {
      auto it = r.cells.find({x, y});
      if (it == r.cells.end()) continue;
      const auto& c = it->second;
      j["cells"].push_back({{"train", x},
                            {"eval", y},
                            {"p", c.p},
                            {"p_display", format_table_p(c.p)},
                            {"mean_f1", c.mean_f1},
                            {"n_runs", c.n_runs},
                            {"significant", c.significant},
                            {"degenerate", c.degenerate}});
    }
  return j;
}

}  // namespace decept

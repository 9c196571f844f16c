// Copyright 2026 The decept-cue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "decept/forest.hpp"
#include "support.hpp"
#include "synth.hpp"

using namespace decept;
using testing_support::code_of;

namespace {

const Label T = Label::truthful;
const Label D = Label::deceptive;

// 1-D data, truthful below 0 and deceptive above.
FeatureMatrix separable_1d(std::size_t n) {
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const bool dec = i % 2 == 1;
    rows.push_back({dec ? 1.0 + static_cast<double>(i) : -1.0 - static_cast<double>(i)});
    labels.push_back(dec ? D : T);
  }
  return synth::matrix({"x"}, rows, labels);
}

// Forest with a single hand-built tree per entry of `leaf_labels`.
Forest stump_forest(const std::vector<int>& leaf_labels) {
  Forest f;
  f.feature_names = {"x"};
  f.medians = {0.0};
  for (int l : leaf_labels) {
    Tree t;
    TreeNode leaf;
    leaf.label = l;
    t.nodes.push_back(leaf);
    f.trees.push_back(t);
  }
  return f;
}

}  // namespace

TEST(Gini, Examples) {
  EXPECT_DOUBLE_EQ(gini(10, 0), 0.0);
  EXPECT_DOUBLE_EQ(gini(0, 7), 0.0);
  EXPECT_DOUBLE_EQ(gini(5, 5), 0.5);
  EXPECT_DOUBLE_EQ(gini(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(gini(1, 3), 1.0 - 0.0625 - 0.5625);
}

TEST(Train, SeparableDataIsLearned) {
  const auto m = separable_1d(40);
  const Forest f = train_random_forest(m);
  EXPECT_EQ(metrics(predict(f, m).labels, m.labels).accuracy, 1.0);
  EXPECT_EQ(f.trees.size(), 50u);
  EXPECT_TRUE(f.any_split);
}

TEST(Train, SameSeedSameForest) {
  const auto m = synth::two_gaussians(200, 4, 1.0, 3);
  const Forest a = train_random_forest(m), b = train_random_forest(m);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(predict(a, m).prob_deceptive, predict(b, m).prob_deceptive);
  RFConfig other;
  other.seed = 7;
  EXPECT_NE(to_json(train_random_forest(m, other)).dump(), to_json(a).dump());
}

TEST(Train, Errors) {
  FeatureMatrix empty;
  EXPECT_EQ(code_of([&] { train_random_forest(empty); }), Errc::empty_matrix);
  const auto one_class = synth::matrix({"x"}, {{1}, {2}, {3}}, {T, T, T});
  EXPECT_EQ(code_of([&] { train_random_forest(one_class); }), Errc::single_class);
  RFConfig bad;
  bad.feature_fraction = 0.0;
  EXPECT_EQ(code_of([&] { bad.validate(); }), Errc::out_of_range);
  bad = RFConfig{};
  bad.min_leaf = 0;
  EXPECT_EQ(code_of([&] { bad.validate(); }), Errc::out_of_range);
  bad = RFConfig{};
  bad.n_trees = 0;
  EXPECT_EQ(code_of([&] { train_random_forest(separable_1d(10), bad); }), Errc::out_of_range);
}

TEST(Train, ImportancesAreADistribution) {
  const auto m = synth::planted_selection(300, 5);
  const Forest f = train_random_forest(m);
  double s = 0;
  for (double v : f.importances) {
    EXPECT_GE(v, 0.0);
    s += v;
  }
  EXPECT_NEAR(s, 1.0, 1e-12);
  EXPECT_GT(f.importance("inf2"), f.importance("noise0"));
  EXPECT_EQ(code_of([&] { f.importance("nope"); }), Errc::column_mismatch);
}

TEST(Predict, VotesAndTies) {
  const auto m = synth::matrix({"x"}, {{0.0}}, {T});
  const auto all_dec = predict(stump_forest(std::vector<int>(10, 1)), m);
  EXPECT_EQ(all_dec.labels[0], D);
  EXPECT_DOUBLE_EQ(all_dec.prob_deceptive[0], 1.0);

  std::vector<int> split(50, 0);
  for (std::size_t i = 0; i < 25; ++i) split[i] = 1;
  const auto tie = predict(stump_forest(split), m);
  EXPECT_EQ(tie.labels[0], T);
  EXPECT_DOUBLE_EQ(tie.prob_deceptive[0], 0.5);
}

TEST(Predict, MissingCellUsesTrainingMedian) {
  Forest f = stump_forest({0});
  // One split at 5: left truthful, right deceptive.
  Tree t;
  t.nodes = {TreeNode{0, 5.0, 1, 2, 0}, TreeNode{-1, 0, -1, -1, 0}, TreeNode{-1, 0, -1, -1, 1}};
  f.trees = {t};
  f.medians = {7.0};
  FeatureMatrix m = synth::matrix({"x"}, {{0.0}, {9.0}}, {T, T});
  m.rows[0][0] = std::nullopt;
  EXPECT_EQ(predict(f, m).labels, (std::vector<Label>{D, D}));
  f.medians = {std::nullopt};
  EXPECT_EQ(predict(f, m).labels[0], T);  // no median falls back to 0
}

TEST(Predict, MissingColumnIsRejected) {
  const Forest f = train_random_forest(separable_1d(20));
  const auto m = synth::matrix({"y"}, {{1.0}}, {T});
  EXPECT_EQ(code_of([&] { predict(f, m); }), Errc::column_mismatch);
}

TEST(Predict, ExtraColumnsAndOrderDoNotMatter) {
  const auto m = synth::two_gaussians(200, 3, 1.0, 11);
  const Forest f = train_random_forest(m);
  const auto reordered = m.select({"x2", "x0", "x1"});
  EXPECT_EQ(predict(f, m).prob_deceptive, predict(f, reordered).prob_deceptive);
}

TEST(Predict, InvariantUnderMonotoneTransform) {
  const auto m = synth::two_gaussians(200, 3, 1.0, 13);
  FeatureMatrix g = m;
  for (auto& row : g.rows)
    for (auto& v : row) v = std::exp(*v) * 3.0 + 1.0;
  const Forest fm = train_random_forest(m), fg = train_random_forest(g);
  // Splits depend only on value order, so the grown trees match node for
  // node; thresholds differ and only matter for unseen values.
  ASSERT_EQ(fm.trees.size(), fg.trees.size());
  for (std::size_t t = 0; t < fm.trees.size(); ++t) {
    ASSERT_EQ(fm.trees[t].nodes.size(), fg.trees[t].nodes.size());
    for (std::size_t i = 0; i < fm.trees[t].nodes.size(); ++i) {
      EXPECT_EQ(fm.trees[t].nodes[i].feature, fg.trees[t].nodes[i].feature);
      EXPECT_EQ(fm.trees[t].nodes[i].label, fg.trees[t].nodes[i].label);
    }
  }
  EXPECT_EQ(fm.importances, fg.importances);
}

TEST(Oob, SeparableAndRandomLabels) {
  EXPECT_GE(oob_accuracy(train_random_forest(separable_1d(100))), 0.9);

  Rng rng(21);
  auto m = synth::two_gaussians(2000, 3, 0.0, 23);
  std::size_t n_truthful = 0;
  for (auto& l : m.labels) {
    l = rng.uniform() < 0.3 ? D : T;
    n_truthful += l == T;
  }
  const double prior = static_cast<double>(n_truthful) / 2000.0;
  EXPECT_NEAR(oob_accuracy(train_random_forest(m)), prior, 0.1);
}

TEST(Oob, NoRowsOutOfBag) {
  Forest f = stump_forest({0});
  f.train_labels = {0};
  f.oob_votes = {{0, 0}};
  EXPECT_EQ(code_of([&] { oob_accuracy(f); }), Errc::no_oob_rows);
}

TEST(Metrics, Examples) {
  const auto m = metrics({D, D, T, T}, {D, T, D, T});
  EXPECT_DOUBLE_EQ(m.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(m.precision, 0.5);
  EXPECT_DOUBLE_EQ(m.recall, 0.5);
  EXPECT_DOUBLE_EQ(m.f1, 0.5);

  const auto none = metrics({T, T, T}, {D, T, D});
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_FALSE(none.recall_undefined);
  EXPECT_TRUE(none.precision_undefined);
  EXPECT_TRUE(none.f1_undefined);
  EXPECT_EQ(code_of([] { metrics({T}, {T, D}); }), Errc::length_mismatch);
}

TEST(Metrics, AgreesWithConfusionMatrix) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(30);
    std::vector<Label> p, t;
    int cm[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t i = 0; i < n; ++i) {
      p.push_back(rng.index(2) ? D : T);
      t.push_back(rng.index(2) ? D : T);
      ++cm[as_int(p.back())][as_int(t.back())];
    }
    const double tp = cm[1][1], fp = cm[1][0], fn = cm[0][1], tn = cm[0][0];
    const auto m = metrics(p, t);
    EXPECT_DOUBLE_EQ(m.accuracy, (tp + tn) / static_cast<double>(n));
    if (tp + fp > 0) {
      EXPECT_DOUBLE_EQ(m.precision, tp / (tp + fp));
    }
    if (tp + fn > 0) {
      EXPECT_DOUBLE_EQ(m.recall, tp / (tp + fn));
    }
    if (tp > 0) {
      EXPECT_NEAR(m.f1, 2 * tp / (2 * tp + fp + fn), 1e-12);
    }
    for (double v : {m.accuracy, m.precision, m.recall, m.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Folds, StratifiedAndDeterministic) {
  std::vector<Label> labels;
  for (int i = 0; i < 53; ++i) labels.push_back(i % 3 == 0 ? D : T);
  const auto a = stratified_folds(labels, 5, 9);
  EXPECT_EQ(a, stratified_folds(labels, 5, 9));
  EXPECT_NE(a, stratified_folds(labels, 5, 10));
  std::vector<std::size_t> size(5), dec(5);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++size[a[i]];
    dec[a[i]] += labels[i] == D;
  }
  EXPECT_LE(*std::max_element(size.begin(), size.end()) - *std::min_element(size.begin(), size.end()), 1u);
  EXPECT_LE(*std::max_element(dec.begin(), dec.end()) - *std::min_element(dec.begin(), dec.end()), 1u);
}

TEST(Folds, TooFewRows) {
  EXPECT_EQ(code_of([] { stratified_folds({T, T, T, D, D, D}, 1, 0); }), Errc::too_few_rows);
  EXPECT_EQ(code_of([] { stratified_folds({T, T, T, T, T, D, D}, 5, 0); }), Errc::too_few_rows);
}

TEST(CrossValidate, SeparableData) {
  const auto m = synth::two_gaussians(300, 3, 3.0, 41);
  const auto rep = cross_validate(m);
  EXPECT_EQ(rep.per_fold.size(), 5u);
  EXPECT_GE(rep.mean.accuracy, 0.95);
  EXPECT_EQ(to_json(rep).dump(), to_json(cross_validate(m)).dump());
  EXPECT_EQ(rep.fold_of, stratified_folds(m.labels, 5, RFConfig{}.seed));
}

TEST(Serialize, RoundTripPredictsIdentically) {
  auto m = synth::two_gaussians(150, 3, 1.0, 51);
  m.rows[0][1] = std::nullopt;
  const Forest f = train_random_forest(m);
  const Forest back = forest_from_json(nlohmann::json::parse(to_json(f).dump()));
  EXPECT_EQ(to_json(back).dump(), to_json(f).dump());
  EXPECT_EQ(predict(back, m).prob_deceptive, predict(f, m).prob_deceptive);
  EXPECT_EQ(code_of([] { forest_from_json(nlohmann::json::parse(R"({"format":"x","version":1})")); }), Errc::schema);
  EXPECT_EQ(code_of([] { forest_from_json(nlohmann::json::parse(R"({"format":"decept-forest"})")); }), Errc::schema);
}

TEST(Train, ConstantColumnsDoNotUseUpTheFeatureDraw) {
  // One informative column among nine constant ones, one feature per node:
  // drawing continues past constant columns until a varying one is found.
  auto m = separable_1d(40);
  std::vector<std::string> names = {"x"};
  for (int c = 0; c < 9; ++c) names.push_back("const" + std::to_string(c));
  m.feature_names = names;
  for (auto& row : m.rows) row.resize(10, 3.0);
  RFConfig cfg;
  cfg.feature_fraction = 0.1;
  const Forest f = train_random_forest(m, cfg);
  for (const auto& t : f.trees) EXPECT_GT(t.nodes.size(), 1u);
  EXPECT_EQ(oob_accuracy(f), 1.0);
  EXPECT_DOUBLE_EQ(f.importance("x"), 1.0);
}

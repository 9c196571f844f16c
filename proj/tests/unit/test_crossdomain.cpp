// Copyright 2026 The decept-cue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>

#include "decept/crossdomain.hpp"
#include "support.hpp"
#include "synth.hpp"

using namespace decept;
using testing_support::code_of;

namespace {

Corpus labelled(std::size_t n_truthful, std::size_t n_deceptive) {
  Corpus c;
  for (std::size_t i = 0; i < n_truthful + n_deceptive; ++i) {
    Document d;
    d.id = "d" + std::to_string(i);
    d.text = "text " + std::to_string(i);
    d.label = i < n_truthful ? Label::truthful : Label::deceptive;
    d.domain = "x";
    c.documents.push_back(d);
  }
  return c;
}

std::vector<std::string> ids(const Corpus& c) {
  std::vector<std::string> out;
  for (const auto& d : c.documents) out.push_back(d.id);
  return out;
}

std::string score_rows(const std::string& train, const std::vector<std::pair<std::string, std::vector<double>>>& evals) {
  std::string out;
  for (const auto& [eval, vals] : evals)
    for (std::size_t r = 0; r < vals.size(); ++r)
      out += train + "," + eval + ",r" + std::to_string(r) + "," + format_double(vals[r]) + ",true\n";
  return out;
}

const char* kHeader = "train_domain,eval_domain,run_id,f1,converged\n";

}  // namespace

TEST(Split, EightyTenTen) {
  const auto c = labelled(50, 50);
  const auto s = split_domain(c, {0.8, 0.1, 0.1}, 1);
  EXPECT_EQ(s.train.documents.size(), 80u);
  EXPECT_EQ(s.validate.documents.size(), 10u);
  EXPECT_EQ(s.test.documents.size(), 10u);
  EXPECT_EQ(s.test.count(Label::deceptive), 5u);
  EXPECT_EQ(s.train.count(Label::deceptive), 40u);
}

TEST(Split, DeterministicPartition) {
  const auto c = labelled(37, 21);
  const auto a = split_domain(c, {0.8, 0.1, 0.1}, 5), b = split_domain(c, {0.8, 0.1, 0.1}, 5);
  EXPECT_EQ(ids(a.train), ids(b.train));
  EXPECT_EQ(ids(a.test), ids(b.test));
  EXPECT_NE(ids(split_domain(c, {0.8, 0.1, 0.1}, 6).test), ids(a.test));
  std::set<std::string> all;
  for (const auto* part : {&a.train, &a.validate, &a.test})
    for (const auto& id : ids(*part)) EXPECT_TRUE(all.insert(id).second);
  EXPECT_EQ(all.size(), 58u);
}

TEST(Split, SizesWithinRounding) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t t = 1 + rng.index(40), d = 1 + rng.index(40);
    const auto s = split_domain(labelled(t, d), {0.7, 0.2, 0.1}, static_cast<std::uint64_t>(trial));
    const Corpus* parts[3] = {&s.train, &s.validate, &s.test};
    const double ratio[3] = {0.7, 0.2, 0.1};
    for (int k = 0; k < 3; ++k) {
      EXPECT_LT(std::fabs(static_cast<double>(parts[k]->count(Label::truthful)) - ratio[k] * static_cast<double>(t)), 1.0);
      EXPECT_LT(std::fabs(static_cast<double>(parts[k]->count(Label::deceptive)) - ratio[k] * static_cast<double>(d)), 1.0);
    }
  }
}

TEST(Split, Errors) {
  EXPECT_EQ(code_of([] { split_domain(labelled(5, 5), {0.5, 0.5, 0.5}, 1); }), Errc::ratio_error);
  EXPECT_EQ(code_of([] { split_domain(labelled(5, 5), {1.2, -0.1, -0.1}, 1); }), Errc::ratio_error);
  EXPECT_EQ(code_of([] { split_domain(Corpus{}, {0.8, 0.1, 0.1}, 1); }), Errc::too_few_rows);
}

TEST(Scores, ParseExamples) {
  const auto t = parse_scores(std::string(kHeader) + "A,A,r1,0.9,true\nA,B,r1,0.5,true\nA,B,r2,0.4,false\n");
  ASSERT_EQ(t.entries.size(), 3u);
  EXPECT_FALSE(t.entries[2].converged);
  EXPECT_EQ(t.eval_domains(), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(parse_scores(scores_to_csv(t)).entries.size(), 3u);
  EXPECT_EQ(code_of([] { parse_scores(std::string(kHeader) + "A,A,r1,1.2,true\n"); }), Errc::range_error);
  EXPECT_EQ(code_of([] { parse_scores(std::string(kHeader) + "A,A,r1,abc,true\n"); }), Errc::parse);
  EXPECT_EQ(code_of([] { parse_scores(std::string(kHeader) + "A,A,r1,0.5,maybe\n"); }), Errc::parse);
  EXPECT_EQ(code_of([] { parse_scores(std::string(kHeader) + "A,A,r1,0.5\n"); }), Errc::parse);
  EXPECT_EQ(code_of([] { load_scores("/nonexistent/scores.csv"); }), Errc::io);
}

TEST(Correlation, IdenticalColumns) {
  const std::vector<double> a = {0.6, 0.62, 0.65, 0.58, 0.63, 0.61};
  const auto t = parse_scores(std::string(kHeader) + score_rows("X", {{"A", a}, {"B", a}}));
  const auto rep = multidomain_correlation(t, "X");
  ASSERT_EQ(rep.pairs.size(), 1u);
  EXPECT_NEAR(rep.pairs[0].regression.slope, 1.0, 1e-12);
  EXPECT_NEAR(rep.pairs[0].regression.r, 1.0, 1e-12);
  EXPECT_TRUE(rep.pairs[0].significant);
}

TEST(Correlation, ExtremeRunIsExcludedAndNonConvergedDropped) {
  std::vector<double> a = {0.60, 0.62, 0.61, 0.63, 0.59, 0.60, 0.62};
  std::vector<double> b = a;
  a.push_back(0.05);  // far below the lower fence
  b.push_back(0.61);
  std::string csv = std::string(kHeader) + score_rows("X", {{"A", a}, {"B", b}});
  csv += "X,A,bad,0.99,false\nX,B,bad,0.01,true\n";
  const auto rep = multidomain_correlation(parse_scores(csv), "X");
  EXPECT_EQ(rep.excluded_nonconverged, 1u);
  EXPECT_EQ(rep.outlier_runs.at("A"), std::vector<std::string>{"r7"});
  EXPECT_EQ(rep.pairs[0].n_used, 7u);
  EXPECT_NEAR(rep.pairs[0].regression.r, 1.0, 1e-12);
  EXPECT_EQ(to_json(rep).dump(), to_json(multidomain_correlation(parse_scores(csv), "X")).dump());
}

TEST(Correlation, SymmetricR) {
  Rng rng(8);
  std::vector<double> a, b;
  for (int i = 0; i < 20; ++i) {
    a.push_back(0.5 + 0.1 * rng.uniform());
    b.push_back(0.3 + 0.5 * a.back() * rng.uniform());
  }
  const auto ab = multidomain_correlation(parse_scores(std::string(kHeader) + score_rows("X", {{"A", a}, {"B", b}})), "X");
  const auto ba = multidomain_correlation(parse_scores(std::string(kHeader) + score_rows("X", {{"B", b}, {"A", a}})), "X");
  EXPECT_NEAR(ab.pairs[0].regression.r, ba.pairs[0].regression.r, 1e-12);
  EXPECT_EQ(ab.pairs[0].n_used, ba.pairs[0].n_used);
}

TEST(Correlation, IndependentScoresRarelySignificant) {
  Rng rng(1234);
  int insignificant = 0;
  const int pairs = 400;
  for (int trial = 0; trial < pairs; ++trial) {
    std::vector<double> a, b;
    for (int i = 0; i < 50; ++i) {
      a.push_back(0.4 + 0.2 * rng.uniform());
      b.push_back(0.4 + 0.2 * rng.uniform());
    }
    const auto rep = multidomain_correlation(parse_scores(std::string(kHeader) + score_rows("X", {{"A", a}, {"B", b}})), "X");
    const auto& pr = rep.pairs[0];
    // The slope p-value equals the two-sided t-test of r with n - 2 df.
    const double r = pr.regression.r, df = static_cast<double>(pr.n_used) - 2.0;
    const double tstat = r * std::sqrt(df / (1.0 - r * r));
    boost::math::students_t_distribution<double> dist(df);
    EXPECT_NEAR(pr.regression.p_slope, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(tstat))), 1e-9);
    insignificant += !pr.significant;
  }
  EXPECT_NEAR(static_cast<double>(insignificant) / pairs, 0.95, 0.035);
}

TEST(Correlation, TooFewRuns) {
  const auto t = parse_scores(std::string(kHeader) + score_rows("X", {{"A", {0.1, 0.2, 0.3}}, {"B", {0.1, 0.2, 0.3}}}));
  EXPECT_EQ(code_of([&] { multidomain_correlation(t, "X"); }), Errc::too_few_runs);
  EXPECT_EQ(code_of([&] { multidomain_correlation(t, "nobody"); }), Errc::too_few_runs);
}

TEST(Generalization, Examples) {
  std::string csv = std::string(kHeader) + score_rows("X", {{"Hi", {0.95, 0.96, 0.94, 0.97}},
                                                            {"Mid", {0.4, 0.6, 0.45, 0.55}},
                                                            {"Lo", {0.2, 0.2, 0.2, 0.2}}});
  const auto t = parse_scores(csv);
  const std::map<std::string, double> q = {{"Hi", 0.3}, {"Mid", 0.5}, {"Lo", 0.5}};
  const auto rep = generalization_test(t, q);
  EXPECT_NEAR(rep.cf_f1.at("Mid"), 0.5, 1e-15);
  EXPECT_LT(rep.at("X", "Hi").p, 0.001);
  EXPECT_TRUE(rep.at("X", "Hi").significant);
  EXPECT_NEAR(rep.at("X", "Mid").p, 0.5, 1e-12);
  EXPECT_EQ(rep.at("X", "Lo").p, 1.0);
  EXPECT_TRUE(rep.at("X", "Lo").degenerate);
  EXPECT_EQ(format_table_p(rep.at("X", "Lo").p), "1.00");
  EXPECT_EQ(format_table_p(rep.at("X", "Hi").p), "0.00\xE2\x80\xA0");
  EXPECT_EQ(format_table_p(0.5), "0.50");
  EXPECT_EQ(format_table_p(0.004), "0.00");
  for (const auto& [k, c] : rep.cells) {
    EXPECT_GE(c.p, 0.0);
    EXPECT_LE(c.p, 1.0);
  }
}

TEST(Generalization, ErrorsAndExclusion) {
  const auto one = parse_scores(std::string(kHeader) + "X,A,r1,0.5,true\nX,A,r2,0.9,false\n");
  EXPECT_EQ(code_of([&] { generalization_test(one, {{"A", 0.5}}); }), Errc::degenerate_sample);
  EXPECT_EQ(code_of([&] { generalization_test(one, {}); }), Errc::schema);
}

TEST(Generalization, MarkdownLayout) {
  const auto t = parse_scores(std::string(kHeader) + score_rows("A", {{"A", {0.9, 0.95}}, {"B", {0.2, 0.2}}}) +
                              score_rows("B", {{"A", {0.5, 0.5}}, {"B", {0.9, 0.92}}}));
  const auto rep = generalization_test(t, {{"A", 0.5}, {"B", 0.5}});
  const auto md = generalization_markdown(rep);
  EXPECT_NE(md.find("| Train \\ Eval | A | B |"), std::string::npos);
  EXPECT_NE(md.find("| B | 0.50 | **"), std::string::npos);
  EXPECT_NE(md.find("| A | **"), std::string::npos);
  EXPECT_NE(md.find(" 1.00 |"), std::string::npos);
}

TEST(CrossEval, PlantedDomainsBeatCoinFlip) {
  std::vector<Corpus> domains = {parse_corpus_jsonl(synth::planted_domain_jsonl("A", 120, true, 1)),
                                 parse_corpus_jsonl(synth::planted_domain_jsonl("B", 120, true, 2))};
  CrossEvalConfig cfg;
  cfg.runs = 3;
  cfg.rf.n_trees = 20;
  const auto t = cross_eval_rf(domains, {"A", "B"}, cfg);
  EXPECT_EQ(t.entries.size(), 12u);
  for (const auto& e : t.entries) {
    EXPECT_TRUE(e.converged);
    EXPECT_GT(e.f1, coin_flip_f1(0.5)) << e.train_domain << "->" << e.eval_domain;
  }
  EXPECT_EQ(scores_to_csv(t), scores_to_csv(cross_eval_rf(domains, {"A", "B"}, cfg)));
  EXPECT_EQ(code_of([&] { cross_eval_rf({domains[0]}, {"A"}, cfg); }), Errc::schema);
  EXPECT_EQ(code_of([&] { cross_eval_rf(domains, {"A", "A"}, cfg); }), Errc::duplicate_domain);
}

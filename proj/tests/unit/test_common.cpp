// Copyright 2026 The decept-cue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <atomic>
#include <set>

#include "decept/common.hpp"
#include "decept/csv.hpp"
#include "decept/resources.hpp"
#include "support.hpp"

using namespace decept;

TEST(Common, ErrorCarriesCodeAndName) {
  Error e(Errc::duplicate_id, "x");
  EXPECT_EQ(e.code(), Errc::duplicate_id);
  EXPECT_STREQ(e.what(), "DuplicateId: x");
}

TEST(Common, LabelsRoundTripAndFlip) {
  Label l;
  ASSERT_TRUE(parse_label("deceptive", l));
  EXPECT_EQ(l, Label::deceptive);
  ASSERT_TRUE(parse_label("truthful", l));
  EXPECT_EQ(l, Label::truthful);
  EXPECT_FALSE(parse_label("maybe", l));
  EXPECT_EQ(flipped(flipped(Label::deceptive)), Label::deceptive);
  EXPECT_STREQ(to_string(Label::deceptive), "deceptive");
}

TEST(Common, Utf8DecodesMultibyte) {
  const std::string s = "a\xC3\xA9\xE2\x80\x94\xF0\x9F\x98\x80";  // a, e-acute, em dash, emoji
  EXPECT_TRUE(utf8::valid(s));
  EXPECT_EQ(utf8::length(s), 4u);
  std::size_t pos = 1;
  EXPECT_EQ(utf8::next(s, pos), U'é');
  EXPECT_EQ(pos, 3u);
  EXPECT_FALSE(utf8::valid("\xC3"));
}

TEST(Common, StringHelpers) {
  EXPECT_EQ(split("a,b,,c", ','), (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_EQ(join({"x", "y"}, "-"), "x-y");
  EXPECT_EQ(trim("  hi \t"), "hi");
  EXPECT_EQ(ascii_lower("AbC"), "abc");
}

TEST(Common, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2.0, 1e-300, 123456.789}) EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Common, FnvKnownVector) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
}

TEST(Common, RngIsDeterministicAndBounded) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.index(13);
    EXPECT_EQ(x, b.index(13));
    EXPECT_LT(x, 13u);
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(Common, ParallelForVisitsEachIndexOnce) {
  const unsigned saved = thread_cap();
  set_thread_cap(4);
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 5) throw Error(Errc::io, "boom");
               }),
               Error);
  set_thread_cap(saved);
}

TEST(Csv, QuotesAndParsesRfc4180) {
  const std::string row = csv::row({"a", "b,c", "say \"hi\"", "line\nbreak"});
  const auto recs = csv::parse(row + "\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].fields, (std::vector<std::string>{"a", "b,c", "say \"hi\"", "line\nbreak"}));
}

// The bundled resources are compiled in; the data/ copies are what users edit.
TEST(Resources, EmbeddedCopiesMatchDataFiles) {
  using testing_support::data_path;
  EXPECT_EQ(read_file(data_path("function_words.txt")), resources::function_words);
  EXPECT_EQ(read_file(data_path("abbreviations.txt")), resources::abbreviations);
  EXPECT_EQ(read_file(data_path("contractions.txt")), resources::contractions);
  EXPECT_EQ(read_file(data_path("demo_dictionary.dic")), resources::demo_dictionary);
}

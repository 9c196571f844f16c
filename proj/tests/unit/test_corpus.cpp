// Copyright 2026 The decept-cue Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "decept/corpus.hpp"
#include "support.hpp"

using namespace decept;
using testing_support::code_of;

namespace {

Document doc(std::string id, std::string text, Label l = Label::truthful) {
  Document d;
  d.id = std::move(id);
  d.text = std::move(text);
  d.label = l;
  d.domain = "test";
  return d;
}

Corpus corpus_of(std::vector<Document> docs) {
  Corpus c;
  c.documents = std::move(docs);
  return c;
}

// Random corpus mixing duplicates, break tags, blanks, overlong and
// non-English texts.
Corpus random_corpus(Rng& rng) {
  static const std::vector<std::string> pool = {
      "the offer is real and you should act now",
      "The offer is  real and you should act now",
      "we stayed at the hotel<br>and it was fine",
      "we stayed at the hotel\nand it was fine",
      "   ",
      "<br/>",
      "zzxq vvkk pppr 12345",
      "\xD0\xBF\xD1\x80\xD0\xB8\xD0\xB2\xD0\xB5\xD1\x82 \xD0\xBC\xD0\xB8\xD1\x80",
      "a quick note for you about the job",
      "Received: from x\nSubject: hi\n\nplease send the money to me",
      "please send the money to me",
  };
  Corpus c;
  const std::size_t n = rng.index(20);
  for (std::size_t i = 0; i < n; ++i) {
    std::string text = pool[rng.index(pool.size())];
    if (rng.index(8) == 0) text = std::string(120, 'a') + " of the";
    c.documents.push_back(doc("d" + std::to_string(i), text, rng.index(2) ? Label::deceptive : Label::truthful));
  }
  return c;
}

}  // namespace

TEST(Load, JsonlExamples) {
  auto c = parse_corpus_jsonl(
      "{\"id\":\"1\",\"text\":\"a\",\"label\":\"truthful\",\"domain\":\"x\"}\n"
      "{\"id\":\"2\",\"text\":\"b\",\"label\":\"deceptive\",\"domain\":\"x\"}\n"
      "{\"id\":\"3\",\"text\":\"c\",\"label\":\"truthful\",\"domain\":\"x\"}\n");
  ASSERT_EQ(c.documents.size(), 3u);
  EXPECT_EQ(c.count(Label::truthful), 2u);
  EXPECT_EQ(c.count(Label::deceptive), 1u);
  EXPECT_EQ(c.documents[1].id, "2");
  EXPECT_TRUE(parse_corpus_jsonl("").documents.empty());
}

TEST(Load, MissingFieldNamesFieldAndLine) {
  try {
    parse_corpus_jsonl("{\"id\":\"1\",\"text\":\"a\",\"label\":\"truthful\",\"domain\":\"x\"}\n"
                       "{\"id\":\"2\",\"text\":\"b\",\"domain\":\"x\"}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::schema);
    EXPECT_NE(std::string(e.what()).find("'label'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Load, Errors) {
  EXPECT_EQ(code_of([] { parse_corpus_jsonl("{\"id\":\"1\",\"text\":\"a\",\"label\":\"truthful\",\"domain\":\"x\"}\n"
                                            "{\"id\":\"1\",\"text\":\"b\",\"label\":\"truthful\",\"domain\":\"x\"}"); }),
            Errc::duplicate_id);
  EXPECT_EQ(code_of([] { parse_corpus_jsonl("{\"id\":\"1\""); }), Errc::parse);
  EXPECT_EQ(code_of([] { parse_corpus_jsonl("{\"id\":\"1\",\"text\":\"a\",\"label\":\"maybe\",\"domain\":\"x\"}"); }),
            Errc::schema);
  EXPECT_EQ(code_of([] { load_corpus("/nonexistent/corpus.jsonl"); }), Errc::io);
}

TEST(Load, CsvRoundTripWithQuoting) {
  auto c = corpus_of({doc("a", "hello, \"world\"\nline two", Label::deceptive), doc("b", "plain")});
  const auto back = parse_corpus_csv(serialize_csv(c));
  ASSERT_EQ(back.documents.size(), 2u);
  EXPECT_EQ(back.documents[0].text, "hello, \"world\"\nline two");
  EXPECT_EQ(back.documents[0].label, Label::deceptive);
  EXPECT_EQ(serialize_jsonl(parse_corpus_jsonl(serialize_jsonl(c))), serialize_jsonl(c));
  EXPECT_EQ(code_of([] { parse_corpus_csv("id,text,label,domain\n1,a,truthful\n"); }), Errc::parse);
  EXPECT_EQ(code_of([] { parse_corpus_csv("id,text,domain\n1,a,x\n"); }), Errc::schema);
}

TEST(Clean, BreakTags) {
  EXPECT_EQ(replace_br_tags("a<BR>b"), "a\nb");
  EXPECT_EQ(replace_br_tags("a<br/>b<br />c<Br  />d"), "a\nb\nc\nd");
  EXPECT_EQ(replace_br_tags("a<bra>b"), "a<bra>b");
  auto [c, r] = clean_corpus(corpus_of({doc("1", "we went there<BR>and it was good")}), CleanConfig{});
  EXPECT_EQ(c.documents.at(0).text, "we went there\nand it was good");
}

TEST(Clean, Examples) {
  auto [dedup, r1] = clean_corpus(corpus_of({doc("1", "the same text"), doc("2", "the same text")}), CleanConfig{});
  EXPECT_EQ(dedup.documents.size(), 1u);
  EXPECT_EQ(dedup.documents[0].id, "1");
  EXPECT_EQ(r1.removed_duplicates, 1u);

  CleanConfig flip;
  flip.flip_labels = true;
  auto [flipped_c, r2] = clean_corpus(corpus_of({doc("1", "this is the one", Label::truthful)}), flip);
  EXPECT_EQ(flipped_c.documents[0].label, Label::deceptive);
  EXPECT_TRUE(r2.labels_flipped);
}

TEST(Clean, DedupIgnoresCaseAndWhitespaceRuns) {
  EXPECT_EQ(dedup_key("A  b\n\tC "), dedup_key("a b c"));
  auto [c, r] = clean_corpus(corpus_of({doc("1", "It is  the END"), doc("2", "it is the end")}), CleanConfig{});
  EXPECT_EQ(r.removed_duplicates, 1u);
}

TEST(Clean, RemovalCategories) {
  CleanConfig cfg;
  cfg.max_chars = 30;
  auto [c, r] = clean_corpus(corpus_of({doc("empty", "  <br> "), doc("long", std::string(40, 'x') + " the"),
                                        doc("foreign", "zzxq 1234 5678 9999"), doc("ok", "this is for the test")}),
                             cfg);
  EXPECT_EQ(r.removed_empty, 1u);
  EXPECT_EQ(r.removed_overlong, 1u);
  EXPECT_EQ(r.removed_non_english, 1u);
  ASSERT_EQ(c.documents.size(), 1u);
  EXPECT_EQ(c.documents[0].id, "ok");
  EXPECT_TRUE(c.provenance.has_value());
}

TEST(Clean, DefaultMaxCharsIsOneMillion) { EXPECT_EQ(CleanConfig{}.max_chars, 1000000u); }

TEST(Clean, EmailHeadersStripped) {
  auto [c, r] = clean_corpus(
      corpus_of({doc("m", "From: a@b.com\nSubject: Urgent\n\nplease verify your account for us")}), CleanConfig{});
  EXPECT_EQ(c.documents.at(0).text, "please verify your account for us");
  // A single "Name: value" line is prose, not a header block.
  auto [p, r2] = clean_corpus(corpus_of({doc("p", "Note: this is the text\n\nmore of it")}), CleanConfig{});
  EXPECT_EQ(p.documents.at(0).text, "Note: this is the text\n\nmore of it");
}

TEST(Clean, NonEnglishHeuristic) {
  const auto& lex = FunctionWordLexicon::builtin();
  EXPECT_FALSE(looks_non_english("the cat sat on the mat", lex));
  EXPECT_TRUE(looks_non_english("\xD0\xBF\xD1\x80\xD0\xB8\xD0\xB2\xD0\xB5\xD1\x82 \xD0\xBC\xD0\xB8\xD1\x80", lex));
  // Needs both conditions: ASCII-letter text without function words stays.
  EXPECT_FALSE(looks_non_english("zebra quartz vortex", lex));
}

TEST(Clean, PropertiesOnRandomCorpora) {
  Rng rng(17);
  CleanConfig cfg;
  cfg.max_chars = 100;
  for (int trial = 0; trial < 200; ++trial) {
    const Corpus raw = random_corpus(rng);
    const auto [once, r1] = clean_corpus(raw, cfg);
    const auto [twice, r2] = clean_corpus(once, cfg);
    EXPECT_EQ(once.documents, twice.documents);
    EXPECT_EQ(r2.total_removed(), 0u);
    EXPECT_EQ(raw.documents.size() - once.documents.size(), r1.total_removed());

    CleanConfig flip = cfg;
    flip.flip_labels = true;
    const auto [f1, rf1] = clean_corpus(raw, flip);
    ASSERT_EQ(f1.documents.size(), once.documents.size());
    for (std::size_t i = 0; i < f1.documents.size(); ++i)
      EXPECT_EQ(f1.documents[i].label, flipped(once.documents[i].label));
    // Cleaning again with the same config must not flip a second time.
    const auto [f2, rf2] = clean_corpus(f1, flip);
    EXPECT_EQ(f2.documents, f1.documents);
    // Flipping a raw copy of the flipped corpus restores the labels.
    Corpus raw_again = f1;
    raw_again.provenance.reset();
    const auto [f3, rf3] = clean_corpus(raw_again, flip);
    for (std::size_t i = 0; i < f3.documents.size(); ++i) EXPECT_EQ(f3.documents[i].label, once.documents[i].label);
  }
}

TEST(Taxonomy, Examples) {
  TaxonomyLabel ok;
  ok.stratagem_cases = {"direction", "cause"};
  ok.persuasion = {"Slogans"};
  EXPECT_TRUE(validate_taxonomy(ok).valid());

  TaxonomyLabel bad;
  bad.persuasion = {"Mind control"};
  const auto r = validate_taxonomy(bad);
  ASSERT_EQ(r.problems.size(), 1u);
  EXPECT_NE(r.problems[0].find("Mind control"), std::string::npos);

  TaxonomyLabel empty_modality;
  empty_modality.modality = std::vector<std::string>{};
  EXPECT_FALSE(validate_taxonomy(empty_modality).valid());
}

TEST(Taxonomy, ClosedVocabularies) {
  EXPECT_EQ(kStratagemCases.size(), 26u);
  EXPECT_EQ(kPersuasionTechniques.size(), 31u);
  TaxonomyLabel t;
  t.sources = "alien";
  t.targets = {"human", "robot"};
  t.goal = "harmful";
  t.modality = std::vector<std::string>{"textual", "smell"};
  t.stratagem_cases = {"nope"};
  EXPECT_EQ(validate_taxonomy(t).problems.size(), 4u);
}

TEST(Taxonomy, JsonRoundTrip) {
  TaxonomyLabel t;
  t.sources = "bot";
  t.targets = {"detector"};
  t.goal = "harmful";
  t.subgoal = "phish";
  t.modality = std::vector<std::string>{"textual"};
  t.stratagem_cases = {"cause"};
  t.persuasion = {"Slogans"};
  EXPECT_EQ(taxonomy_from_json(nlohmann::json::parse(to_json(t).dump())), t);
  EXPECT_EQ(code_of([] { taxonomy_from_json(nlohmann::json::parse(R"({"goal": 3})")); }), Errc::schema);
}

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

// Function-word n-grams: Occ_n scoring, class-difference ranking, Welch/Holm
// significance and tf-idf vectorization.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "decept/common.hpp"
#include "decept/corpus.hpp"
#include "decept/csv.hpp"
#include "decept/features.hpp"
#include "decept/stats.hpp"
#include "decept/text.hpp"

namespace decept {

using Ngram = std::vector<std::string>;

inline std::string ngram_to_string(const Ngram& g) { return join(g, " "); }

struct OccOptions {
  /// Divide by (function-word count - n) instead of (sentence word count - n).
  bool fw_denominator = false;
};

namespace detail {

inline std::vector<std::string> function_word_sequence(const Sentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens)
    if (!t.is_punct && t.is_function_word) out.push_back(t.lower);
  return out;
}

inline void require_marked(const TokenizedDoc& doc) {
  if (!doc.function_words_marked)
    throw Error(Errc::missing_prerequisite, "document '" + doc.id + "' has no function-word marks");
}

inline void check_order(std::size_t n) {
  if (n < 1 || n > 8) throw Error(Errc::out_of_range, "n-gram order must be in 1..8, got " + std::to_string(n));
}

}  // namespace detail

/// Occ_n(x, t): per sentence, occurrences of x in the contiguous
/// function-word subsequence divided by (|s| - n); sentences where the
/// denominator is not positive are skipped.
inline double occ_score(const Ngram& x, const TokenizedDoc& doc, std::size_t n, const OccOptions& opt = {}) {
  detail::require_marked(doc);
  detail::check_order(n);
  if (x.size() != n) return 0.0;
  double total = 0.0;
  for (const auto& s : doc.sentences) {
    const auto fw = detail::function_word_sequence(s);
    const double size = static_cast<double>(opt.fw_denominator ? fw.size() : s.word_count());
    const double den = size - static_cast<double>(n);
    if (den <= 0) continue;
    std::size_t count = 0;
    for (std::size_t i = 0; i + n <= fw.size(); ++i)
      if (std::equal(x.begin(), x.end(), fw.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
    total += static_cast<double>(count) / den;
  }
  return total;
}

/// Occ_n for every n-gram present in the document, for orders n_min..n_max.
inline std::map<Ngram, double> occ_all(const TokenizedDoc& doc, std::size_t n_min, std::size_t n_max,
                                       const OccOptions& opt = {}) {
  detail::require_marked(doc);
  detail::check_order(n_min);
  detail::check_order(n_max);
  std::map<Ngram, double> out;
  for (const auto& s : doc.sentences) {
    const auto fw = detail::function_word_sequence(s);
    const double size = static_cast<double>(opt.fw_denominator ? fw.size() : s.word_count());
    for (std::size_t n = n_min; n <= n_max; ++n) {
      const double den = size - static_cast<double>(n);
      if (den <= 0) continue;
      for (std::size_t i = 0; i + n <= fw.size(); ++i)
        out[Ngram(fw.begin() + static_cast<std::ptrdiff_t>(i), fw.begin() + static_cast<std::ptrdiff_t>(i + n))] +=
            1.0 / den;
    }
  }
  return out;
}

struct RankedNgram {
  Ngram ngram;
  double agg_truthful = 0.0;
  double agg_deceptive = 0.0;
  double diff = 0.0;  // deceptive - truthful
};

struct NgramConfig {
  std::size_t n_min = 1;
  std::size_t n_max = 8;
  std::size_t top_k = 100;
  OccOptions occ;
};

/// Ranks n-grams by |aggregate(deceptive) - aggregate(truthful)|, ties by
/// lexicographic n-gram; returns the top_k with signed differences.
inline std::vector<RankedNgram> rank_ngrams(const std::vector<TokenizedDoc>& docs, const std::vector<Label>& labels,
                                            const NgramConfig& cfg = {}) {
  if (docs.size() != labels.size()) throw Error(Errc::length_mismatch, "documents and labels differ in length");
  const bool has_t = std::count(labels.begin(), labels.end(), Label::truthful) > 0;
  const bool has_d = std::count(labels.begin(), labels.end(), Label::deceptive) > 0;
  if (!has_t || !has_d) throw Error(Errc::single_class_corpus, "ranking needs both truthful and deceptive documents");
  std::vector<std::map<Ngram, double>> per_doc(docs.size());
  parallel_for(docs.size(), [&](std::size_t i) { per_doc[i] = occ_all(docs[i], cfg.n_min, cfg.n_max, cfg.occ); });
  std::map<Ngram, RankedNgram> agg;
  for (std::size_t i = 0; i < docs.size(); ++i)
    for (const auto& [g, v] : per_doc[i]) {
      auto& r = agg[g];
      (labels[i] == Label::deceptive ? r.agg_deceptive : r.agg_truthful) += v;
    }
  std::vector<RankedNgram> out;
  out.reserve(agg.size());
  for (auto& [g, r] : agg) {
    r.ngram = g;
    r.diff = r.agg_deceptive - r.agg_truthful;
    out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedNgram& a, const RankedNgram& b) {
    const double da = std::fabs(a.diff), db = std::fabs(b.diff);
    if (da != db) return da > db;
    return a.ngram < b.ngram;
  });
  if (out.size() > cfg.top_k) out.resize(cfg.top_k);
  return out;
}

inline std::vector<TokenizedDoc> analyze_corpus(const Corpus& c,
                                                const FunctionWordLexicon& lex = FunctionWordLexicon::builtin()) {
  std::vector<TokenizedDoc> docs(c.documents.size());
  parallel_for(docs.size(), [&](std::size_t i) {
    docs[i] = analyze(c.documents[i].text, lex);
    docs[i].id = c.documents[i].id;
  });
  return docs;
}

inline std::vector<Label> corpus_labels(const Corpus& c) {
  std::vector<Label> out;
  for (const auto& d : c.documents) out.push_back(d.label);
  return out;
}

inline std::vector<RankedNgram> rank_ngrams(const Corpus& c, const NgramConfig& cfg = {},
                                            const FunctionWordLexicon& lex = FunctionWordLexicon::builtin()) {
  return rank_ngrams(analyze_corpus(c, lex), corpus_labels(c), cfg);
}

// ---------------------------------------------------------------------------
// Significance

struct NgramTest {
  RankedNgram ranked;
  TestResult test;  // Welch, deceptive vs truthful
  double p_holm = 1.0;
  bool significant = false;
  /// +1 when the deceptive mean is larger, -1 when smaller, 0 when equal.
  int direction = 0;
};

/// Welch's test of the two classes' two-sample means, with a degenerate
/// fallback when both classes have zero variance: p = 1 for equal means and
/// p = 0 otherwise (flagged on the result).
inline TestResult welch_or_limit(const std::vector<double>& a, const std::vector<double>& b, Alternative alt) {
  if (a.size() < 2 || b.size() < 2) return welch_t_test(a, b, alt);
  if (sample_variance(a) == 0.0 && sample_variance(b) == 0.0) {
    TestResult r;
    r.alternative = alt;
    r.degenerate = true;
    r.mean_diff = mean(a) - mean(b);
    r.df = static_cast<double>(a.size() + b.size() - 2);
    if (r.mean_diff == 0.0) {
      r.statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.statistic = r.mean_diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.p_value = p_value_for(r.statistic, r.df, alt);
    }
    return r;
  }
  return welch_t_test(a, b, alt);
}

inline std::vector<NgramTest> ngram_significance(const std::vector<RankedNgram>& candidates,
                                                 const std::vector<TokenizedDoc>& docs,
                                                 const std::vector<Label>& labels, double alpha = 0.01,
                                                 const NgramConfig& cfg = {}) {
  if (docs.size() != labels.size()) throw Error(Errc::length_mismatch, "documents and labels differ in length");
  const auto n_d = std::count(labels.begin(), labels.end(), Label::deceptive);
  const auto n_t = static_cast<std::ptrdiff_t>(labels.size()) - n_d;
  if (n_d < 2 || n_t < 2)
    throw Error(Errc::degenerate_sample, "each class needs at least 2 documents (truthful " + std::to_string(n_t) +
                                             ", deceptive " + std::to_string(n_d) + ")");
  std::vector<std::map<Ngram, double>> per_doc(docs.size());
  parallel_for(docs.size(), [&](std::size_t i) { per_doc[i] = occ_all(docs[i], cfg.n_min, cfg.n_max, cfg.occ); });
  std::vector<NgramTest> out;
  std::vector<double> raw;
  for (const auto& c : candidates) {
    std::vector<double> dec, tru;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      auto it = per_doc[i].find(c.ngram);
      const double v = it == per_doc[i].end() ? 0.0 : it->second;
      (labels[i] == Label::deceptive ? dec : tru).push_back(v);
    }
    NgramTest t;
    t.ranked = c;
    t.test = welch_or_limit(dec, tru, Alternative::two_sided);
    t.direction = t.test.mean_diff > 0 ? 1 : (t.test.mean_diff < 0 ? -1 : 0);
    raw.push_back(t.test.p_value);
    out.push_back(std::move(t));
  }
  const CorrectionResult holm = holm_correct(raw, alpha);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].p_holm = holm.adjusted_p[i];
    out[i].significant = holm.rejected[i];
  }
  return out;
}

inline std::string ngram_tests_to_csv(const std::vector<NgramTest>& tests, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += csv::row({"ngram", "n", "agg_truthful", "agg_deceptive", "diff", "t", "p_raw", "p_holm", "significant"});
  for (const auto& t : tests)
    out += csv::row({ngram_to_string(t.ranked.ngram), std::to_string(t.ranked.ngram.size()),
                     format_double(t.ranked.agg_truthful), format_double(t.ranked.agg_deceptive),
                     format_double(t.ranked.diff), format_double(t.test.statistic), format_double(t.test.p_value),
                     format_double(t.p_holm), t.significant ? "true" : "false"});
  return out;
}

struct FeatureTest {
  std::string feature;
  TestResult test;  // Welch, deceptive vs truthful
  std::size_t n_truthful = 0;
  std::size_t n_deceptive = 0;
  /// False when a class has fewer than 2 non-missing values; such columns
  /// stay out of the Holm family.
  bool tested = true;
  double p_holm = 1.0;
  bool significant = false;
  int direction = 0;
};

/// Per-column Welch test of deceptive vs truthful rows (missing values
/// skipped), Holm-corrected across the tested columns.
inline std::vector<FeatureTest> feature_significance(const FeatureMatrix& m, double alpha = 0.01) {
  std::vector<FeatureTest> out;
  std::vector<double> raw;
  std::vector<std::size_t> family;
  for (std::size_t c = 0; c < m.n_cols(); ++c) {
    std::vector<double> dec, tru;
    for (std::size_t r = 0; r < m.n_rows(); ++r)
      if (m.rows[r][c]) (m.labels[r] == Label::deceptive ? dec : tru).push_back(*m.rows[r][c]);
    FeatureTest t;
    t.feature = m.feature_names[c];
    t.n_truthful = tru.size();
    t.n_deceptive = dec.size();
    if (dec.size() < 2 || tru.size() < 2) {
      t.tested = false;
      t.test.p_value = 1.0;
    } else {
      t.test = welch_or_limit(dec, tru, Alternative::two_sided);
      t.direction = t.test.mean_diff > 0 ? 1 : (t.test.mean_diff < 0 ? -1 : 0);
      raw.push_back(t.test.p_value);
      family.push_back(out.size());
    }
    out.push_back(std::move(t));
  }
  if (family.empty()) throw Error(Errc::degenerate_sample, "no column has 2 values in each class");
  const CorrectionResult holm = holm_correct(raw, alpha);
  for (std::size_t i = 0; i < family.size(); ++i) {
    out[family[i]].p_holm = holm.adjusted_p[i];
    out[family[i]].significant = holm.rejected[i];
  }
  return out;
}

inline std::string feature_tests_to_csv(const std::vector<FeatureTest>& tests, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += csv::row(
      {"feature", "n_truthful", "n_deceptive", "tested", "mean_diff", "t", "df", "p_raw", "p_holm", "significant"});
  for (const auto& t : tests) {
    if (!t.tested) {
      out += csv::row({t.feature, std::to_string(t.n_truthful), std::to_string(t.n_deceptive), "false", "", "", "", "",
                       "", "false"});
      continue;
    }
    out += csv::row({t.feature, std::to_string(t.n_truthful), std::to_string(t.n_deceptive), "true",
                     format_double(t.test.mean_diff), format_double(t.test.statistic), format_double(t.test.df),
                     format_double(t.test.p_value), format_double(t.p_holm), t.significant ? "true" : "false"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// tf-idf

enum class TfidfMode { function_words, fw_pos, raw_unigrams };

inline std::vector<std::string> tfidf_terms(const TokenizedDoc& doc, TfidfMode mode) {
  std::vector<std::string> out;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (t.is_punct) continue;
      switch (mode) {
        case TfidfMode::raw_unigrams: out.push_back(t.lower); break;
        case TfidfMode::function_words:
          if (t.is_function_word) out.push_back(t.lower);
          break;
        case TfidfMode::fw_pos:
          if (t.is_function_word) {
            if (!t.pos) throw Error(Errc::missing_prerequisite, "document '" + doc.id + "' is not POS-tagged");
            out.push_back(*t.pos);
          }
          break;
      }
    }
  return out;
}

/// Smooth idf = ln((1 + N) / (1 + df)) + 1 over the fitting documents; rows
/// are raw counts times idf, L2-normalized. Unknown terms are ignored.
struct TfidfVectorizer {
  TfidfMode mode = TfidfMode::function_words;
  std::vector<std::string> vocabulary;  // sorted
  std::vector<double> idf;

  static TfidfVectorizer fit(const std::vector<TokenizedDoc>& train, TfidfMode mode) {
    std::map<std::string, std::size_t> df;
    for (const auto& d : train) {
      auto terms = tfidf_terms(d, mode);
      std::sort(terms.begin(), terms.end());
      terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
      for (const auto& t : terms) ++df[t];
    }
    if (df.empty()) throw Error(Errc::empty_vocabulary, "no terms in the training documents");
    TfidfVectorizer v;
    v.mode = mode;
    const double n = static_cast<double>(train.size());
    for (const auto& [term, count] : df) {
      v.vocabulary.push_back(term);
      v.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
    }
    return v;
  }

  std::vector<double> transform_one(const TokenizedDoc& doc) const {
    std::vector<double> row(vocabulary.size(), 0.0);
    for (const auto& t : tfidf_terms(doc, mode)) {
      auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), t);
      if (it != vocabulary.end() && *it == t) row[static_cast<std::size_t>(it - vocabulary.begin())] += 1.0;
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      row[k] *= idf[k];
      norm += row[k] * row[k];
    }
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (auto& x : row) x /= norm;
    }
    return row;
  }

  FeatureMatrix transform(const std::vector<TokenizedDoc>& docs, const std::vector<Label>& labels,
                          const std::vector<std::string>& domains) const {
    FeatureMatrix m;
    m.feature_names = vocabulary;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      m.doc_ids.push_back(docs[i].id);
      m.labels.push_back(labels.at(i));
      m.domains.push_back(domains.at(i));
      const auto row = transform_one(docs[i]);
      m.rows.emplace_back(row.begin(), row.end());
    }
    return m;
  }
};

/// Fits on `train` and vectorizes it.
inline FeatureMatrix tfidf_vectorize(const Corpus& train, TfidfMode mode,
                                     const FunctionWordLexicon& lex = FunctionWordLexicon::builtin()) {
  const auto docs = analyze_corpus(train, lex);
  const auto vec = TfidfVectorizer::fit(docs, mode);
  std::vector<std::string> domains;
  for (const auto& d : train.documents) domains.push_back(d.domain);
  return vec.transform(docs, corpus_labels(train), domains);
}

}  // namespace decept

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

// Engineered cue features, the 55 stylistic features, category-dictionary
// percentages, readability indices and feature-matrix assembly.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "decept/common.hpp"
#include "decept/corpus.hpp"
#include "decept/csv.hpp"
#include "decept/resources.hpp"
#include "decept/text.hpp"

namespace decept {

using Value = std::optional<double>;  // nullopt = missing

struct FeatureVector {
  std::string doc_id;
  std::map<std::string, Value> values;

  Value get(const std::string& name) const {
    auto it = values.find(name);
    return it == values.end() ? std::nullopt : it->second;
  }
};

// ---------------------------------------------------------------------------
// Category dictionary

struct CategoryDictionary {
  struct Category {
    std::string name;
    std::unordered_set<std::string> literals;
    std::vector<std::string> stems;  // wildcard patterns without the '*'
  };
  std::vector<Category> categories;

  const Category* find(std::string_view name) const {
    for (const auto& c : categories)
      if (c.name == name) return &c;
    return nullptr;
  }

  static bool matches(const Category& c, std::string_view word) {
    if (c.literals.count(std::string(word))) return true;
    return std::any_of(c.stems.begin(), c.stems.end(),
                       [&](const std::string& s) { return word.size() >= s.size() && word.substr(0, s.size()) == s; });
  }

  std::size_t pattern_count() const {
    std::size_t n = 0;
    for (const auto& c : categories) n += c.literals.size() + c.stems.size();
    return n;
  }

  /// `[category]` headers followed by one pattern per line; '#' comments.
  static CategoryDictionary parse(std::string_view text) {
    CategoryDictionary d;
    std::size_t lineno = 0;
    for (const auto& raw : split(text, '\n')) {
      ++lineno;
      std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      const std::string where = "dictionary line " + std::to_string(lineno);
      if (line.front() == '[') {
        if (line.back() != ']' || line.size() < 3) throw Error(Errc::parse, where + ": malformed category header");
        std::string name(trim(line.substr(1, line.size() - 2)));
        if (d.find(name)) throw Error(Errc::parse, where + ": duplicate category '" + name + "'");
        d.categories.push_back({name, {}, {}});
        continue;
      }
      if (d.categories.empty()) throw Error(Errc::parse, where + ": pattern before any category header");
      std::string pat(line);
      if (pat != ascii_lower(pat)) throw Error(Errc::parse, where + ": pattern '" + pat + "' is not lowercase");
      if (pat.back() == '*') {
        pat.pop_back();
        if (pat.empty() || pat.find('*') != std::string::npos)
          throw Error(Errc::parse, where + ": malformed wildcard pattern");
        d.categories.back().stems.push_back(pat);
      } else {
        if (pat.find('*') != std::string::npos) throw Error(Errc::parse, where + ": '*' only allowed at the end");
        d.categories.back().literals.insert(pat);
      }
    }
    return d;
  }

  static CategoryDictionary load(const std::string& path) { return parse(read_file(path)); }

  static const CategoryDictionary& demo() {
    static const CategoryDictionary d = parse(resources::demo_dictionary);
    return d;
  }
};

// ---------------------------------------------------------------------------
// Readability

enum class ReadabilityIndex { ari, smog, fog };

struct DocStats {
  double chars = 0;  // letters and digits only
  double words = 0;
  double sentences = 0;
  double polysyllables = 0;  // words with >= 3 syllables
  double complex_words = 0;  // same criterion, kept separate for callers
};

inline double readability(const DocStats& s, ReadabilityIndex index) {
  if (s.words < 1 || s.sentences < 1)
    throw Error(Errc::degenerate_input, "readability needs at least one word and one sentence");
  switch (index) {
    case ReadabilityIndex::ari: return 4.71 * (s.chars / s.words) + 0.5 * (s.words / s.sentences) - 21.43;
    case ReadabilityIndex::smog: return 1.0430 * std::sqrt(s.polysyllables * 30.0 / s.sentences) + 3.1291;
    case ReadabilityIndex::fog: return 0.4 * ((s.words / s.sentences) + 100.0 * (s.complex_words / s.words));
  }
  return 0.0;
}

inline DocStats doc_stats(const TokenizedDoc& doc) {
  DocStats s;
  s.sentences = static_cast<double>(doc.sentences.size());
  for (const auto& sent : doc.sentences)
    for (const auto& t : sent.tokens) {
      if (t.is_punct) continue;
      s.words += 1;
      std::size_t i = 0;
      while (i < t.surface.size()) {
        const char32_t c = utf8::next(t.surface, i);
        if (!utf8::is_punct(c) && !utf8::is_space(c)) s.chars += 1;
      }
      if (count_syllables(t.surface) >= 3) {
        s.polysyllables += 1;
        s.complex_words += 1;
      }
    }
  return s;
}

// ---------------------------------------------------------------------------
// Cue features

inline const std::vector<std::string>& cue_feature_names() {
  static const std::vector<std::string> names = {
      "words",      "verbs",      "sens",       "sen_len",    "word_len",  "paus",     "modi",
      "modal",      "cert",       "self_ref",   "group_ref",  "emotiveness", "lex_div", "content_div",
      "redun",      "spatiotemp", "perceptual", "pos_affect", "neg_affect", "fog",     "smog",
      "ari"};
  return names;
}

/// Cues that need parser output (noun chunks, dependency relations,
/// morphological features); emitted only for ingested documents carrying it.
inline const std::vector<std::string>& parse_cue_feature_names() {
  static const std::vector<std::string> names = {"noun_phrases", "np_len", "clauses", "other_ref", "passive"};
  return names;
}

namespace detail {

inline Value ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

inline bool has_feat(std::string_view feats, std::string_view kv) {
  for (const auto& part : split(feats, '|'))
    if (part == kv) return true;
  return false;
}

}  // namespace detail

/// Appendix-style linguistic cues. Requires a tagged document with function
/// words marked. Ratios with a zero denominator are missing.
inline FeatureVector extract_cue_features(const TokenizedDoc& doc,
                                          const CategoryDictionary& dict = CategoryDictionary::demo()) {
  if (!doc.tagged) throw Error(Errc::missing_prerequisite, "document '" + doc.id + "' is not POS-tagged");
  if (!doc.function_words_marked)
    throw Error(Errc::missing_prerequisite, "document '" + doc.id + "' has no function-word marks");

  double W = 0, S = static_cast<double>(doc.sentences.size());
  double verbs = 0, nouns = 0, adj = 0, adv = 0, modals = 0, punct = 0, fw = 0;
  double self = 0, group = 0, content = 0;
  std::unordered_set<std::string> distinct, distinct_content;
  std::map<std::string, double> category_hits;
  const char* dict_categories[] = {"certain", "space", "time", "percep", "posemo", "negemo"};

  bool any_np = false, all_dep = true, any_feats = false, any_deprel = false;
  double np_count = 0, np_words = 0, verb_preds = 0, roots = 0, conjs = 0, third = 0, passive = 0;

  for (const auto& sent : doc.sentences) {
    if (sent.noun_phrases) {
      any_np = true;
      for (const auto& [b, e] : *sent.noun_phrases) {
        np_count += 1;
        for (std::size_t k = b; k < e; ++k)
          if (!sent.tokens[k].is_punct) np_words += 1;
      }
    }
    for (const auto& t : sent.tokens) {
      if (!t.upos || !t.deprel) all_dep = false;
      if (t.deprel) any_deprel = true;
      if (t.feats) any_feats = true;
      if (t.upos && *t.upos == "VERB") verb_preds += 1;
      if (t.deprel && *t.deprel == "root") roots += 1;
      if (t.deprel && *t.deprel == "conj") conjs += 1;
      if (t.deprel && *t.deprel == "aux:pass") passive += 1;
      if (t.is_punct) {
        punct += 1;
        continue;
      }
      W += 1;
      const std::string& tag = t.pos.value_or("");
      if (is_verb_tag(tag)) verbs += 1;
      if (is_noun_tag(tag)) nouns += 1;
      if (is_adjective_tag(tag)) adj += 1;
      if (is_adverb_tag(tag)) adv += 1;
      if (tag == "MD" && (!t.upos || *t.upos == "AUX")) modals += 1;
      if (tag == "PRP" && t.feats && detail::has_feat(*t.feats, "Person=3")) third += 1;
      if (t.lower == "i" || t.lower == "me") self += 1;
      if (t.lower == "we" || t.lower == "us") group += 1;
      distinct.insert(t.lower);
      if (t.is_function_word) {
        fw += 1;
      } else {
        content += 1;
        distinct_content.insert(t.lower);
      }
      for (const char* cat : dict_categories)
        if (const auto* c = dict.find(cat); c && CategoryDictionary::matches(*c, t.lower)) category_hits[cat] += 1;
    }
  }

  auto dict_ratio = [&](std::initializer_list<const char*> cats) -> Value {
    double hits = 0;
    for (const char* c : cats) {
      if (!dict.find(c)) return std::nullopt;
      hits += category_hits[c];
    }
    return detail::ratio(hits, W);
  };

  FeatureVector v;
  v.doc_id = doc.id;
  auto& o = v.values;
  o["words"] = W;
  o["verbs"] = verbs;
  o["sens"] = S;
  o["sen_len"] = detail::ratio(W, S);
  o["word_len"] = detail::ratio(static_cast<double>(doc.char_count), W);
  o["paus"] = detail::ratio(punct, S);
  o["modi"] = adj + adv;
  o["modal"] = detail::ratio(modals, W);
  o["cert"] = dict_ratio({"certain"});
  o["self_ref"] = detail::ratio(self, W);
  o["group_ref"] = detail::ratio(group, W);
  o["emotiveness"] = detail::ratio(adj + adv, nouns + verbs);
  o["lex_div"] = detail::ratio(static_cast<double>(distinct.size()), W);
  o["content_div"] = detail::ratio(static_cast<double>(distinct_content.size()), content);
  o["redun"] = detail::ratio(fw, S);
  o["spatiotemp"] = dict_ratio({"space", "time"});
  o["perceptual"] = dict_ratio({"percep"});
  o["pos_affect"] = dict_ratio({"posemo"});
  o["neg_affect"] = dict_ratio({"negemo"});
  const DocStats st = doc_stats(doc);
  if (st.words >= 1 && st.sentences >= 1) {
    o["fog"] = readability(st, ReadabilityIndex::fog);
    o["smog"] = readability(st, ReadabilityIndex::smog);
    o["ari"] = readability(st, ReadabilityIndex::ari);
  } else {
    o["fog"] = o["smog"] = o["ari"] = std::nullopt;
  }
  if (any_np) {
    o["noun_phrases"] = np_count;
    o["np_len"] = detail::ratio(np_words, np_count);
  }
  if (all_dep && doc.token_count() > 0) o["clauses"] = detail::ratio(verb_preds - roots - conjs, S);
  if (any_feats) o["other_ref"] = detail::ratio(third, W);
  if (any_deprel) o["passive"] = detail::ratio(passive, W);
  return v;
}

// ---------------------------------------------------------------------------
// Stylistic features

struct StylisticConfig {
  /// The 12 marks behind f_e_0..f_e_11, in order.
  std::vector<char32_t> marks = {'.', ',', '!', '?', ';', ':', '\'', '"', '-', '(', ')', '_'};
};

inline std::vector<std::string> stylistic_feature_names(const StylisticConfig& cfg = {}) {
  std::vector<std::string> names = {"len_text", "len_words", "avg_len", "num_short_w", "per_digit", "per_cap"};
  for (char c = 'a'; c <= 'z'; ++c) names.push_back(std::string("f_") + c);
  for (char c = '0'; c <= '9'; ++c) names.push_back(std::string("f_") + c);
  names.push_back("richness");
  for (std::size_t i = 0; i < cfg.marks.size(); ++i) names.push_back("f_e_" + std::to_string(i));
  return names;
}

/// Character- and word-level style features over the raw text. Words are
/// the non-punctuation tokens of the built-in tokenizer.
inline FeatureVector extract_stylistic_features(std::string_view text, const StylisticConfig& cfg = {},
                                                const std::string& doc_id = {}) {
  FeatureVector v;
  v.doc_id = doc_id;
  auto& o = v.values;

  double len = 0, digits = 0, caps = 0, letters = 0, mark_total = 0;
  double letter_counts[26] = {}, digit_counts[10] = {};
  std::vector<double> mark_counts(cfg.marks.size(), 0.0);
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = utf8::next(text, i);
    len += 1;
    if (c >= '0' && c <= '9') {
      digits += 1;
      digit_counts[c - '0'] += 1;
    } else if (c >= 'A' && c <= 'Z') {
      caps += 1;
      letters += 1;
      letter_counts[c - 'A'] += 1;
    } else if (c >= 'a' && c <= 'z') {
      letters += 1;
      letter_counts[c - 'a'] += 1;
    }
    for (std::size_t k = 0; k < cfg.marks.size(); ++k)
      if (cfg.marks[k] == c) {
        mark_counts[k] += 1;
        mark_total += 1;
      }
  }

  const TokenizedDoc doc = tokenize_document(text);
  double words = 0, total_word_len = 0, short_words = 0;
  std::unordered_map<std::string, int> freq;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (t.is_punct) continue;
      words += 1;
      const double wl = static_cast<double>(utf8::length(t.surface));
      total_word_len += wl;
      if (wl <= 3) short_words += 1;
      ++freq[t.lower];
    }
  double hapax = 0;
  for (const auto& [w, n] : freq)
    if (n == 1) hapax += 1;

  o["len_text"] = len;
  o["len_words"] = words;
  o["avg_len"] = detail::ratio(total_word_len, words);
  o["num_short_w"] = short_words;
  o["per_digit"] = detail::ratio(digits, len);
  o["per_cap"] = detail::ratio(caps, len);
  for (int k = 0; k < 26; ++k) o[std::string("f_") + static_cast<char>('a' + k)] = detail::ratio(letter_counts[k], letters);
  for (int k = 0; k < 10; ++k) o[std::string("f_") + static_cast<char>('0' + k)] = detail::ratio(digit_counts[k], digits);
  o["richness"] = detail::ratio(hapax, words);
  for (std::size_t k = 0; k < cfg.marks.size(); ++k)
    o["f_e_" + std::to_string(k)] = detail::ratio(mark_counts[k], mark_total);
  return v;
}

// ---------------------------------------------------------------------------
// Dictionary features

/// Per category: percentage of words matching; plus WC and WPS raw values.
inline FeatureVector extract_dictionary_features(const TokenizedDoc& doc, const CategoryDictionary& dict) {
  if (dict.categories.empty() || dict.pattern_count() == 0)
    throw Error(Errc::empty_dictionary, "category dictionary has no patterns");
  std::vector<double> hits(dict.categories.size(), 0.0);
  double W = 0;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) {
      if (t.is_punct) continue;
      W += 1;
      for (std::size_t k = 0; k < dict.categories.size(); ++k)
        if (CategoryDictionary::matches(dict.categories[k], t.lower)) hits[k] += 1;
    }
  FeatureVector v;
  v.doc_id = doc.id;
  for (std::size_t k = 0; k < dict.categories.size(); ++k) {
    const Value r = detail::ratio(hits[k], W);
    v.values[dict.categories[k].name] = r ? Value(100.0 * *r) : std::nullopt;
  }
  v.values["WC"] = W;
  v.values["WPS"] = detail::ratio(W, static_cast<double>(doc.sentences.size()));
  return v;
}

// ---------------------------------------------------------------------------
// Feature matrix

struct FeatureMatrix {
  std::vector<std::string> feature_names;
  std::vector<std::string> doc_ids;
  std::vector<Label> labels;
  std::vector<std::string> domains;
  std::vector<std::vector<Value>> rows;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return feature_names.size(); }

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
      if (feature_names[i] == name) return i;
    return std::nullopt;
  }

  std::vector<Value> column_values(std::size_t c) const {
    std::vector<Value> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }

  /// Column subset in the given order; throws ColumnMismatch on unknown names.
  FeatureMatrix select(const std::vector<std::string>& names) const {
    std::vector<std::size_t> idx;
    for (const auto& n : names) {
      auto c = column(n);
      if (!c) throw Error(Errc::column_mismatch, "unknown feature '" + n + "'");
      idx.push_back(*c);
    }
    FeatureMatrix m;
    m.feature_names = names;
    m.doc_ids = doc_ids;
    m.labels = labels;
    m.domains = domains;
    m.rows.reserve(rows.size());
    for (const auto& r : rows) {
      std::vector<Value> row;
      row.reserve(idx.size());
      for (auto i : idx) row.push_back(r[i]);
      m.rows.push_back(std::move(row));
    }
    return m;
  }

  FeatureMatrix subset_rows(const std::vector<std::size_t>& which) const {
    FeatureMatrix m;
    m.feature_names = feature_names;
    for (auto i : which) {
      m.doc_ids.push_back(doc_ids[i]);
      m.labels.push_back(labels[i]);
      m.domains.push_back(domains[i]);
      m.rows.push_back(rows[i]);
    }
    return m;
  }

  void validate() const {
    std::set<std::string> seen;
    for (const auto& n : feature_names)
      if (!seen.insert(n).second) throw Error(Errc::duplicate_feature, "duplicate feature name '" + n + "'");
    if (doc_ids.size() != rows.size() || labels.size() != rows.size() || domains.size() != rows.size())
      throw Error(Errc::malformed_matrix, "row metadata is not aligned with rows");
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (rows[r].size() != feature_names.size())
        throw Error(Errc::malformed_matrix, "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                                " cells, expected " + std::to_string(feature_names.size()));
  }
};

inline std::string to_csv(const FeatureMatrix& m, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  std::vector<std::string> header = {"doc_id", "label", "domain"};
  header.insert(header.end(), m.feature_names.begin(), m.feature_names.end());
  out += csv::row(header);
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    std::vector<std::string> f = {m.doc_ids[r], to_string(m.labels[r]), m.domains[r]};
    for (const auto& v : m.rows[r]) f.push_back(v ? format_double(*v) : std::string());
    out += csv::row(f);
  }
  return out;
}

inline FeatureMatrix parse_feature_matrix(std::string_view text) {
  const auto recs = csv::parse(text);
  if (recs.empty()) throw Error(Errc::schema, "feature matrix CSV has no header");
  const auto& h = recs.front().fields;
  if (h.size() < 3 || h[0] != "doc_id" || h[1] != "label" || h[2] != "domain")
    throw Error(Errc::schema, "feature matrix header must start with doc_id,label,domain");
  FeatureMatrix m;
  m.feature_names.assign(h.begin() + 3, h.end());
  for (std::size_t r = 1; r < recs.size(); ++r) {
    const auto& f = recs[r].fields;
    const std::string where = "line " + std::to_string(recs[r].line);
    if (f.size() != h.size()) throw Error(Errc::parse, where + ": expected " + std::to_string(h.size()) + " fields");
    Label l;
    if (!parse_label(f[1], l)) throw Error(Errc::schema, where + ": bad label '" + f[1] + "'");
    m.doc_ids.push_back(f[0]);
    m.labels.push_back(l);
    m.domains.push_back(f[2]);
    std::vector<Value> row;
    for (std::size_t k = 3; k < f.size(); ++k) {
      if (f[k].empty()) {
        row.emplace_back(std::nullopt);
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(f[k].c_str(), &end);
      if (end != f[k].c_str() + f[k].size() || !std::isfinite(v))
        throw Error(Errc::parse, where + ": bad number '" + f[k] + "' in column '" + h[k] + "'");
      row.emplace_back(v);
    }
    m.rows.push_back(std::move(row));
  }
  m.validate();
  return m;
}

inline FeatureMatrix load_feature_matrix(const std::string& path) { return parse_feature_matrix(read_file(path)); }

enum class Extractor { cues, stylistic, dictionary };

struct FeatureOptions {
  std::set<Extractor> extractors = {Extractor::cues, Extractor::stylistic, Extractor::dictionary};
  const FunctionWordLexicon* lexicon = nullptr;  // defaults to the built-in lexicon
  const CategoryDictionary* dictionary = nullptr;  // defaults to the demo dictionary
  StylisticConfig stylistic;
};

/// Union of extractor outputs for one raw text. Duplicate names across
/// extractors are an error naming the collision.
inline FeatureVector extract_all(std::string_view text, const FeatureOptions& opt, const std::string& doc_id = {}) {
  const FunctionWordLexicon& lex = opt.lexicon ? *opt.lexicon : FunctionWordLexicon::builtin();
  const CategoryDictionary& dict = opt.dictionary ? *opt.dictionary : CategoryDictionary::demo();
  FeatureVector out;
  out.doc_id = doc_id;
  auto merge = [&](const FeatureVector& part, const char* source) {
    for (const auto& [k, v] : part.values)
      if (!out.values.emplace(k, v).second)
        throw Error(Errc::duplicate_feature, "feature name '" + k + "' produced twice (collision in " + source + ")");
  };
  std::optional<TokenizedDoc> doc;
  auto analyzed = [&]() -> const TokenizedDoc& {
    if (!doc) {
      doc = analyze(text, lex);
      doc->id = doc_id;
    }
    return *doc;
  };
  if (opt.extractors.count(Extractor::cues)) merge(extract_cue_features(analyzed(), dict), "cues");
  if (opt.extractors.count(Extractor::stylistic)) merge(extract_stylistic_features(text, opt.stylistic, doc_id), "stylistic");
  if (opt.extractors.count(Extractor::dictionary)) merge(extract_dictionary_features(analyzed(), dict), "dictionary");
  return out;
}

/// Column names the extractors always emit (parse-only cues excluded).
inline std::vector<std::string> expected_columns(const FeatureOptions& opt) {
  const CategoryDictionary& dict = opt.dictionary ? *opt.dictionary : CategoryDictionary::demo();
  std::vector<std::string> names;
  if (opt.extractors.count(Extractor::cues)) names = cue_feature_names();
  if (opt.extractors.count(Extractor::stylistic))
    for (auto& n : stylistic_feature_names(opt.stylistic)) names.push_back(n);
  if (opt.extractors.count(Extractor::dictionary)) {
    for (const auto& c : dict.categories) names.push_back(c.name);
    names.push_back("WC");
    names.push_back("WPS");
  }
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw Error(Errc::duplicate_feature, "feature name '" + n + "' produced twice");
  std::sort(names.begin(), names.end());
  return names;
}

/// One row per document; columns sorted lexicographically.
inline FeatureMatrix build_feature_matrix(const Corpus& corpus, const FeatureOptions& opt = {}) {
  std::vector<std::string> base = expected_columns(opt);
  const std::size_t n = corpus.documents.size();
  std::vector<FeatureVector> vecs(n);
  parallel_for(n, [&](std::size_t i) {
    const Document& d = corpus.documents[i];
    try {
      vecs[i] = extract_all(d.text, opt, d.id);
    } catch (const Error& e) {
      throw Error(e.code(), "document '" + d.id + "': " + e.what());
    }
  });
  std::set<std::string> cols(base.begin(), base.end());
  for (const auto& v : vecs)
    for (const auto& [k, _] : v.values) cols.insert(k);
  FeatureMatrix m;
  m.feature_names.assign(cols.begin(), cols.end());
  for (std::size_t i = 0; i < n; ++i) {
    const Document& d = corpus.documents[i];
    m.doc_ids.push_back(d.id);
    m.labels.push_back(d.label);
    m.domains.push_back(d.domain);
    std::vector<Value> row;
    row.reserve(m.feature_names.size());
    for (const auto& name : m.feature_names) row.push_back(vecs[i].get(name));
    m.rows.push_back(std::move(row));
  }
  return m;
}

/// Feature matrix from pre-tagged documents (cue features only, including
/// the parse-only cues when annotations are present). Labels and domains are
/// looked up by document id in the corpus.
inline FeatureMatrix build_cue_matrix_from_tagged(const std::vector<TokenizedDoc>& docs, const Corpus& corpus,
                                                  const FunctionWordLexicon& lex = FunctionWordLexicon::builtin(),
                                                  const CategoryDictionary& dict = CategoryDictionary::demo()) {
  std::map<std::string, const Document*> by_id;
  for (const auto& d : corpus.documents) by_id[d.id] = &d;
  std::vector<FeatureVector> vecs;
  std::set<std::string> cols(cue_feature_names().begin(), cue_feature_names().end());
  for (const auto& td : docs) {
    if (!by_id.count(td.id)) throw Error(Errc::schema, "tagged document '" + td.id + "' not found in corpus");
    vecs.push_back(extract_cue_features(mark_function_words(td, lex), dict));
    for (const auto& [k, _] : vecs.back().values) cols.insert(k);
  }
  FeatureMatrix m;
  m.feature_names.assign(cols.begin(), cols.end());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Document* d = by_id[docs[i].id];
    m.doc_ids.push_back(d->id);
    m.labels.push_back(d->label);
    m.domains.push_back(d->domain);
    std::vector<Value> row;
    for (const auto& name : m.feature_names) row.push_back(vecs[i].get(name));
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace decept

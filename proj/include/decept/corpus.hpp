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

// Labeled multi-domain corpora: loading, persistence, cleaning and taxonomy
// metadata validation.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <boost/regex.hpp>
#include <json.hpp>

#include "decept/common.hpp"
#include "decept/csv.hpp"
#include "decept/text.hpp"

namespace decept {

// ---------------------------------------------------------------------------
// Taxonomy

inline constexpr std::array<std::string_view, 26> kStratagemCases = {
    "direction",   "location-at",   "location-from", "location-to", "location-through",
    "orientation", "frequency",     "time-at",       "time-from",   "time-to",
    "time-through", "cause",        "contradiction", "effect",      "purpose",
    "accompaniment", "content",     "manner",        "material",    "measure",
    "order",       "value",         "supertype",     "whole",       "external-precondition",
    "internal-precondition"};

inline constexpr std::array<std::string_view, 31> kPersuasionTechniques = {
    // Justification
    "Appeal to popularity", "Appeal to authority/expert", "Appeal to values", "Appeal to fear/prejudice",
    "Reciprocity", "Scarcity", "Reward", "Appeal to relevant empirical evidence", "Relevant Statistics",
    "Relevant Examples",
    // Simplification
    "Causal oversimplification", "False dilemma or no choice", "Consequential oversimplification",
    // Distraction
    "Straw man", "Red herring", "Whataboutism", "Flag Waving", "Liking",
    // Call
    "Slogans", "Social Proof", "Appeal to time", "Conversation killer",
    // Manipulative wording/images
    "Loaded language/images", "Repetition", "Exaggeration or minimization", "Obfuscation",
    // Attack on reputation
    "Name calling or labeling", "Doubt", "Guilt by association", "Appeal to hypocrisy",
    "Questioning the reputation"};

/// Lowercases and collapses every run of non-alphanumerics to one space.
inline std::string normalize_vocab_term(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    if (!alnum) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  }
  return out;
}

template <std::size_t N>
inline bool in_vocabulary(const std::array<std::string_view, N>& vocab, std::string_view term) {
  const std::string key = normalize_vocab_term(term);
  return std::any_of(vocab.begin(), vocab.end(),
                     [&](std::string_view v) { return normalize_vocab_term(v) == key; });
}

/// Every field is kept as raw text so validation can report all problems at
/// once. Absent optional fields are empty.
struct TaxonomyLabel {
  std::optional<std::string> sources;        // human | bot | mixed
  std::vector<std::string> targets;          // human | detector
  std::optional<std::string> goal;           // harmless | harmful
  std::string subgoal;
  std::optional<std::string> facticity;      // establishable | not_establishable | unknown
  std::optional<std::string> verifiability;  // easy | hard | unknown
  std::optional<std::string> breadth;        // narrow | broad
  std::optional<std::string> media;
  std::optional<std::vector<std::string>> modality;  // gestural | audio | textual | visual
  std::optional<std::string> manner;                 // interactive | non_interactive
  std::vector<std::string> stratagem_cases;
  std::vector<std::string> persuasion;

  bool operator==(const TaxonomyLabel&) const = default;
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool valid() const { return problems.empty(); }
};

inline ValidationReport validate_taxonomy(const TaxonomyLabel& t) {
  ValidationReport r;
  auto check_enum = [&](const char* field, const std::optional<std::string>& v,
                        std::initializer_list<std::string_view> allowed) {
    if (!v) return;
    if (std::find(allowed.begin(), allowed.end(), *v) == allowed.end())
      r.problems.push_back(std::string(field) + ": unknown value '" + *v + "'");
  };
  check_enum("sources", t.sources, {"human", "bot", "mixed"});
  for (const auto& x : t.targets)
    if (x != "human" && x != "detector") r.problems.push_back("targets: unknown value '" + x + "'");
  check_enum("goal", t.goal, {"harmless", "harmful"});
  check_enum("facticity", t.facticity, {"establishable", "not_establishable", "unknown"});
  check_enum("verifiability", t.verifiability, {"easy", "hard", "unknown"});
  check_enum("breadth", t.breadth, {"narrow", "broad"});
  check_enum("manner", t.manner, {"interactive", "non_interactive"});
  if (t.modality) {
    if (t.modality->empty()) r.problems.push_back("modality: provided but empty");
    for (const auto& m : *t.modality)
      if (m != "gestural" && m != "audio" && m != "textual" && m != "visual")
        r.problems.push_back("modality: unknown value '" + m + "'");
  }
  for (const auto& s : t.stratagem_cases)
    if (!in_vocabulary(kStratagemCases, s)) r.problems.push_back("stratagem_cases: unknown case '" + s + "'");
  for (const auto& p : t.persuasion)
    if (!in_vocabulary(kPersuasionTechniques, p))
      r.problems.push_back("persuasion: unknown technique '" + p + "'");
  return r;
}

inline nlohmann::ordered_json to_json(const TaxonomyLabel& t) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (t.sources) j["sources"] = *t.sources;
  if (!t.targets.empty()) j["targets"] = t.targets;
  if (t.goal) j["goal"] = *t.goal;
  if (!t.subgoal.empty()) j["subgoal"] = t.subgoal;
  if (t.facticity) j["facticity"] = *t.facticity;
  if (t.verifiability) j["verifiability"] = *t.verifiability;
  if (t.breadth) j["breadth"] = *t.breadth;
  if (t.media) j["media"] = *t.media;
  if (t.modality) j["modality"] = *t.modality;
  if (t.manner) j["manner"] = *t.manner;
  if (!t.stratagem_cases.empty()) j["stratagem_cases"] = t.stratagem_cases;
  if (!t.persuasion.empty()) j["persuasion"] = t.persuasion;
  return j;
}

/// Throws SchemaError when a field has the wrong JSON type.
inline TaxonomyLabel taxonomy_from_json(const nlohmann::json& j, const std::string& where = "taxonomy") {
  if (!j.is_object()) throw Error(Errc::schema, where + ": expected an object");
  TaxonomyLabel t;
  auto str = [&](const char* key, std::optional<std::string>& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) throw Error(Errc::schema, where + "." + key + ": expected a string");
    out = j[key].get<std::string>();
  };
  auto list = [&](const char* key) -> std::optional<std::vector<std::string>> {
    if (!j.contains(key)) return std::nullopt;
    const auto& a = j[key];
    if (!a.is_array()) throw Error(Errc::schema, where + "." + key + ": expected an array of strings");
    std::vector<std::string> v;
    for (const auto& e : a) {
      if (!e.is_string()) throw Error(Errc::schema, where + "." + key + ": expected an array of strings");
      v.push_back(e.get<std::string>());
    }
    return v;
  };
  str("sources", t.sources);
  if (auto v = list("targets")) t.targets = *v;
  str("goal", t.goal);
  std::optional<std::string> subgoal;
  str("subgoal", subgoal);
  t.subgoal = subgoal.value_or("");
  str("facticity", t.facticity);
  str("verifiability", t.verifiability);
  str("breadth", t.breadth);
  str("media", t.media);
  t.modality = list("modality");
  str("manner", t.manner);
  if (auto v = list("stratagem_cases")) t.stratagem_cases = *v;
  if (auto v = list("persuasion")) t.persuasion = *v;
  return t;
}

// ---------------------------------------------------------------------------
// Documents and corpora

struct Document {
  std::string id;
  std::string text;
  Label label = Label::truthful;
  std::string domain;
  std::map<std::string, std::string> meta;
  std::optional<TaxonomyLabel> taxonomy;

  bool operator==(const Document&) const = default;
};

struct CleanReport {
  std::size_t removed_duplicates = 0;
  std::size_t removed_non_english = 0;
  std::size_t removed_empty = 0;
  std::size_t removed_overlong = 0;
  bool labels_flipped = false;
  std::vector<std::string> transformations;

  std::size_t total_removed() const {
    return removed_duplicates + removed_non_english + removed_empty + removed_overlong;
  }
  bool operator==(const CleanReport&) const = default;
};

inline nlohmann::ordered_json to_json(const CleanReport& r) {
  nlohmann::ordered_json j;
  j["removed_duplicates"] = r.removed_duplicates;
  j["removed_non_english"] = r.removed_non_english;
  j["removed_empty"] = r.removed_empty;
  j["removed_overlong"] = r.removed_overlong;
  j["labels_flipped"] = r.labels_flipped;
  j["transformations"] = r.transformations;
  return j;
}

struct Corpus {
  std::string name;
  std::vector<Document> documents;
  std::optional<CleanReport> provenance;  // nullopt = raw

  std::size_t count(Label l) const {
    return static_cast<std::size_t>(
        std::count_if(documents.begin(), documents.end(), [&](const Document& d) { return d.label == l; }));
  }
  /// Fraction of deceptive documents; 0 for an empty corpus.
  double deceptive_fraction() const {
    return documents.empty() ? 0.0 : static_cast<double>(count(Label::deceptive)) / documents.size();
  }
};

enum class CorpusFormat { jsonl, csv };

inline CorpusFormat format_from_path(std::string_view path) {
  if (path.size() >= 4 && ascii_lower(path.substr(path.size() - 4)) == ".csv") return CorpusFormat::csv;
  return CorpusFormat::jsonl;
}

namespace detail {

inline void check_unique(std::unordered_set<std::string>& seen, const std::string& id, std::size_t line) {
  if (!seen.insert(id).second)
    throw Error(Errc::duplicate_id, "duplicate id '" + id + "' at line " + std::to_string(line));
}

inline Label require_label(std::string_view s, std::size_t line) {
  Label l;
  if (!parse_label(s, l))
    throw Error(Errc::schema, "field 'label' at line " + std::to_string(line) + ": expected truthful or deceptive, got '" +
                                  std::string(s) + "'");
  return l;
}

}  // namespace detail

inline Corpus parse_corpus_jsonl(std::string_view text, std::string name = {}) {
  using nlohmann::json;
  Corpus c;
  c.name = std::move(name);
  std::unordered_set<std::string> seen;
  std::size_t lineno = 0;
  for (const auto& raw : split(text, '\n')) {
    ++lineno;
    if (trim(raw).empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (!utf8::valid(raw)) throw Error(Errc::parse, where + ": invalid UTF-8");
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::exception& e) {
      throw Error(Errc::parse, where + ": " + e.what());
    }
    if (!j.is_object()) throw Error(Errc::parse, where + ": expected a JSON object");
    Document d;
    for (const char* field : {"id", "text", "label", "domain"}) {
      if (!j.contains(field)) throw Error(Errc::schema, "missing field '" + std::string(field) + "' at " + where);
      if (!j[field].is_string())
        throw Error(Errc::schema, "field '" + std::string(field) + "' at " + where + " must be a string");
    }
    d.id = j["id"].get<std::string>();
    d.text = j["text"].get<std::string>();
    d.label = detail::require_label(j["label"].get<std::string>(), lineno);
    d.domain = j["domain"].get<std::string>();
    if (j.contains("meta")) {
      if (!j["meta"].is_object()) throw Error(Errc::schema, "field 'meta' at " + where + " must be an object");
      for (const auto& [k, v] : j["meta"].items()) d.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    if (j.contains("taxonomy") && !j["taxonomy"].is_null())
      d.taxonomy = taxonomy_from_json(j["taxonomy"], "taxonomy at " + where);
    detail::check_unique(seen, d.id, lineno);
    c.documents.push_back(std::move(d));
  }
  return c;
}

/// CSV with header id,text,label,domain. Extra columns are kept in meta.
inline Corpus parse_corpus_csv(std::string_view text, std::string name = {}) {
  if (!utf8::valid(text)) {
    std::size_t line = 1, i = 0;
    while (i < text.size()) {
      std::size_t start = i;
      while (i < text.size() && text[i] != '\n') ++i;
      if (!utf8::valid(text.substr(start, i - start))) break;
      ++i;
      ++line;
    }
    throw Error(Errc::parse, "invalid UTF-8 at line " + std::to_string(line));
  }
  Corpus c;
  c.name = std::move(name);
  const auto records = csv::parse(text);
  if (records.empty()) return c;
  const auto& header = records.front();
  const std::size_t id_col = csv::column_index(header, "id");
  const std::size_t text_col = csv::column_index(header, "text");
  const std::size_t label_col = csv::column_index(header, "label");
  const std::size_t domain_col = csv::column_index(header, "domain");
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.fields.size())
      throw Error(Errc::parse, "line " + std::to_string(rec.line) + ": expected " +
                                   std::to_string(header.fields.size()) + " fields, got " +
                                   std::to_string(rec.fields.size()));
    Document d;
    d.id = rec.fields[id_col];
    d.text = rec.fields[text_col];
    d.domain = rec.fields[domain_col];
    if (d.id.empty()) throw Error(Errc::schema, "missing field 'id' at line " + std::to_string(rec.line));
    if (rec.fields[label_col].empty())
      throw Error(Errc::schema, "missing field 'label' at line " + std::to_string(rec.line));
    d.label = detail::require_label(rec.fields[label_col], rec.line);
    for (std::size_t k = 0; k < header.fields.size(); ++k)
      if (k != id_col && k != text_col && k != label_col && k != domain_col)
        d.meta[header.fields[k]] = rec.fields[k];
    detail::check_unique(seen, d.id, rec.line);
    c.documents.push_back(std::move(d));
  }
  return c;
}

inline Corpus load_corpus(const std::string& path, std::optional<CorpusFormat> format = std::nullopt) {
  const std::string text = read_file(path);
  const CorpusFormat f = format.value_or(format_from_path(path));
  return f == CorpusFormat::csv ? parse_corpus_csv(text, path) : parse_corpus_jsonl(text, path);
}

inline std::string serialize_jsonl(const Corpus& c) {
  std::string out;
  for (const auto& d : c.documents) {
    nlohmann::ordered_json j;
    j["id"] = d.id;
    j["text"] = d.text;
    j["label"] = to_string(d.label);
    j["domain"] = d.domain;
    if (!d.meta.empty()) j["meta"] = d.meta;
    if (d.taxonomy) j["taxonomy"] = to_json(*d.taxonomy);
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline std::string serialize_csv(const Corpus& c) {
  std::string out = csv::row({"id", "text", "label", "domain"});
  for (const auto& d : c.documents) out += csv::row({d.id, d.text, to_string(d.label), d.domain});
  return out;
}

inline void save_corpus(const Corpus& c, const std::string& path, std::optional<CorpusFormat> format = std::nullopt) {
  const CorpusFormat f = format.value_or(format_from_path(path));
  write_file(path, f == CorpusFormat::csv ? serialize_csv(c) : serialize_jsonl(c));
}

// ---------------------------------------------------------------------------
// Cleaning

/// A named regex substitution applied to every text before dedup.
struct MetadataRule {
  std::string name;
  std::string pattern;  // Perl syntax
  std::string replacement;
};

/// Leading block of two or more "Name: value" header lines (with folded
/// continuation lines) terminated by a blank line.
inline MetadataRule rfc822_header_rule() {
  return {"rfc822_headers",
          R"(\A(?:[A-Za-z][A-Za-z0-9-]*:[^\n]*\r?\n(?:[ \t][^\n]*\r?\n)*){2,}\r?\n)", ""};
}

struct CleanConfig {
  bool flip_labels = false;
  std::size_t max_chars = 1000000;
  bool dedup = true;
  bool drop_non_english = true;
  std::vector<MetadataRule> metadata_rules = {rfc822_header_rule()};
  double min_function_word_fraction = 0.05;
  double min_ascii_letter_fraction = 0.5;
};

/// Replaces <br>, <br/>, <br /> (any case, any inner spacing) with '\n'.
inline std::string replace_br_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<' && i + 2 < s.size() && (s[i + 1] == 'b' || s[i + 1] == 'B') &&
        (s[i + 2] == 'r' || s[i + 2] == 'R')) {
      std::size_t j = i + 3;
      while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
      if (j < s.size() && s[j] == '/') ++j;
      while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
      if (j < s.size() && s[j] == '>') {
        out.push_back('\n');
        i = j + 1;
        continue;
      }
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

/// Dedup key: lowercased, whitespace runs collapsed, trimmed.
inline std::string dedup_key(std::string_view text) {
  std::string out;
  bool pending = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t at = i;
    const char32_t c = utf8::next(text, i);
    if (utf8::is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    if (c < 0x80) out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    else out.append(text.substr(at, i - at));
  }
  return out;
}

inline bool is_blank(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size())
    if (!utf8::is_space(utf8::next(text, i))) return false;
  return true;
}

/// Heuristic: flags a text as non-English when fewer than 5% of its
/// whitespace tokens are lexicon function words and fewer than half of its
/// non-space code points are ASCII letters.
inline bool looks_non_english(std::string_view text, const FunctionWordLexicon& lexicon, double min_fw = 0.05,
                              double min_ascii = 0.5) {
  std::size_t tokens = 0, fw = 0, non_space = 0, ascii_letters = 0;
  std::string chunk;
  auto flush = [&] {
    if (chunk.empty()) return;
    std::size_t b = 0, e = chunk.size();
    while (b < e && std::ispunct(static_cast<unsigned char>(chunk[b]))) ++b;
    while (e > b && std::ispunct(static_cast<unsigned char>(chunk[e - 1]))) --e;
    if (e > b) {
      ++tokens;
      if (lexicon.contains(ascii_lower(std::string_view(chunk).substr(b, e - b)))) ++fw;
    }
    chunk.clear();
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t at = i;
    const char32_t c = utf8::next(text, i);
    if (utf8::is_space(c)) {
      flush();
      continue;
    }
    ++non_space;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) ++ascii_letters;
    chunk.append(text.substr(at, i - at));
  }
  flush();
  if (non_space == 0) return false;
  const double fw_frac = tokens ? static_cast<double>(fw) / tokens : 0.0;
  const double ascii_frac = static_cast<double>(ascii_letters) / non_space;
  return fw_frac < min_fw && ascii_frac < min_ascii;
}

/// Cleans a corpus: metadata rules, break tags, then removal of empty,
/// overlong, non-English and duplicate documents (in that order), then an
/// optional label flip. Idempotent for a fixed config.
inline std::pair<Corpus, CleanReport> clean_corpus(const Corpus& c, const CleanConfig& cfg,
                                                   const FunctionWordLexicon& lexicon = FunctionWordLexicon::builtin()) {
  CleanReport report;
  std::vector<boost::regex> rules;
  for (const auto& r : cfg.metadata_rules) {
    try {
      rules.emplace_back(r.pattern, boost::regex::perl);
    } catch (const boost::regex_error& e) {
      throw Error(Errc::parse, "metadata rule '" + r.name + "': " + e.what());
    }
    report.transformations.push_back("metadata:" + r.name);
  }
  report.transformations.push_back("br_to_newline");

  enum class Fate { keep, empty, overlong, non_english };
  const std::size_t n = c.documents.size();
  std::vector<std::string> texts(n);
  std::vector<Fate> fate(n, Fate::keep);
  parallel_for(n, [&](std::size_t i) {
    std::string t = c.documents[i].text;
    for (std::size_t k = 0; k < rules.size(); ++k)
      t = boost::regex_replace(t, rules[k], cfg.metadata_rules[k].replacement,
                               boost::format_perl | boost::format_first_only);
    t = replace_br_tags(t);
    if (is_blank(t)) fate[i] = Fate::empty;
    else if (utf8::length(t) > cfg.max_chars) fate[i] = Fate::overlong;
    else if (cfg.drop_non_english &&
             looks_non_english(t, lexicon, cfg.min_function_word_fraction, cfg.min_ascii_letter_fraction))
      fate[i] = Fate::non_english;
    texts[i] = std::move(t);
  });

  Corpus out;
  out.name = c.name;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    switch (fate[i]) {
      case Fate::empty: ++report.removed_empty; continue;
      case Fate::overlong: ++report.removed_overlong; continue;
      case Fate::non_english: ++report.removed_non_english; continue;
      case Fate::keep: break;
    }
    if (cfg.dedup && !seen.insert(dedup_key(texts[i])).second) {
      ++report.removed_duplicates;
      continue;
    }
    Document d = c.documents[i];
    d.text = std::move(texts[i]);
    out.documents.push_back(std::move(d));
  }
  report.transformations.push_back("drop_empty");
  report.transformations.push_back("drop_overlong");
  if (cfg.drop_non_english) report.transformations.push_back("drop_non_english");
  if (cfg.dedup) report.transformations.push_back("dedup");

  const bool already_flipped = c.provenance && c.provenance->labels_flipped;
  if (cfg.flip_labels) {
    if (!already_flipped)
      for (auto& d : out.documents) d.label = flipped(d.label);
    report.labels_flipped = true;
    report.transformations.push_back("flip_labels");
  } else {
    report.labels_flipped = already_flipped;
  }
  out.provenance = report;
  return {std::move(out), report};
}

}  // namespace decept

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

// Sentence segmentation, word tokenization, function-word marking, a
// deterministic lexicon+suffix POS tagger, pre-tagged ingestion and syllable
// counting.

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "decept/common.hpp"
#include "decept/resources.hpp"

namespace decept {

// ---------------------------------------------------------------------------
// Tagset

/// OntoNotes 5 / Penn Treebank tags, including punctuation tags and the seven
/// OntoNotes additions (ADD, AFX, HYPH, NFP, UH, SP, XX).
inline const std::unordered_set<std::string>& tagset() {
  static const std::unordered_set<std::string> tags = {
      "CC",   "CD",  "DT",  "EX",   "FW",    "IN",    "JJ",  "JJR", "JJS", "LS",  "MD",
      "NN",   "NNS", "NNP", "NNPS", "PDT",   "POS",   "PRP", "PRP$", "RB", "RBR", "RBS",
      "RP",   "SYM", "TO",  "UH",   "VB",    "VBD",   "VBG", "VBN", "VBP", "VBZ", "WDT",
      "WP",   "WP$", "WRB", ".",    ",",     ":",     "``",  "''",  "-LRB-", "-RRB-", "$",
      "#",    "ADD", "AFX", "HYPH", "NFP",   "SP",    "XX"};
  return tags;
}

inline bool is_valid_tag(std::string_view tag) { return tagset().count(std::string(tag)) > 0; }

inline bool is_verb_tag(std::string_view t) { return t.size() >= 2 && t.substr(0, 2) == "VB"; }
inline bool is_noun_tag(std::string_view t) { return t.size() >= 2 && t.substr(0, 2) == "NN"; }
inline bool is_adjective_tag(std::string_view t) { return t == "JJ" || t == "JJR" || t == "JJS"; }
inline bool is_adverb_tag(std::string_view t) { return t == "RB" || t == "RBR" || t == "RBS"; }

// ---------------------------------------------------------------------------
// Lexical resources

struct FunctionWordLexicon {
  std::unordered_set<std::string> words;
  std::unordered_map<std::string, std::string> pos_map;

  bool contains(std::string_view lower) const { return words.count(std::string(lower)) > 0; }

  /// Newline-separated lowercase words, optionally `word<TAB>POS`. '#' lines
  /// are comments.
  static FunctionWordLexicon parse(std::string_view text) {
    FunctionWordLexicon lex;
    std::size_t lineno = 0;
    for (const auto& raw : split(text, '\n')) {
      ++lineno;
      std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      std::string word, pos;
      if (auto tab = line.find('\t'); tab != std::string_view::npos) {
        word = std::string(trim(line.substr(0, tab)));
        pos = std::string(trim(line.substr(tab + 1)));
      } else {
        word = std::string(line);
      }
      if (word != ascii_lower(word))
        throw Error(Errc::parse, "lexicon entry '" + word + "' at line " + std::to_string(lineno) +
                                     " is not lowercase");
      if (!pos.empty()) {
        if (!is_valid_tag(pos))
          throw Error(Errc::unknown_tag, "lexicon tag '" + pos + "' at line " + std::to_string(lineno));
        lex.pos_map[word] = pos;
      }
      lex.words.insert(word);
    }
    if (lex.words.empty()) throw Error(Errc::parse, "function-word lexicon is empty");
    return lex;
  }

  static FunctionWordLexicon load(const std::string& path) { return parse(read_file(path)); }

  static const FunctionWordLexicon& builtin() {
    static const FunctionWordLexicon lex = parse(resources::function_words);
    return lex;
  }
};

struct Abbreviations {
  std::unordered_set<std::string> entries;  // lowercase, with trailing period

  bool contains(std::string_view lower) const { return entries.count(std::string(lower)) > 0; }

  static Abbreviations parse(std::string_view text) {
    Abbreviations a;
    for (const auto& raw : split(text, '\n')) {
      std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      a.entries.insert(ascii_lower(line));
    }
    return a;
  }

  static Abbreviations load(const std::string& path) { return parse(read_file(path)); }

  static const Abbreviations& builtin() {
    static const Abbreviations a = parse(resources::abbreviations);
    return a;
  }
};

/// Word-final clitics split off during tokenization, longest first.
struct ContractionTable {
  std::vector<std::string> suffixes;

  static ContractionTable parse(std::string_view text) {
    ContractionTable t;
    for (const auto& raw : split(text, '\n')) {
      std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      t.suffixes.push_back(ascii_lower(line));
    }
    std::stable_sort(t.suffixes.begin(), t.suffixes.end(),
                     [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
    return t;
  }

  static const ContractionTable& builtin() {
    static const ContractionTable t = parse(resources::contractions);
    return t;
  }
};

// ---------------------------------------------------------------------------
// Documents

struct Token {
  std::string surface;
  std::string lower;
  std::optional<std::string> pos;  // xpos
  // Populated only through pre-parsed ingestion.
  std::optional<std::string> upos;
  std::optional<std::string> deprel;
  std::optional<std::string> feats;
  bool is_function_word = false;
  bool is_punct = false;
};

struct Sentence {
  std::vector<Token> tokens;
  /// Half-open token ranges of noun phrases; present only when ingested.
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> noun_phrases;

  std::size_t word_count() const {
    std::size_t n = 0;
    for (const auto& t : tokens)
      if (!t.is_punct) ++n;
    return n;
  }
};

struct TokenizedDoc {
  std::string id;
  std::vector<Sentence> sentences;
  std::size_t char_count = 0;  // code points of the source text
  bool tagged = false;
  bool function_words_marked = false;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.tokens.size();
    return n;
  }
  std::size_t word_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.word_count();
    return n;
  }
};

struct Span {
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

namespace detail {

inline bool is_closing(char32_t c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}' || c == 0x2019 ||
         c == 0x201D || c == 0xBB;
}

inline bool is_opening(char32_t c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{' || c == 0x2018 ||
         c == 0x201C || c == 0xAB;
}

/// True for "J." style initials.
inline bool is_initial(std::string_view w) {
  return w.size() == 2 && w[0] >= 'A' && w[0] <= 'Z' && w[1] == '.';
}

inline std::string normalize_apostrophes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t c = utf8::next(s, i);
    if (c == 0x2019) c = '\'';
    utf8::append(out, c);
  }
  return out;
}

}  // namespace detail

/// Splits text into sentence spans. Boundaries fall after runs of '.', '!'
/// or '?' (plus closing quotes/brackets) followed by whitespace or the end,
/// and at newlines. A lone period after an abbreviation or an initial does
/// not end a sentence.
inline std::vector<Span> segment_sentences(std::string_view text,
                                           const Abbreviations& abbrev = Abbreviations::builtin()) {
  std::vector<Span> spans;
  std::optional<std::size_t> start;
  std::size_t last_content_end = 0;  // byte end of last non-space code point
  std::size_t word_start = 0;        // byte start of current whitespace-delimited chunk

  auto close = [&](std::size_t end) {
    if (start) spans.push_back({*start, end});
    start.reset();
  };

  std::size_t i = 0;
  bool prev_space = true;
  while (i < text.size()) {
    const std::size_t at = i;
    const char32_t c = utf8::next(text, i);
    if (c == '\n' || c == '\r' || c == 0x2028 || c == 0x2029) {
      close(last_content_end);
      prev_space = true;
      continue;
    }
    if (utf8::is_space(c)) {
      prev_space = true;
      continue;
    }
    if (prev_space) word_start = at;
    prev_space = false;
    if (!start) start = at;
    last_content_end = i;

    if (c != '.' && c != '!' && c != '?') continue;

    // Consume the terminator run and trailing closers.
    std::size_t j = i;
    std::size_t terminators = 1;
    bool only_period = c == '.';
    while (j < text.size()) {
      std::size_t k = j;
      const char32_t d = utf8::next(text, k);
      if (d == '.' || d == '!' || d == '?') {
        ++terminators;
        if (d != '.') only_period = false;
        j = k;
      } else {
        break;
      }
    }
    std::size_t run_end = j;
    while (j < text.size()) {
      std::size_t k = j;
      const char32_t d = utf8::next(text, k);
      if (!detail::is_closing(d)) break;
      j = k;
      run_end = j;
    }
    bool at_boundary = j >= text.size();
    if (!at_boundary) {
      std::size_t k = j;
      at_boundary = utf8::is_space(utf8::next(text, k));
    }
    i = run_end;
    last_content_end = run_end;
    if (!at_boundary) continue;

    if (only_period && terminators == 1) {
      // Guard: the chunk ending in this period is an abbreviation/initial.
      std::string_view chunk = text.substr(word_start, at + 1 - word_start);
      std::size_t p = 0;
      while (p < chunk.size()) {
        std::size_t q = p;
        if (!detail::is_opening(utf8::next(chunk, q))) break;
        p = q;
      }
      chunk = chunk.substr(p);
      if (detail::is_initial(chunk) || abbrev.contains(ascii_lower(chunk))) continue;
    }
    close(run_end);
  }
  close(last_content_end);
  return spans;
}

/// Splits one sentence into word and punctuation tokens. Whitespace
/// separates chunks; leading and trailing punctuation code points become
/// single-character punctuation tokens; word-final clitics from the
/// contraction table are split off ("don't" -> "do", "n't").
inline std::vector<Token> tokenize_words(std::string_view sentence,
                                         const Abbreviations& abbrev = Abbreviations::builtin(),
                                         const ContractionTable& contractions = ContractionTable::builtin()) {
  std::vector<Token> out;
  auto punct_token = [](std::string s) {
    Token t;
    t.lower = ascii_lower(s);
    t.surface = std::move(s);
    t.is_punct = true;
    return t;
  };
  auto word_token = [](std::string s) {
    Token t;
    t.lower = ascii_lower(s);
    t.surface = std::move(s);
    return t;
  };

  std::size_t i = 0;
  while (i < sentence.size()) {
    // Skip whitespace.
    std::size_t j = i;
    if (utf8::is_space(utf8::next(sentence, j))) {
      i = j;
      continue;
    }
    std::size_t end = i;
    while (end < sentence.size()) {
      std::size_t k = end;
      if (utf8::is_space(utf8::next(sentence, k))) break;
      end = k;
    }
    std::vector<char32_t> cps;
    {
      std::size_t k = i;
      while (k < end) cps.push_back(utf8::next(sentence, k));
    }
    i = end;

    auto encode = [&](std::size_t b, std::size_t e) {
      std::string s;
      for (std::size_t k = b; k < e; ++k) utf8::append(s, cps[k]);
      return s;
    };

    std::size_t b = 0, e = cps.size();
    while (b < e && utf8::is_punct(cps[b])) {
      out.push_back(punct_token(encode(b, b + 1)));
      ++b;
    }
    std::vector<Token> trailing;
    while (e > b && utf8::is_punct(cps[e - 1])) {
      const std::string rest = encode(b, e);
      if (cps[e - 1] == '.' && (detail::is_initial(rest) || abbrev.contains(ascii_lower(rest)))) break;
      trailing.push_back(punct_token(encode(e - 1, e)));
      --e;
    }
    if (b < e) {
      std::string word = detail::normalize_apostrophes(encode(b, e));
      const std::string lower = ascii_lower(word);
      bool split_done = false;
      for (const auto& suffix : contractions.suffixes) {
        if (lower.size() > suffix.size() && lower.compare(lower.size() - suffix.size(), suffix.size(), suffix) == 0) {
          const std::size_t cut = word.size() - suffix.size();
          out.push_back(word_token(word.substr(0, cut)));
          out.push_back(word_token(word.substr(cut)));
          split_done = true;
          break;
        }
      }
      if (!split_done) out.push_back(word_token(std::move(word)));
    }
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(std::move(*it));
  }
  return out;
}

/// Segments and tokenizes a whole document.
inline TokenizedDoc tokenize_document(std::string_view text,
                                      const Abbreviations& abbrev = Abbreviations::builtin(),
                                      const ContractionTable& contractions = ContractionTable::builtin()) {
  TokenizedDoc doc;
  doc.char_count = utf8::length(text);
  for (const Span& sp : segment_sentences(text, abbrev)) {
    Sentence s;
    s.tokens = tokenize_words(text.substr(sp.begin, sp.end - sp.begin), abbrev, contractions);
    if (!s.tokens.empty()) doc.sentences.push_back(std::move(s));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Tagging

struct SuffixRule {
  std::string suffix;
  std::string tag;
  std::size_t min_length = 0;  // whole-word minimum length for the rule to fire
};

/// Deterministic tagger tables: an open-class word list consulted after the
/// function-word lexicon, then ordered suffix rules.
struct TaggerModel {
  std::unordered_map<std::string, std::string> word_tags;
  std::vector<SuffixRule> suffix_rules;
  std::string default_tag = "NN";

  static const TaggerModel& builtin() {
    static const TaggerModel m = [] {
      TaggerModel t;
      for (const char* w : {"go", "get", "make", "take", "come", "see", "know", "think", "say", "tell",
                            "give", "find", "want", "need", "use", "work", "call", "try", "ask", "feel",
                            "leave", "put", "keep", "let", "help", "show", "buy", "send", "pay", "click",
                            "read", "write", "run", "win", "lose", "believe", "like", "love", "act", "verify"})
        t.word_tags[w] = "VB";
      for (const char* w : {"said", "went", "got", "made", "took", "came", "saw", "knew", "thought", "told",
                            "gave", "found", "left", "sent", "paid", "bought", "won", "lost", "sat", "ran"})
        t.word_tags[w] = "VBD";
      for (const char* w : {"good", "bad", "new", "old", "great", "big", "small", "high", "low", "long",
                            "free", "real", "true", "false", "fake", "best", "important", "sure", "happy",
                            "nice", "clear", "easy", "hard", "full", "urgent", "certain", "whole"})
        t.word_tags[w] = "JJ";
      t.word_tags["best"] = "JJS";
      t.word_tags["better"] = "JJR";
      for (const char* w : {"always", "often", "really", "well", "soon", "today", "tomorrow", "yesterday",
                            "maybe", "perhaps", "immediately", "later"})
        t.word_tags[w] = "RB";
      t.suffix_rules = {
          {"ly", "RB", 4},     {"ing", "VBG", 5},   {"ed", "VBD", 4},   {"tion", "NN", 5},
          {"sion", "NN", 5},   {"ment", "NN", 5},   {"ness", "NN", 5},  {"ity", "NN", 5},
          {"ance", "NN", 5},   {"ence", "NN", 5},   {"ism", "NN", 5},   {"ship", "NN", 5},
          {"ous", "JJ", 5},    {"ful", "JJ", 5},    {"ive", "JJ", 5},   {"able", "JJ", 5},
          {"ible", "JJ", 5},   {"less", "JJ", 5},   {"ical", "JJ", 5},  {"ish", "JJ", 5},
          {"est", "JJS", 5},   {"ize", "VB", 5},    {"ise", "VB", 5},   {"ify", "VB", 5},
          {"ss", "NN", 3},     {"us", "NN", 3},     {"is", "NN", 3},    {"s", "NNS", 4},
      };
      return t;
    }();
    return m;
  }
};

/// Literal tag for a punctuation token.
inline std::string punctuation_tag(std::string_view surface) {
  std::size_t i = 0;
  const char32_t c = utf8::next(surface, i);
  switch (c) {
    case '.': case '!': case '?': return ".";
    case ',': return ",";
    case ':': case ';': case 0x2026: case 0x2013: case 0x2014: return ":";
    case '(': case '[': case '{': return "-LRB-";
    case ')': case ']': case '}': return "-RRB-";
    case '"': case '\'': case 0x201D: case 0x2019: case 0xBB: return "''";
    case '`': case 0x201C: case 0x2018: case 0xAB: return "``";
    case '$': return "$";
    case '#': return "#";
    case '-': case 0x2010: case 0x2011: return "HYPH";
    case '*': case '~': return "NFP";
    default: return "SYM";
  }
}

namespace detail {

inline bool looks_numeric(std::string_view w) {
  bool digit = false;
  for (char c : w) {
    if (c >= '0' && c <= '9') digit = true;
    else if (c != '.' && c != ',' && c != ':' && c != '/' && c != '-' && c != '%') return false;
  }
  return digit;
}

inline bool looks_address(std::string_view lower) {
  if (lower.rfind("http://", 0) == 0 || lower.rfind("https://", 0) == 0 || lower.rfind("www.", 0) == 0)
    return true;
  const auto at = lower.find('@');
  return at != std::string_view::npos && at > 0 && lower.find('.', at) != std::string_view::npos;
}

}  // namespace detail

/// Assigns an xpos tag to every token: literal tags for punctuation, the
/// lexicon's pos_map for closed-class words, then the tagger's word list,
/// shape rules (addresses, numbers, mid-sentence capitals) and suffix rules.
inline TokenizedDoc tag_pos(TokenizedDoc doc, const FunctionWordLexicon& lexicon = FunctionWordLexicon::builtin(),
                            const TaggerModel& tagger = TaggerModel::builtin()) {
  for (auto& sentence : doc.sentences) {
    for (std::size_t k = 0; k < sentence.tokens.size(); ++k) {
      Token& t = sentence.tokens[k];
      if (t.is_punct) {
        t.pos = punctuation_tag(t.surface);
        continue;
      }
      if (auto it = lexicon.pos_map.find(t.lower); it != lexicon.pos_map.end()) {
        t.pos = it->second;
        continue;
      }
      if (auto it = tagger.word_tags.find(t.lower); it != tagger.word_tags.end()) {
        t.pos = it->second;
        continue;
      }
      if (detail::looks_address(t.lower)) {
        t.pos = "ADD";
        continue;
      }
      if (detail::looks_numeric(t.lower)) {
        t.pos = "CD";
        continue;
      }
      if (k > 0 && t.surface[0] >= 'A' && t.surface[0] <= 'Z') {
        t.pos = "NNP";
        continue;
      }
      std::string tag = tagger.default_tag;
      for (const auto& rule : tagger.suffix_rules) {
        if (t.lower.size() >= rule.min_length && t.lower.size() >= rule.suffix.size() &&
            t.lower.compare(t.lower.size() - rule.suffix.size(), rule.suffix.size(), rule.suffix) == 0) {
          tag = rule.tag;
          break;
        }
      }
      t.pos = std::move(tag);
    }
  }
  doc.tagged = true;
  return doc;
}

inline TokenizedDoc mark_function_words(TokenizedDoc doc,
                                        const FunctionWordLexicon& lexicon = FunctionWordLexicon::builtin()) {
  for (auto& s : doc.sentences)
    for (auto& t : s.tokens) t.is_function_word = !t.is_punct && lexicon.contains(t.lower);
  doc.function_words_marked = true;
  return doc;
}

/// Tokenize, tag and mark function words in one pass.
inline TokenizedDoc analyze(std::string_view text, const FunctionWordLexicon& lexicon = FunctionWordLexicon::builtin(),
                            const TaggerModel& tagger = TaggerModel::builtin(),
                            const Abbreviations& abbrev = Abbreviations::builtin()) {
  return mark_function_words(tag_pos(tokenize_document(text, abbrev), lexicon, tagger), lexicon);
}

// ---------------------------------------------------------------------------
// Pre-tagged ingestion

/// Parses tagged JSONL: one document per line,
/// `{"id":..., "sentences":[{"tokens":[...], "tags":[...]}]}` with optional
/// per-sentence "upos", "deprels", "feats" arrays and "noun_phrases" as
/// [[begin, end], ...] token ranges.
inline std::vector<TokenizedDoc> parse_tagged(std::string_view text) {
  using nlohmann::json;
  std::vector<TokenizedDoc> docs;
  std::size_t lineno = 0;
  for (const auto& raw : split(text, '\n')) {
    ++lineno;
    if (trim(raw).empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::exception& e) {
      throw Error(Errc::parse, where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("sentences") || !j["sentences"].is_array())
      throw Error(Errc::schema, where + ": missing field 'sentences'");
    TokenizedDoc doc;
    doc.id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : std::to_string(docs.size());
    std::size_t chars = 0;
    std::size_t sidx = 0;
    for (const auto& js : j["sentences"]) {
      const std::string swhere = where + " sentence " + std::to_string(sidx);
      if (!js.contains("tokens") || !js.contains("tags"))
        throw Error(Errc::schema, swhere + ": sentence needs 'tokens' and 'tags'");
      const auto& toks = js["tokens"];
      const auto& tags = js["tags"];
      if (!toks.is_array() || !tags.is_array() || toks.size() != tags.size())
        throw Error(Errc::parse, swhere + ": 'tokens' and 'tags' must be arrays of equal length");
      if (toks.empty()) throw Error(Errc::parse, swhere + ": empty sentence");
      auto optional_column = [&](const char* key) -> const json* {
        if (!js.contains(key)) return nullptr;
        const auto& col = js[key];
        if (!col.is_array() || col.size() != toks.size())
          throw Error(Errc::parse, swhere + ": '" + key + "' must align with 'tokens'");
        return &col;
      };
      const json* upos = optional_column("upos");
      const json* deprels = optional_column("deprels");
      const json* feats = optional_column("feats");
      Sentence s;
      for (std::size_t k = 0; k < toks.size(); ++k) {
        if (!toks[k].is_string() || !tags[k].is_string())
          throw Error(Errc::parse, swhere + " token " + std::to_string(k) + ": expected strings");
        const std::string tag = tags[k].get<std::string>();
        if (!is_valid_tag(tag))
          throw Error(Errc::unknown_tag, "tag '" + tag + "' at " + swhere + " token " + std::to_string(k));
        Token t;
        t.surface = detail::normalize_apostrophes(toks[k].get<std::string>());
        t.lower = ascii_lower(t.surface);
        t.pos = tag;
        bool all_punct = !t.surface.empty();
        for (std::size_t p = 0; p < t.surface.size();)
          if (!utf8::is_punct(utf8::next(t.surface, p))) all_punct = false;
        t.is_punct = all_punct;
        if (upos && (*upos)[k].is_string()) t.upos = (*upos)[k].get<std::string>();
        if (deprels && (*deprels)[k].is_string()) t.deprel = (*deprels)[k].get<std::string>();
        if (feats && (*feats)[k].is_string()) t.feats = (*feats)[k].get<std::string>();
        chars += utf8::length(t.surface) + 1;
        s.tokens.push_back(std::move(t));
      }
      if (js.contains("noun_phrases")) {
        std::vector<std::pair<std::size_t, std::size_t>> nps;
        for (const auto& np : js["noun_phrases"]) {
          if (!np.is_array() || np.size() != 2 || !np[0].is_number_unsigned() || !np[1].is_number_unsigned())
            throw Error(Errc::parse, swhere + ": noun_phrases entries must be [begin, end]");
          const auto b = np[0].get<std::size_t>(), e = np[1].get<std::size_t>();
          if (b >= e || e > s.tokens.size()) throw Error(Errc::parse, swhere + ": noun phrase range out of bounds");
          nps.emplace_back(b, e);
        }
        s.noun_phrases = std::move(nps);
      }
      doc.sentences.push_back(std::move(s));
      ++sidx;
    }
    // Tokens joined by single spaces.
    doc.char_count = chars > 0 ? chars - 1 : 0;
    doc.tagged = true;
    docs.push_back(std::move(doc));
  }
  return docs;
}

inline std::vector<TokenizedDoc> ingest_tagged(const std::string& path) { return parse_tagged(read_file(path)); }

// ---------------------------------------------------------------------------
// Syllables

/// Vowel-group syllable estimate. Letters only; 0 when the word has no ASCII
/// letters, otherwise at least 1. A final silent 'e' is subtracted unless it
/// forms a consonant+"le" ending.
inline int count_syllables(std::string_view word) {
  std::string letters;
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') letters.push_back(static_cast<char>(c - 'A' + 'a'));
    else if (c >= 'a' && c <= 'z') letters.push_back(c);
  }
  if (letters.empty()) return 0;
  auto vowel = [](char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; };
  int groups = 0;
  bool in_group = false;
  for (char c : letters) {
    const bool v = vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const std::size_t n = letters.size();
  if (groups > 1 && letters[n - 1] == 'e' && !vowel(letters[n - 2])) {
    const bool consonant_le = n >= 3 && letters[n - 2] == 'l' && !vowel(letters[n - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

}  // namespace decept

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

// decept-cue: command-line front end for the corpus, feature, statistics,
// selection, model and cross-domain modules.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "decept/common.hpp"
#include "decept/corpus.hpp"
#include "decept/crossdomain.hpp"
#include "decept/features.hpp"
#include "decept/forest.hpp"
#include "decept/ngrams.hpp"
#include "decept/selection.hpp"
#include "decept/stats.hpp"
#include "decept/text.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

int exit_code_for(decept::Errc c) {
  using decept::Errc;
  switch (c) {
    case Errc::io:
    case Errc::parse:
    case Errc::schema:
    case Errc::duplicate_id:
    case Errc::unknown_tag:
    case Errc::range_error:
    case Errc::ratio_error:
    case Errc::duplicate_domain:
    case Errc::duplicate_feature:
    case Errc::column_mismatch:
    case Errc::malformed_matrix:
    case Errc::invalid_p:
      return 2;
    default:
      return 1;
  }
}

/// Provenance stamped into every artifact.
struct Stamp {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;

  std::string line() const {
    return "decept-cue " + command + " config=" + config_hash + " seed=" + std::to_string(seed);
  }
  json to_json() const { return {{"command", command}, {"config_hash", config_hash}, {"seed", seed}}; }
};

/// Digest over the subcommand's options (given value or default), sorted by
/// name, plus the global seed. Thread count and the config path are left out
/// because they do not change results.
std::string config_hash(const CLI::App& sub, std::uint64_t seed) {
  std::vector<std::string> items;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h") continue;
    std::string value;
    if (opt->count() > 0) value = decept::join(opt->results(), "\x1f");
    else value = opt->get_default_str();
    items.push_back(name + "=" + value);
  }
  std::sort(items.begin(), items.end());
  items.push_back("command=" + sub.get_name());
  items.push_back("seed=" + std::to_string(seed));
  return decept::hex64(decept::fnv1a64(decept::join(items, "\n")));
}

void write_artifact(const std::string& path, std::string_view content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  decept::write_file(path, content);
}

void write_json(const std::string& path, json j, const Stamp& s) {
  j["provenance"] = s.to_json();
  write_artifact(path, j.dump(2) + "\n");
}

std::string markdown_stamp(const Stamp& s) { return "<!-- " + s.line() + " -->\n"; }

/// `out` with its extension replaced by `suffix`.
std::string sibling(const std::string& out, const std::string& suffix) {
  fs::path p(out);
  p.replace_extension();
  return p.string() + suffix;
}

struct RFOptions {
  decept::RFConfig cfg;
  void add(CLI::App* sub) {
    sub->add_option("--trees", cfg.n_trees, "Number of trees")->check(CLI::PositiveNumber);
    sub->add_option("--min-leaf", cfg.min_leaf, "Minimum rows per leaf")->check(CLI::PositiveNumber);
    sub->add_option("--feature-fraction", cfg.feature_fraction, "Fraction of features sampled per tree")
        ->check(CLI::Range(0.0, 1.0));
  }
};

struct FeatureFlags {
  std::vector<std::string> extractors = {"cues", "stylistic", "dictionary"};
  std::string dictionary;
  std::string lexicon;
  std::optional<decept::CategoryDictionary> dict;
  std::optional<decept::FunctionWordLexicon> lex;

  void add(CLI::App* sub) {
    sub->add_option("--extractors", extractors, "Feature families: cues, stylistic, dictionary")
        ->delimiter(',')
        ->check(CLI::IsMember({"cues", "stylistic", "dictionary"}));
    sub->add_option("--dictionary", dictionary, "Category dictionary file (default: built-in demo)")
        ->check(CLI::ExistingFile);
    sub->add_option("--lexicon", lexicon, "Function-word lexicon file (default: built-in)")->check(CLI::ExistingFile);
  }

  decept::FeatureOptions options() {
    decept::FeatureOptions o;
    o.extractors.clear();
    for (const auto& e : extractors) {
      if (e == "cues") o.extractors.insert(decept::Extractor::cues);
      else if (e == "stylistic") o.extractors.insert(decept::Extractor::stylistic);
      else o.extractors.insert(decept::Extractor::dictionary);
    }
    if (!dictionary.empty()) {
      dict = decept::CategoryDictionary::load(dictionary);
      o.dictionary = &*dict;
    }
    o.lexicon = &lexicon_ref();
    return o;
  }

  const decept::FunctionWordLexicon& lexicon_ref() {
    if (lexicon.empty()) return decept::FunctionWordLexicon::builtin();
    if (!lex) lex = decept::FunctionWordLexicon::load(lexicon);
    return *lex;
  }
};

std::map<std::string, double> load_q_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(decept::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw decept::Error(decept::Errc::parse, path + ": " + e.what());
  }
  if (!j.is_object()) throw decept::Error(decept::Errc::schema, path + ": expected an object of domain -> proportion");
  std::map<std::string, double> q;
  for (const auto& [k, v] : j.items()) {
    if (k == "provenance") continue;
    if (!v.is_number()) throw decept::Error(decept::Errc::schema, path + ": value for '" + k + "' is not a number");
    const double x = v.get<double>();
    if (!(x > 0.0 && x <= 1.0))
      throw decept::Error(decept::Errc::range_error, path + ": proportion for '" + k + "' must lie in (0,1]");
    q[k] = x;
  }
  return q;
}

std::string generalization_plot_csv(const decept::GeneralizationReport& r, const Stamp& s) {
  std::string out = "# " + s.line() + "\n";
  out += decept::csv::row({"train_domain", "eval_domain", "mean_f1", "cf_f1", "p"});
  for (const auto& x : r.train_domains)
    for (const auto& y : r.eval_domains) {
      auto it = r.cells.find({x, y});
      if (it == r.cells.end()) continue;
      out += decept::csv::row({x, y, decept::format_double(it->second.mean_f1), decept::format_double(r.cf_f1.at(y)),
                               decept::format_double(it->second.p)});
    }
  return out;
}

struct CleanArgs {
  std::string in, out, report, lexicon;
  decept::CleanConfig cfg;
  bool no_dedup = false, keep_non_english = false, no_metadata = false;
};

void cmd_clean(CleanArgs& a, const Stamp& s) {
  a.cfg.dedup = !a.no_dedup;
  a.cfg.drop_non_english = !a.keep_non_english;
  if (a.no_metadata) a.cfg.metadata_rules.clear();
  const decept::Corpus raw = decept::load_corpus(a.in);
  std::optional<decept::FunctionWordLexicon> lex;
  if (!a.lexicon.empty()) lex = decept::FunctionWordLexicon::load(a.lexicon);
  auto [clean, rep] = decept::clean_corpus(raw, a.cfg, lex ? *lex : decept::FunctionWordLexicon::builtin());
  const fs::path op(a.out);
  if (op.has_parent_path()) fs::create_directories(op.parent_path());
  decept::save_corpus(clean, a.out);
  json j = decept::to_json(rep);
  j["input_documents"] = raw.documents.size();
  j["output_documents"] = clean.documents.size();
  write_json(a.report.empty() ? a.out + ".report.json" : a.report, j, s);
  std::cout << "kept " << clean.documents.size() << " of " << raw.documents.size() << " documents\n";
}

struct FeaturesArgs {
  std::string in, out, tagged;
  FeatureFlags ff;
};

void cmd_features(FeaturesArgs& a, const Stamp& s) {
  const decept::Corpus c = decept::load_corpus(a.in);
  decept::FeatureOptions opt = a.ff.options();
  decept::FeatureMatrix m;
  if (!a.tagged.empty())
    m = decept::build_cue_matrix_from_tagged(decept::ingest_tagged(a.tagged), c, *opt.lexicon,
                                             opt.dictionary ? *opt.dictionary : decept::CategoryDictionary::demo());
  else
    m = decept::build_feature_matrix(c, opt);
  write_artifact(a.out, decept::to_csv(m, s.line()));
  std::cout << m.n_rows() << " rows x " << m.n_cols() << " features\n";
}

struct NgramsArgs {
  std::string in, out, tfidf;
  decept::NgramConfig cfg;
  FeatureFlags ff;
};

void cmd_ngrams(NgramsArgs& a, const Stamp& s) {
  if (a.cfg.n_min > a.cfg.n_max) throw decept::Error(decept::Errc::schema, "--n-min exceeds --n-max");
  const decept::Corpus c = decept::load_corpus(a.in);
  const auto& lex = a.ff.lexicon_ref();
  if (!a.tfidf.empty()) {
    const auto mode = a.tfidf == "function_words" ? decept::TfidfMode::function_words
                      : a.tfidf == "fw_pos"       ? decept::TfidfMode::fw_pos
                                                  : decept::TfidfMode::raw_unigrams;
    const auto m = decept::tfidf_vectorize(c, mode, lex);
    write_artifact(a.out, decept::to_csv(m, s.line()));
    std::cout << m.n_rows() << " rows x " << m.n_cols() << " terms\n";
    return;
  }
  const auto ranked = decept::rank_ngrams(c, a.cfg, lex);
  std::string text = "# " + s.line() + "\n";
  text += decept::csv::row({"rank", "ngram", "n", "agg_truthful", "agg_deceptive", "diff"});
  for (std::size_t i = 0; i < ranked.size(); ++i)
    text += decept::csv::row({std::to_string(i + 1), decept::ngram_to_string(ranked[i].ngram),
                              std::to_string(ranked[i].ngram.size()), decept::format_double(ranked[i].agg_truthful),
                              decept::format_double(ranked[i].agg_deceptive), decept::format_double(ranked[i].diff)});
  write_artifact(a.out, text);
  std::cout << ranked.size() << " n-grams ranked\n";
}

struct SigtestArgs {
  std::string features, in, out;
  double alpha = 0.01;
  decept::NgramConfig cfg;
  FeatureFlags ff;
};

void cmd_sigtest(SigtestArgs& a, const Stamp& s) {
  std::size_t n_sig = 0, n = 0;
  if (!a.features.empty()) {
    const auto tests = decept::feature_significance(decept::load_feature_matrix(a.features), a.alpha);
    for (const auto& t : tests) n_sig += t.significant;
    n = tests.size();
    write_artifact(a.out, decept::feature_tests_to_csv(tests, s.line()));
  } else if (!a.in.empty()) {
    if (a.cfg.n_min > a.cfg.n_max) throw decept::Error(decept::Errc::schema, "--n-min exceeds --n-max");
    const decept::Corpus c = decept::load_corpus(a.in);
    const auto docs = decept::analyze_corpus(c, a.ff.lexicon_ref());
    const auto labels = decept::corpus_labels(c);
    const auto tests = decept::ngram_significance(decept::rank_ngrams(docs, labels, a.cfg), docs, labels, a.alpha, a.cfg);
    for (const auto& t : tests) n_sig += t.significant;
    n = tests.size();
    write_artifact(a.out, decept::ngram_tests_to_csv(tests, s.line()));
  } else {
    throw decept::Error(decept::Errc::schema, "one of --features or --in is required");
  }
  std::cout << n_sig << " of " << n << " significant at alpha " << decept::format_double(a.alpha) << "\n";
}

struct SelectArgs {
  std::string features, out, domain, guard = "oob";
  decept::SelectionConfig cfg;
  RFOptions rf;
};

void cmd_select(SelectArgs& a, const Stamp& s) {
  a.cfg.rf = a.rf.cfg;
  a.cfg.rf.seed = s.seed;
  a.cfg.guard = a.guard == "oob" ? decept::GuardMetric::oob : decept::GuardMetric::validation;
  const auto m = decept::load_feature_matrix(a.features);
  const auto fs = decept::select_features(m, a.cfg, a.domain);
  write_json(a.out, decept::to_json(fs), s);
  std::cout << "kept " << fs.names.size() << " of " << m.n_cols() << " features\n";
}

struct TrainArgs {
  std::string features, feature_set, model, report;
  std::size_t folds = 5;
  RFOptions rf;
};

void cmd_train(TrainArgs& a, const Stamp& s, bool emit_plot) {
  decept::RFConfig cfg = a.rf.cfg;
  cfg.seed = s.seed;
  decept::FeatureMatrix m = decept::load_feature_matrix(a.features);
  if (!a.feature_set.empty()) m = m.select(decept::load_feature_set(a.feature_set).names);
  const auto forest = decept::train_random_forest(m, cfg);
  write_json(a.model, decept::to_json(forest), s);
  const auto cv = decept::cross_validate(m, cfg, a.folds);
  json j = decept::to_json(cv);
  j["oob_accuracy"] = decept::oob_accuracy(forest);
  const std::string rpath = a.report.empty() ? sibling(a.model, ".cv.json") : a.report;
  write_json(rpath, j, s);
  if (emit_plot) {
    std::string text = "# " + s.line() + "\n";
    text += decept::csv::row({"fold", "accuracy", "precision", "recall", "f1"});
    auto add = [&](const std::string& name, const decept::Metrics& x) {
      text += decept::csv::row({name, decept::format_double(x.accuracy), decept::format_double(x.precision),
                                decept::format_double(x.recall), decept::format_double(x.f1)});
    };
    for (std::size_t f = 0; f < cv.per_fold.size(); ++f) add(std::to_string(f), cv.per_fold[f]);
    add("mean", cv.mean);
    write_artifact(sibling(rpath, ".plot.csv"), text);
  }
  std::cout << "cv accuracy " << decept::format_double(cv.mean.accuracy) << ", f1 " << decept::format_double(cv.mean.f1)
            << "\n";
}

struct CrossdomainArgs {
  std::vector<std::string> domains;
  std::string out, feature_set;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
  double alpha = 0.01;
  decept::CrossEvalConfig cfg;
  FeatureFlags ff;
  RFOptions rf;
};

void cmd_crossdomain(CrossdomainArgs& a, const Stamp& s, bool emit_plot) {
  std::vector<decept::Corpus> corpora;
  std::vector<std::string> names;
  std::map<std::string, double> q;
  for (const auto& arg : a.domains) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
      throw decept::Error(decept::Errc::schema, "--domain expects NAME=PATH, got '" + arg + "'");
    const std::string name = arg.substr(0, eq), path = arg.substr(eq + 1);
    corpora.push_back(decept::load_corpus(path));
    corpora.back().name = name;
    names.push_back(name);
    q[name] = corpora.back().deceptive_fraction();
  }
  a.cfg.rf = a.rf.cfg;
  a.cfg.seed = s.seed;
  a.cfg.ratios = {a.ratios[0], a.ratios[1], a.ratios[2]};
  a.cfg.features = a.ff.options();
  if (!a.feature_set.empty()) a.cfg.columns = decept::load_feature_set(a.feature_set).names;
  const auto table = decept::cross_eval_rf(corpora, names, a.cfg);
  write_artifact(a.out, decept::scores_to_csv(table, s.line()));
  json qj = json::object();
  for (const auto& n : names) qj[n] = q[n];
  write_json(sibling(a.out, ".q.json"), qj, s);
  const auto rep = decept::generalization_test(table, q, a.alpha);
  write_json(sibling(a.out, ".generalization.json"), decept::to_json(rep), s);
  write_artifact(sibling(a.out, ".generalization.md"), markdown_stamp(s) + decept::generalization_markdown(rep));
  if (emit_plot) write_artifact(sibling(a.out, ".plot.csv"), generalization_plot_csv(rep, s));
  std::cout << decept::generalization_markdown(rep);
}

struct ScoresArgs {
  std::string scores, q_file, out;
  double alpha = 0.01, corr_alpha = 0.05, iqr_k = 1.5;
  std::vector<std::string> correlate;
};

void cmd_scores(ScoresArgs& a, const Stamp& s, bool emit_plot) {
  const auto table = decept::load_scores(a.scores);
  const auto rep = decept::generalization_test(table, load_q_file(a.q_file), a.alpha);
  const std::string md = decept::generalization_markdown(rep);
  std::cout << md;
  json j = decept::to_json(rep);
  j["correlation"] = json::array();
  for (const auto& t : a.correlate) {
    const auto corr = decept::multidomain_correlation(table, t, a.corr_alpha, a.iqr_k);
    j["correlation"].push_back(decept::to_json(corr));
    for (const auto& pr : corr.pairs)
      std::cout << t << ": " << pr.domain_a << " vs " << pr.domain_b << " slope "
                << decept::format_double(pr.regression.slope) << " r " << decept::format_double(pr.regression.r)
                << " p " << decept::format_double(pr.regression.p_slope) << (pr.significant ? " *" : "") << "\n";
  }
  if (a.out.empty()) return;
  write_json(a.out + ".json", j, s);
  write_artifact(a.out + ".md", markdown_stamp(s) + md);
  if (emit_plot) write_artifact(a.out + ".plot.csv", generalization_plot_csv(rep, s));
}

struct CcArgs {
  std::vector<std::string> sets, labels;
  std::string out;
};

void cmd_cc(CcArgs& a, const Stamp& s) {
  std::vector<decept::FeatureSet> fss;
  for (const auto& p : a.sets) fss.push_back(decept::load_feature_set(p));
  if (!a.labels.empty()) {
    if (a.labels.size() != fss.size()) throw decept::Error(decept::Errc::schema, "--labels needs one label per set");
    for (std::size_t i = 0; i < fss.size(); ++i) fss[i].domain = a.labels[i];
  }
  const auto t = decept::shared_features(fss);
  const std::string md = decept::shared_table_markdown(t);
  if (a.out.empty()) {
    std::cout << md;
    return;
  }
  write_artifact(a.out, markdown_stamp(s) + md);
  const auto cc = decept::cumulative_counts(t);
  json rows = json::array();
  for (const auto& g : t.groups)
    rows.push_back({{"subset", decept::subset_label(t, g.mask)},
                    {"n", g.n()},
                    {"features", g.exact_features},
                    {"cc", cc.at(g.mask)}});
  write_json(sibling(a.out, ".json"), json{{"domains", t.domains}, {"rows", rows}}, s);
}

struct TaxonomyArgs {
  std::string in, out;
};

void cmd_taxonomy(TaxonomyArgs& a, const Stamp& s) {
  const std::string text = decept::read_file(a.in);
  std::vector<std::pair<std::string, nlohmann::json>> items;
  auto add = [&](const nlohmann::json& j, const std::string& where) {
    if (j.is_object() && j.contains("taxonomy")) {
      const std::string id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : where;
      items.emplace_back(id, j["taxonomy"]);
    } else if (!(j.is_object() && (j.contains("text") || j.contains("label")))) {
      items.emplace_back(where, j);
    }
  };
  nlohmann::json whole = nlohmann::json::parse(text, nullptr, false);
  if (!whole.is_discarded() && whole.is_array()) {
    for (std::size_t i = 0; i < whole.size(); ++i) add(whole[i], "item " + std::to_string(i));
  } else if (!whole.is_discarded()) {
    add(whole, "item 0");
  } else {
    std::size_t lineno = 0;
    for (const auto& line : decept::split(text, '\n')) {
      ++lineno;
      if (decept::trim(line).empty()) continue;
      const auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded()) throw decept::Error(decept::Errc::parse, a.in + ": line " + std::to_string(lineno) + ": invalid JSON");
      add(j, "line " + std::to_string(lineno));
    }
  }
  json results = json::array();
  std::size_t invalid = 0;
  for (const auto& [where, j] : items) {
    const auto rep = decept::validate_taxonomy(decept::taxonomy_from_json(j, where));
    if (!rep.valid()) {
      ++invalid;
      for (const auto& p : rep.problems) std::cerr << where << ": " << p << "\n";
    }
    results.push_back({{"item", where}, {"valid", rep.valid()}, {"problems", rep.problems}});
  }
  if (!a.out.empty()) write_json(a.out, json{{"checked", items.size()}, {"invalid", invalid}, {"items", results}}, s);
  std::cout << items.size() - invalid << " of " << items.size() << " labels valid\n";
  if (invalid > 0) throw decept::Error(decept::Errc::schema, std::to_string(invalid) + " invalid taxonomy labels");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decept-cue: domain-independent deception cue analysis"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML run config; sections named after commands, flags override it");

  unsigned threads = 0;
  std::uint64_t seed = 42;
  bool emit_plot = false;
  app.add_option("--threads", threads, "Worker threads (0: DECEPT_CUE_THREADS or 1)");
  app.add_option("--seed", seed, "Base random seed");
  app.add_flag("--emit-plot-data", emit_plot, "Also write plain CSV series for plotting");

  CleanArgs clean;
  auto* c_clean = app.add_subcommand("clean", "Clean a raw corpus and write a CleanReport beside it");
  c_clean->add_option("--in", clean.in, "Raw corpus (.jsonl or .csv)")->required()->check(CLI::ExistingFile);
  c_clean->add_option("--out", clean.out, "Cleaned corpus path")->required();
  c_clean->add_option("--report", clean.report, "CleanReport JSON (default: <out>.report.json)");
  c_clean->add_flag("--flip-labels", clean.cfg.flip_labels, "Swap truthful and deceptive labels");
  c_clean->add_option("--max-chars", clean.cfg.max_chars, "Drop documents longer than this many characters");
  c_clean->add_flag("--no-dedup", clean.no_dedup, "Keep duplicate bodies");
  c_clean->add_flag("--keep-non-english", clean.keep_non_english, "Keep documents that look non-English");
  c_clean->add_flag("--no-metadata-rules", clean.no_metadata, "Do not strip RFC 822 style header blocks");
  c_clean->add_option("--min-function-word-fraction", clean.cfg.min_function_word_fraction,
                      "Non-English test: minimum share of function words");
  c_clean->add_option("--lexicon", clean.lexicon, "Function-word lexicon file (default: built-in)")
      ->check(CLI::ExistingFile);

  FeaturesArgs feat;
  auto* c_feat = app.add_subcommand("features", "Extract a feature matrix from a corpus");
  c_feat->add_option("--in", feat.in, "Corpus (.jsonl or .csv)")->required()->check(CLI::ExistingFile);
  c_feat->add_option("--out", feat.out, "Feature matrix CSV")->required();
  c_feat->add_option("--tagged", feat.tagged, "Pre-tagged JSONL; emits cue features from its annotations")
      ->check(CLI::ExistingFile);
  feat.ff.add(c_feat);

  NgramsArgs ngr;
  auto* c_ngr = app.add_subcommand("ngrams", "Rank function-word n-grams, or build a tf-idf matrix");
  c_ngr->add_option("--in", ngr.in, "Corpus (.jsonl or .csv)")->required()->check(CLI::ExistingFile);
  c_ngr->add_option("--out", ngr.out, "Output CSV")->required();
  c_ngr->add_option("--n-min", ngr.cfg.n_min, "Smallest n-gram order")->check(CLI::Range(1, 8));
  c_ngr->add_option("--n-max", ngr.cfg.n_max, "Largest n-gram order")->check(CLI::Range(1, 8));
  c_ngr->add_option("--top-k", ngr.cfg.top_k, "Number of n-grams kept")->check(CLI::PositiveNumber);
  c_ngr->add_flag("--fw-denominator", ngr.cfg.occ.fw_denominator,
                  "Normalize by function-word count instead of word count");
  c_ngr->add_option("--tfidf", ngr.tfidf, "Write a tf-idf matrix instead: function_words, fw_pos or raw_unigrams")
      ->check(CLI::IsMember({"function_words", "fw_pos", "raw_unigrams"}));
  c_ngr->add_option("--lexicon", ngr.ff.lexicon, "Function-word lexicon file (default: built-in)")
      ->check(CLI::ExistingFile);

  SigtestArgs sig;
  auto* c_sig = app.add_subcommand("sigtest", "Welch tests with Holm correction on features or n-grams");
  auto* sig_f = c_sig->add_option("--features", sig.features, "Feature matrix CSV (tests every column)")
                    ->check(CLI::ExistingFile);
  auto* sig_i = c_sig->add_option("--in", sig.in, "Corpus; ranks n-grams, then tests the top k")
                    ->check(CLI::ExistingFile);
  sig_f->excludes(sig_i);
  c_sig->add_option("--out", sig.out, "Result CSV")->required();
  c_sig->add_option("--alpha", sig.alpha, "Family-wise significance level")->check(CLI::Range(0.0, 1.0));
  c_sig->add_option("--n-min", sig.cfg.n_min, "Smallest n-gram order")->check(CLI::Range(1, 8));
  c_sig->add_option("--n-max", sig.cfg.n_max, "Largest n-gram order")->check(CLI::Range(1, 8));
  c_sig->add_option("--top-k", sig.cfg.top_k, "Number of n-grams tested")->check(CLI::PositiveNumber);
  c_sig->add_option("--lexicon", sig.ff.lexicon, "Function-word lexicon file (default: built-in)")
      ->check(CLI::ExistingFile);

  SelectArgs sel;
  auto* c_sel = app.add_subcommand("select", "Three-stage feature selection");
  c_sel->add_option("--features", sel.features, "Feature matrix CSV")->required()->check(CLI::ExistingFile);
  c_sel->add_option("--out", sel.out, "FeatureSet JSON")->required();
  c_sel->add_option("--domain", sel.domain, "Domain label stored in the FeatureSet");
  c_sel->add_option("--guard", sel.guard, "Accuracy guard: oob or validation")
      ->check(CLI::IsMember({"oob", "validation"}));
  c_sel->add_option("--validation-fraction", sel.cfg.validation_fraction, "Holdout share for the validation guard")
      ->check(CLI::Range(0.0, 1.0));
  c_sel->add_option("--colinearity-cut", sel.cfg.colinearity_cut, "Cluster cut on 1 - |spearman|");
  c_sel->add_option("--cv-folds", sel.cfg.cv_folds, "Folds for the permutation stage")->check(CLI::Range(2, 100));
  c_sel->add_option("--permutation-repeats", sel.cfg.permutation_repeats, "Shuffles per feature and fold")
      ->check(CLI::PositiveNumber);
  sel.rf.add(c_sel);

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Train a random forest and cross-validate it");
  c_tr->add_option("--features", tr.features, "Feature matrix CSV")->required()->check(CLI::ExistingFile);
  c_tr->add_option("--feature-set", tr.feature_set, "Restrict to the columns of this FeatureSet JSON")
      ->check(CLI::ExistingFile);
  c_tr->add_option("--model", tr.model, "Model JSON")->required();
  c_tr->add_option("--report", tr.report, "CV report JSON (default: <model>.cv.json)");
  c_tr->add_option("--folds", tr.folds, "Cross-validation folds")->check(CLI::Range(2, 100));
  tr.rf.add(c_tr);

  CrossdomainArgs cd;
  auto* c_cd = app.add_subcommand("crossdomain", "Train per domain, evaluate on every domain, test vs coin flip");
  c_cd->add_option("--domain", cd.domains, "NAME=PATH, one per domain")->required()->expected(2, 16);
  c_cd->add_option("--out", cd.out, "ScoreTable CSV; reports are written beside it")->required();
  c_cd->add_option("--runs", cd.cfg.runs, "Forests trained per domain")->check(CLI::PositiveNumber);
  c_cd->add_option("--ratios", cd.ratios, "train,validate,test split ratios")->delimiter(',')->expected(3);
  c_cd->add_option("--alpha", cd.alpha, "Significance level of the coin-flip test")->check(CLI::Range(0.0, 1.0));
  c_cd->add_option("--feature-set", cd.feature_set, "Restrict to the columns of this FeatureSet JSON")
      ->check(CLI::ExistingFile);
  cd.ff.add(c_cd);
  cd.rf.add(c_cd);

  ScoresArgs sc;
  auto* c_sc = app.add_subcommand("scores-analyze", "Coin-flip p-matrix and multi-domain regression over a ScoreTable");
  c_sc->add_option("--scores", sc.scores, "ScoreTable CSV")->required()->check(CLI::ExistingFile);
  c_sc->add_option("--q-file", sc.q_file, "JSON object: eval domain -> deceptive proportion")
      ->required()
      ->check(CLI::ExistingFile);
  c_sc->add_option("--out", sc.out, "Output prefix for .md and .json (default: print only)");
  c_sc->add_option("--alpha", sc.alpha, "Significance level of the coin-flip test")->check(CLI::Range(0.0, 1.0));
  c_sc->add_option("--correlate-on", sc.correlate, "Training domain whose runs get pairwise regression");
  c_sc->add_option("--corr-alpha", sc.corr_alpha, "Significance level for regression slopes")
      ->check(CLI::Range(0.0, 1.0));
  c_sc->add_option("--iqr-k", sc.iqr_k, "IQR fence multiplier")->check(CLI::NonNegativeNumber);

  CcArgs cc;
  auto* c_cc = app.add_subcommand("cc-table", "Shared-feature table with N and cumulative counts");
  c_cc->add_option("--sets", cc.sets, "FeatureSet JSON files, one per domain")
      ->required()
      ->expected(2, 16)
      ->check(CLI::ExistingFile);
  c_cc->add_option("--labels", cc.labels, "Column labels overriding each set's domain")->delimiter(',');
  c_cc->add_option("--out", cc.out, "Markdown output (default: stdout); a .json twin is written beside it");

  TaxonomyArgs tax;
  auto* c_tax = app.add_subcommand("taxonomy-validate", "Check taxonomy labels against the closed vocabularies");
  c_tax->add_option("--in", tax.in, "JSON object or array, or JSONL (bare labels or documents with 'taxonomy')")
      ->required()
      ->check(CLI::ExistingFile);
  c_tax->add_option("--out", tax.out, "Validation report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (threads > 0) decept::set_thread_cap(threads);
  CLI::App* sub = app.get_subcommands().front();
  const Stamp s{sub->get_name(), config_hash(*sub, seed), seed};
  try {
    if (sub == c_clean) cmd_clean(clean, s);
    else if (sub == c_feat) cmd_features(feat, s);
    else if (sub == c_ngr) cmd_ngrams(ngr, s);
    else if (sub == c_sig) cmd_sigtest(sig, s);
    else if (sub == c_sel) cmd_select(sel, s);
    else if (sub == c_tr) cmd_train(tr, s, emit_plot);
    else if (sub == c_cd) cmd_crossdomain(cd, s, emit_plot);
    else if (sub == c_sc) cmd_scores(sc, s, emit_plot);
    else if (sub == c_cc) cmd_cc(cc, s);
    else cmd_taxonomy(tax, s);
  } catch (const decept::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// Copyright 2026 The decept-cue Authors.
// SPDX-License-Identifier: Apache-2.0

// Exhaustive Occ reference. Instead of sliding a window over the function-word
// sequence, every ordered n-tuple of positions i1 < ... < in is enumerated and
// counted when the positions are consecutive among the function words of the
// sentence and spell the requested n-gram. Also enumerates the full candidate
// space (vocabulary^n) so absent n-grams can be checked to score zero.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// A sentence reduced to what Occ needs: its words (punctuation removed) and
/// a flag per word marking function words.
struct OccSentence {
  std::vector<std::string> words;
  std::vector<bool> is_fw;
};

inline std::size_t occurrences(const OccSentence& s, const std::vector<std::string>& x) {
  const std::size_t n = x.size();
  std::size_t count = 0;
  std::vector<std::size_t> pos;
  // Recursive choice of word positions; accepted when consecutive function
  // words (no function word between picks) match x element by element.
  std::function<void(std::size_t)> pick = [&](std::size_t from) {
    if (pos.size() == n) {
      for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = pos[k] + 1; j < pos[k + 1]; ++j)
          if (s.is_fw[j]) return;
      ++count;
      return;
    }
    for (std::size_t i = from; i < s.words.size(); ++i) {
      if (!s.is_fw[i] || s.words[i] != x[pos.size()]) continue;
      pos.push_back(i);
      pick(i + 1);
      pos.pop_back();
    }
  };
  pick(0);
  return count;
}

inline double occ(const std::vector<OccSentence>& doc, const std::vector<std::string>& x, bool fw_denominator = false) {
  double total = 0.0;
  const double n = static_cast<double>(x.size());
  for (const auto& s : doc) {
    double size = 0;
    for (std::size_t i = 0; i < s.words.size(); ++i) size += (!fw_denominator || s.is_fw[i]) ? 1 : 0;
    if (size - n <= 0) continue;
    total += static_cast<double>(occurrences(s, x)) / (size - n);
  }
  return total;
}

/// Every n-gram over the document's function-word vocabulary, with its score
/// (zeros included).
inline std::map<std::vector<std::string>, double> occ_space(const std::vector<OccSentence>& doc, std::size_t n,
                                                             bool fw_denominator = false) {
  std::set<std::string> vocab;
  for (const auto& s : doc)
    for (std::size_t i = 0; i < s.words.size(); ++i)
      if (s.is_fw[i]) vocab.insert(s.words[i]);
  std::vector<std::string> v(vocab.begin(), vocab.end());
  std::map<std::vector<std::string>, double> out;
  if (v.empty()) return out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<std::string> x;
    for (auto i : idx) x.push_back(v[i]);
    out[x] = occ(doc, x, fw_denominator);
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == v.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

}  // namespace oracle

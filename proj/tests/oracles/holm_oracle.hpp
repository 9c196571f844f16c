// Copyright 2026 The decept-cue Authors.
// SPDX-License-Identifier: Apache-2.0

// Holm adjustment by closed testing: an elementary hypothesis H_i is adjusted
// to the largest Bonferroni-adjusted p over every intersection hypothesis that
// contains it. Exponential in m, so only for small families.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracle {

inline std::vector<double> holm_closed_testing(const std::vector<double>& p) {
  const std::size_t m = p.size();
  if (m == 0 || m > 22) throw std::invalid_argument("holm oracle supports 1..22 hypotheses");
  const std::uint32_t full = (1u << m) - 1u;
  // min_p[S] over the members of S, built from S minus its lowest bit.
  std::vector<double> min_p(std::size_t{full} + 1, std::numeric_limits<double>::infinity());
  std::vector<unsigned char> size(std::size_t{full} + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = s & (~s + 1u);
    const std::uint32_t rest = s ^ low;
    unsigned bit = 0;
    while ((1u << bit) != low) ++bit;
    min_p[s] = std::min(min_p[rest], p[bit]);
    size[s] = static_cast<unsigned char>(size[rest] + 1);
  }
  std::vector<double> adj(m, 0.0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const double local = std::min(1.0, static_cast<double>(size[s]) * min_p[s]);
    for (std::size_t i = 0; i < m; ++i)
      if ((s >> i) & 1u) adj[i] = std::max(adj[i], local);
  }
  return adj;
}

/// Bonferroni at alpha/m, the procedure Holm must dominate.
inline std::vector<bool> bonferroni_reject(const std::vector<double>& p, double alpha) {
  std::vector<bool> out;
  for (double x : p) out.push_back(x * static_cast<double>(p.size()) < alpha);
  return out;
}

}  // namespace oracle

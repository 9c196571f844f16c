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

// Statistical primitives: Student t distribution, t-tests, Holm correction,
// Spearman correlation, single-linkage clustering, IQR outliers, simple
// linear regression, the coin-flip F1 baseline and theta-deception.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "decept/common.hpp"

namespace decept {

enum class Alternative { two_sided, greater, less };

inline const char* to_string(Alternative a) {
  switch (a) {
    case Alternative::two_sided: return "two_sided";
    case Alternative::greater: return "greater";
    case Alternative::less: return "less";
  }
  return "?";
}

struct TestResult {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  Alternative alternative = Alternative::two_sided;
  double mean_diff = 0.0;
  /// Set when the statistic is a limit (zero variance) rather than computed.
  bool degenerate = false;
};

struct CorrectionResult {
  std::vector<double> raw_p;
  std::vector<double> adjusted_p;
  std::vector<bool> rejected;
  double alpha = 0.0;
};

struct DeceptionVerdict {
  double p_exposed = 0.0;
  double p_unexposed = 0.0;
  bool deceives = false;
  double theta_max = 0.0;
};

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  double p_slope = 1.0;
  std::size_t n = 0;
};

// ---------------------------------------------------------------------------
// Descriptive helpers

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// True when every element equals the first. The mean of repeated values
/// can round away from them, so constancy is checked directly.
inline bool is_constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

/// Sample variance (n - 1 denominator), two-pass; exactly 0 for constant data.
inline double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2 || is_constant(v)) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

/// Type-7 (linear interpolation) quantile of unsorted data.
inline double quantile(std::vector<double> v, double p) {
  if (v.empty()) throw Error(Errc::too_few_values, "quantile of an empty vector");
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// ---------------------------------------------------------------------------
// Distributions

namespace detail {

/// Lentz continued fraction for I_x(a, b); valid for x < (a+1)/(a+b+2).
inline double beta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double f = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    f *= d * c;
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return f;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b). y = 1 - x is passed separately so
/// callers can keep precision when x is close to 1.
inline double incomplete_beta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log(y) + std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_cf(a, b, x) / a;
  return 1.0 - front * detail::beta_cf(b, a, y) / b;
}

/// Upper tail P(T > t) of Student's t with df degrees of freedom.
inline double student_t_sf(double t, double df) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x, y);  // P(T > |t|)
  return t >= 0 ? tail : 1.0 - tail;
}

inline double student_t_cdf(double t, double df) { return student_t_sf(-t, df); }

inline double p_value_for(double t, double df, Alternative alt) {
  switch (alt) {
    case Alternative::greater: return student_t_sf(t, df);
    case Alternative::less: return student_t_sf(-t, df);
    case Alternative::two_sided: return std::min(1.0, 2.0 * student_t_sf(std::fabs(t), df));
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Tests

/// Welch's unequal-variance two-sample t-test; mean_diff = mean(a) - mean(b).
inline TestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b,
                               Alternative alt = Alternative::two_sided) {
  if (a.size() < 2 || b.size() < 2)
    throw Error(Errc::degenerate_sample, "each sample needs at least 2 values (got " + std::to_string(a.size()) +
                                             " and " + std::to_string(b.size()) + ")");
  const double va = sample_variance(a), vb = sample_variance(b);
  if (va == 0.0 && vb == 0.0) throw Error(Errc::degenerate_sample, "both samples have zero variance");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double sa = va / na, sb = vb / nb;
  TestResult r;
  r.alternative = alt;
  r.mean_diff = mean(a) - mean(b);
  r.statistic = r.mean_diff / std::sqrt(sa + sb);
  r.df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  r.p_value = p_value_for(r.statistic, r.df, alt);
  return r;
}

/// mean_diff = mean(sample) - mu0.
inline TestResult one_sample_t_test(const std::vector<double>& sample, double mu0,
                                    Alternative alt = Alternative::two_sided) {
  if (sample.size() < 2)
    throw Error(Errc::degenerate_sample, "sample needs at least 2 values (got " + std::to_string(sample.size()) + ")");
  const double v = sample_variance(sample);
  if (v == 0.0) throw Error(Errc::degenerate_sample, "sample has zero variance");
  const double n = static_cast<double>(sample.size());
  TestResult r;
  r.alternative = alt;
  r.mean_diff = mean(sample) - mu0;
  r.statistic = r.mean_diff / std::sqrt(v / n);
  r.df = n - 1.0;
  r.p_value = p_value_for(r.statistic, r.df, alt);
  return r;
}

/// Holm step-down adjustment. Rejection uses adjusted < alpha.
inline CorrectionResult holm_correct(const std::vector<double>& raw_p, double alpha) {
  for (std::size_t i = 0; i < raw_p.size(); ++i)
    if (!(raw_p[i] >= 0.0 && raw_p[i] <= 1.0))
      throw Error(Errc::invalid_p, "p-value at index " + std::to_string(i) + " is outside [0,1]");
  const std::size_t m = raw_p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return raw_p[i] < raw_p[j]; });
  CorrectionResult r;
  r.raw_p = raw_p;
  r.alpha = alpha;
  r.adjusted_p.assign(m, 1.0);
  r.rejected.assign(m, false);
  double running = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = order[j];
    running = std::max(running, std::min(1.0, static_cast<double>(m - j) * raw_p[i]));
    r.adjusted_p[i] = running;
  }
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = order[j];
    if (!(r.adjusted_p[i] < alpha)) break;
    r.rejected[i] = true;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Correlation

/// Average ranks (1-based); ties share the mean of their positions.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(Errc::length_mismatch, "vectors differ in length");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::constant_vector, "correlation of a constant vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw Error(Errc::length_mismatch,
                "spearman: lengths " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  if (x.size() < 2) throw Error(Errc::too_few_values, "spearman needs at least 2 pairs");
  return pearson(average_ranks(x), average_ranks(y));
}

// ---------------------------------------------------------------------------
// Clustering

struct Merge {
  std::size_t a = 0;  // smallest member index of each merged cluster
  std::size_t b = 0;
  double distance = 0.0;
};

struct Partition {
  std::vector<std::size_t> cluster_of;  // cluster id per item, ids in order of first member
  std::vector<Merge> dendrogram;        // all n-1 merges by increasing distance
  std::size_t cluster_count = 0;

  std::vector<std::vector<std::size_t>> clusters() const {
    std::vector<std::vector<std::size_t>> out(cluster_count);
    for (std::size_t i = 0; i < cluster_of.size(); ++i) out[cluster_of[i]].push_back(i);
    return out;
  }
};

/// Single-linkage agglomeration; items whose merge distance is <= cut end up
/// in the same cluster.
inline Partition single_linkage_cluster(const std::vector<std::vector<double>>& dist, double cut) {
  const std::size_t n = dist.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) throw Error(Errc::malformed_matrix, "distance matrix is not square");
    if (dist[i][i] != 0.0) throw Error(Errc::malformed_matrix, "nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(dist[i][j]) || dist[i][j] < 0.0)
        throw Error(Errc::malformed_matrix, "invalid entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(dist[i][j] - dist[j][i]) > 1e-12)
        throw Error(Errc::malformed_matrix, "asymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");

  // Minimum spanning tree (Prim); single linkage merges follow its edges.
  struct Edge {
    double d;
    std::size_t u, v;
  };
  std::vector<Edge> edges;
  if (n > 0) {
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> from(n, 0);
    best[0] = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t u = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!in_tree[i] && (u == n || best[i] < best[u])) u = i;
      in_tree[u] = true;
      if (step > 0) edges.push_back({best[u], std::min(u, from[u]), std::max(u, from[u])});
      for (std::size_t v = 0; v < n; ++v)
        if (!in_tree[v] && dist[u][v] < best[v]) {
          best[v] = dist[u][v];
          from[v] = u;
        }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.u != y.u) return x.u < y.u;
    return x.v < y.v;
  });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Partition p;
  std::vector<std::size_t> cut_parent;
  bool cut_taken = false;
  for (const Edge& e : edges) {
    if (!cut_taken && e.d > cut) {
      cut_parent = parent;
      cut_taken = true;
    }
    const std::size_t a = find(e.u), b = find(e.v);
    // Roots are always the smallest member.
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    p.dendrogram.push_back({lo, hi, e.d});
    parent[hi] = lo;
  }
  if (cut_taken) parent = cut_parent;
  p.cluster_of.assign(n, 0);
  std::vector<std::size_t> id_of_root(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (id_of_root[r] == n) id_of_root[r] = p.cluster_count++;
    p.cluster_of[i] = id_of_root[r];
  }
  return p;
}

// ---------------------------------------------------------------------------
// Outliers and regression

/// Tukey fences on type-7 quartiles.
inline std::vector<bool> iqr_outliers(const std::vector<double>& values, double k = 1.5) {
  if (values.size() < 4)
    throw Error(Errc::too_few_values, "IQR test needs at least 4 values (got " + std::to_string(values.size()) + ")");
  const double q1 = quantile(values, 0.25), q3 = quantile(values, 0.75);
  const double iqr = q3 - q1;
  const double lo = q1 - k * iqr, hi = q3 + k * iqr;
  std::vector<bool> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] < lo || values[i] > hi;
  return out;
}

/// Ordinary least squares of y on x with a two-sided slope test (df = n - 2).
inline Regression linear_regression(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw Error(Errc::length_mismatch,
                "regression: lengths " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  if (x.size() < 3) throw Error(Errc::too_few_values, "regression needs at least 3 points");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || is_constant(x)) throw Error(Errc::constant_x, "regression predictor is constant");
  Regression r;
  r.n = x.size();
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  if (syy == 0.0 || is_constant(y)) {
    r.slope = 0.0;
    r.intercept = my;
    r.r = 0.0;
    r.p_slope = 1.0;
    return r;
  }
  r.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(r.n) - 2.0;
  const double one_minus_r2 = 1.0 - r.r * r.r;
  if (one_minus_r2 <= 0.0) {
    r.p_slope = 0.0;
    return r;
  }
  const double t = r.r * std::sqrt(df / one_minus_r2);
  r.p_slope = std::min(1.0, 2.0 * student_t_sf(std::fabs(t), df));
  return r;
}

// ---------------------------------------------------------------------------
// Baselines

/// Expected F1 of a fair coin when a fraction q of the data is deceptive.
inline double coin_flip_f1(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error(Errc::out_of_range, "deceptive proportion must be in [0,1]");
  return q / (0.5 + q);
}

inline DeceptionVerdict theta_deception(double p_exposed, double p_unexposed) {
  if (!(p_exposed >= 0.0 && p_exposed <= 1.0) || !(p_unexposed >= 0.0 && p_unexposed <= 1.0))
    throw Error(Errc::out_of_range, "compliance probabilities must be in [0,1]");
  DeceptionVerdict v;
  v.p_exposed = p_exposed;
  v.p_unexposed = p_unexposed;
  v.theta_max = std::max(0.0, p_unexposed - p_exposed);
  v.deceives = v.theta_max > 0.0;
  return v;
}

}  // namespace decept

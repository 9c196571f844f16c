// Copyright 2026 The decept-cue Authors.
// SPDX-License-Identifier: Apache-2.0

// Reference t-tests in 50-digit arithmetic using Boost.Math's Student's t.

#pragma once

#include <boost/math/distributions/students_t.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

struct TRef {
  double t = 0.0;
  double df = 0.0;
  double p_two = 1.0;
  double p_greater = 0.5;
  double p_less = 0.5;
};

namespace detail {

inline Big big_mean(const std::vector<double>& v) {
  Big s = 0;
  for (double x : v) s += Big(x);
  return s / Big(v.size());
}

inline Big big_var(const std::vector<double>& v) {
  const Big m = big_mean(v);
  Big s = 0;
  for (double x : v) s += (Big(x) - m) * (Big(x) - m);
  return s / Big(v.size() - 1);
}

inline TRef finish(const Big& t, const Big& df) {
  boost::math::students_t_distribution<Big> dist(df);
  TRef r;
  r.t = static_cast<double>(t);
  r.df = static_cast<double>(df);
  const Big upper = boost::math::cdf(boost::math::complement(dist, t));
  const Big lower = boost::math::cdf(dist, t);
  r.p_greater = static_cast<double>(upper);
  r.p_less = static_cast<double>(lower);
  const Big tail = boost::math::cdf(boost::math::complement(dist, abs(t)));
  r.p_two = static_cast<double>(tail * 2 > 1 ? Big(1) : tail * 2);
  return r;
}

}  // namespace detail

inline TRef welch(const std::vector<double>& a, const std::vector<double>& b) {
  const Big sa = detail::big_var(a) / Big(a.size());
  const Big sb = detail::big_var(b) / Big(b.size());
  const Big t = (detail::big_mean(a) - detail::big_mean(b)) / sqrt(sa + sb);
  const Big df = (sa + sb) * (sa + sb) / (sa * sa / Big(a.size() - 1) + sb * sb / Big(b.size() - 1));
  return detail::finish(t, df);
}

inline TRef one_sample(const std::vector<double>& v, double mu0) {
  const Big t = (detail::big_mean(v) - Big(mu0)) / sqrt(detail::big_var(v) / Big(v.size()));
  return detail::finish(t, Big(v.size() - 1));
}

}  // namespace oracle

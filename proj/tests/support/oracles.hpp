// tests/support/oracles.hpp

// Copyright 2026  The mmclap Authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Scalar reference implementations used as test oracles. Deliberately written
// with plain loops and std::vector so they share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.empty() ? 0 : m[0].size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// mean over rows of -sum_j t_ij log softmax(m_i)_j
inline double softmax_ce(const Matrix& m, const Matrix& t) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double z = 0.0;
    for (double v : m[i]) z += std::exp(v);
    for (std::size_t j = 0; j < m[i].size(); ++j) total -= t[i][j] * (m[i][j] - std::log(z));
  }
  return total / static_cast<double>(m.size());
}

inline double symmetric_ce(const Matrix& m, const Matrix& t) {
  return 0.5 * (softmax_ce(m, t) + softmax_ce(transpose(m), t));
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

// Pascal's triangle; exact for m <= 60.
inline std::vector<std::vector<std::uint64_t>> pascal(int m) {
  std::vector<std::vector<std::uint64_t>> c(m + 1);
  for (int n = 0; n <= m; ++n) {
    c[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  return c;
}

inline double sign_test_p(int n_plus, int n_minus) {
  const int m = n_plus + n_minus;
  if (m == 0) return 1.0;
  const auto c = pascal(m);
  std::uint64_t tail = 0;
  for (int j = std::max(n_plus, n_minus); j <= m; ++j) tail += c[m][j];
  const double p = 2.0 * static_cast<double>(tail) / std::pow(2.0, m);
  return p > 1.0 ? 1.0 : p;
}

// J(t) = TPR - FPR with the rule score >= t, counted directly.
inline double youden_j(const std::vector<double>& s, const std::vector<int>& y, double t) {
  double tp = 0, fp = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    (y[i] ? pos : neg) += 1;
    if (s[i] >= t) (y[i] ? tp : fp) += 1;
  }
  return tp / pos - fp / neg;
}

inline double max_youden_j(const std::vector<double>& s, const std::vector<int>& y) {
  double best = -2.0;
  for (double t : std::set<double>(s.begin(), s.end())) best = std::max(best, youden_j(s, y, t));
  return best;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double population_std(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

// Central difference of f at x along coordinate `value`.
inline double central_difference(const std::function<double()>& f, double& value, double h = 1e-5) {
  const double saved = value;
  value = saved + h;
  const double up = f();
  value = saved - h;
  const double down = f();
  value = saved;
  return (up - down) / (2.0 * h);
}

inline double relative_error(double analytic, double numeric, double floor = 1e-6) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

}  // namespace oracle

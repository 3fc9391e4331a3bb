// Copyright 2026 The evrecon Authors
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

// Dense reference implementations used as independent oracles by the tests.
// Nothing here shares code with the library's tridiagonal path.

#ifndef EVRECON_TESTS_DENSE_ORACLE_HPP
#define EVRECON_TESTS_DENSE_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace evrecon::testing
{
using Matrix = std::vector<std::vector<double>>;

/// (n-1) x n first-difference matrix, rows [-1 1].
inline Matrix difference_matrix(std::size_t n)
{
  Matrix a(n - 1, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a[i][i] = -1.0;
    a[i][i + 1] = 1.0;
  }
  return a;
}

inline Matrix transpose_times(const Matrix & a, const Matrix & b)
{
  const std::size_t rows = a.size();
  const std::size_t n = a[0].size();
  const std::size_t m = b[0].size();
  Matrix out(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < rows; ++k) {
        out[i][j] += a[k][i] * b[k][j];
      }
    }
  }
  return out;
}

inline std::vector<double> transpose_times(const Matrix & a, const std::vector<double> & x)
{
  std::vector<double> out(a[0].size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += a[k][i] * x[k];
    }
  }
  return out;
}

inline std::vector<double> times(const Matrix & a, const std::vector<double> & x)
{
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      out[i] += a[i][j] * x[j];
    }
  }
  return out;
}

/// A^T A + diag(lambda^2), built densely.
inline Matrix dense_normal_matrix(const std::vector<double> & lambda)
{
  const auto a = difference_matrix(lambda.size());
  auto k = transpose_times(a, a);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    k[i][i] += lambda[i] * lambda[i];
  }
  return k;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Matrix m, std::vector<double> b)
{
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) {
        piv = r;
      }
    }
    if (m[piv][col] == 0.0) {
      throw std::runtime_error("dense_solve: singular");
    }
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) {
        continue;
      }
      for (std::size_t c = col; c < n; ++c) {
        m[r][c] -= f * m[col][c];
      }
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) {
      s -= m[i][c] * x[c];
    }
    x[i] = s / m[i][i];
  }
  return x;
}

/// Dense normal-equations solve of min 0.5|Av - E|^2 + 0.5|lambda v|^2.
inline std::vector<double> dense_pixel_solve(
  const std::vector<double> & accum, const std::vector<double> & lambda)
{
  const auto a = difference_matrix(lambda.size());
  return dense_solve(dense_normal_matrix(lambda), transpose_times(a, accum));
}

inline double objective(
  const std::vector<double> & v, const std::vector<double> & accum,
  const std::vector<double> & lambda)
{
  double f = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double r = (v[i + 1] - v[i]) - accum[i];
    f += 0.5 * r * r;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = lambda[i] * v[i];
    f += 0.5 * w * w;
  }
  return f;
}

/// Central finite-difference gradient of objective().
inline std::vector<double> fd_gradient(
  std::vector<double> v, const std::vector<double> & accum, const std::vector<double> & lambda,
  double h)
{
  std::vector<double> g(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    v[i] = x + h;
    const double fp = objective(v, accum, lambda);
    v[i] = x - h;
    const double fm = objective(v, accum, lambda);
    v[i] = x;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

inline double max_abs(const std::vector<double> & v)
{
  double m = 0.0;
  for (double x : v) {
    m = std::max(m, std::fabs(x));
  }
  return m;
}

}  // namespace evrecon::testing

#endif  // EVRECON_TESTS_DENSE_ORACLE_HPP

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tractor/jets.hpp"

namespace tractor {

// Dense containers over an arbitrary scalar ring S.  Eigen stays at the
// double level; these carry jet-valued intermediates through the curvature
// pipeline.  Sizes here are tiny (n <= 8), clarity over cleverness.

template <class S>
using SVec = std::vector<S>;

template <class S>
struct SMat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  SMat() = default;
  SMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, S(0.0)) {}

  S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

template <class S>
struct STen3 {
  int n0 = 0, n1 = 0, n2 = 0;
  std::vector<S> a;

  STen3() = default;
  STen3(int a0, int a1, int a2)
      : n0(a0), n1(a1), n2(a2), a(static_cast<size_t>(a0) * a1 * a2, S(0.0)) {}

  S& operator()(int i, int j, int k) { return a[(static_cast<size_t>(i) * n1 + j) * n2 + k]; }
  const S& operator()(int i, int j, int k) const {
    return a[(static_cast<size_t>(i) * n1 + j) * n2 + k];
  }
};

template <class S>
struct STen4 {
  int n0 = 0, n1 = 0, n2 = 0, n3 = 0;
  std::vector<S> a;

  STen4() = default;
  STen4(int a0, int a1, int a2, int a3)
      : n0(a0), n1(a1), n2(a2), n3(a3), a(static_cast<size_t>(a0) * a1 * a2 * a3, S(0.0)) {}

  S& operator()(int i, int j, int k, int l) {
    return a[((static_cast<size_t>(i) * n1 + j) * n2 + k) * n3 + l];
  }
  const S& operator()(int i, int j, int k, int l) const {
    return a[((static_cast<size_t>(i) * n1 + j) * n2 + k) * n3 + l];
  }
};

/// Gauss-Jordan inverse with partial pivoting on underlying double magnitude.
template <class S>
SMat<S> inverse(const SMat<S>& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: square matrix required");
  const int n = m.rows;
  SMat<S> a = m;
  SMat<S> inv(n, n);
  for (int i = 0; i < n; ++i) inv(i, i) = S(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(scalar_value(a(col, col)));
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::abs(scalar_value(a(r, col)));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) throw std::runtime_error("inverse: singular matrix");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const S scale = reciprocal(a(col, col));
    for (int c = 0; c < n; ++c) {
      a(col, c) = a(col, c) * scale;
      inv(col, c) = inv(col, c) * scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const S f = a(r, col);
      if (scalar_value(f) == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a(r, c) = a(r, c) - f * a(col, c);
        inv(r, c) = inv(r, c) - f * inv(col, c);
      }
    }
  }
  return inv;
}

inline SMat<double> from_eigen(const Eigen::MatrixXd& m) {
  SMat<double> r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < r.cols; ++j) r(i, j) = m(i, j);
  return r;
}

inline Eigen::MatrixXd to_eigen(const SMat<double>& m) {
  Eigen::MatrixXd r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = m(i, j);
  return r;
}

/// Strip a jet-valued matrix to its underlying values.
template <class S>
SMat<S> values_of(const SMat<Taylor2<S>>& m) {
  SMat<S> r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = m(i, j).value();
  return r;
}

}  // namespace tractor

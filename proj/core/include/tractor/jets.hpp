#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tractor {

/// Truncated second-order Taylor scalar in `dim` seed variables: carries a
/// value, a gradient and a full (symmetric) Hessian.  The component type S is
/// itself a scalar ring, so Taylor2<Taylor2<double>> yields third (and
/// fourth) derivatives by nesting.
///
/// Constants are represented with dim == 0 and promote against any operand;
/// mixing two nonzero dims that disagree is a hard error.
template <class S>
class Taylor2 {
 public:
  Taylor2() : v_(0.0) {}
  Taylor2(double c) : v_(c) {}  // NOLINT: implicit constant lift

  static Taylor2 constant(S value) {
    Taylor2 r;
    r.v_ = std::move(value);
    return r;
  }

  static Taylor2 variable(S value, int index, int dim) {
    if (index < 0 || index >= dim) throw std::invalid_argument("Taylor2::variable: index out of range");
    Taylor2 r;
    r.v_ = std::move(value);
    r.dim_ = dim;
    r.g_.assign(static_cast<size_t>(dim), S(0.0));
    r.h_.assign(static_cast<size_t>(dim) * dim, S(0.0));
    r.g_[static_cast<size_t>(index)] = S(1.0);
    return r;
  }

  int dim() const { return dim_; }
  const S& value() const { return v_; }
  S& value() { return v_; }

  /// Gradient component; zero for constants.
  S grad(int i) const { return dim_ == 0 ? S(0.0) : g_[static_cast<size_t>(i)]; }
  /// Hessian component; zero for constants.
  S hess(int i, int j) const {
    return dim_ == 0 ? S(0.0) : h_[static_cast<size_t>(i) * dim_ + j];
  }

  Taylor2 operator-() const {
    Taylor2 r(*this);
    r.v_ = -r.v_;
    for (auto& x : r.g_) x = -x;
    for (auto& x : r.h_) x = -x;
    return r;
  }

  Taylor2& operator+=(const Taylor2& o) { return merge(o, 1.0); }
  Taylor2& operator-=(const Taylor2& o) { return merge(o, -1.0); }

  friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
  friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }

  friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
    const int n = joint_dim(a, b);
    Taylor2 r;
    r.v_ = a.v_ * b.v_;
    if (n == 0) return r;
    r.resize(n);
    for (int i = 0; i < n; ++i) r.g_[i] = a.grad(i) * b.v_ + b.grad(i) * a.v_;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.h_[static_cast<size_t>(i) * n + j] = a.hess(i, j) * b.v_ + b.hess(i, j) * a.v_ +
                                               a.grad(i) * b.grad(j) + a.grad(j) * b.grad(i);
    return r;
  }

  friend Taylor2 operator/(const Taylor2& a, const Taylor2& b) { return a * reciprocal(b); }

  /// f(u) for scalar f given f(u0), f'(u0), f''(u0): the order-2 chain rule.
  friend Taylor2 chain(const Taylor2& u, S f0, S f1, S f2) {
    Taylor2 r;
    r.v_ = std::move(f0);
    const int n = u.dim_;
    if (n == 0) return r;
    r.resize(n);
    for (int i = 0; i < n; ++i) r.g_[i] = f1 * u.g_[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.h_[static_cast<size_t>(i) * n + j] =
            f1 * u.h_[static_cast<size_t>(i) * n + j] + f2 * u.g_[i] * u.g_[j];
    return r;
  }

 private:
  static int joint_dim(const Taylor2& a, const Taylor2& b) {
    if (a.dim_ == 0) return b.dim_;
    if (b.dim_ == 0) return a.dim_;
    if (a.dim_ != b.dim_) throw std::invalid_argument("Taylor2: mixed seed dimensions");
    return a.dim_;
  }

  void resize(int n) {
    dim_ = n;
    g_.assign(static_cast<size_t>(n), S(0.0));
    h_.assign(static_cast<size_t>(n) * n, S(0.0));
  }

  Taylor2& merge(const Taylor2& o, double sign) {
    const int n = joint_dim(*this, o);
    if (n != dim_) {
      // promote constant in place
      std::vector<S> g(static_cast<size_t>(n), S(0.0)), h(static_cast<size_t>(n) * n, S(0.0));
      for (int i = 0; i < dim_; ++i) g[i] = g_[i];
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) h[static_cast<size_t>(i) * n + j] = h_[static_cast<size_t>(i) * dim_ + j];
      g_ = std::move(g);
      h_ = std::move(h);
      dim_ = n;
    }
    if (sign > 0) {
      v_ += o.v_;
      for (int i = 0; i < o.dim_; ++i) g_[i] += o.g_[i];
      for (size_t k = 0; k < o.h_.size(); ++k) h_[k] += o.h_[k];
    } else {
      v_ -= o.v_;
      for (int i = 0; i < o.dim_; ++i) g_[i] -= o.g_[i];
      for (size_t k = 0; k < o.h_.size(); ++k) h_[k] -= o.h_[k];
    }
    return *this;
  }

  S v_;
  int dim_ = 0;
  std::vector<S> g_;  // size dim_
  std::vector<S> h_;  // size dim_^2, row-major, kept symmetric
};

// double passthroughs so generic chart code can call these unqualified from
// inside the tractor namespace regardless of the scalar level
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double reciprocal(double x) { return 1.0 / x; }

/// Underlying double value, through any nesting depth.
inline double scalar_value(double x) { return x; }
template <class S>
double scalar_value(const Taylor2<S>& x) {
  return scalar_value(x.value());
}

template <class S>
Taylor2<S> reciprocal(const Taylor2<S>& u) {
  const S w = reciprocal(u.value());  // 1/u
  const S w2 = w * w;
  return chain(u, w, -w2, S(2.0) * w2 * w);
}

template <class S>
Taylor2<S> exp(const Taylor2<S>& u) {
  const S e = exp(u.value());
  return chain(u, e, e, e);
}

template <class S>
Taylor2<S> log(const Taylor2<S>& u) {
  const S w = reciprocal(u.value());
  return chain(u, log(u.value()), w, -w * w);
}

template <class S>
Taylor2<S> sqrt(const Taylor2<S>& u) {
  const S r = sqrt(u.value());
  const S half_inv = S(0.5) * reciprocal(r);
  return chain(u, r, half_inv, S(-0.5) * half_inv * reciprocal(u.value()));
}

template <class S>
Taylor2<S> sin(const Taylor2<S>& u) {
  const S s = sin(u.value()), c = cos(u.value());
  return chain(u, s, c, -s);
}

template <class S>
Taylor2<S> cos(const Taylor2<S>& u) {
  const S s = sin(u.value()), c = cos(u.value());
  return chain(u, c, -s, -c);
}

template <class S>
Taylor2<S> sq(const Taylor2<S>& u) {
  return u * u;
}
inline double sq(double x) { return x * x; }

using Jet = Taylor2<double>;
using JetJet = Taylor2<Jet>;

}  // namespace tractor

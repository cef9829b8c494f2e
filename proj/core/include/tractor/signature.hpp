#pragma once

#include <stdexcept>

namespace tractor {

/// Metric signature (p,q); fixes every matrix dimension downstream:
/// base dimension n = p+q, tractor rank n+2.
struct Signature {
  int p = 0;
  int q = 0;

  int n() const { return p + q; }
  int tractor_dim() const { return p + q + 2; }

  bool operator==(const Signature&) const = default;
};

inline Signature make_signature(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("Signature: p,q must be non-negative");
  return Signature{p, q};
}

}  // namespace tractor

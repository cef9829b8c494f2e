#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tractor/geometry.hpp"
#include "tractor/jets.hpp"

namespace tractor {

/// Parametrized C^1 chart curve; velocities come from 1-variable forward
/// differentiation of the stored functor, so every curve kind gets exact
/// derivatives.
class Curve {
 public:
  Curve() = default;

  int dim() const { return dim_; }
  Eigen::VectorXd point(double t) const;
  std::pair<Eigen::VectorXd, Eigen::VectorXd> with_velocity(double t) const;

  template <class F>
  static Curve from(int dim, F f) {
    Curve c;
    c.dim_ = dim;
    c.fn_ = [f](const Jet& t) { return f(t); };
    return c;
  }

 private:
  int dim_ = 0;
  std::function<SVec<Jet>(const Jet&)> fn_;
};

/// x(t) = p0 + t v.
Curve line_curve(const Eigen::VectorXd& p0, const Eigen::VectorXd& v);

/// Circle in the coordinate plane (axis_i, axis_j):
/// x(t) = center + r cos(phase + omega t) e_i + r sin(phase + omega t) e_j.
Curve arc_curve(const Eigen::VectorXd& center, int axis_i, int axis_j, double radius,
                double phase, double omega);

/// x_i(t) = sum_k coeff(i,k) t^k.
Curve poly_curve(const Eigen::MatrixXd& coeff);

/// One leg of a piecewise path: a curve in a chart over [t0,t1], with an
/// optional frame hand-off applied at the end of the leg.
struct PathSegment {
  const MetricChart* chart = nullptr;
  Curve curve;
  double t0 = 0.0, t1 = 1.0;
  std::shared_ptr<const ChartTransition> handoff;  // applied at t1, or null
};

struct LoopPath {
  std::vector<PathSegment> segments;
  bool closed = false;
};

/// Endpoint continuity across hand-offs (and closure when claimed); throws
/// std::invalid_argument with the offending junction when violated.
void validate_path(const LoopPath& path, double tol = 1e-10);

}  // namespace tractor

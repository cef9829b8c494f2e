#include "tractor/paths.hpp"

#include <cmath>
#include <stdexcept>

namespace tractor {

Eigen::VectorXd Curve::point(double t) const { return with_velocity(t).first; }

std::pair<Eigen::VectorXd, Eigen::VectorXd> Curve::with_velocity(double t) const {
  const SVec<Jet> p = fn_(Jet::variable(t, 0, 1));
  Eigen::VectorXd x(dim_), v(dim_);
  for (int i = 0; i < dim_; ++i) {
    x(i) = p[i].value();
    v(i) = p[i].grad(0);
  }
  return {x, v};
}

Curve line_curve(const Eigen::VectorXd& p0, const Eigen::VectorXd& v) {
  const int n = static_cast<int>(p0.size());
  std::vector<double> p0v(p0.data(), p0.data() + n), vv(v.data(), v.data() + n);
  return Curve::from(n, [p0v, vv, n](const Jet& t) {
    SVec<Jet> out(n);
    for (int i = 0; i < n; ++i) out[i] = Jet(p0v[i]) + Jet(vv[i]) * t;
    return out;
  });
}

Curve arc_curve(const Eigen::VectorXd& center, int axis_i, int axis_j, double radius,
                double phase, double omega) {
  const int n = static_cast<int>(center.size());
  if (axis_i < 0 || axis_i >= n || axis_j < 0 || axis_j >= n || axis_i == axis_j)
    throw std::invalid_argument("arc_curve: bad plane axes");
  std::vector<double> cv(center.data(), center.data() + n);
  return Curve::from(n, [cv, n, axis_i, axis_j, radius, phase, omega](const Jet& t) {
    SVec<Jet> out(n);
    for (int i = 0; i < n; ++i) out[i] = Jet(cv[i]);
    const Jet angle = Jet(phase) + Jet(omega) * t;
    out[axis_i] += Jet(radius) * cos(angle);
    out[axis_j] += Jet(radius) * sin(angle);
    return out;
  });
}

Curve poly_curve(const Eigen::MatrixXd& coeff) {
  const int n = static_cast<int>(coeff.rows());
  const int deg = static_cast<int>(coeff.cols()) - 1;
  std::vector<double> c(coeff.data(), coeff.data() + coeff.size());
  return Curve::from(n, [c, n, deg](const Jet& t) {
    SVec<Jet> out(n);
    for (int i = 0; i < n; ++i) {
      Jet acc(c[static_cast<size_t>(deg) * n + i]);  // Eigen column-major layout
      for (int k = deg - 1; k >= 0; --k) acc = acc * t + Jet(c[static_cast<size_t>(k) * n + i]);
      out[i] = acc;
    }
    return out;
  });
}

void validate_path(const LoopPath& path, double tol) {
  if (path.segments.empty()) throw std::invalid_argument("validate_path: empty path");
  for (size_t s = 0; s < path.segments.size(); ++s) {
    const PathSegment& seg = path.segments[s];
    if (!seg.chart) throw std::invalid_argument("validate_path: segment without chart");
    Eigen::VectorXd end = seg.curve.point(seg.t1);
    if (seg.handoff) end = seg.handoff->forward(end);
    const bool last = (s + 1 == path.segments.size());
    if (!last) {
      const Eigen::VectorXd next = path.segments[s + 1].curve.point(path.segments[s + 1].t0);
      if ((end - next).norm() > tol)
        throw std::invalid_argument("validate_path: junction mismatch after segment " +
                                    std::to_string(s));
    } else if (path.closed) {
      const Eigen::VectorXd start = path.segments[0].curve.point(path.segments[0].t0);
      if ((end - start).norm() > tol)
        throw std::invalid_argument("validate_path: loop does not close");
    }
  }
}

}  // namespace tractor

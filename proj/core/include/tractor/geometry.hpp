#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tractor/jets.hpp"
#include "tractor/signature.hpp"
#include "tractor/tensor.hpp"

namespace tractor {

/// Open coordinate box; points within `margin` of a face count as outside.
struct Box {
  Eigen::VectorXd lo, hi;
  double margin = 1e-6;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& x) const;
};

Box centered_box(int dim, double half_width);

using MetricFnPlain = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
using MetricFnJet = std::function<SMat<Jet>(const SVec<Jet>&)>;
using MetricFnJetJet = std::function<SMat<JetJet>(const SVec<JetJet>&)>;

/// A coordinate chart carrying a smooth signature-(p,q) metric.  The same
/// generic evaluator is stored at three scalar levels so that first, second
/// and (by nesting) third metric derivatives come out of forward-mode
/// evaluation.  Charts built from structurally first-order data (the ambient
/// construction) omit the deepest level and support curvature only up to
/// Ricci; `has_third_derivatives()` tells them apart.
class MetricChart {
 public:
  MetricChart() = default;

  int dim() const { return dim_; }
  const Signature& sig() const { return sig_; }
  const Box& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  bool has_third_derivatives() const { return static_cast<bool>(fn_jetjet_); }

  Eigen::MatrixXd metric(const Eigen::VectorXd& x) const;

  SMat<Jet> metric_jets(const SVec<Jet>& x) const { return fn_jet_(x); }
  SMat<JetJet> metric_jetjets(const SVec<JetJet>& x) const;

  /// Interior check with the open-box margin; throws std::domain_error.
  void require_inside(const Eigen::VectorXd& x) const;

  friend class ChartBuilder;

 private:
  int dim_ = 0;
  Signature sig_;
  Box domain_;
  std::string label_;
  MetricFnPlain fn_plain_;
  MetricFnJet fn_jet_;
  MetricFnJetJet fn_jetjet_;
};

/// Assembles a chart from one generic metric functor, instantiated at each
/// scalar level.  F must be callable as f(const SVec<S>&) -> SMat<S>.
class ChartBuilder {
 public:
  ChartBuilder(std::string label, Signature sig, Box domain);

  template <class F>
  MetricChart build(F f) const {
    MetricChart c = base();
    c.fn_plain_ = [f](const Eigen::VectorXd& x) {
      SVec<double> xv(x.data(), x.data() + x.size());
      return to_eigen(f(xv));
    };
    c.fn_jet_ = [f](const SVec<Jet>& x) { return f(x); };
    c.fn_jetjet_ = [f](const SVec<JetJet>& x) { return f(x); };
    return c;
  }

  /// Two-level variant for metrics whose definition already consumed one
  /// differentiation level (no third derivatives available).
  template <class F>
  MetricChart build_shallow(F f) const {
    MetricChart c = base();
    c.fn_plain_ = [f](const Eigen::VectorXd& x) {
      SVec<double> xv(x.data(), x.data() + x.size());
      return to_eigen(f(xv));
    };
    c.fn_jet_ = [f](const SVec<Jet>& x) { return f(x); };
    return c;
  }

 private:
  MetricChart base() const;

  std::string label_;
  Signature sig_;
  Box domain_;
};

/// Smooth scalar field on a chart domain, same three-level storage.
class ScalarField {
 public:
  ScalarField() = default;

  double operator()(const Eigen::VectorXd& x) const { return fn_plain_(x); }
  Jet jet(const SVec<Jet>& x) const { return fn_jet_(x); }
  JetJet jetjet(const SVec<JetJet>& x) const { return fn_jetjet_(x); }

  /// Value and gradient at x.
  std::pair<double, Eigen::VectorXd> with_gradient(const Eigen::VectorXd& x) const;

  template <class F>
  static ScalarField from(F f) {
    ScalarField s;
    s.fn_plain_ = [f](const Eigen::VectorXd& x) {
      SVec<double> xv(x.data(), x.data() + x.size());
      return f(xv);
    };
    s.fn_jet_ = [f](const SVec<Jet>& x) { return f(x); };
    s.fn_jetjet_ = [f](const SVec<JetJet>& x) { return f(x); };
    return s;
  }

 private:
  std::function<double(const Eigen::VectorXd&)> fn_plain_;
  std::function<Jet(const SVec<Jet>&)> fn_jet_;
  std::function<JetJet(const SVec<JetJet>&)> fn_jetjet_;
};

/// Smooth coordinate map between charts (value + jet levels).
class MapField {
 public:
  MapField() = default;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
  /// Value and Jacobian at x.
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> with_jacobian(const Eigen::VectorXd& x) const;
  SVec<Jet> jets(const SVec<Jet>& x) const { return fn_jet_(x); }

  template <class F>
  static MapField from(int out_dim, F f) {
    MapField m;
    m.out_dim_ = out_dim;
    m.fn_jet_ = [f](const SVec<Jet>& x) { return f(x); };
    return m;
  }

  int out_dim() const { return out_dim_; }

 private:
  int out_dim_ = 0;
  std::function<SVec<Jet>(const SVec<Jet>&)> fn_jet_;
};

/// Coordinate change between two overlapping charts of one geometry.  All
/// transitions in this artifact are isometric identifications: the pullback
/// of the target metric must equal the source metric on the overlap.
struct ChartTransition {
  std::string source, target;
  MapField forward, inverse;
  Box overlap;  // in source coordinates

  /// Point and tangent pushforward (phi(x), Dphi(x) v).
  std::pair<Eigen::VectorXd, Eigen::VectorXd> pushforward(const Eigen::VectorXd& x,
                                                          const Eigen::VectorXd& v) const;
};

/// Conformal density in a chosen scale: plain value plus weight metadata.
struct WeightedScalar {
  double value = 0.0;
  double weight = 0.0;  // integer or half-integer
  std::string scale_ref;
};

/// e^{w Upsilon} scaling into the scale reached by the rescale.
WeightedScalar rescale(const WeightedScalar& s, double upsilon, std::string new_scale_ref);

/// Metric derivative stack at a point: g, dg(k,i,j) = d_k g_ij,
/// ddg(k,l,i,j) = d_k d_l g_ij, entries of scalar type S.
template <class S>
struct MetricDerivs {
  SMat<S> g;
  STen3<S> dg;
  STen4<S> ddg;
};

MetricDerivs<double> metric_derivs(const MetricChart& chart, const Eigen::VectorXd& x);
MetricDerivs<Jet> metric_derivs_jet(const MetricChart& chart, const Eigen::VectorXd& x);

/// Levi-Civita data and the curvature chain up to the Schouten tensor.
/// Generic in S: with S = Jet every field carries its own first derivatives.
template <class S>
struct ConnectionDataT {
  SMat<S> g, ginv;
  STen3<S> gamma;    // gamma(i,j,k) = Gamma^i_{jk}
  STen4<S> riemann;  // riemann(i,j,k,l) = R^i_{jkl}
  SMat<S> ricci;
  S scal = S(0.0);
  SMat<S> schouten;  // P_ij
};

template <class S>
ConnectionDataT<S> connection_data_from(const MetricDerivs<S>& md, int n);

ConnectionDataT<double> connection_data(const MetricChart& chart, const Eigen::VectorXd& x);
ConnectionDataT<Jet> connection_data_jet(const MetricChart& chart, const Eigen::VectorXd& x);

/// Full curvature pack at a point: Christoffel, Riemann, Ricci, scalar,
/// Schouten, Weyl (1,3), Cotton C_ijk = nabla_j P_ki - nabla_k P_ji.
struct CurvaturePack {
  Eigen::MatrixXd g, ginv;
  STen3<double> gamma;
  STen4<double> riemann;
  Eigen::MatrixXd ricci;
  double scal = 0.0;
  Eigen::MatrixXd schouten;
  STen4<double> weyl;    // W^i_{jkl}
  STen3<double> cotton;  // C_{ijk}
};

CurvaturePack curvature_pack(const MetricChart& chart, const Eigen::VectorXd& x);

/// Residuals of the pack's structural identities (Ric symmetry, Weyl traces,
/// first Bianchi); diagnostic for tests.
struct PackResiduals {
  double ricci_symmetry = 0.0;
  double weyl_trace = 0.0;
  double first_bianchi = 0.0;
};
PackResiduals pack_residuals(const CurvaturePack& pack);

/// New chart with metric e^{2 Upsilon} g, same domain and signature.
MetricChart conformal_rescale(const MetricChart& chart, const ScalarField& upsilon,
                              const std::string& new_label);

/// (phi(x), Dphi(x) v) with the overlap check.
std::pair<Eigen::VectorXd, Eigen::VectorXd> transition_pushforward(const ChartTransition& t,
                                                                   const Eigen::VectorXd& x,
                                                                   const Eigen::VectorXd& v);

}  // namespace tractor

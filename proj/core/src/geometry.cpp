#include "tractor/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace tractor {

bool Box::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lo.size()) return false;
  for (int i = 0; i < lo.size(); ++i) {
    if (x(i) <= lo(i) + margin || x(i) >= hi(i) - margin) return false;
  }
  return true;
}

Box centered_box(int dim, double half_width) {
  Box b;
  b.lo = Eigen::VectorXd::Constant(dim, -half_width);
  b.hi = Eigen::VectorXd::Constant(dim, half_width);
  return b;
}

Eigen::MatrixXd MetricChart::metric(const Eigen::VectorXd& x) const { return fn_plain_(x); }

SMat<JetJet> MetricChart::metric_jetjets(const SVec<JetJet>& x) const {
  if (!fn_jetjet_)
    throw std::logic_error("chart '" + label_ + "' provides no third derivatives");
  return fn_jetjet_(x);
}

void MetricChart::require_inside(const Eigen::VectorXd& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("point dimension mismatch on chart '" + label_ + "'");
  if (!domain_.contains(x))
    throw std::domain_error("point outside (open) domain of chart '" + label_ + "'");
}

ChartBuilder::ChartBuilder(std::string label, Signature sig, Box domain)
    : label_(std::move(label)), sig_(sig), domain_(std::move(domain)) {}

MetricChart ChartBuilder::base() const {
  MetricChart c;
  c.dim_ = sig_.n();
  c.sig_ = sig_;
  c.domain_ = domain_;
  c.label_ = label_;
  if (c.domain_.dim() != c.dim_) throw std::invalid_argument("chart domain dimension mismatch");
  return c;
}

std::pair<double, Eigen::VectorXd> ScalarField::with_gradient(const Eigen::VectorXd& x) const {
  const int n = static_cast<int>(x.size());
  SVec<Jet> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = Jet::variable(x(i), i, n);
  const Jet u = fn_jet_(xs);
  Eigen::VectorXd grad(n);
  for (int i = 0; i < n; ++i) grad(i) = u.grad(i);
  return {u.value(), grad};
}

Eigen::VectorXd MapField::operator()(const Eigen::VectorXd& x) const {
  return with_jacobian(x).first;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> MapField::with_jacobian(
    const Eigen::VectorXd& x) const {
  const int n = static_cast<int>(x.size());
  SVec<Jet> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = Jet::variable(x(i), i, n);
  const SVec<Jet> y = fn_jet_(xs);
  Eigen::VectorXd val(out_dim_);
  Eigen::MatrixXd jac(out_dim_, n);
  for (int r = 0; r < out_dim_; ++r) {
    val(r) = y[r].value();
    for (int c = 0; c < n; ++c) jac(r, c) = y[r].grad(c);
  }
  return {val, jac};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> ChartTransition::pushforward(
    const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
  auto [y, J] = forward.with_jacobian(x);
  return {y, J * v};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> transition_pushforward(const ChartTransition& t,
                                                                   const Eigen::VectorXd& x,
                                                                   const Eigen::VectorXd& v) {
  if (!t.overlap.contains(x))
    throw std::domain_error("transition " + t.source + "->" + t.target +
                            ": point outside overlap");
  return t.pushforward(x, v);
}

WeightedScalar rescale(const WeightedScalar& s, double upsilon, std::string new_scale_ref) {
  return WeightedScalar{s.value * std::exp(s.weight * upsilon), s.weight,
                        std::move(new_scale_ref)};
}

namespace {

template <class S, class JetT>
MetricDerivs<S> unpack_derivs(const SMat<JetT>& G, int n) {
  MetricDerivs<S> md;
  md.g = SMat<S>(n, n);
  md.dg = STen3<S>(n, n, n);
  md.ddg = STen4<S>(n, n, n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      md.g(i, j) = G(i, j).value();
      for (int k = 0; k < n; ++k) {
        md.dg(k, i, j) = G(i, j).grad(k);
        for (int l = 0; l < n; ++l) md.ddg(k, l, i, j) = G(i, j).hess(k, l);
      }
    }
  }
  return md;
}

}  // namespace

MetricDerivs<double> metric_derivs(const MetricChart& chart, const Eigen::VectorXd& x) {
  chart.require_inside(x);
  const int n = chart.dim();
  SVec<Jet> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = Jet::variable(x(i), i, n);
  return unpack_derivs<double>(chart.metric_jets(xs), n);
}

MetricDerivs<Jet> metric_derivs_jet(const MetricChart& chart, const Eigen::VectorXd& x) {
  chart.require_inside(x);
  const int n = chart.dim();
  SVec<JetJet> xs(n);
  for (int i = 0; i < n; ++i)
    xs[i] = JetJet::variable(Jet::variable(x(i), i, n), i, n);
  return unpack_derivs<Jet>(chart.metric_jetjets(xs), n);
}

template <class S>
ConnectionDataT<S> connection_data_from(const MetricDerivs<S>& md, int n) {
  if (n < 3) throw std::invalid_argument("curvature: n >= 3 required (Schouten undefined)");
  ConnectionDataT<S> cd;
  cd.g = md.g;
  cd.ginv = inverse(md.g);

  // Gamma^i_{jk} = 1/2 g^{il} (d_j g_{lk} + d_k g_{lj} - d_l g_{jk})
  cd.gamma = STen3<S>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        S acc = S(0.0);
        for (int l = 0; l < n; ++l)
          acc += cd.ginv(i, l) * (md.dg(j, l, k) + md.dg(k, l, j) - md.dg(l, j, k));
        acc = S(0.5) * acc;
        cd.gamma(i, j, k) = acc;
        cd.gamma(i, k, j) = acc;
      }

  // R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj} + Gamma^i_{km} Gamma^m_{lj}
  //           - Gamma^i_{lm} Gamma^m_{kj}
  // The derivative of Gamma is expanded through the metric derivative stack.
  STen4<S> dgamma(n, n, n, n);  // dgamma(m, i, j, k) = d_m Gamma^i_{jk}
  for (int m = 0; m < n; ++m) {
    // d_m g^{il} = -g^{ia} (d_m g_{ab}) g^{bl}
    SMat<S> dginv(n, n);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        S acc = S(0.0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) acc += cd.ginv(i, a) * md.dg(m, a, b) * cd.ginv(b, l);
        dginv(i, l) = -acc;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          S acc = S(0.0);
          for (int l = 0; l < n; ++l) {
            acc += S(0.5) * dginv(i, l) * (md.dg(j, l, k) + md.dg(k, l, j) - md.dg(l, j, k));
            acc += S(0.5) * cd.ginv(i, l) *
                   (md.ddg(m, j, l, k) + md.ddg(m, k, l, j) - md.ddg(m, l, j, k));
          }
          dgamma(m, i, j, k) = acc;
          dgamma(m, i, k, j) = acc;
        }
  }

  cd.riemann = STen4<S>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          S acc = dgamma(k, i, l, j) - dgamma(l, i, k, j);
          for (int m = 0; m < n; ++m)
            acc += cd.gamma(i, k, m) * cd.gamma(m, l, j) - cd.gamma(i, l, m) * cd.gamma(m, k, j);
          cd.riemann(i, j, k, l) = acc;
        }

  cd.ricci = SMat<S>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      S acc = S(0.0);
      for (int k = 0; k < n; ++k) acc += cd.riemann(k, i, k, j);
      cd.ricci(i, j) = acc;
    }

  cd.scal = S(0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cd.scal += cd.ginv(i, j) * cd.ricci(i, j);

  // P = (Ric - scal g / (2(n-1))) / (n-2)
  cd.schouten = SMat<S>(n, n);
  const double c1 = 1.0 / (n - 2);
  const double c2 = 1.0 / (2.0 * (n - 1) * (n - 2));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cd.schouten(i, j) = S(c1) * cd.ricci(i, j) - S(c2) * cd.scal * cd.g(i, j);

  return cd;
}

template ConnectionDataT<double> connection_data_from(const MetricDerivs<double>&, int);
template ConnectionDataT<Jet> connection_data_from(const MetricDerivs<Jet>&, int);

ConnectionDataT<double> connection_data(const MetricChart& chart, const Eigen::VectorXd& x) {
  return connection_data_from(metric_derivs(chart, x), chart.dim());
}

ConnectionDataT<Jet> connection_data_jet(const MetricChart& chart, const Eigen::VectorXd& x) {
  return connection_data_from(metric_derivs_jet(chart, x), chart.dim());
}

CurvaturePack curvature_pack(const MetricChart& chart, const Eigen::VectorXd& x) {
  const int n = chart.dim();
  const ConnectionDataT<Jet> cj = connection_data_jet(chart, x);

  CurvaturePack pack;
  pack.g = Eigen::MatrixXd(n, n);
  pack.ginv = Eigen::MatrixXd(n, n);
  pack.ricci = Eigen::MatrixXd(n, n);
  pack.schouten = Eigen::MatrixXd(n, n);
  pack.gamma = STen3<double>(n, n, n);
  pack.riemann = STen4<double>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pack.g(i, j) = cj.g(i, j).value();
      pack.ginv(i, j) = cj.ginv(i, j).value();
      pack.ricci(i, j) = cj.ricci(i, j).value();
      pack.schouten(i, j) = cj.schouten(i, j).value();
      for (int k = 0; k < n; ++k) {
        pack.gamma(i, j, k) = cj.gamma(i, j, k).value();
        for (int l = 0; l < n; ++l) pack.riemann(i, j, k, l) = cj.riemann(i, j, k, l).value();
      }
    }
  pack.scal = cj.scal.value();

  // Weyl: W^i_{jkl} = R^i_{jkl} - (delta^i_k P_{jl} - delta^i_l P_{jk}
  //                  + P^i_k g_{jl} - P^i_l g_{jk})
  Eigen::MatrixXd p_mixed = pack.ginv * pack.schouten;  // P^i_j
  pack.weyl = STen4<double>(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double kn = 0.0;
          if (i == k) kn += pack.schouten(j, l);
          if (i == l) kn -= pack.schouten(j, k);
          kn += p_mixed(i, k) * pack.g(j, l) - p_mixed(i, l) * pack.g(j, k);
          pack.weyl(i, j, k, l) = pack.riemann(i, j, k, l) - kn;
        }

  // Cotton: C_{ijk} = nabla_j P_{ki} - nabla_k P_{ji}
  pack.cotton = STen3<double>(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double njp = cj.schouten(k, i).grad(j);  // d_j P_{ki}
        double nkp = cj.schouten(j, i).grad(k);  // d_k P_{ji}
        for (int m = 0; m < n; ++m) {
          njp -= pack.gamma(m, j, k) * pack.schouten(m, i).value();
          njp -= pack.gamma(m, j, i) * pack.schouten(k, m).value();
          nkp -= pack.gamma(m, k, j) * pack.schouten(m, i).value();
          nkp -= pack.gamma(m, k, i) * pack.schouten(j, m).value();
        }
        pack.cotton(i, j, k) = njp - nkp;
      }

  return pack;
}

PackResiduals pack_residuals(const CurvaturePack& pack) {
  const int n = static_cast<int>(pack.g.rows());
  PackResiduals r;
  r.ricci_symmetry = (pack.ricci - pack.ricci.transpose()).cwiseAbs().maxCoeff();

  // all traces of Weyl (lower the first index with g)
  STen4<double> wl(n, n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) acc += pack.g(i, m) * pack.weyl(m, j, k, l);
          wl(i, j, k, l) = acc;
        }
  double wt = 0.0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double t13 = 0.0, t14 = 0.0, t12 = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          t13 += pack.ginv(a, b) * wl(a, j, b, l);
          t14 += pack.ginv(a, b) * wl(a, j, l, b);
          t12 += pack.ginv(a, b) * wl(a, b, j, l);
        }
      wt = std::max({wt, std::abs(t13), std::abs(t14), std::abs(t12)});
    }
  r.weyl_trace = wt;

  double bianchi = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          bianchi = std::max(bianchi, std::abs(pack.riemann(i, j, k, l) +
                                               pack.riemann(i, k, l, j) +
                                               pack.riemann(i, l, j, k)));
  r.first_bianchi = bianchi;
  return r;
}

MetricChart conformal_rescale(const MetricChart& chart, const ScalarField& upsilon,
                              const std::string& new_label) {
  ChartBuilder builder(new_label, chart.sig(), chart.domain());
  // Compose level-by-level on the stored evaluators.
  auto rescaled = [base = chart, ups = upsilon](const auto& x) {
    using S = typename std::decay_t<decltype(x[0])>;
    if constexpr (std::is_same_v<S, double>) {
      const int n = static_cast<int>(x.size());
      Eigen::VectorXd xe(n);
      for (int i = 0; i < n; ++i) xe(i) = x[i];
      SMat<double> g = from_eigen(base.metric(xe));
      const double f = std::exp(2.0 * ups(xe));
      for (auto& e : g.a) e = e * f;
      return g;
    } else if constexpr (std::is_same_v<S, Jet>) {
      SMat<Jet> g = base.metric_jets(x);
      const Jet f = exp(Jet(2.0) * ups.jet(x));
      for (auto& e : g.a) e = e * f;
      return g;
    } else {
      SMat<JetJet> g = base.metric_jetjets(x);
      const JetJet f = exp(JetJet(2.0) * ups.jetjet(x));
      for (auto& e : g.a) e = e * f;
      return g;
    }
  };
  if (chart.has_third_derivatives()) return builder.build(rescaled);
  return builder.build_shallow(rescaled);
}

}  // namespace tractor

#include "tractor/lie_core.hpp"

#include <cmath>
#include <stdexcept>

namespace tractor {

namespace {

bool block_diagonal(const Eigen::MatrixXd& A, int n, double tol) {
  // nonzero only in (0,0), the middle n x n block, and (n+1,n+1)
  const int d = n + 2;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const bool corner = (i == 0 && j == 0) || (i == d - 1 && j == d - 1);
      const bool middle = (i >= 1 && i <= n && j >= 1 && j <= n);
      if (!corner && !middle && std::abs(A(i, j)) > tol) return false;
    }
  }
  return true;
}

bool fixes_line(const Eigen::MatrixXd& A, int n, double tol) {
  for (int i = 1; i < n + 2; ++i)
    if (std::abs(A(i, 0)) > tol) return false;
  return std::abs(A(0, 0)) > tol;
}

}  // namespace

QuadForm quadratic_form(Signature sig) {
  if (sig.p < 0 || sig.q < 0) throw std::invalid_argument("quadratic_form: negative signature");
  if (sig.n() < 1) throw std::invalid_argument("quadratic_form: p+q >= 1 required");
  const int n = sig.n();
  QuadForm q;
  q.sig = sig;
  q.h_block = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) q.h_block(i, i) = (i < sig.p) ? 1.0 : -1.0;
  q.J = Eigen::MatrixXd::Zero(n + 2, n + 2);
  q.J(0, n + 1) = 1.0;
  q.J(n + 1, 0) = 1.0;
  q.J.block(1, 1, n, n) = q.h_block;
  return q;
}

const char* variant_name(GroupVariant v) {
  switch (v) {
    case GroupVariant::O: return "O";
    case GroupVariant::SO: return "SO";
    case GroupVariant::PRay: return "P_ray";
    case GroupVariant::PLine: return "P_line";
    case GroupVariant::SPRay: return "SP_ray";
    case GroupVariant::SPLine: return "SP_line";
    case GroupVariant::P0Ray: return "P0_ray";
    case GroupVariant::P0Line: return "P0_line";
    case GroupVariant::SP0Ray: return "SP0_ray";
    case GroupVariant::SP0Line: return "SP0_line";
  }
  return "?";
}

GroupVariant variant_from_name(const std::string& name) {
  for (GroupVariant v :
       {GroupVariant::O, GroupVariant::SO, GroupVariant::PRay, GroupVariant::PLine,
        GroupVariant::SPRay, GroupVariant::SPLine, GroupVariant::P0Ray, GroupVariant::P0Line,
        GroupVariant::SP0Ray, GroupVariant::SP0Line}) {
    if (name == variant_name(v)) return v;
  }
  throw std::invalid_argument("unknown group variant: " + name);
}

bool membership(const QuadForm& q, const Eigen::MatrixXd& A, GroupVariant variant,
                MembershipTolerances tol) {
  const int n = q.sig.n();
  const int d = n + 2;
  if (A.rows() != d || A.cols() != d)
    throw std::invalid_argument("membership: matrix size mismatch with signature");
  if ((A.transpose() * q.J * A - q.J).norm() >= tol.quadratic) return false;

  const double det = A.determinant();
  switch (variant) {
    case GroupVariant::O:
      return true;
    case GroupVariant::SO:
      return std::abs(det - 1.0) < tol.determinant;
    case GroupVariant::PLine:
      return fixes_line(A, n, tol.quadratic);
    case GroupVariant::PRay:
      return fixes_line(A, n, tol.quadratic) && A(0, 0) > 0.0;
    case GroupVariant::SPLine:
      return fixes_line(A, n, tol.quadratic) && std::abs(det - 1.0) < tol.determinant;
    case GroupVariant::SPRay:
      return fixes_line(A, n, tol.quadratic) && A(0, 0) > 0.0 &&
             std::abs(det - 1.0) < tol.determinant;
    case GroupVariant::P0Line:
      return block_diagonal(A, n, tol.quadratic);
    case GroupVariant::P0Ray:
      return block_diagonal(A, n, tol.quadratic) && A(0, 0) > 0.0;
    case GroupVariant::SP0Line:
      return block_diagonal(A, n, tol.quadratic) && std::abs(det - 1.0) < tol.determinant;
    case GroupVariant::SP0Ray:
      return block_diagonal(A, n, tol.quadratic) && A(0, 0) > 0.0 &&
             std::abs(det - 1.0) < tol.determinant;
  }
  return false;
}

bool GroupElement::has(GroupVariant v) const {
  for (auto t : tags)
    if (t == v) return true;
  return false;
}

GroupElement make_group_element(const QuadForm& q, const Eigen::MatrixXd& A,
                                MembershipTolerances tol) {
  if (!membership(q, A, GroupVariant::O, tol))
    throw std::invalid_argument("make_group_element: matrix does not preserve J");
  GroupElement g;
  g.A = A;
  for (GroupVariant v :
       {GroupVariant::O, GroupVariant::SO, GroupVariant::PRay, GroupVariant::PLine,
        GroupVariant::SPRay, GroupVariant::SPLine, GroupVariant::P0Ray, GroupVariant::P0Line,
        GroupVariant::SP0Ray, GroupVariant::SP0Line}) {
    if (membership(q, A, v, tol)) g.tags.push_back(v);
  }
  return g;
}

std::array<Eigen::MatrixXd, 3> grade_decompose(const QuadForm& q, const Eigen::MatrixXd& Z,
                                               double tol) {
  const int n = q.sig.n();
  const int d = n + 2;
  if (Z.rows() != d || Z.cols() != d)
    throw std::invalid_argument("grade_decompose: matrix size mismatch");
  if ((Z.transpose() * q.J + q.J * Z).norm() >= std::max(tol, 1e-9 * (1.0 + Z.norm())))
    throw std::invalid_argument("grade_decompose: input not in so(J)");

  Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd z0 = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(d, d);
  m1.block(1, 0, n, 1) = Z.block(1, 0, n, 1);
  m1.block(d - 1, 1, 1, n) = Z.block(d - 1, 1, 1, n);
  p1.block(0, 1, 1, n) = Z.block(0, 1, 1, n);
  p1.block(1, d - 1, n, 1) = Z.block(1, d - 1, n, 1);
  z0(0, 0) = Z(0, 0);
  z0(d - 1, d - 1) = Z(d - 1, d - 1);
  z0.block(1, 1, n, n) = Z.block(1, 1, n, n);
  return {m1, z0, p1};
}

AlgebraElement make_algebra_element(const QuadForm& q, const Eigen::MatrixXd& Z, double tol) {
  auto parts = grade_decompose(q, Z, tol);
  return AlgebraElement{Z, parts[0], parts[1], parts[2]};
}

Eigen::MatrixXd g_minus(const QuadForm& q, const Eigen::VectorXd& x) {
  const int n = q.sig.n();
  if (x.size() != n) throw std::invalid_argument("g_minus: data size mismatch");
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n + 2, n + 2);
  Z.block(1, 0, n, 1) = x;
  Z.block(n + 1, 1, 1, n) = -(q.h_block * x).transpose();
  return Z;
}

Eigen::MatrixXd g_plus(const QuadForm& q, const Eigen::VectorXd& y) {
  const int n = q.sig.n();
  if (y.size() != n) throw std::invalid_argument("g_plus: data size mismatch");
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n + 2, n + 2);
  Z.block(0, 1, 1, n) = y.transpose();
  Z.block(1, n + 1, n, 1) = -(q.h_block * y);  // h^{-1} = h for the diagonal block
  return Z;
}

Eigen::MatrixXd g_zero(const QuadForm& q, double a, const Eigen::MatrixXd& m_skew) {
  const int n = q.sig.n();
  if ((q.h_block * m_skew + m_skew.transpose() * q.h_block).norm() > 1e-10)
    throw std::invalid_argument("g_zero: middle block not in so(h)");
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n + 2, n + 2);
  Z(0, 0) = a;
  Z(n + 1, n + 1) = -a;
  Z.block(1, 1, n, n) = m_skew;
  return Z;
}

Eigen::VectorXd g_minus_data(const QuadForm& q, const Eigen::MatrixXd& Zm1) {
  return Zm1.block(1, 0, q.sig.n(), 1);
}

Eigen::MatrixXd exp_nilpotent(const Eigen::MatrixXd& Z) {
  const Eigen::MatrixXd Z2 = Z * Z;
  if ((Z2 * Z).norm() > 1e-12 * (1.0 + Z.norm()))
    throw std::invalid_argument("exp_nilpotent: matrix not nilpotent of order <= 3");
  return Eigen::MatrixXd::Identity(Z.rows(), Z.cols()) + Z + 0.5 * Z2;
}

Eigen::MatrixXd ad(const Eigen::MatrixXd& p, const Eigen::MatrixXd& Z) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(p);
  if (!lu.isInvertible()) throw std::invalid_argument("ad: non-invertible group element");
  return p * Z * lu.inverse();
}

Eigen::MatrixXd det_twist(const QuadForm& q, const Eigen::MatrixXd& A) {
  if (q.sig.n() % 2 == 0)
    throw std::invalid_argument("det_twist: defined only for odd n (image must land in SP_line)");
  if (!membership(q, A, GroupVariant::PRay))
    throw std::invalid_argument("det_twist: input not in P_ray");
  return A.determinant() * A;
}

const char* rep_name(RepKind k) {
  return k == RepKind::Standard ? "standard" : "det_twisted_standard";
}

RepKind rep_from_name(const std::string& name) {
  if (name == "standard") return RepKind::Standard;
  if (name == "det_twisted_standard") return RepKind::DetTwistedStandard;
  throw std::invalid_argument("unknown representation: " + name);
}

Representation make_representation(Signature sig, RepKind kind) {
  return Representation{kind, sig.tractor_dim()};
}

Eigen::MatrixXd rep_matrix_group(const Representation& rep, const Eigen::MatrixXd& A) {
  if (A.rows() != rep.dimension || A.cols() != rep.dimension)
    throw std::invalid_argument("rep_matrix_group: dimension mismatch");
  if (rep.kind == RepKind::DetTwistedStandard) return A.determinant() * A;
  return A;
}

Eigen::MatrixXd rep_matrix_algebra(const Representation& rep, const Eigen::MatrixXd& Z) {
  if (Z.rows() != rep.dimension || Z.cols() != rep.dimension)
    throw std::invalid_argument("rep_matrix_algebra: dimension mismatch");
  return Z;  // tr Z = 0 on so(J), so the twist does not act infinitesimally
}

Eigen::VectorXd rep_apply_group(const Representation& rep, const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& v) {
  if (v.size() != rep.dimension) throw std::invalid_argument("rep_apply_group: vector length");
  return rep_matrix_group(rep, A) * v;
}

Eigen::VectorXd rep_apply_algebra(const Representation& rep, const Eigen::MatrixXd& Z,
                                  const Eigen::VectorXd& v) {
  if (v.size() != rep.dimension) throw std::invalid_argument("rep_apply_algebra: vector length");
  return rep_matrix_algebra(rep, Z) * v;
}

namespace {

// Planar h-rotation in coordinates (i,j) of the middle block: circular when
// h_ii h_jj > 0, hyperbolic otherwise.
Eigen::MatrixXd planar_rotation(const QuadForm& q, int i, int j, double angle) {
  const int n = q.sig.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  const double same = q.h_block(i, i) * q.h_block(j, j);
  if (same > 0) {
    m(i, i) = std::cos(angle);
    m(j, j) = std::cos(angle);
    m(i, j) = -std::sin(angle);
    m(j, i) = std::sin(angle);
  } else {
    m(i, i) = std::cosh(angle);
    m(j, j) = std::cosh(angle);
    m(i, j) = std::sinh(angle);
    m(j, i) = std::sinh(angle);
  }
  return m;
}

Eigen::MatrixXd sample_middle(const QuadForm& q, std::mt19937_64& rng) {
  const int n = q.sig.n();
  std::uniform_real_distribution<double> ang(-0.8, 0.8);
  std::uniform_int_distribution<int> idx(0, n - 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  if (n >= 2) {
    const int rots = 3;
    for (int r = 0; r < rots; ++r) {
      int i = idx(rng), j = idx(rng);
      if (i == j) j = (j + 1) % n;
      m = m * planar_rotation(q, i, j, ang(rng));
    }
  }
  // reflections reach the other components of O(p,q)
  std::bernoulli_distribution flip(0.5);
  Eigen::MatrixXd refl = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    if (flip(rng)) refl(i, i) = -1.0;
  }
  return m * refl;
}

}  // namespace

Eigen::MatrixXd sample_group(const QuadForm& q, GroupVariant variant, std::mt19937_64& rng) {
  const int n = q.sig.n();
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  std::bernoulli_distribution coin(0.5);

  const bool levi_only = variant == GroupVariant::P0Ray || variant == GroupVariant::P0Line ||
                         variant == GroupVariant::SP0Ray || variant == GroupVariant::SP0Line;
  const bool parabolic = levi_only || variant == GroupVariant::PRay ||
                         variant == GroupVariant::PLine || variant == GroupVariant::SPRay ||
                         variant == GroupVariant::SPLine;
  const bool ray = variant == GroupVariant::PRay || variant == GroupVariant::SPRay ||
                   variant == GroupVariant::P0Ray || variant == GroupVariant::SP0Ray;
  const bool special = variant == GroupVariant::SO || variant == GroupVariant::SPRay ||
                       variant == GroupVariant::SPLine || variant == GroupVariant::SP0Ray ||
                       variant == GroupVariant::SP0Line;

  double lambda = std::exp(unif(rng));
  if (!ray && parabolic && coin(rng)) lambda = -lambda;

  Eigen::MatrixXd middle = sample_middle(q, rng);
  if (special) {
    // det A = lambda * det(middle) * lambda^{-1} = det(middle); force +1
    if (middle.determinant() < 0) {
      Eigen::MatrixXd refl = Eigen::MatrixXd::Identity(n, n);
      refl(0, 0) = -1.0;
      middle = middle * refl;
    }
  }

  Eigen::MatrixXd levi = Eigen::MatrixXd::Zero(n + 2, n + 2);
  levi(0, 0) = lambda;
  levi(n + 1, n + 1) = 1.0 / lambda;
  levi.block(1, 1, n, n) = middle;

  Eigen::MatrixXd A = levi;
  if (!levi_only) {
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = unif(rng);
    A = exp_nilpotent(g_plus(q, y)) * A;
    if (!parabolic) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x(i) = unif(rng);
      A = exp_nilpotent(g_minus(q, x)) * A;
    }
  }
  return A;
}

Eigen::MatrixXd sample_algebra(const QuadForm& q, std::mt19937_64& rng) {
  const int n = q.sig.n();
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = unif(rng);
    y(i) = unif(rng);
  }
  // so(h): m = h^{-1} s with s skew gives h m + m^T h = s^T + s ... use
  // m = h * s with s skew: h m + m^T h = h h s + s^T h h = s + s^T = 0.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = unif(rng);
      s(i, j) = v;
      s(j, i) = -v;
    }
  const Eigen::MatrixXd m = q.h_block * s;
  return g_minus(q, x) + g_zero(q, unif(rng), m) + g_plus(q, y);
}

}  // namespace tractor

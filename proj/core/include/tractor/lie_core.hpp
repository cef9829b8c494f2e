#pragma once

#include <Eigen/Dense>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "tractor/signature.hpp"

namespace tractor {

/// Defining quadratic form of so(p+1,q+1) in the parabolic basis
/// (e_0, e_1..e_n, e_inf): 2 x^0 x^inf + h_ij x^i x^j with
/// h = diag(+1 x p, -1 x q).
struct QuadForm {
  Signature sig;
  Eigen::MatrixXd J;        // (n+2) x (n+2)
  Eigen::MatrixXd h_block;  // n x n
};

QuadForm quadratic_form(Signature sig);

/// Subgroup variants of O(p+1,q+1).  Ray/line variants stabilize the null ray
/// / line through e_0; S-variants additionally have det = 1; the P0 variants
/// are the block-diagonal Levi factors.
enum class GroupVariant {
  O,
  SO,
  PRay,
  PLine,
  SPRay,
  SPLine,
  P0Ray,
  P0Line,
  SP0Ray,
  SP0Line,
};

const char* variant_name(GroupVariant v);
GroupVariant variant_from_name(const std::string& name);

struct MembershipTolerances {
  double quadratic = 1e-10;  // Frobenius gate on A^T J A - J
  double determinant = 1e-8;
};

bool membership(const QuadForm& q, const Eigen::MatrixXd& A, GroupVariant variant,
                MembershipTolerances tol = {});

/// Element of O(J) with its recorded memberships.
struct GroupElement {
  Eigen::MatrixXd A;
  std::vector<GroupVariant> tags;

  bool has(GroupVariant v) const;
};

/// Certifies A against O(J) and records every variant tag that holds.
GroupElement make_group_element(const QuadForm& q, const Eigen::MatrixXd& A,
                                MembershipTolerances tol = {});

/// Element of so(J) with its |1|-grading parts.
struct AlgebraElement {
  Eigen::MatrixXd Z;
  Eigen::MatrixXd Zm1, Z0, Zp1;  // grade -1 / 0 / +1 blocks
};

AlgebraElement make_algebra_element(const QuadForm& q, const Eigen::MatrixXd& Z,
                                    double tol = 1e-12);

/// Grade split by block pattern; throws when Z is not in so(J).
std::array<Eigen::MatrixXd, 3> grade_decompose(const QuadForm& q, const Eigen::MatrixXd& Z,
                                               double tol = 1e-12);

/// Grade -1 element with data x (column of the middle block).
Eigen::MatrixXd g_minus(const QuadForm& q, const Eigen::VectorXd& x);
/// Grade +1 element with data y (row 0 of the middle block).
Eigen::MatrixXd g_plus(const QuadForm& q, const Eigen::VectorXd& y);
/// Grade 0 element diag(a, m, -a) with m in so(h).
Eigen::MatrixXd g_zero(const QuadForm& q, double a, const Eigen::MatrixXd& m_skew);
/// Recovers x from a grade -1 matrix.
Eigen::VectorXd g_minus_data(const QuadForm& q, const Eigen::MatrixXd& Zm1);

/// Nilpotent exponential, exact: exp(Z) = I + Z + Z^2/2 for grade +-1.
Eigen::MatrixXd exp_nilpotent(const Eigen::MatrixXd& Z);

/// Adjoint action p Z p^{-1}.
Eigen::MatrixXd ad(const Eigen::MatrixXd& p, const Eigen::MatrixXd& Z);

/// A -> det(A) A.  Defined on P^ray for odd n, landing in SP^line.
Eigen::MatrixXd det_twist(const QuadForm& q, const Eigen::MatrixXd& A);

enum class RepKind { Standard, DetTwistedStandard };

const char* rep_name(RepKind k);
RepKind rep_from_name(const std::string& name);

/// (g,P)-representation on R^{n+2}: the standard one or its det-twist.
struct Representation {
  RepKind kind = RepKind::Standard;
  int dimension = 0;
};

Representation make_representation(Signature sig, RepKind kind);

/// Group action: standard A v, det-twisted det(A) A v.
Eigen::VectorXd rep_apply_group(const Representation& rep, const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& v);
/// Algebra action: Z v for both kinds (the det-twist is trivial infinitesimally).
Eigen::VectorXd rep_apply_algebra(const Representation& rep, const Eigen::MatrixXd& Z,
                                  const Eigen::VectorXd& v);
/// Matrix of the group action.
Eigen::MatrixXd rep_matrix_group(const Representation& rep, const Eigen::MatrixXd& A);
/// Matrix of the algebra action.
Eigen::MatrixXd rep_matrix_algebra(const Representation& rep, const Eigen::MatrixXd& Z);

/// Seed-controlled samplers.  Group elements come from
/// exp(g_{-1}) . exp(g_{+1}) . Levi for the full group, dropping the g_{-1}
/// factor for parabolic variants and both nilpotent factors for Levi
/// variants.  Levi middle blocks are products of planar h-rotations and
/// coordinate reflections, so no general matrix exponential is involved.
Eigen::MatrixXd sample_group(const QuadForm& q, GroupVariant variant, std::mt19937_64& rng);
Eigen::MatrixXd sample_algebra(const QuadForm& q, std::mt19937_64& rng);

}  // namespace tractor

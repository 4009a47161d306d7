#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "heatchar/errors.hpp"

namespace heatchar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Index convention: 1-based in all user-facing documentation, 0-based
// internally.  Tangent directions are 0..n-1, normal directions n..d-1.
// B and A (the normal isometry block) use block-local indices 0..m-1,
// where local i corresponds to global n+i.

/// Dense rank-3 array of doubles with a common dimension per index.
class Array3 {
 public:
  Array3() : d_(0) {}
  explicit Array3(int d, double fill = 0.0) : d_(d), v_(std::size_t(d) * d * d, fill) {}

  int dim() const { return d_; }
  double& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }

 private:
  std::size_t idx(int i, int j, int k) const {
    return (std::size_t(i) * d_ + j) * d_ + k;
  }
  int d_;
  std::vector<double> v_;
};

/// Dense rank-4 array of doubles with a common dimension per index.
class Array4 {
 public:
  Array4() : d_(0) {}
  explicit Array4(int d, double fill = 0.0)
      : d_(d), v_(std::size_t(d) * d * d * d, fill) {}

  int dim() const { return d_; }
  double& operator()(int a, int b, int c, int e) { return v_[idx(a, b, c, e)]; }
  double operator()(int a, int b, int c, int e) const { return v_[idx(a, b, c, e)]; }

 private:
  std::size_t idx(int a, int b, int c, int e) const {
    return ((std::size_t(a) * d_ + b) * d_ + c) * d_ + e;
  }
  int d_;
  std::vector<double> v_;
};

/// Generalized Kronecker symbol for two index tuples of equal length.
/// Returns +1/-1 when `lower` is an even/odd permutation of `upper`
/// (all entries distinct) and 0 otherwise.
int gen_kronecker(std::span<const int> upper, std::span<const int> lower);

/// tr[wedge^p M]: sum of all p x p principal minors of M, equivalently the
/// p-th elementary symmetric function of the eigenvalues.  Refused for
/// p > 12 or dim > 16 (combinatorial blow-up; this is a desk-scale tool).
double wedge_trace(const Matrix& M, int p);

/// Cross-check route for wedge_trace via the characteristic polynomial
/// (Faddeev-LeVerrier recursion).
double wedge_trace_charpoly(const Matrix& M, int p);

/// Literal evaluation of the block-form exterior trace: for
/// Atilde = blockdiag(I_n, A^t), sums over the normal tuple length p1,
/// ordered normal index tuples and epsilon-weighted products of A entries.
/// Tangent slots carry identity factors, contributing the C(n, p - p1)
/// fillings per normal tuple.  Must equal wedge_trace(Atilde, p).
double wedge_trace_kronecker(const Matrix& Atilde, int n, int p);

/// Riemann curvature components at a point in an orthonormal adapted frame,
/// validated against the algebraic symmetries:
///   antisymmetry  R_abce = -R_bace = -R_abec,
///   pair symmetry R_abce = R_ceab,
///   first Bianchi R_abce + R_bcae + R_cabe = 0.
class CurvatureTensor {
 public:
  /// Validates all three symmetry families within `tol` before accepting.
  static CurvatureTensor validated(Array4 components, double tol = 1e-12);
  static CurvatureTensor zero(int d);
  /// Unit two-sphere: R_1212 = 1 completed by symmetry.
  static CurvatureTensor sphere2();

  int dim() const { return comp_.dim(); }
  double operator()(int a, int b, int c, int e) const { return comp_(a, b, c, e); }

  /// tau_0 = sum_{a,b} R_abab.
  double scalar_curvature() const;
  /// rho_ab = sum_c R_acbc.
  Matrix ricci() const;

 private:
  explicit CurvatureTensor(Array4 comp) : comp_(std::move(comp)) {}
  Array4 comp_;
};

/// Contorsion from the torsion components, Q_ijk = (T_ijk + T_kij + T_kji)/2.
/// Requires T skew in its first two slots; the result is skew in its last two.
Array3 contorsion(const Array3& Tbar, double tol = 1e-12);

/// Torsion data of a metric connection at the fixed point: the torsion
/// components Tbar (skew in the first two slots), the derived contorsion Q,
/// and the first covariant derivatives dQ(i,j,k,l) = Q_ijk,l at the point.
class TorsionData {
 public:
  TorsionData(Array3 Tbar, Array4 dQ, double tol = 1e-12);
  /// Constant torsion: dQ = 0.
  explicit TorsionData(Array3 Tbar, double tol = 1e-12);

  int dim() const { return Tbar_.dim(); }
  const Array3& Tbar() const { return Tbar_; }
  const Array3& Q() const { return Q_; }
  const Array4& dQ() const { return dQ_; }

 private:
  Array3 Tbar_;
  Array3 Q_;
  Array4 dQ_;
};

/// The isometry differential on the normal fiber: A orthogonal, with
/// B = (I-A)^{-1} obtained by a direct linear solve.  Rejected when I - A
/// is singular (the isometry must have no unit eigenvalue on the normal
/// bundle).
class NormalIsometry {
 public:
  static NormalIsometry from_A(const Matrix& A, double tol_orth = 1e-10);

  int m() const { return int(A_.rows()); }
  const Matrix& A() const { return A_; }
  const Matrix& B() const { return B_; }
  double detB_abs() const { return detB_abs_; }

 private:
  NormalIsometry(Matrix A, Matrix B, double detB_abs)
      : A_(std::move(A)), B_(std::move(B)), detB_abs_(detB_abs) {}
  Matrix A_;
  Matrix B_;
  double detB_abs_;
};

/// All pointwise data of an isometry at a fixed point: ambient dimension d,
/// fixed-submanifold dimension n, form degree p, the normal isometry of size
/// d-n, the curvature tensor, and optional torsion data.
class FixedPointGerm {
 public:
  FixedPointGerm(int d, int n, int p, NormalIsometry iso, CurvatureTensor R,
                 std::optional<TorsionData> torsion = std::nullopt);

  int d() const { return d_; }
  int n() const { return n_; }
  int m() const { return d_ - n_; }
  int p() const { return p_; }
  const NormalIsometry& iso() const { return iso_; }
  const CurvatureTensor& R() const { return R_; }
  const std::optional<TorsionData>& torsion() const { return torsion_; }

  /// blockdiag(I_n, A^t), the matrix of the isometry action on the coframe.
  Matrix Atilde() const;

 private:
  int d_, n_, p_;
  NormalIsometry iso_;
  CurvatureTensor R_;
  std::optional<TorsionData> torsion_;
};

/// 2x2 rotation by theta.
Matrix rotation2(double theta);

/// Block-diagonal matrix of 2x2 rotations, one block per angle.
Matrix block_rotation(std::span<const double> angles);

namespace detail {
double max_skew12_defect(const Array3& T);
double max_skew23_defect(const Array3& T);
long binomial(int n, int k);
/// Visits all ascending k-subsets of {0,..,n-1}.
void for_each_subset(int n, int k, const std::function<void(std::span<const int>)>& fn);
}  // namespace detail

}  // namespace heatchar

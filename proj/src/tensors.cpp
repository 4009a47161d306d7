#include "heatchar/tensors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heatchar {

namespace detail {

double max_skew12_defect(const Array3& T) {
  const int d = T.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        worst = std::max(worst, std::abs(T(i, j, k) + T(j, i, k)));
  return worst;
}

double max_skew23_defect(const Array3& T) {
  const int d = T.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        worst = std::max(worst, std::abs(T(i, j, k) + T(i, k, j)));
  return worst;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void for_each_subset(int n, int k, const std::function<void(std::span<const int>)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

int gen_kronecker(std::span<const int> upper, std::span<const int> lower) {
  if (upper.size() != lower.size())
    throw std::invalid_argument("gen_kronecker: index lists of unequal length");
  const int q = int(upper.size());
  // Repeated entries in either tuple kill the symbol.
  std::vector<bool> used(q, false);
  std::vector<int> perm(q);
  for (int i = 0; i < q; ++i) {
    int pos = -1;
    for (int j = 0; j < q; ++j) {
      if (!used[j] && upper[j] == lower[i]) {
        pos = j;
        break;
      }
    }
    if (pos < 0) return 0;
    // upper must not contain duplicates either
    for (int j = 0; j < q; ++j)
      if (j != pos && upper[j] == upper[pos]) return 0;
    used[pos] = true;
    perm[i] = pos;
  }
  // parity via cycle decomposition
  std::vector<bool> seen(q, false);
  int sign = 1;
  for (int i = 0; i < q; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = perm[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

static void check_wedge_args(const Matrix& M, int p) {
  if (M.rows() != M.cols()) throw std::invalid_argument("wedge_trace: matrix not square");
  const int d = int(M.rows());
  if (p < 0 || p > d) throw std::invalid_argument("wedge_trace: degree out of range");
  if (p > 12 || d > 16)
    throw std::invalid_argument("wedge_trace: refused for p > 12 or dim > 16");
}

double wedge_trace(const Matrix& M, int p) {
  check_wedge_args(M, p);
  const int d = int(M.rows());
  if (p == 0) return 1.0;
  double total = 0.0;
  Matrix sub(p, p);
  detail::for_each_subset(d, p, [&](std::span<const int> S) {
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) sub(r, c) = M(S[r], S[c]);
    total += sub.determinant();
  });
  return total;
}

double wedge_trace_charpoly(const Matrix& M, int p) {
  check_wedge_args(M, p);
  const int d = int(M.rows());
  if (p == 0) return 1.0;
  // Faddeev-LeVerrier: N_1 = M, e_k = tr(N_k)/k, N_{k+1} = M (N_k - e_k I).
  Matrix N = M;
  double e = N.trace();
  for (int k = 2; k <= p; ++k) {
    N = M * (N - e * Matrix::Identity(d, d));
    e = N.trace() / k;
  }
  return e;
}

double wedge_trace_kronecker(const Matrix& Atilde, int n, int p) {
  if (Atilde.rows() != Atilde.cols())
    throw std::invalid_argument("wedge_trace_kronecker: matrix not square");
  const int d = int(Atilde.rows());
  if (n < 0 || n > d) throw std::invalid_argument("wedge_trace_kronecker: bad n");
  if (p < 0 || p > d) throw std::invalid_argument("wedge_trace_kronecker: degree out of range");
  const int m = d - n;
  const double tol = 1e-12;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const bool tangent_block = r < n && c < n;
      const bool normal_block = r >= n && c >= n;
      const double want = (tangent_block && r == c) ? 1.0 : 0.0;
      if (!normal_block && std::abs(Atilde(r, c) - want) > tol)
        throw std::invalid_argument("wedge_trace_kronecker: input is not blockdiag(I_n, A^t)");
    }
  // Normal block of Atilde is A^t.
  const Matrix A = Atilde.bottomRightCorner(m, m).transpose();

  double total = 0.0;
  for (int p1 = 0; p1 <= std::min(p, m); ++p1) {
    const long fillings = detail::binomial(n, p - p1);
    if (fillings == 0) continue;
    if (p1 == 0) {
      total += double(fillings);
      continue;
    }
    double block = 0.0;
    std::vector<int> ltuple(p1);
    detail::for_each_subset(m, p1, [&](std::span<const int> I) {
      // l indices range over the same normal set; the epsilon symbol kills
      // everything that is not a permutation of the i-tuple.
      std::function<void(int)> rec = [&](int slot) {
        if (slot == p1) {
          const int eps = gen_kronecker(ltuple, I);
          if (eps == 0) return;
          double prod = 1.0;
          for (int s = 0; s < p1; ++s) prod *= A(I[s], ltuple[s]);
          block += eps * prod;
          return;
        }
        for (int l = 0; l < m; ++l) {
          ltuple[slot] = l;
          rec(slot + 1);
        }
      };
      rec(0);
    });
    total += double(fillings) * block;
  }
  return total;
}

CurvatureTensor CurvatureTensor::validated(Array4 comp, double tol) {
  const int d = comp.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const double r = comp(a, b, c, e);
          if (std::abs(r + comp(b, a, c, e)) > tol)
            throw ValidationError("curvature: antisymmetry in first index pair violated");
          if (std::abs(r + comp(a, b, e, c)) > tol)
            throw ValidationError("curvature: antisymmetry in second index pair violated");
          if (std::abs(r - comp(c, e, a, b)) > tol)
            throw ValidationError("curvature: pair symmetry violated");
          if (std::abs(r + comp(b, c, a, e) + comp(c, a, b, e)) > tol)
            throw ValidationError("curvature: first Bianchi identity violated");
        }
  return CurvatureTensor(std::move(comp));
}

CurvatureTensor CurvatureTensor::zero(int d) { return CurvatureTensor(Array4(d)); }

CurvatureTensor CurvatureTensor::sphere2() {
  Array4 c(2);
  c(0, 1, 0, 1) = 1.0;
  c(1, 0, 0, 1) = -1.0;
  c(0, 1, 1, 0) = -1.0;
  c(1, 0, 1, 0) = 1.0;
  return CurvatureTensor(std::move(c));
}

double CurvatureTensor::scalar_curvature() const {
  const int d = dim();
  double tau = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) tau += comp_(a, b, a, b);
  return tau;
}

Matrix CurvatureTensor::ricci() const {
  const int d = dim();
  Matrix rho = Matrix::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) rho(a, b) += comp_(a, c, b, c);
  return rho;
}

Array3 contorsion(const Array3& Tbar, double tol) {
  if (detail::max_skew12_defect(Tbar) > tol)
    throw ValidationError("contorsion: torsion components not skew in the first two slots");
  const int d = Tbar.dim();
  Array3 Q(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        Q(i, j, k) = 0.5 * (Tbar(i, j, k) + Tbar(k, i, j) + Tbar(k, j, i));
  return Q;
}

TorsionData::TorsionData(Array3 Tbar, Array4 dQ, double tol)
    : Tbar_(std::move(Tbar)), Q_(contorsion(Tbar_, tol)), dQ_(std::move(dQ)) {
  if (dQ_.dim() != Tbar_.dim())
    throw ValidationError("torsion data: dQ dimension mismatch");
  // Q is pointwise skew in its last two slots, hence so is any derivative.
  const int d = dQ_.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          if (std::abs(dQ_(i, j, k, l) + dQ_(i, k, j, l)) > tol)
            throw ValidationError("torsion data: dQ not skew in the contorsion slots");
}

TorsionData::TorsionData(Array3 Tbar, double tol)
    : TorsionData(std::move(Tbar), Array4(Tbar.dim()), tol) {}

NormalIsometry NormalIsometry::from_A(const Matrix& A, double tol_orth) {
  if (A.rows() != A.cols()) throw ValidationError("normal isometry: A not square");
  const int m = int(A.rows());
  if (m == 0) throw ValidationError("normal isometry: empty normal fiber");
  const double orth = (A.transpose() * A - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
  if (orth > tol_orth) throw ValidationError("normal isometry: A is not orthogonal");
  const Matrix IA = Matrix::Identity(m, m) - A;
  Eigen::PartialPivLU<Matrix> lu(IA);
  const double det = lu.determinant();
  if (std::abs(det) < 1e-12)
    throw ValidationError("normal isometry: I - A is singular (unit eigenvalue on the normal bundle)");
  Matrix B = lu.solve(Matrix::Identity(m, m));
  const double resid = (IA * B - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
  if (resid > 1e-10) throw ValidationError("normal isometry: (I-A)B = I failed");
  return NormalIsometry(A, std::move(B), 1.0 / std::abs(det));
}

FixedPointGerm::FixedPointGerm(int d, int n, int p, NormalIsometry iso, CurvatureTensor R,
                               std::optional<TorsionData> torsion)
    : d_(d), n_(n), p_(p), iso_(std::move(iso)), R_(std::move(R)), torsion_(std::move(torsion)) {
  if (d_ < 1) throw ValidationError("germ: dimension must be positive");
  if (n_ < 0 || n_ >= d_) throw ValidationError("germ: need 0 <= n < d");
  if (p_ < 0 || p_ > d_) throw ValidationError("germ: form degree out of range");
  if (iso_.m() != d_ - n_) throw ValidationError("germ: normal isometry size is not d - n");
  if (R_.dim() != d_) throw ValidationError("germ: curvature dimension mismatch");
  if (torsion_ && torsion_->dim() != d_) throw ValidationError("germ: torsion dimension mismatch");
}

Matrix FixedPointGerm::Atilde() const {
  Matrix At = Matrix::Identity(d_, d_);
  At.bottomRightCorner(m(), m()) = iso_.A().transpose();
  return At;
}

Matrix rotation2(double theta) {
  Matrix R(2, 2);
  R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return R;
}

Matrix block_rotation(std::span<const double> angles) {
  const int m = int(angles.size()) * 2;
  Matrix R = Matrix::Zero(m, m);
  for (int b = 0; b < int(angles.size()); ++b)
    R.block(2 * b, 2 * b, 2, 2) = rotation2(angles[b]);
  return R;
}

}  // namespace heatchar

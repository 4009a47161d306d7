#include "heatchar/torsion.hpp"

#include <cmath>

namespace heatchar {

static const TorsionData& require_torsion(const FixedPointGerm& germ, const char* who) {
  if (!germ.torsion())
    throw std::invalid_argument(std::string(who) + ": germ carries no torsion data");
  return *germ.torsion();
}

// L(E_g) as a matrix on the coframe: entry (r,c) = Q_{g c r}.
static Matrix L_of(const Array3& Q, int g) {
  const int d = Q.dim();
  Matrix L(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) L(r, c) = Q(g, c, r);
  return L;
}

// Derivative of L(E_g) along the normal direction with global index h.
static Matrix dL_of(const Array4& dQ, int g, int h) {
  const int d = dQ.dim();
  Matrix L(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) L(r, c) = dQ(g, c, r, h);
  return L;
}

MatrixJet2 psibar_jet(const FixedPointGerm& germ) {
  const auto& tor = require_torsion(germ, "psibar_jet");
  const int d = germ.d();
  const int n = germ.n();
  const int m = germ.m();
  const Matrix& B = germ.iso().B();
  const auto& Q = tor.Q();
  const auto& dQ = tor.dQ();

  std::vector<Matrix> L(m), dL(m * m);  // dL[i*m+j] = dL(E_{n+j})/dc_i
  for (int a = 0; a < m; ++a) L[a] = L_of(Q, n + a);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) dL[i * m + j] = dL_of(dQ, n + j, n + i);

  MatrixJet2 psi = MatrixJet2::identity(d, m);
  for (int j = 0; j < m; ++j) psi.coeff_linear(j) += L[j];
  // dL terms mapped through B: coefficient of y_j y_k picks dL(E_j)/dc_i B_ik.
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      Matrix M = Matrix::Zero(d, d);
      for (int i = 0; i < m; ++i) M += dL[i * m + j] * B(i, k);
      psi.add_monomial(j, k, M);
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      psi.add_monomial(i, j, 0.5 * (L[i] * L[j]));
      psi.add_monomial(i, j, -0.5 * dL[i * m + j]);
    }
  return psi;
}

DerivativeTensors derivative_tensors_bar(const FixedPointGerm& germ) {
  const auto& tor = require_torsion(germ, "derivative_tensors_bar");
  const int d = germ.d();
  const int n = germ.n();
  const int m = germ.m();
  const Matrix At = germ.Atilde();
  const Matrix& B = germ.iso().B();
  const auto& Q = tor.Q();
  const auto& dQ = tor.dQ();

  DerivativeTensors dt;
  dt.d = d;
  dt.n = n;
  dt.W0 = At;
  dt.D1.resize(m);
  dt.D2.resize(m);
  const DerivativeTensors lc = derivative_tensors_lc(germ);
  for (int delta = 0; delta < m; ++delta) {
    dt.D1[delta] = -At * L_of(Q, n + delta);
    // Transport-factor second derivative: 2 dQ B + Q Q - dQ, entry (a,b).
    Matrix P(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc += 2.0 * dQ(n + delta, b, a, n + j) * B(j, delta);
        for (int c = 0; c < d; ++c) acc += Q(n + delta, c, a) * Q(n + delta, b, c);
        acc -= dQ(n + delta, b, a, n + delta);
        P(a, b) = acc;
      }
    dt.D2[delta] = lc.D2[delta] + At * P;
  }
  return dt;
}

double correction_Cbar(const FixedPointGerm& germ) {
  if (germ.p() == 0) return 0.0;
  return leibniz_box_trace(derivative_tensors_bar(germ), germ.p(), /*restrict_normal=*/false);
}

double b1_bar(const FixedPointGerm& germ) {
  const double wedge = wedge_trace(germ.Atilde(), germ.p());
  return germ.iso().detB_abs() * (correction_Cbar(germ) + wedge * curvature_bracket(germ));
}

// Trace of the contorsion over its first two slots, q_g = sum_i Q_iig, and
// its derivative array q'_{g,h} = sum_i Q_iig,h.
static Vector q_trace(const Array3& Q) {
  const int d = Q.dim();
  Vector q = Vector::Zero(d);
  for (int g = 0; g < d; ++g)
    for (int i = 0; i < d; ++i) q[g] += Q(i, i, g);
  return q;
}

static Matrix q_trace_deriv(const Array4& dQ) {
  const int d = dQ.dim();
  Matrix qd = Matrix::Zero(d, d);
  for (int g = 0; g < d; ++g)
    for (int h = 0; h < d; ++h)
      for (int i = 0; i < d; ++i) qd(g, h) += dQ(i, i, g, h);
  return qd;
}

double u1_hat_scalar(const FixedPointGerm& germ) {
  const auto& tor = require_torsion(germ, "u1_hat_scalar");
  const int d = germ.d();
  // t_j = T_kjk from the torsion components; T_kjk,j = -sum_ij Q_iij,j.
  double tsq = 0.0;
  for (int j = 0; j < d; ++j) {
    double tj = 0.0;
    for (int k = 0; k < d; ++k) tj += tor.Tbar()(k, j, k);
    tsq += tj * tj;
  }
  const Matrix qd = q_trace_deriv(tor.dQ());
  double div_t = 0.0;
  for (int j = 0; j < d; ++j) div_t -= qd(j, j);
  return germ.R().scalar_curvature() / 6.0 - 0.5 * div_t - 0.25 * tsq;
}

static void require_hat_degree(const FixedPointGerm& germ, const char* who) {
  if (germ.p() < 1)
    throw std::invalid_argument(std::string(who) +
                                ": second torsion variant undefined at p = 0");
}

MatrixJet2 psihat_jet(const FixedPointGerm& germ) {
  const auto& tor = require_torsion(germ, "psihat_jet");
  require_hat_degree(germ, "psihat_jet");
  const int d = germ.d();
  const int n = germ.n();
  const int m = germ.m();
  const double inv2p = 1.0 / (2.0 * germ.p());
  const Matrix& B = germ.iso().B();
  const Vector q = q_trace(tor.Q());
  const Matrix qd = q_trace_deriv(tor.dQ());
  const Matrix I = Matrix::Identity(d, d);

  MatrixJet2 psi = MatrixJet2::identity(d, m);
  for (int j = 0; j < m; ++j) psi.coeff_linear(j) += -inv2p * q[n + j] * I;
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) acc += -inv2p * qd(n + j, n + i) * B(i, k);
      psi.add_monomial(j, k, acc * I);
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      psi.add_monomial(i, j, 0.5 * inv2p * inv2p * q[n + i] * q[n + j] * I);
      psi.add_monomial(i, j, 0.5 * inv2p * qd(n + j, n + i) * I);
    }
  return psi;
}

DerivativeTensors derivative_tensors_hat(const FixedPointGerm& germ) {
  const auto& tor = require_torsion(germ, "derivative_tensors_hat");
  require_hat_degree(germ, "derivative_tensors_hat");
  const int d = germ.d();
  const int n = germ.n();
  const int m = germ.m();
  const int p = germ.p();
  const Matrix At = germ.Atilde();
  const Matrix& B = germ.iso().B();
  const Vector q = q_trace(tor.Q());
  const Matrix qd = q_trace_deriv(tor.dQ());

  DerivativeTensors dt;
  dt.d = d;
  dt.n = n;
  dt.W0 = At;
  dt.D1.resize(m);
  dt.D2.resize(m);
  const DerivativeTensors lc = derivative_tensors_lc(germ);
  for (int delta = 0; delta < m; ++delta) {
    dt.D1[delta] = (q[n + delta] / (2.0 * p)) * At;
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += -(1.0 / p) * qd(n + delta, n + j) * B(j, delta);
    s += q[n + delta] * q[n + delta] / (4.0 * p * p);
    s += qd(n + delta, n + delta) / (2.0 * p);
    dt.D2[delta] = lc.D2[delta] + s * At;
  }
  return dt;
}

double correction_Chat(const FixedPointGerm& germ) {
  require_torsion(germ, "correction_Chat");
  require_hat_degree(germ, "correction_Chat");
  return leibniz_box_trace(derivative_tensors_hat(germ), germ.p(), /*restrict_normal=*/false);
}

double correction_Chat_transcribed(const FixedPointGerm& germ) {
  const auto& tor = require_torsion(germ, "correction_Chat_transcribed");
  require_hat_degree(germ, "correction_Chat_transcribed");
  const int n = germ.n();
  const int m = germ.m();
  const int p = germ.p();
  const Matrix& B = germ.iso().B();
  const Vector q = q_trace(tor.Q());
  const Matrix qd = q_trace_deriv(tor.dQ());
  const double wedge = wedge_trace(germ.Atilde(), p);

  // Curvature single-derivative sum, identical to the torsion-free expansion
  // but over full tuples.
  const DerivativeTensors lc = derivative_tensors_lc(germ);
  const double curv_sum = leibniz_box_trace(lc, p, /*restrict_normal=*/false);

  double scalars = 0.0;
  const double pair_coeff = double(detail::binomial(p, 2)) / (2.0 * p * p);
  for (int delta = 0; delta < m; ++delta) {
    double s = pair_coeff * q[n + delta] * q[n + delta];
    for (int j = 0; j < m; ++j) s -= qd(n + delta, n + j) * B(j, delta);
    s += q[n + delta] * q[n + delta] / (4.0 * p);
    s += 0.5 * qd(n + delta, n + delta);
    scalars += s;
  }
  return curv_sum + scalars * wedge;
}

double b1_hat(const FixedPointGerm& germ) {
  const double wedge = wedge_trace(germ.Atilde(), germ.p());
  const double torsion_scalars =
      u1_hat_scalar(germ) - germ.R().scalar_curvature() / 6.0;
  return germ.iso().detB_abs() *
         (correction_Chat(germ) + wedge * (curvature_bracket(germ) + torsion_scalars));
}

MatrixJet2 wbar_jet(const FixedPointGerm& germ) {
  return w_jet(germ) * psibar_jet(germ);
}

MatrixJet2 what_jet(const FixedPointGerm& germ) {
  return w_jet(germ) * psihat_jet(germ);
}

}  // namespace heatchar

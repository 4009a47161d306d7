#include "heatchar/coefficients.hpp"

#include <cmath>

#include "heatchar/torsion.hpp"

namespace heatchar {

double b0(const FixedPointGerm& germ) {
  return germ.iso().detB_abs() * wedge_trace(germ.Atilde(), germ.p());
}

double curvature_bracket(const FixedPointGerm& germ) {
  const int d = germ.d();
  const int n = germ.n();
  const int m = germ.m();
  const auto& R = germ.R();
  const Matrix& B = germ.iso().B();

  double acc = R.scalar_curvature() / 6.0;
  const Matrix rho = R.ricci();
  for (int k = n; k < d; ++k) acc += rho(k, k) / 6.0;

  // Latin indices run over normal directions; B is block-local.
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int s = 0; s < m; ++s)
        for (int h = 0; h < m; ++h) {
          acc += (1.0 / 3.0) * R(n + i, n + k, n + s, n + h) * B(k, i) * B(h, s);
          acc += (1.0 / 3.0) * R(n + i, n + k, n + s, n + h) * B(k, s) * B(h, i);
        }
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      double ra = 0.0;
      for (int alpha = 0; alpha < n; ++alpha) ra += R(n + k, alpha, n + h, alpha);
      double bb = 0.0;
      for (int s = 0; s < m; ++s) bb += B(k, s) * B(h, s);
      acc -= ra * bb;
    }
  return acc;
}

// Second derivative of the parallel-transport factor along y_delta, restricted
// to the normal block: K_delta(eps,i) = sum_{r,s} (AB)_{r delta} B_{s delta}
// R_{(n+r)(n+s) eps i}.
static Matrix curvature_block(const FixedPointGerm& germ, int delta) {
  const int d = germ.d();
  const int n = germ.n();
  const int m = germ.m();
  const auto& R = germ.R();
  const Matrix AB = germ.iso().A() * germ.iso().B();
  const Matrix& B = germ.iso().B();
  Matrix K = Matrix::Zero(d, d);
  for (int eps = n; eps < d; ++eps)
    for (int i = n; i < d; ++i) {
      double acc = 0.0;
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
          acc += AB(r, delta) * B(s, delta) * R(n + r, n + s, eps, i);
      K(eps, i) = acc;
    }
  return K;
}

DerivativeTensors derivative_tensors_lc(const FixedPointGerm& germ) {
  DerivativeTensors dt;
  dt.d = germ.d();
  dt.n = germ.n();
  dt.W0 = germ.Atilde();
  const int m = germ.m();
  dt.D1.assign(m, Matrix::Zero(dt.d, dt.d));
  dt.D2.resize(m);
  for (int delta = 0; delta < m; ++delta) dt.D2[delta] = dt.W0 * curvature_block(germ, delta);
  return dt;
}

// Mixed minor over the index subset S: determinant of the p x p matrix whose
// column k is drawn from sources[k] at rows/cols S.
static double mixed_minor(std::span<const int> S, std::span<const Matrix* const> sources) {
  const int p = int(S.size());
  Matrix sub(p, p);
  for (int c = 0; c < p; ++c)
    for (int r = 0; r < p; ++r) sub(r, c) = (*sources[c])(S[r], S[c]);
  return sub.determinant();
}

static double leibniz_over_subsets(const DerivativeTensors& dt, int p, int index_lo,
                                   int index_hi) {
  const int span_len = index_hi - index_lo;
  if (p > span_len) return 0.0;
  double total = 0.0;
  std::vector<const Matrix*> sources(p);
  std::vector<int> S(p);
  detail::for_each_subset(span_len, p, [&](std::span<const int> local) {
    for (int i = 0; i < p; ++i) S[i] = index_lo + local[i];
    for (int delta = 0; delta < dt.m(); ++delta) {
      // pairs of first derivatives in the same direction
      for (int m1 = 0; m1 < p; ++m1) {
        for (int m2 = m1 + 1; m2 < p; ++m2) {
          for (int k = 0; k < p; ++k) sources[k] = &dt.W0;
          sources[m1] = &dt.D1[delta];
          sources[m2] = &dt.D1[delta];
          total += 2.0 * mixed_minor(S, sources);
        }
      }
      // one second derivative
      for (int m3 = 0; m3 < p; ++m3) {
        for (int k = 0; k < p; ++k) sources[k] = &dt.W0;
        sources[m3] = &dt.D2[delta];
        total += mixed_minor(S, sources);
      }
    }
  });
  return total;
}

double leibniz_box_trace(const DerivativeTensors& dt, int p, bool restrict_normal) {
  if (dt.W0.rows() != dt.d || dt.W0.cols() != dt.d)
    throw std::invalid_argument("leibniz_box_trace: W0 shape mismatch");
  if (int(dt.D1.size()) != dt.m() || int(dt.D2.size()) != dt.m())
    throw std::invalid_argument("leibniz_box_trace: derivative array count mismatch");
  for (const auto& M : dt.D1)
    if (M.rows() != dt.d || M.cols() != dt.d)
      throw std::invalid_argument("leibniz_box_trace: D1 shape mismatch");
  for (const auto& M : dt.D2)
    if (M.rows() != dt.d || M.cols() != dt.d)
      throw std::invalid_argument("leibniz_box_trace: D2 shape mismatch");
  if (p < 0 || p > dt.d) throw std::invalid_argument("leibniz_box_trace: degree out of range");
  if (p == 0) return 0.0;

  if (!restrict_normal) return leibniz_over_subsets(dt, p, 0, dt.d);

  // Tuples confined to normal indices; shorter tuples absorb the tangent
  // identity columns, C(n, p - p1) fillings each.
  double total = 0.0;
  for (int p1 = 1; p1 <= std::min(p, dt.m()); ++p1) {
    const long fillings = detail::binomial(dt.n, p - p1);
    if (fillings == 0) continue;
    total += double(fillings) * leibniz_over_subsets(dt, p1, dt.n, dt.d);
  }
  return total;
}

double correction_C(const FixedPointGerm& germ) {
  if (germ.p() == 0) return 0.0;
  return leibniz_box_trace(derivative_tensors_lc(germ), germ.p(), /*restrict_normal=*/true);
}

MatrixJet2 phi_jet(const FixedPointGerm& germ) {
  const int d = germ.d();
  const int n = germ.n();
  const int m = germ.m();
  const auto& R = germ.R();
  const Matrix AB = germ.iso().A() * germ.iso().B();
  const Matrix& B = germ.iso().B();

  MatrixJet2 phi(d, m);
  for (int k = 0; k < m; ++k)
    for (int q = 0; q < m; ++q) {
      Matrix Mkq = Matrix::Zero(d, d);
      for (int i = n; i < d; ++i)
        for (int j = n; j < d; ++j) {
          double acc = 0.0;
          for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) acc += AB(r, k) * B(s, q) * R(n + r, n + s, i, j);
          Mkq(i, j) = -0.5 * acc;
        }
      phi.add_monomial(k, q, Mkq);
    }
  return phi;
}

MatrixJet2 w_jet(const FixedPointGerm& germ) {
  const int d = germ.d();
  const int m = germ.m();
  const MatrixJet2 one_minus_phi = MatrixJet2::identity(d, m) - phi_jet(germ);
  return MatrixJet2::constant(germ.Atilde(), m) * one_minus_phi;
}

double box_y_of_jet(const MatrixJet2& jet, int p) {
  return box_y(wedge_trace_jet(jet, p));
}

double b1(const FixedPointGerm& germ) {
  const double wedge = wedge_trace(germ.Atilde(), germ.p());
  return germ.iso().detB_abs() * (correction_C(germ) + wedge * curvature_bracket(germ));
}

HeatCoefficientResult heat_coefficients(const FixedPointGerm& germ, Variant variant) {
  HeatCoefficientResult res;
  res.variant = variant;
  res.breakdown.detB_abs = germ.iso().detB_abs();
  res.breakdown.wedge = wedge_trace(germ.Atilde(), germ.p());
  res.breakdown.bracket = curvature_bracket(germ);
  res.b0 = res.breakdown.detB_abs * res.breakdown.wedge;

  switch (variant) {
    case Variant::levi_civita:
      res.breakdown.correction = correction_C(germ);
      res.b1 = res.breakdown.detB_abs *
               (res.breakdown.correction + res.breakdown.wedge * res.breakdown.bracket);
      break;
    case Variant::torsion_bar:
      res.breakdown.correction = correction_Cbar(germ);
      res.b1 = res.breakdown.detB_abs *
               (res.breakdown.correction + res.breakdown.wedge * res.breakdown.bracket);
      break;
    case Variant::torsion_hat: {
      res.breakdown.correction = correction_Chat(germ);
      res.breakdown.u1_torsion =
          u1_hat_scalar(germ) - germ.R().scalar_curvature() / 6.0;
      res.b1 = res.breakdown.detB_abs *
               (res.breakdown.correction +
                res.breakdown.wedge * (res.breakdown.bracket + res.breakdown.u1_torsion));
      break;
    }
  }
  return res;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::levi_civita: return "levi-civita";
    case Variant::torsion_bar: return "torsion-bar";
    case Variant::torsion_hat: return "torsion-hat";
  }
  return "?";
}

}  // namespace heatchar

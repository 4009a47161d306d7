#pragma once

#include "heatchar/jet.hpp"
#include "heatchar/tensors.hpp"

namespace heatchar {

/// First and second y-derivatives of the exterior-factor matrix W at y = 0,
/// one matrix per normal direction.  W0 is the value at 0 (always Atilde).
struct DerivativeTensors {
  int d = 0;
  int n = 0;
  Matrix W0;
  std::vector<Matrix> D1;  // d-n entries, d x d each
  std::vector<Matrix> D2;  // d-n entries, d x d each

  int m() const { return d - n; }
};

/// Generic second-derivative Leibniz expansion of box_y tr[wedge^p W] at 0:
/// over ordered index tuples, epsilon-weighted mixed minors with two factors
/// replaced by first derivatives (paired within one direction) plus one
/// factor replaced by a second derivative.  With restrict_normal the tuples
/// run over normal indices only (the varying factors have vanishing tangent
/// rows there), each weighted by the count of identity fillings from the
/// tangent block; otherwise tuples run over all of 1..d.
double leibniz_box_trace(const DerivativeTensors& dt, int p, bool restrict_normal);

/// b_0 = |det B| tr[wedge^p Atilde].
double b0(const FixedPointGerm& germ);

/// tau_0/6 + rho_kk/6 + (1/3) R_iksh B_ki B_hs + (1/3) R_ikth B_kt B_hi
///   - R_k.alpha.h.alpha B_ks B_hs,
/// Latin indices normal, Greek tangent, B block-local.
double curvature_bracket(const FixedPointGerm& germ);

/// The curvature second-derivative tensors of the torsion-free factor
/// W = Atilde (1 - Phi): D1 = 0 and
/// D2[delta](l,i) = A_r.lam B_lam.delta B_v.delta A_ml R_rvmi (normal indices).
DerivativeTensors derivative_tensors_lc(const FixedPointGerm& germ);

/// Correction term C of the torsion-free coefficient: the Leibniz engine on
/// the curvature derivative tensors, tuples restricted to normal indices.
double correction_C(const FixedPointGerm& germ);

/// Quadratic jet of Phi = blockdiag(0, Psi) with
/// Psi_ij = -(1/2) A_rl B_lk B_sq R_rsij y_k y_q.
MatrixJet2 phi_jet(const FixedPointGerm& germ);

/// Atilde (1 - Phi) truncated at degree 2: the oracle factor for C.
MatrixJet2 w_jet(const FixedPointGerm& germ);

/// box_y of tr[wedge^p jet]: the oracle path for the correction terms.
double box_y_of_jet(const MatrixJet2& jet, int p);

/// b_1 = |det B| { C + tr[wedge^p Atilde] (tau_0/6 + bracket) }.
double b1(const FixedPointGerm& germ);

enum class Variant { levi_civita, torsion_bar, torsion_hat };

struct HeatCoefficientResult {
  Variant variant;
  double b0 = 0.0;
  double b1 = 0.0;
  struct Breakdown {
    double detB_abs = 0.0;
    double wedge = 0.0;       // tr[wedge^p Atilde]
    double bracket = 0.0;     // curvature bracket including tau_0/6
    double correction = 0.0;  // C, Cbar or Chat
    double u1_torsion = 0.0;  // torsion part of u1_hat (hat variant only)
  } breakdown;
};

/// Evaluates b_0, b_1 and the named sub-terms for one operator variant.
/// The torsion variants require torsion data; the hat variant requires p >= 1.
HeatCoefficientResult heat_coefficients(const FixedPointGerm& germ, Variant variant);

const char* variant_name(Variant v);

}  // namespace heatchar

#pragma once

#include "heatchar/coefficients.hpp"

namespace heatchar {

/// Degree-2 jet of the torsion parallel-transport factor Psi_bar in the
/// normal variables: identity plus the linear contorsion term L(E_j)
/// (L(E_k)_ij = Q_kji), the dQ terms mapped through B, the quadratic L L
/// term with coefficient 1/2, and the plain quadratic dQ term with -1/2.
MatrixJet2 psibar_jet(const FixedPointGerm& germ);

/// Dual-connection variant: derivative tensors of W_bar = Atilde e^{-Phi}
/// Psi_bar at y = 0.  D1 carries the contorsion contraction; D2 adds the
/// 2 dQ B, Q Q and -dQ terms to the curvature block.
DerivativeTensors derivative_tensors_bar(const FixedPointGerm& germ);

/// Correction term C_bar via the generic Leibniz engine over full tuples.
double correction_Cbar(const FixedPointGerm& germ);

/// b1_bar = |det B| { C_bar + tr[wedge^p Atilde] (tau_0/6 + bracket) }.
double b1_bar(const FixedPointGerm& germ);

/// Scalar part of the diagonal first heat term of the second torsion
/// Laplacian: tau_0/6 - (1/2) T_kjk,j - (1/4) T_kjk T_ljl.  The torsion
/// traces come from Tbar, their derivatives from the dQ array.
double u1_hat_scalar(const FixedPointGerm& germ);

/// Second-variant transport-factor jet: the per-direction coefficient is the
/// scalar -(1/2p) Q_iij times the identity.  Requires p >= 1.
MatrixJet2 psihat_jet(const FixedPointGerm& germ);

/// Second-variant derivative tensors.  D1 is a scalar multiple of the Atilde
/// rows; D2 combines the curvature block with the scalar torsion bracket.
/// Requires p >= 1 (the 1/(2p) normalization is undefined at p = 0).
DerivativeTensors derivative_tensors_hat(const FixedPointGerm& germ);

/// Correction term C_hat via the generic Leibniz engine.
double correction_Chat(const FixedPointGerm& germ);

/// Literal transcription of the closed-form C_hat expansion, with the pair
/// coefficient read as binomial(p,2)/(2p^2) and the sums added.  Cross-check
/// against the engine route.
double correction_Chat_transcribed(const FixedPointGerm& germ);

/// b1_hat = |det B| { C_hat + tr[wedge^p Atilde] (u1_hat + bracket - tau_0/6) }.
double b1_hat(const FixedPointGerm& germ);

/// Oracle factor for C_bar: Atilde (1 - Phi) Psi_bar truncated at degree 2.
MatrixJet2 wbar_jet(const FixedPointGerm& germ);

/// Oracle factor for C_hat: Atilde (1 - Phi) Psi_hat truncated at degree 2.
MatrixJet2 what_jet(const FixedPointGerm& germ);

}  // namespace heatchar

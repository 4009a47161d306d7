#pragma once

#include "heatchar/tensors.hpp"

namespace heatchar {

/// Scalar polynomial of total degree <= 2 in m variables; arithmetic
/// truncates at degree 2.
class ScalarJet2 {
 public:
  ScalarJet2() : m_(0), c0_(0) {}
  explicit ScalarJet2(int m, double c0 = 0.0)
      : m_(m), c0_(c0), lin_(Vector::Zero(m)), quad_(std::size_t(m) * (m + 1) / 2, 0.0) {}

  int vars() const { return m_; }
  double& constant() { return c0_; }
  double constant() const { return c0_; }
  double& linear(int a) { return lin_[a]; }
  double linear(int a) const { return lin_[a]; }
  /// Coefficient of the monomial y_a y_b (unordered pair).
  double& quad(int a, int b) { return quad_[pack(a, b)]; }
  double quad(int a, int b) const { return quad_[pack(a, b)]; }

  ScalarJet2 operator+(const ScalarJet2& o) const;
  ScalarJet2 operator-(const ScalarJet2& o) const;
  ScalarJet2 operator*(const ScalarJet2& o) const;
  ScalarJet2& operator+=(const ScalarJet2& o);
  ScalarJet2 scaled(double s) const;

 private:
  std::size_t pack(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::size_t(a) * m_ - std::size_t(a) * (a - 1) / 2 + (b - a);
  }
  int m_;
  double c0_;
  Vector lin_;
  std::vector<double> quad_;
};

/// Matrix-valued polynomial of total degree <= 2 in m variables.
class MatrixJet2 {
 public:
  MatrixJet2() : m_(0), d_(0) {}
  MatrixJet2(int d, int m);
  static MatrixJet2 constant(const Matrix& c, int m);
  static MatrixJet2 identity(int d, int m);

  int vars() const { return m_; }
  int dim() const { return d_; }

  Matrix& coeff_constant() { return c0_; }
  const Matrix& coeff_constant() const { return c0_; }
  Matrix& coeff_linear(int a) { return lin_[a]; }
  const Matrix& coeff_linear(int a) const { return lin_[a]; }
  /// Coefficient matrix of the monomial y_a y_b (unordered pair).
  Matrix& coeff_quad(int a, int b) { return quad_[pack(a, b)]; }
  const Matrix& coeff_quad(int a, int b) const { return quad_[pack(a, b)]; }

  /// Adds M * y_a y_b; orders of a, b accumulate into the same monomial.
  void add_monomial(int a, int b, const Matrix& M) { coeff_quad(a, b) += M; }

  MatrixJet2 operator+(const MatrixJet2& o) const;
  MatrixJet2 operator-(const MatrixJet2& o) const;
  /// Product truncated at total degree 2.
  MatrixJet2 operator*(const MatrixJet2& o) const;
  MatrixJet2 scaled(double s) const;

  /// The (r,c) entry as a scalar jet.
  ScalarJet2 entry(int r, int c) const;

 private:
  std::size_t pack(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::size_t(a) * m_ - std::size_t(a) * (a - 1) / 2 + (b - a);
  }
  int m_, d_;
  Matrix c0_;
  std::vector<Matrix> lin_;
  std::vector<Matrix> quad_;
};

/// tr[wedge^p J] as a scalar jet, by minor-sum expansion with jet arithmetic.
ScalarJet2 wedge_trace_jet(const MatrixJet2& J, int p);

/// Sum over variables of twice the y_delta^2 coefficient: the flat Laplacian
/// in the jet variables applied at 0.
double box_y(const ScalarJet2& s);

}  // namespace heatchar

#include "heatchar/jet.hpp"

namespace heatchar {

ScalarJet2 ScalarJet2::operator+(const ScalarJet2& o) const {
  ScalarJet2 r = *this;
  r += o;
  return r;
}

ScalarJet2& ScalarJet2::operator+=(const ScalarJet2& o) {
  c0_ += o.c0_;
  lin_ += o.lin_;
  for (std::size_t i = 0; i < quad_.size(); ++i) quad_[i] += o.quad_[i];
  return *this;
}

ScalarJet2 ScalarJet2::operator-(const ScalarJet2& o) const {
  return *this + o.scaled(-1.0);
}

ScalarJet2 ScalarJet2::scaled(double s) const {
  ScalarJet2 r = *this;
  r.c0_ *= s;
  r.lin_ *= s;
  for (auto& q : r.quad_) q *= s;
  return r;
}

ScalarJet2 ScalarJet2::operator*(const ScalarJet2& o) const {
  ScalarJet2 r(m_);
  r.c0_ = c0_ * o.c0_;
  r.lin_ = c0_ * o.lin_ + o.c0_ * lin_;
  for (int a = 0; a < m_; ++a)
    for (int b = a; b < m_; ++b) {
      double q = c0_ * o.quad_[pack(a, b)] + o.c0_ * quad_[pack(a, b)];
      q += lin_[a] * o.lin_[b];
      if (a != b) q += lin_[b] * o.lin_[a];
      r.quad_[pack(a, b)] = q;
    }
  return r;
}

MatrixJet2::MatrixJet2(int d, int m)
    : m_(m),
      d_(d),
      c0_(Matrix::Zero(d, d)),
      lin_(m, Matrix::Zero(d, d)),
      quad_(std::size_t(m) * (m + 1) / 2, Matrix::Zero(d, d)) {}

MatrixJet2 MatrixJet2::constant(const Matrix& c, int m) {
  MatrixJet2 j(int(c.rows()), m);
  j.c0_ = c;
  return j;
}

MatrixJet2 MatrixJet2::identity(int d, int m) {
  return constant(Matrix::Identity(d, d), m);
}

MatrixJet2 MatrixJet2::operator+(const MatrixJet2& o) const {
  MatrixJet2 r = *this;
  r.c0_ += o.c0_;
  for (int a = 0; a < m_; ++a) r.lin_[a] += o.lin_[a];
  for (std::size_t i = 0; i < quad_.size(); ++i) r.quad_[i] += o.quad_[i];
  return r;
}

MatrixJet2 MatrixJet2::operator-(const MatrixJet2& o) const {
  return *this + o.scaled(-1.0);
}

MatrixJet2 MatrixJet2::scaled(double s) const {
  MatrixJet2 r = *this;
  r.c0_ *= s;
  for (auto& l : r.lin_) l *= s;
  for (auto& q : r.quad_) q *= s;
  return r;
}

MatrixJet2 MatrixJet2::operator*(const MatrixJet2& o) const {
  MatrixJet2 r(d_, m_);
  r.c0_ = c0_ * o.c0_;
  for (int a = 0; a < m_; ++a) r.lin_[a] = c0_ * o.lin_[a] + lin_[a] * o.c0_;
  for (int a = 0; a < m_; ++a)
    for (int b = a; b < m_; ++b) {
      Matrix q = c0_ * o.quad_[pack(a, b)] + quad_[pack(a, b)] * o.c0_;
      q += lin_[a] * o.lin_[b];
      if (a != b) q += lin_[b] * o.lin_[a];
      r.quad_[pack(a, b)] = q;
    }
  return r;
}

ScalarJet2 MatrixJet2::entry(int r, int c) const {
  ScalarJet2 s(m_);
  s.constant() = c0_(r, c);
  for (int a = 0; a < m_; ++a) s.linear(a) = lin_[a](r, c);
  for (int a = 0; a < m_; ++a)
    for (int b = a; b < m_; ++b) s.quad(a, b) = quad_[pack(a, b)](r, c);
  return s;
}

// Determinant of a p x p matrix of scalar jets, Laplace expansion along the
// first remaining row.
static ScalarJet2 det_jet(const std::vector<ScalarJet2>& entries, int p, int m,
                          std::vector<int>& rows, std::vector<int>& cols) {
  if (cols.empty()) return ScalarJet2(m, 1.0);
  const int r = rows.front();
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  ScalarJet2 acc(m);
  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    std::vector<int> sub_cols;
    sub_cols.reserve(cols.size() - 1);
    for (std::size_t cj = 0; cj < cols.size(); ++cj)
      if (cj != ci) sub_cols.push_back(cols[cj]);
    ScalarJet2 minor = det_jet(entries, p, m, sub_rows, sub_cols);
    ScalarJet2 term = entries[std::size_t(r) * p + cols[ci]] * minor;
    acc += (ci % 2 == 0) ? term : term.scaled(-1.0);
  }
  return acc;
}

ScalarJet2 wedge_trace_jet(const MatrixJet2& J, int p) {
  const int d = J.dim();
  const int m = J.vars();
  if (p < 0 || p > d) throw std::invalid_argument("wedge_trace_jet: degree out of range");
  ScalarJet2 total(m);
  if (p == 0) {
    total.constant() = 1.0;
    return total;
  }
  detail::for_each_subset(d, p, [&](std::span<const int> S) {
    std::vector<ScalarJet2> entries;
    entries.reserve(std::size_t(p) * p);
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) entries.push_back(J.entry(S[r], S[c]));
    std::vector<int> rows(p), cols(p);
    for (int i = 0; i < p; ++i) rows[i] = cols[i] = i;
    total += det_jet(entries, p, m, rows, cols);
  });
  return total;
}

double box_y(const ScalarJet2& s) {
  double acc = 0.0;
  for (int a = 0; a < s.vars(); ++a) acc += 2.0 * s.quad(a, a);
  return acc;
}

}  // namespace heatchar

#include "hermlab/invariant_geometry.hpp"

#include "hermlab/errors.hpp"

#include <cmath>

namespace hermlab {

// ------------------------------------------------------------ LieAlgebra6

LieAlgebra6::LieAlgebra6() {
  for (auto& m : c_) m.setZero();
}

LieAlgebra6 LieAlgebra6::unchecked(const std::array<Mat6, 6>& c) {
  LieAlgebra6 out;
  out.c_ = c;
  return out;
}

LieAlgebra6::LieAlgebra6(const std::array<Mat6, 6>& c) : c_(c) {
  for (int k = 0; k < kDim; ++k) {
    if (!c_[k].allFinite()) throw InputError("structure constants must be finite");
    if ((c_[k] + c_[k].transpose()).cwiseAbs().maxCoeff() != 0.0)
      throw InputError("structure constants are not antisymmetric");
  }
  if (jacobi_residual() > kJacobiTol) throw InputError("structure constants violate the Jacobi identity");
}

Vec6 LieAlgebra6::bracket(const Vec6& x, const Vec6& y) const {
  Vec6 out;
  for (int k = 0; k < kDim; ++k) out(k) = x.dot(c_[k] * y);
  return out;
}

CVec6 LieAlgebra6::bracket(const CVec6& x, const CVec6& y) const {
  CVec6 out;
  for (int k = 0; k < kDim; ++k) out(k) = (x.transpose() * c_[k].cast<cplx>() * y)(0, 0);
  return out;
}

Mat6 LieAlgebra6::ad(int i) const {
  Mat6 m;
  for (int k = 0; k < kDim; ++k) m.row(k) = c_[k].row(i);
  return m;
}

double LieAlgebra6::jacobi_residual() const {
  double scale = 0.0;
  for (const auto& m : c_) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  std::array<Mat6, 6> ads;
  for (int i = 0; i < kDim; ++i) ads[i] = ad(i);
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      Mat6 lhs = Mat6::Zero();
      for (int k = 0; k < kDim; ++k) lhs += c_[k](i, j) * ads[k];
      worst = std::max(worst, (lhs - (ads[i] * ads[j] - ads[j] * ads[i])).cwiseAbs().maxCoeff());
    }
  return worst / (scale * scale);
}

bool LieAlgebra6::is_abelian() const {
  for (const auto& m : c_)
    if (m.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

// ---------------------------------------------------------- tensors

SlicedTensor::SlicedTensor() {
  for (auto& m : s) m.setZero();
}

Mat6 SlicedTensor::contract(const Vec6& x) const {
  Mat6 out = Mat6::Zero();
  for (int i = 0; i < kDim; ++i)
    if (x(i) != 0.0) out += x(i) * s[i];
  return out;
}

double SlicedTensor::max_abs() const {
  double m = 0.0;
  for (const auto& a : s) m = std::max(m, a.cwiseAbs().maxCoeff());
  return m;
}

double SlicedTensor::frobenius() const {
  double t = 0.0;
  for (const auto& a : s) t += a.squaredNorm();
  return std::sqrt(t);
}

SlicedTensor& SlicedTensor::operator+=(const SlicedTensor& o) {
  for (int i = 0; i < kDim; ++i) s[i] += o.s[i];
  return *this;
}

SlicedTensor& SlicedTensor::operator-=(const SlicedTensor& o) {
  for (int i = 0; i < kDim; ++i) s[i] -= o.s[i];
  return *this;
}

SlicedTensor& SlicedTensor::operator*=(double f) {
  for (auto& a : s) a *= f;
  return *this;
}

SlicedTensor operator+(SlicedTensor a, const SlicedTensor& b) { return a += b; }
SlicedTensor operator-(SlicedTensor a, const SlicedTensor& b) { return a -= b; }
SlicedTensor operator*(double f, SlicedTensor a) { return a *= f; }

CVec6 Tensor21::apply(const CVec6& x, const CVec6& y) const {
  CVec6 out = CVec6::Zero();
  for (int i = 0; i < kDim; ++i) out += x(i) * (t.s[i].cast<cplx>() * y);
  return out;
}

void Tensor21::mark_antisymmetric(double tol) {
  const double scale = std::max(1.0, t.max_abs());
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      const Vec6 a = t.s[i].col(j), b = t.s[j].col(i);
      if ((a + b).cwiseAbs().maxCoeff() > tol * scale) throw InputError("tensor is not antisymmetric");
    }
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) {
      const Vec6 avg = 0.5 * (t.s[i].col(j) - t.s[j].col(i));
      t.s[i].col(j) = avg;
      t.s[j].col(i) = -avg;
    }
  antisymmetric = true;
}

CurvatureTensor::CurvatureTensor() {
  for (auto& m : r) m.setZero();
}

Mat6 CurvatureTensor::op(const Vec6& x, const Vec6& y) const {
  Mat6 out = Mat6::Zero();
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (x(i) * y(j) != 0.0) out += x(i) * y(j) * r[6 * i + j];
  return out;
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (const auto& a : r) m = std::max(m, a.cwiseAbs().maxCoeff());
  return m;
}

double CurvatureTensor::frobenius() const {
  double t = 0.0;
  for (const auto& a : r) t += a.squaredNorm();
  return std::sqrt(t);
}

CurvatureTensor operator-(const CurvatureTensor& a, const CurvatureTensor& b) {
  CurvatureTensor out;
  for (int i = 0; i < 36; ++i) out.r[i] = a.r[i] - b.r[i];
  return out;
}

// -------------------------------------------------------- operations

KForm ce_differential(const LieAlgebra6& lie, const KForm& a) {
  const int k = a.degree();
  if (k >= kDim) return KForm(kDim, a.kind());
  std::array<KForm, 6> de;
  for (int m = 0; m < kDim; ++m)
    de[m] = tabulate(2, [&](const std::vector<int>& ij) { return -lie.c(m, ij[0], ij[1]); });
  KForm out(k + 1, a.kind());
  const auto& ms = multi_index::masks(k);
  for (size_t p = 0; p < ms.size(); ++p) {
    const cplx v = a.at(static_cast<int>(p));
    if (v == cplx(0.0)) continue;
    const auto idx = multi_index::indices(ms[p]);
    for (size_t pos = 0; pos < idx.size(); ++pos) {
      KForm term = KForm::scalar(1.0);
      for (size_t q = 0; q < idx.size(); ++q)
        term = wedge(term, q == pos ? de[idx[q]] : KForm::one_form(Vec6::Unit(idx[q])));
      out += ((pos % 2) ? -v : v) * term;
    }
  }
  return out;
}

ConnectionCoeffs levi_civita(const LieAlgebra6& lie, const Metric& g) {
  const Mat6& gm = g.matrix();
  ConnectionCoeffs out;
  for (int i = 0; i < kDim; ++i) {
    const Vec6 ei = Vec6::Unit(i);
    for (int j = 0; j < kDim; ++j) {
      const Vec6 ej = Vec6::Unit(j);
      const Vec6 bij = lie.bracket(ei, ej);
      Vec6 v;
      for (int z = 0; z < kDim; ++z) {
        const Vec6 ez = Vec6::Unit(z);
        v(z) = 0.5 * (bij.dot(gm * ez) - lie.bracket(ei, ez).dot(gm * ej) - lie.bracket(ej, ez).dot(gm * ei));
      }
      out.gamma.s[i].col(j) = g.inverse() * v;
    }
  }
  return out;
}

Tensor21 nijenhuis(const LieAlgebra6& lie, const ComplexStructure& j) {
  Tensor21 n;
  std::array<CVec6, 6> hol;
  for (int i = 0; i < kDim; ++i)
    hol[i] = vector_type_project(j, CVec6(CVec6::Unit(i)), VectorType::holomorphic);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      const CVec6 br = lie.bracket(hol[a], hol[b]);
      n.t.s[a].col(b) = vector_type_project(j, br, VectorType::antiholomorphic).real();
    }
  n.mark_antisymmetric(1e-10);
  return n;
}

Cov3 nabla_omega(const ConnectionCoeffs& gamma, const KForm& omega) {
  const Mat6 w = two_form_matrix(omega);
  Cov3 out;
  for (int i = 0; i < kDim; ++i) {
    const Mat6& gi = gamma.gamma.s[i];
    Mat6 s = -(gi.transpose() * w + w * gi);
    out.s.s[i] = 0.5 * (s - s.transpose());
  }
  return out;
}

std::array<Mat6, 6> nabla_endomorphism(const ConnectionCoeffs& gamma, const Mat6& a) {
  std::array<Mat6, 6> out;
  for (int i = 0; i < kDim; ++i) out[i] = gamma.gamma.s[i] * a - a * gamma.gamma.s[i];
  return out;
}

double nabla_metric_residual(const ConnectionCoeffs& gamma, const Metric& g) {
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i) {
    const Mat6& gi = gamma.gamma.s[i];
    worst = std::max(worst, (gi.transpose() * g.matrix() + g.matrix() * gi).cwiseAbs().maxCoeff());
  }
  return worst;
}

double nabla_j_residual(const ConnectionCoeffs& gamma, const ComplexStructure& j) {
  double worst = 0.0;
  for (const auto& m : nabla_endomorphism(gamma, j.matrix())) worst = std::max(worst, m.cwiseAbs().maxCoeff());
  return worst;
}

Tensor21 delta_bar(const ConnectionCoeffs& gamma_lc, const ComplexStructure& j) {
  const auto nj = nabla_endomorphism(gamma_lc, j.matrix());
  Tensor21 out;
  for (int i = 0; i < kDim; ++i) out.t.s[i] = 0.5 * j.matrix() * nj[i];
  return out;
}

ConnectionCoeffs canonical_connection(const ConnectionCoeffs& gamma_lc, const ComplexStructure& j,
                                      const Metric& g) {
  j.require_compatible(g);
  const Tensor21 d = delta_bar(gamma_lc, j);
  ConnectionCoeffs out;
  out.gamma = gamma_lc.gamma - d.t;
  return out;
}

Tensor21 torsion(const ConnectionCoeffs& gamma, const LieAlgebra6& lie) {
  Tensor21 out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        out.t.s[i](k, j) = gamma.gamma.s[i](k, j) - gamma.gamma.s[j](k, i) - lie.c(k, i, j);
  out.mark_antisymmetric(1e-9);
  return out;
}

CurvatureTensor curvature(const ConnectionCoeffs& gamma, const LieAlgebra6& lie) {
  CurvatureTensor out;
  const auto& g = gamma.gamma.s;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      Mat6 m = g[i] * g[j] - g[j] * g[i];
      for (int k = 0; k < kDim; ++k)
        if (lie.c(k, i, j) != 0.0) m -= lie.c(k, i, j) * g[k];
      out.op(i, j) = m;
    }
  return out;
}

Tensor21 covariant_derivative_slice(const ConnectionCoeffs& gamma, const Tensor21& t, int direction) {
  const Mat6& gd = gamma.gamma.s[direction];
  Tensor21 out;
  for (int i = 0; i < kDim; ++i) {
    Mat6 m = gd * t.t.s[i] - t.t.s[i] * gd;
    for (int q = 0; q < kDim; ++q)
      if (gd(q, i) != 0.0) m -= gd(q, i) * t.t.s[q];
    out.t.s[i] = m;
  }
  return out;
}

double covariant_derivative_residual(const ConnectionCoeffs& gamma, const Tensor21& t) {
  double worst = 0.0;
  for (int d = 0; d < kDim; ++d) worst = std::max(worst, covariant_derivative_slice(gamma, t, d).max_abs());
  return worst;
}

CurvatureTensor xi_squared(const Tensor21& xi, const Metric& g) {
  const double scale = std::max(1.0, xi.max_abs());
  for (int i = 0; i < kDim; ++i) {
    const Mat6& x = xi.t.s[i];
    if ((x.transpose() * g.matrix() + g.matrix() * x).cwiseAbs().maxCoeff() > 1e-9 * scale * g.matrix().cwiseAbs().maxCoeff())
      throw InputError("xi_X is not skew with respect to g");
  }
  CurvatureTensor out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      const Mat6& a = xi.t.s[i];
      const Mat6& b = xi.t.s[j];
      const Vec6 v = a.col(j) - b.col(i);
      out.op(i, j) = a * b - b * a - xi.t.contract(v);
    }
  return out;
}

Mat6 endomorphism_from_two_form(const Metric& g, const KForm& beta) {
  return -g.inverse() * two_form_matrix(beta);
}

}  // namespace hermlab

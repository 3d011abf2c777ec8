#pragma once

#include "hermlab/exterior.hpp"

#include <array>

namespace hermlab {

inline constexpr double kJacobiTol = 1e-10;

/// Structure constants with [e_i, e_j] = Σ_k c^k_ij e_k.
class LieAlgebra6 {
 public:
  /// Abelian algebra.
  LieAlgebra6();
  /// `c[k](i,j)` = c^k_ij; must be antisymmetric in (i,j) and satisfy Jacobi.
  explicit LieAlgebra6(const std::array<Mat6, 6>& c);
  /// Sets c^k_ij = value and c^k_ji = -value (0-based) without validation.
  static LieAlgebra6 unchecked(const std::array<Mat6, 6>& c);

  const std::array<Mat6, 6>& constants() const { return c_; }
  double c(int k, int i, int j) const { return c_[k](i, j); }
  Vec6 bracket(const Vec6& x, const Vec6& y) const;
  CVec6 bracket(const CVec6& x, const CVec6& y) const;
  /// ad(e_i) as a matrix: column j is [e_i, e_j].
  Mat6 ad(int i) const;
  /// Largest Jacobiator entry divided by the square of the largest constant.
  double jacobi_residual() const;
  bool is_abelian() const;

 private:
  std::array<Mat6, 6> c_;
};

/// Array indexed by a first vector slot: slice i is a 6×6 matrix.
struct SlicedTensor {
  std::array<Mat6, 6> s;

  SlicedTensor();
  explicit SlicedTensor(const std::array<Mat6, 6>& slices) : s(slices) {}

  Mat6 contract(const Vec6& x) const;
  double max_abs() const;
  double frobenius() const;
  SlicedTensor& operator+=(const SlicedTensor& o);
  SlicedTensor& operator-=(const SlicedTensor& o);
  SlicedTensor& operator*=(double f);
};

SlicedTensor operator+(SlicedTensor a, const SlicedTensor& b);
SlicedTensor operator-(SlicedTensor a, const SlicedTensor& b);
SlicedTensor operator*(double f, SlicedTensor a);

/// ∇_{e_i} e_j = Σ_k Γ^k_ij e_k, stored as gamma.s[i](k,j). gamma.contract(X) is ∇_X as a matrix.
struct ConnectionCoeffs {
  SlicedTensor gamma;
  Mat6 along(const Vec6& x) const { return gamma.contract(x); }
};

/// (2,1)-tensor T(e_i,e_j) = Σ_k t^k_ij e_k, stored as t.s[i](k,j); t.contract(X) is T(X,·).
struct Tensor21 {
  SlicedTensor t;
  bool antisymmetric = false;

  Vec6 apply(const Vec6& x, const Vec6& y) const { return t.contract(x) * y; }
  CVec6 apply(const CVec6& x, const CVec6& y) const;
  Mat6 slice(const Vec6& x) const { return t.contract(x); }
  double max_abs() const { return t.max_abs(); }
  /// Enforces and flags antisymmetry in the two inputs; throws if violated beyond tol.
  void mark_antisymmetric(double tol = 1e-12);
};

/// 3-index covariant tensor s(e_i; e_j, e_k) = s.s[i](j,k), skew in the last pair (e.g. ∇ω).
struct Cov3 {
  SlicedTensor s;
  double at(int i, int j, int k) const { return s.s[i](j, k); }
};

/// R_{e_i,e_j} e_k = Σ_l R^l_kij e_l, stored as r[6*i+j](l,k).
struct CurvatureTensor {
  std::array<Mat6, 36> r;

  CurvatureTensor();
  const Mat6& op(int i, int j) const { return r[6 * i + j]; }
  Mat6& op(int i, int j) { return r[6 * i + j]; }
  Mat6 op(const Vec6& x, const Vec6& y) const;
  double max_abs() const;
  double frobenius() const;
};

CurvatureTensor operator-(const CurvatureTensor& a, const CurvatureTensor& b);

/// Chevalley–Eilenberg differential: de^k = -Σ_{i<j} c^k_ij e^{ij}, extended as an antiderivation.
KForm ce_differential(const LieAlgebra6& lie, const KForm& a);

/// Koszul formula for invariant fields.
ConnectionCoeffs levi_civita(const LieAlgebra6& lie, const Metric& g);

/// Real tensor with N(X,Y) + iJN(X,Y) = [X^{1,0}, Y^{1,0}]^{0,1}.
Tensor21 nijenhuis(const LieAlgebra6& lie, const ComplexStructure& j);

/// (∇_X ω)(Y,Z) = -ω(∇_X Y, Z) - ω(Y, ∇_X Z).
Cov3 nabla_omega(const ConnectionCoeffs& gamma, const KForm& omega);

/// Matrices ∇_{e_i} J = [Γ_i, J].
std::array<Mat6, 6> nabla_endomorphism(const ConnectionCoeffs& gamma, const Mat6& a);
/// Largest entry of (∇_{e_i} g)(e_j,e_k) = -g(Γ_i e_j,e_k) - g(e_j,Γ_i e_k).
double nabla_metric_residual(const ConnectionCoeffs& gamma, const Metric& g);
/// Largest entry of ∇_{e_i} J.
double nabla_j_residual(const ConnectionCoeffs& gamma, const ComplexStructure& j);

/// δ̄_X = ½ J (∇_X J), the difference ∇ - ∇̄.
Tensor21 delta_bar(const ConnectionCoeffs& gamma_lc, const ComplexStructure& j);

/// ∇̄ = ∇ - ½ J(∇J); throws IncompatibleError if (g,J) is not compatible.
ConnectionCoeffs canonical_connection(const ConnectionCoeffs& gamma_lc, const ComplexStructure& j,
                                      const Metric& g);

/// T(X,Y) = ∇_X Y - ∇_Y X - [X,Y].
Tensor21 torsion(const ConnectionCoeffs& gamma, const LieAlgebra6& lie);

/// R_{X,Y} = [∇_X, ∇_Y] - ∇_{[X,Y]}.
CurvatureTensor curvature(const ConnectionCoeffs& gamma, const LieAlgebra6& lie);

/// (∇_X T)(Y,Z) = ∇_X(T(Y,Z)) - T(∇_X Y, Z) - T(Y, ∇_X Z) for invariant T.
Tensor21 covariant_derivative_slice(const ConnectionCoeffs& gamma, const Tensor21& t, int direction);
/// Largest entry of ∇T over all directions.
double covariant_derivative_residual(const ConnectionCoeffs& gamma, const Tensor21& t);

/// (ξ²)_{X,Y} = [ξ_X, ξ_Y] - ξ_{ξ_X Y - ξ_Y X}; throws if some ξ_X is not g-skew.
CurvatureTensor xi_squared(const Tensor21& xi, const Metric& g);

/// Skew endomorphism A with g(AX,Y) = β(X,Y).
Mat6 endomorphism_from_two_form(const Metric& g, const KForm& beta);

}  // namespace hermlab

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace hermlab {

constexpr int kDim = 6;
inline constexpr double kDefaultTol = 1e-9;

using cplx = std::complex<double>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using CVec6 = Eigen::Matrix<cplx, 6, 1>;
using CMat6 = Eigen::Matrix<cplx, 6, 6>;

/// Strictly increasing multi-indices on {0..5}, stored as 6-bit masks.
namespace multi_index {

/// Binomial coefficient C(6,k); 0 outside 0..6.
int count(int k);
/// All masks of weight k, in lexicographic order of their index lists.
const std::vector<unsigned>& masks(int k);
/// Position of `mask` inside masks(popcount(mask)).
int position(unsigned mask);
/// 0-based indices of a mask, increasing.
std::vector<int> indices(unsigned mask);
/// Sign of e^A ∧ e^B = sign · e^{A∪B} for disjoint A, B.
int shuffle_sign(unsigned a, unsigned b);

}  // namespace multi_index

enum class ScalarKind { real, complex };

/// Alternating k-form on R^6 with coefficients on the increasing basis e^{i1..ik}.
class KForm {
 public:
  explicit KForm(int degree = 0, ScalarKind kind = ScalarKind::real);
  KForm(int degree, const Eigen::VectorXcd& coeffs, ScalarKind kind);

  /// e^{i1}∧…∧e^{ik} with 1-based indices in any order (sign from sorting).
  static KForm basis(std::initializer_list<int> one_based);
  static KForm from_real(int degree, const Eigen::VectorXd& coeffs);
  static KForm one_form(const Vec6& coeffs);
  static KForm scalar(double value);

  int degree() const { return degree_; }
  ScalarKind kind() const { return kind_; }
  bool is_real() const { return kind_ == ScalarKind::real; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  cplx at(int pos) const { return coeffs_(pos); }
  cplx coeff(unsigned mask) const;
  void set(unsigned mask, cplx value);
  /// Real coefficient vector; throws if an imaginary part exceeds tol.
  Eigen::VectorXd real_coeffs(double tol = 1e-12) const;
  Vec6 as_vec6() const;

  KForm re() const;
  KForm im() const;
  KForm conj() const;
  KForm as_complex() const;

  /// Largest coefficient modulus.
  double max_abs() const;
  /// Euclidean norm of the coefficient vector (equals the norm for g = I).
  double coeff_norm() const;

  /// α(X1,…,Xk) with the determinant convention e^{12}(e1,e2) = 1.
  cplx evaluate(const std::vector<CVec6>& vectors) const;
  double evaluate_real(const std::vector<Vec6>& vectors) const;

  KForm operator-() const;
  KForm& operator+=(const KForm& other);
  KForm& operator-=(const KForm& other);
  KForm& operator*=(double s);
  KForm& operator*=(cplx s);

 private:
  int degree_;
  ScalarKind kind_;
  Eigen::VectorXcd coeffs_;
};

KForm operator+(KForm a, const KForm& b);
KForm operator-(KForm a, const KForm& b);
KForm operator*(double s, KForm a);
KForm operator*(cplx s, KForm a);
KForm operator*(KForm a, double s);

KForm wedge(const KForm& a, const KForm& b);
KForm interior(const CVec6& x, const KForm& a);
KForm interior(const Vec6& x, const KForm& a);

/// Builds a real k-form from its values on increasing tuples of basis vectors.
KForm tabulate(int degree, const std::function<double(const std::vector<int>&)>& value);
KForm tabulate_complex(int degree, const std::function<cplx(const std::vector<int>&)>& value);

/// (A^*α)(X1..Xk) = α(AX1,…,AXk).
KForm pullback(const Mat6& a, const KForm& alpha);
/// Matrix of the derivation α ↦ Σ_i α(…, A X_i, …) on Λ^k.
Eigen::MatrixXd derivation_matrix(const Mat6& a, int degree);
KForm derivation(const Mat6& a, const KForm& alpha);

/// Skew matrix W_ij = α(e_i, e_j) of a 2-form, and its inverse.
Mat6 two_form_matrix(const KForm& alpha);
KForm two_form(const Mat6& skew);

/// Positive definite symmetric bilinear form.
class Metric {
 public:
  explicit Metric(const Mat6& g, double tol_pd = 1e-12);
  static Metric identity() { return Metric(Mat6::Identity()); }

  const Mat6& matrix() const { return g_; }
  const Mat6& inverse() const { return inv_; }
  double sqrt_det() const { return sqrt_det_; }
  double operator()(const Vec6& x, const Vec6& y) const { return x.dot(g_ * y); }

  KForm flat(const Vec6& x) const;
  Vec6 sharp(const KForm& eta) const;
  /// Columns form a g-orthonormal basis.
  Mat6 orthonormal_frame() const;

 private:
  Mat6 g_;
  Mat6 inv_;
  double sqrt_det_;
};

/// Gram matrix ⟨e^I, e^J⟩ = det(g^{-1}[I,J]) on Λ^k.
Eigen::MatrixXd form_gram(const Metric& g, int degree);
/// Complex-bilinear pairing Σ a_I b_J G_IJ.
cplx bilinear(const Metric& g, const KForm& a, const KForm& b);
/// Hermitian inner product Σ a_I conj(b_J) G_IJ.
cplx inner(const Metric& g, const KForm& a, const KForm& b);
double norm(const Metric& g, const KForm& a);

/// Hodge star for the orientation e^1∧…∧e^6 > 0.
KForm hodge_star(const Metric& g, const KForm& a);
/// Volume form sqrt(det g) e^{123456}.
KForm volume_form(const Metric& g);

/// Linear map with J² = -1.
class ComplexStructure {
 public:
  explicit ComplexStructure(const Mat6& j, double tol = kDefaultTol);
  static ComplexStructure standard();

  const Mat6& matrix() const { return j_; }
  ComplexStructure negated() const { return ComplexStructure(-j_); }

  /// Largest entry of J^T g J - g relative to g.
  double compatibility_residual(const Metric& g) const;
  /// Throws IncompatibleError when g(JX,JY) != g(X,Y) beyond tol.
  void require_compatible(const Metric& g, double tol = kDefaultTol) const;

 private:
  Mat6 j_;
};

/// Kähler form ω(X,Y) = g(JX,Y).
KForm kahler_form(const Metric& g, const ComplexStructure& j);

/// J acting on 1-forms: (Jη)(X) = -η(JX), so that J(X♭) = (JX)♭.
KForm j_on_one_form(const ComplexStructure& j, const KForm& eta);

using TypeMap = std::map<std::pair<int, int>, KForm>;

/// All (p,q) components of α with p+q = deg α.
TypeMap type_components(const ComplexStructure& j, const KForm& alpha);
KForm type_component(const ComplexStructure& j, const KForm& alpha, int p, int q);
/// Real form made of the (p,q) and (q,p) components.
KForm real_type_part(const ComplexStructure& j, const KForm& alpha, int p, int q);

enum class VectorType { holomorphic, antiholomorphic };

/// X^{1,0} = (X - iJX)/2, X^{0,1} = (X + iJX)/2.
CVec6 vector_type_project(const ComplexStructure& j, const CVec6& x, VectorType which);

}  // namespace hermlab

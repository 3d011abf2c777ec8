#include "hermlab/exterior.hpp"

#include "hermlab/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace hermlab {

namespace multi_index {

namespace {

struct Tables {
  std::array<std::vector<unsigned>, kDim + 1> by_degree;
  std::array<int, 64> pos{};

  Tables() {
    for (int k = 0; k <= kDim; ++k) {
      std::vector<int> sel(kDim, 0);
      std::fill(sel.begin(), sel.begin() + k, 1);
      // prev_permutation on a 1..10..0 selector enumerates subsets lexicographically
      do {
        unsigned m = 0;
        for (int i = 0; i < kDim; ++i)
          if (sel[i]) m |= 1u << i;
        pos[m] = static_cast<int>(by_degree[k].size());
        by_degree[k].push_back(m);
      } while (std::prev_permutation(sel.begin(), sel.end()));
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

int count(int k) {
  if (k < 0 || k > kDim) return 0;
  return static_cast<int>(tables().by_degree[k].size());
}

const std::vector<unsigned>& masks(int k) { return tables().by_degree.at(k); }

int position(unsigned mask) { return tables().pos[mask & 63u]; }

std::vector<int> indices(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; i < kDim; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

int shuffle_sign(unsigned a, unsigned b) {
  int inversions = 0;
  for (int i = 0; i < kDim; ++i)
    if (b >> i & 1u) inversions += std::popcount(a >> (i + 1));
  return inversions % 2 ? -1 : 1;
}

}  // namespace multi_index

namespace {

int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) sign = -sign;
    }
  return sign;
}

unsigned mask_of(const std::vector<int>& idx) {
  unsigned m = 0;
  for (int i : idx) m |= 1u << i;
  return m;
}

ScalarKind promote(ScalarKind a, ScalarKind b) {
  return (a == ScalarKind::complex || b == ScalarKind::complex) ? ScalarKind::complex
                                                                : ScalarKind::real;
}

void check_degree(int degree) {
  if (degree < 0 || degree > kDim) throw InputError("degree exceeds 6");
}

}  // namespace

// ---------------------------------------------------------------- KForm

KForm::KForm(int degree, ScalarKind kind) : degree_(degree), kind_(kind) {
  check_degree(degree);
  coeffs_ = Eigen::VectorXcd::Zero(multi_index::count(degree));
}

KForm::KForm(int degree, const Eigen::VectorXcd& coeffs, ScalarKind kind)
    : degree_(degree), kind_(kind), coeffs_(coeffs) {
  check_degree(degree);
  if (coeffs.size() != multi_index::count(degree))
    throw InputError("coefficient vector has wrong length for degree " + std::to_string(degree));
  if (kind_ == ScalarKind::real) coeffs_ = coeffs_.real().cast<cplx>();
}

KForm KForm::basis(std::initializer_list<int> one_based) {
  std::vector<int> idx;
  for (int i : one_based) {
    if (i < 1 || i > kDim) throw InputError("basis index out of range");
    idx.push_back(i - 1);
  }
  KForm out(static_cast<int>(idx.size()));
  const int s = permutation_sign(idx);
  if (s != 0) out.set(mask_of(idx), s);
  return out;
}

KForm KForm::from_real(int degree, const Eigen::VectorXd& coeffs) {
  return KForm(degree, coeffs.cast<cplx>(), ScalarKind::real);
}

KForm KForm::one_form(const Vec6& coeffs) {
  return from_real(1, Eigen::VectorXd(coeffs));
}

KForm KForm::scalar(double value) {
  KForm out(0);
  out.coeffs_(0) = value;
  return out;
}

cplx KForm::coeff(unsigned mask) const {
  if (std::popcount(mask) != degree_ || mask > 63u) return 0.0;
  return coeffs_(multi_index::position(mask));
}

void KForm::set(unsigned mask, cplx value) {
  if (std::popcount(mask) != degree_ || mask > 63u)
    throw InputError("multi-index does not match the form degree");
  if (kind_ == ScalarKind::real && value.imag() != 0.0) kind_ = ScalarKind::complex;
  coeffs_(multi_index::position(mask)) = value;
}

Eigen::VectorXd KForm::real_coeffs(double tol) const {
  if (coeffs_.size() && coeffs_.imag().cwiseAbs().maxCoeff() > tol)
    throw InputError("form has non-negligible imaginary part");
  return coeffs_.real();
}

Vec6 KForm::as_vec6() const {
  if (degree_ != 1) throw InputError("expected a 1-form");
  return Vec6(real_coeffs(1e-9));
}

KForm KForm::re() const { return KForm(degree_, coeffs_.real().cast<cplx>(), ScalarKind::real); }

KForm KForm::im() const { return KForm(degree_, coeffs_.imag().cast<cplx>(), ScalarKind::real); }

KForm KForm::conj() const { return KForm(degree_, coeffs_.conjugate(), kind_); }

KForm KForm::as_complex() const { return KForm(degree_, coeffs_, ScalarKind::complex); }

double KForm::max_abs() const { return coeffs_.size() ? coeffs_.cwiseAbs().maxCoeff() : 0.0; }

double KForm::coeff_norm() const { return coeffs_.norm(); }

cplx KForm::evaluate(const std::vector<CVec6>& vectors) const {
  if (static_cast<int>(vectors.size()) != degree_)
    throw InputError("wrong number of arguments for form evaluation");
  if (degree_ == 0) return coeffs_(0);
  const auto& ms = multi_index::masks(degree_);
  cplx total = 0.0;
  Eigen::MatrixXcd minor(degree_, degree_);
  for (size_t p = 0; p < ms.size(); ++p) {
    if (coeffs_(p) == cplx(0.0)) continue;
    const auto idx = multi_index::indices(ms[p]);
    for (int r = 0; r < degree_; ++r)
      for (int c = 0; c < degree_; ++c) minor(r, c) = vectors[r](idx[c]);
    total += coeffs_(p) * minor.determinant();
  }
  return total;
}

double KForm::evaluate_real(const std::vector<Vec6>& vectors) const {
  std::vector<CVec6> cv;
  cv.reserve(vectors.size());
  for (const auto& v : vectors) cv.push_back(v.cast<cplx>());
  return evaluate(cv).real();
}

KForm KForm::operator-() const { return KForm(degree_, -coeffs_, kind_); }

KForm& KForm::operator+=(const KForm& other) {
  if (other.degree_ != degree_) throw InputError("adding forms of different degree");
  coeffs_ += other.coeffs_;
  kind_ = promote(kind_, other.kind_);
  return *this;
}

KForm& KForm::operator-=(const KForm& other) {
  if (other.degree_ != degree_) throw InputError("subtracting forms of different degree");
  coeffs_ -= other.coeffs_;
  kind_ = promote(kind_, other.kind_);
  return *this;
}

KForm& KForm::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

KForm& KForm::operator*=(cplx s) {
  coeffs_ *= s;
  if (s.imag() != 0.0) kind_ = ScalarKind::complex;
  return *this;
}

KForm operator+(KForm a, const KForm& b) { return a += b; }
KForm operator-(KForm a, const KForm& b) { return a -= b; }
KForm operator*(double s, KForm a) { return a *= s; }
KForm operator*(cplx s, KForm a) { return a *= s; }
KForm operator*(KForm a, double s) { return a *= s; }

// ------------------------------------------------------------ algebra

KForm wedge(const KForm& a, const KForm& b) {
  const int k = a.degree() + b.degree();
  if (k > kDim) throw InputError("degree exceeds 6");
  KForm out(k, promote(a.kind(), b.kind()));
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(multi_index::count(k));
  const auto& ma = multi_index::masks(a.degree());
  const auto& mb = multi_index::masks(b.degree());
  for (size_t i = 0; i < ma.size(); ++i) {
    const cplx x = a.at(static_cast<int>(i));
    if (x == cplx(0.0)) continue;
    for (size_t j = 0; j < mb.size(); ++j) {
      if (ma[i] & mb[j]) continue;
      const cplx y = b.at(static_cast<int>(j));
      if (y == cplx(0.0)) continue;
      c(multi_index::position(ma[i] | mb[j])) +=
          static_cast<double>(multi_index::shuffle_sign(ma[i], mb[j])) * x * y;
    }
  }
  return KForm(k, c, out.kind());
}

KForm interior(const CVec6& x, const KForm& a) {
  if (a.degree() < 1) throw InputError("interior product needs degree >= 1");
  const int k = a.degree() - 1;
  const bool cx = !a.is_real() || x.imag().cwiseAbs().maxCoeff() > 0.0;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(multi_index::count(k));
  const auto& ms = multi_index::masks(a.degree());
  for (size_t p = 0; p < ms.size(); ++p) {
    const cplx v = a.at(static_cast<int>(p));
    if (v == cplx(0.0)) continue;
    const auto idx = multi_index::indices(ms[p]);
    for (size_t m = 0; m < idx.size(); ++m) {
      const double s = (m % 2) ? -1.0 : 1.0;
      c(multi_index::position(ms[p] & ~(1u << idx[m]))) += s * x(idx[m]) * v;
    }
  }
  return KForm(k, c, cx ? ScalarKind::complex : ScalarKind::real);
}

KForm interior(const Vec6& x, const KForm& a) { return interior(CVec6(x.cast<cplx>()), a); }

KForm tabulate(int degree, const std::function<double(const std::vector<int>&)>& value) {
  check_degree(degree);
  const auto& ms = multi_index::masks(degree);
  Eigen::VectorXd c(ms.size());
  for (size_t p = 0; p < ms.size(); ++p) c(p) = value(multi_index::indices(ms[p]));
  return KForm::from_real(degree, c);
}

KForm tabulate_complex(int degree, const std::function<cplx(const std::vector<int>&)>& value) {
  check_degree(degree);
  const auto& ms = multi_index::masks(degree);
  Eigen::VectorXcd c(ms.size());
  for (size_t p = 0; p < ms.size(); ++p) c(p) = value(multi_index::indices(ms[p]));
  return KForm(degree, c, ScalarKind::complex);
}

KForm pullback(const Mat6& a, const KForm& alpha) {
  const int k = alpha.degree();
  const auto& ms = multi_index::masks(k);
  Eigen::VectorXcd c(ms.size());
  for (size_t p = 0; p < ms.size(); ++p) {
    std::vector<CVec6> args;
    for (int i : multi_index::indices(ms[p])) args.push_back(a.col(i).cast<cplx>());
    c(p) = alpha.evaluate(args);
  }
  return KForm(k, c, alpha.kind());
}

Eigen::MatrixXd derivation_matrix(const Mat6& a, int degree) {
  check_degree(degree);
  const auto& ms = multi_index::masks(degree);
  const int n = static_cast<int>(ms.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const auto idx = multi_index::indices(ms[col]);
    for (size_t m = 0; m < idx.size(); ++m) {
      // e^{i_m} ∘ A = Σ_j A(i_m, j) e^j
      for (int j = 0; j < kDim; ++j) {
        const double w = a(idx[m], j);
        if (w == 0.0) continue;
        auto seq = idx;
        seq[m] = j;
        const int s = permutation_sign(seq);
        if (s == 0) continue;
        d(multi_index::position(mask_of(seq)), col) += s * w;
      }
    }
  }
  return d;
}

KForm derivation(const Mat6& a, const KForm& alpha) {
  const Eigen::MatrixXcd d = derivation_matrix(a, alpha.degree()).cast<cplx>();
  return KForm(alpha.degree(), d * alpha.coeffs(), alpha.kind());
}

Mat6 two_form_matrix(const KForm& alpha) {
  if (alpha.degree() != 2) throw InputError("expected a 2-form");
  const Eigen::VectorXd c = alpha.real_coeffs(1e-9);
  Mat6 w = Mat6::Zero();
  const auto& ms = multi_index::masks(2);
  for (size_t p = 0; p < ms.size(); ++p) {
    const auto idx = multi_index::indices(ms[p]);
    w(idx[0], idx[1]) = c(p);
    w(idx[1], idx[0]) = -c(p);
  }
  return w;
}

KForm two_form(const Mat6& skew) {
  return tabulate(2, [&](const std::vector<int>& i) { return 0.5 * (skew(i[0], i[1]) - skew(i[1], i[0])); });
}

// ------------------------------------------------------------- metric

Metric::Metric(const Mat6& g, double tol_pd) {
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (!g.allFinite()) throw InputError("metric has non-finite entries");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InputError("metric is not symmetric");
  g_ = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Mat6> es(g_);
  if (es.eigenvalues().minCoeff() <= tol_pd * scale)
    throw InputError("metric is not positive definite");
  inv_ = g_.inverse();
  inv_ = 0.5 * (inv_ + inv_.transpose()).eval();
  sqrt_det_ = std::sqrt(g_.determinant());
}

KForm Metric::flat(const Vec6& x) const { return KForm::one_form(g_ * x); }

Vec6 Metric::sharp(const KForm& eta) const { return inv_ * eta.as_vec6(); }

Mat6 Metric::orthonormal_frame() const {
  Eigen::LLT<Mat6> llt(g_);
  const Mat6 l = llt.matrixL();
  return l.transpose().triangularView<Eigen::Upper>().solve(Mat6::Identity());
}

Eigen::MatrixXd form_gram(const Metric& g, int degree) {
  const auto& ms = multi_index::masks(degree);
  const int n = static_cast<int>(ms.size());
  Eigen::MatrixXd gram(n, n);
  if (degree == 0) {
    gram(0, 0) = 1.0;
    return gram;
  }
  Eigen::MatrixXd sub(degree, degree);
  for (int a = 0; a < n; ++a) {
    const auto ia = multi_index::indices(ms[a]);
    for (int b = a; b < n; ++b) {
      const auto ib = multi_index::indices(ms[b]);
      for (int r = 0; r < degree; ++r)
        for (int c = 0; c < degree; ++c) sub(r, c) = g.inverse()(ia[r], ib[c]);
      gram(a, b) = gram(b, a) = sub.determinant();
    }
  }
  return gram;
}

cplx bilinear(const Metric& g, const KForm& a, const KForm& b) {
  if (a.degree() != b.degree()) return 0.0;
  const Eigen::MatrixXcd gram = form_gram(g, a.degree()).cast<cplx>();
  return (a.coeffs().transpose() * gram * b.coeffs())(0, 0);
}

cplx inner(const Metric& g, const KForm& a, const KForm& b) {
  if (a.degree() != b.degree()) return 0.0;
  const Eigen::MatrixXcd gram = form_gram(g, a.degree()).cast<cplx>();
  return (a.coeffs().transpose() * gram * b.coeffs().conjugate())(0, 0);
}

double norm(const Metric& g, const KForm& a) {
  return std::sqrt(std::max(0.0, inner(g, a, a).real()));
}

KForm hodge_star(const Metric& g, const KForm& a) {
  const int k = a.degree();
  const Eigen::MatrixXcd gram = form_gram(g, k).cast<cplx>();
  const Eigen::VectorXcd pairing = gram * a.coeffs();
  const auto& ms = multi_index::masks(k);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(multi_index::count(kDim - k));
  for (size_t p = 0; p < ms.size(); ++p) {
    const unsigned comp = 63u & ~ms[p];
    out(multi_index::position(comp)) =
        static_cast<double>(multi_index::shuffle_sign(ms[p], comp)) * g.sqrt_det() * pairing(p);
  }
  return KForm(kDim - k, out, a.kind());
}

KForm volume_form(const Metric& g) { return g.sqrt_det() * KForm::basis({1, 2, 3, 4, 5, 6}); }

// ------------------------------------------------- complex structures

ComplexStructure::ComplexStructure(const Mat6& j, double tol) : j_(j) {
  if (!j.allFinite()) throw InputError("complex structure has non-finite entries");
  const double scale = 1.0 + j.squaredNorm() / kDim;
  if ((j * j + Mat6::Identity()).cwiseAbs().maxCoeff() > tol * scale)
    throw InputError("J does not square to -1");
}

ComplexStructure ComplexStructure::standard() {
  Mat6 j = Mat6::Zero();
  for (int b = 0; b < 3; ++b) {
    j(2 * b + 1, 2 * b) = 1.0;
    j(2 * b, 2 * b + 1) = -1.0;
  }
  return ComplexStructure(j);
}

double ComplexStructure::compatibility_residual(const Metric& g) const {
  const Mat6& m = g.matrix();
  return (j_.transpose() * m * j_ - m).cwiseAbs().maxCoeff() / m.cwiseAbs().maxCoeff();
}

void ComplexStructure::require_compatible(const Metric& g, double tol) const {
  if (compatibility_residual(g) > tol)
    throw IncompatibleError("metric and complex structure are not compatible (g(JX,JY) != g(X,Y))");
}

KForm kahler_form(const Metric& g, const ComplexStructure& j) {
  const Mat6 w = j.matrix().transpose() * g.matrix();
  return two_form(w);
}

KForm j_on_one_form(const ComplexStructure& j, const KForm& eta) {
  if (eta.degree() != 1) throw InputError("expected a 1-form");
  const Eigen::MatrixXcd jt = j.matrix().transpose().cast<cplx>();
  return KForm(1, -(jt * eta.coeffs()), eta.kind());
}

namespace {

// Lagrange projector onto the i(2p-k) eigenspace of the J-derivation.
Eigen::VectorXcd project_type(const Eigen::MatrixXcd& d, const Eigen::VectorXcd& v, int k, int p) {
  const cplx I(0.0, 1.0);
  const cplx lambda = I * static_cast<double>(2 * p - k);
  Eigen::VectorXcd out = v;
  for (int q = 0; q <= k; ++q) {
    if (q == p) continue;
    const cplx mu = I * static_cast<double>(2 * q - k);
    out = ((d * out - mu * out) / (lambda - mu)).eval();
  }
  return out;
}

}  // namespace

TypeMap type_components(const ComplexStructure& j, const KForm& alpha) {
  const int k = alpha.degree();
  const Eigen::MatrixXcd d = derivation_matrix(j.matrix(), k).cast<cplx>();
  TypeMap out;
  for (int p = 0; p <= k; ++p)
    out.emplace(std::make_pair(p, k - p),
                KForm(k, project_type(d, alpha.coeffs(), k, p), ScalarKind::complex));
  return out;
}

KForm type_component(const ComplexStructure& j, const KForm& alpha, int p, int q) {
  const int k = alpha.degree();
  if (p < 0 || q < 0 || p + q != k) throw InputError("type does not match the form degree");
  const Eigen::MatrixXcd d = derivation_matrix(j.matrix(), k).cast<cplx>();
  return KForm(k, project_type(d, alpha.coeffs(), k, p), ScalarKind::complex);
}

KForm real_type_part(const ComplexStructure& j, const KForm& alpha, int p, int q) {
  KForm out = type_component(j, alpha, p, q);
  if (p != q) out += type_component(j, alpha, q, p);
  return alpha.is_real() ? out.re() : out;
}

CVec6 vector_type_project(const ComplexStructure& j, const CVec6& x, VectorType which) {
  const cplx I(0.0, 1.0);
  const CVec6 jx = j.matrix().cast<cplx>() * x;
  return which == VectorType::holomorphic ? CVec6(0.5 * (x - I * jx)) : CVec6(0.5 * (x + I * jx));
}

}  // namespace hermlab

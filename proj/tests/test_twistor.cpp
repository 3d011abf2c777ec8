#include "doctest.h"

#include "hermlab/catalog.hpp"
#include "hermlab/errors.hpp"
#include "hermlab/gray_hervella.hpp"
#include "hermlab/twistor.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>

using namespace hermlab;
using testing::max_abs;

namespace {

const CatalogEntry& entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw std::runtime_error("missing catalog entry " + name);
}

std::vector<TwistorPoint> both_components(const Metric& g, const ComplexStructure& j0, int count,
                                          std::uint64_t seed) {
  auto out = fiber_sample(g, j0, 1, count, seed);
  auto two = fiber_sample(g, j0, 2, count, seed);
  out.insert(out.end(), two.begin(), two.end());
  return out;
}

Tensor21 random_tensor(Rng& rng) {
  Tensor21 t;
  for (auto& m : t.t.s) m = random_matrix(rng);
  return t;
}

Tensor21 torsion_of_type(Rng& rng, const Metric& g, const ComplexStructure& j, int k) {
  return torsion_from_delta_bar(delta_bar_from_nabla_omega(random_gh_component(rng, g, j, k), g, j));
}

// (g,J0)-unitary in the original coordinates
Mat6 unitary_in_basis(Rng& rng, const Metric& g, const ComplexStructure& j0) {
  const Mat6 f = adapted_frame(g, j0);
  return f * random_unitary(rng) * f.inverse();
}

Tensor21 transport(const Tensor21& t, const Mat6& u) {
  const Mat6 uinv = u.inverse();
  Tensor21 out;
  for (int i = 0; i < 6; ++i) out.t.s[i] = uinv * t.slice(u.col(i)) * u;
  return out;
}

CurvatureTensor transport(const CurvatureTensor& r, const Mat6& u) {
  const Mat6 uinv = u.inverse();
  CurvatureTensor out;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out.op(i, j) = uinv * r.op(Vec6(u.col(i)), Vec6(u.col(j))) * u;
  return out;
}

}  // namespace

TEST_CASE("adapted frame and random unitaries") {
  Rng rng = make_rng(80);
  for (int t = 0; t < 5; ++t) {
    const auto [g, j] = random_hermitian(rng);
    const Mat6 f = adapted_frame(g, j);
    CHECK(max_abs(Mat6(f.transpose() * g.matrix() * f - Mat6::Identity())) < 1e-10);
    CHECK(max_abs(Mat6(f.inverse() * j.matrix() * f - ComplexStructure::standard().matrix())) < 1e-10);
    const Mat6 u = random_unitary(rng);
    CHECK(max_abs(Mat6(u.transpose() * u - Mat6::Identity())) < 1e-12);
    const Mat6& js = ComplexStructure::standard().matrix();
    CHECK(max_abs(Mat6(u * js - js * u)) < 1e-12);
  }
}

TEST_CASE("fiber samples") {
  const Metric g = Metric::identity();
  const ComplexStructure j0 = ComplexStructure::standard();
  const TwistorPoint b = block_point(g, j0, 2);
  CHECK(max_abs(Vec6(b.j * Vec6::Unit(0) - Vec6::Unit(1))) < 1e-15);
  CHECK(max_abs(Vec6(b.j * Vec6::Unit(2) - Vec6::Unit(3))) < 1e-15);
  CHECK(max_abs(Vec6(b.j * Vec6::Unit(4) + Vec6::Unit(5))) < 1e-15);
  CHECK(max_abs(Mat6(fiber_sample(g, j0, 2, 1, 99).front().j - b.j)) == 0.0);

  CHECK_THROWS_AS(fiber_sample(g, j0, 3, 5, 1), InputError);
  CHECK_THROWS_AS(fiber_sample(g, j0, 0, 5, 1), InputError);
  CHECK_THROWS_AS(fiber_sample(g, j0, 1, 0, 1), InputError);

  Rng rng = make_rng(81);
  for (int t = 0; t < 3; ++t) {
    const auto [gr, jr] = random_hermitian(rng);
    for (int p = 1; p <= 2; ++p) {
      const auto pts = fiber_sample(gr, jr, p, 50, 7 + t);
      for (const auto& pt : pts) {
        CHECK(pt.p == p);
        CHECK(twistor_point_residual(pt, gr, jr) < 1e-10);
        Eigen::FullPivLU<Mat6> lu(pt.j - jr.matrix());
        lu.setThreshold(1e-8);
        CHECK(6 - lu.rank() == 2 * p);
      }
      const auto again = fiber_sample(gr, jr, p, 20, 7 + t);
      for (int k = 0; k < 20; ++k) CHECK((again[k].j - pts[k].j).cwiseAbs().maxCoeff() == 0.0);
      const auto other = fiber_sample(gr, jr, p, 20, 1000 + t);
      CHECK((other[5].j - pts[5].j).cwiseAbs().maxCoeff() > 1e-3);
    }
  }
}

TEST_CASE("action of j on (2,1)-tensors") {
  Rng rng = make_rng(82);
  const auto [g, j0] = random_hermitian(rng);
  const TwistorPoint pt = fiber_sample(g, j0, 1, 4, 3)[2];
  CHECK(j_action(Mat6::Zero(), random_tensor(rng), g).max_abs() == 0.0);
  CHECK(j_action(pt.j, Tensor21{}, g).max_abs() == 0.0);
  CHECK_THROWS_AS(j_action(Mat6::Identity(), Tensor21{}, g), InputError);

  const Tensor21 s = random_tensor(rng), t = random_tensor(rng);
  Tensor21 st;
  st.t = s.t + 2.0 * t.t;
  CHECK((j_action(pt.j, st, g).t - j_action(pt.j, s, g).t - 2.0 * j_action(pt.j, t, g).t).max_abs() < 1e-10);

  // s ↦ j.(j.s) has spectrum {-9 (multiplicity 54), -1 (162)}
  Eigen::MatrixXd m(216, 216);
  for (int col = 0; col < 216; ++col) {
    Tensor21 e;
    e.t.s[col / 36](col % 6, (col / 6) % 6) = 1.0;
    const Tensor21 img = j_action(pt.j, j_action(pt.j, e, g), g);
    for (int row = 0; row < 216; ++row) m(row, col) = img.t.s[row / 36](row % 6, (row / 6) % 6);
  }
  const Eigen::VectorXcd ev = m.eigenvalues();
  int nine = 0, one = 0;
  for (int k = 0; k < 216; ++k) {
    if (std::abs(ev(k) + 9.0) < 1e-7) ++nine;
    if (std::abs(ev(k) + 1.0) < 1e-7) ++one;
  }
  CHECK(nine == 54);
  CHECK(one == 162);
}

TEST_CASE("torsion eigensplit") {
  Rng rng = make_rng(83);
  const auto [g, j0] = random_hermitian(rng);
  const auto pts = both_components(g, j0, 20, 4);
  const TorsionSplit zero = torsion_eigensplit(Tensor21{}, pts[3], g);
  CHECK(zero.plus3 + zero.minus3 + zero.plus1 + zero.minus1 == 0.0);

  for (int t = 0; t < 5; ++t) {
    const Tensor21 s = random_tensor(rng);
    const TorsionSplit sp = torsion_eigensplit(s, pts[static_cast<size_t>(t) * 7], g);
    CHECK((sp.pm3.t + sp.pm1.t - s.t).max_abs() < 1e-10);
    const double a = tensor21_norm(s, g), b = tensor21_norm(sp.pm3, g), c = tensor21_norm(sp.pm1, g);
    CHECK(a * a == doctest::Approx(b * b + c * c).epsilon(1e-10));
    CHECK(sp.plus3 == sp.minus3);
  }

  const Tensor21 w1 = torsion_of_type(rng, g, j0, 1);
  for (const auto& pt : pts) CHECK(torsion_eigensplit(w1, pt, g).minus3 < 1e-9 * tensor21_norm(w1, g));
}

TEST_CASE("condition T agrees with the -3i component") {
  Rng rng = make_rng(84);
  int small = 0, large = 0;
  for (int t = 0; t < 100; ++t) {
    const auto [g, j0] = random_hermitian(rng);
    const Tensor21 s = t % 2 ? torsion_of_type(rng, g, j0, t % 4 == 1 ? 1 : 4) : random_tensor(rng);
    const TwistorPoint pt = fiber_sample(g, j0, 1 + t % 2, 3, static_cast<std::uint64_t>(t))[2];
    const double r = condition_T_residual(s, pt, g);
    const double c = torsion_eigensplit(s, pt, g).minus3 / tensor21_norm(s, g);
    CHECK(std::abs(r - c) < 1e-8 * std::max(r, c) + 1e-11);
    CHECK((r < 1e-8) == (c < 1e-8));
    (r < 1e-8 ? small : large) += 1;
  }
  CHECK(small == 50);
  CHECK(large == 50);
}

TEST_CASE("condition T on catalog and constructed torsions") {
  const Metric g = Metric::identity();
  const ComplexStructure j0 = ComplexStructure::standard();
  const auto pts = both_components(g, j0, 50, 5);
  CHECK(condition_T_residual(Tensor21{}, pts[4], g) == 0.0);

  const CatalogEntry& nil = entry("nil-hermitian");
  const Tensor21 t3 = torsion_from_delta_bar(delta_bar(levi_civita(nil.lie, nil.g), nil.J));
  double worst = 0.0;
  for (const auto& pt : both_components(nil.g, nil.J, 50, 5)) worst = std::max(worst, condition_T_residual(t3, pt, nil.g));
  CHECK(worst > 1e-3);

  const Cov3 lee = lee_section(KForm::basis({1}), g, j0);
  const Tensor21 t4 = torsion_from_delta_bar(delta_bar_from_nabla_omega(lee, g, j0));
  CHECK(t4.max_abs() > 0.1);
  for (const auto& pt : pts) CHECK(condition_T_residual(t4, pt, g) < 1e-9);
}

TEST_CASE("condition R") {
  Rng rng = make_rng(85);
  const auto [g, j0] = random_hermitian(rng);
  const auto pts = both_components(g, j0, 50, 6);
  CHECK(condition_R_residual(CurvatureTensor{}, pts[0], g) == 0.0);
  const CurvatureTensor sphere = constant_curvature(g);
  for (const auto& pt : pts) CHECK(condition_R_residual(sphere, pt, g) < 1e-9);

  const CatalogEntry& nk = entry("s3xs3-nk");
  const CurvatureTensor rb = curvature(canonical_connection(levi_civita(nk.lie, nk.g), nk.J, nk.g), nk.lie);
  double worst = 0.0;
  for (const auto& pt : both_components(nk.g, nk.J, 50, 6)) worst = std::max(worst, condition_R_residual(rb, pt, nk.g));
  CHECK(worst > 1e-3);
}

TEST_CASE("residuals are conjugation equivariant") {
  Rng rng = make_rng(86);
  for (int t = 0; t < 10; ++t) {
    const auto [g, j0] = random_hermitian(rng);
    const TwistorPoint pt = fiber_sample(g, j0, 1 + t % 2, 4, static_cast<std::uint64_t>(t))[3];
    const Mat6 u = unitary_in_basis(rng, g, j0);
    CHECK(max_abs(Mat6(u.transpose() * g.matrix() * u - g.matrix())) < 1e-9 * max_abs(g.matrix()));
    const TwistorPoint moved{u * pt.j * u.inverse(), pt.p};
    const Tensor21 s = random_tensor(rng);
    CHECK(condition_T_residual(s, moved, g) ==
          doctest::Approx(condition_T_residual(transport(s, u), pt, g)).epsilon(1e-9));
    CurvatureTensor r;
    for (auto& m : r.r) m = random_matrix(rng);
    CHECK(condition_R_residual(r, moved, g) ==
          doctest::Approx(condition_R_residual(transport(r, u), pt, g)).epsilon(1e-9));
  }
}

TEST_CASE("same almost complex structure check") {
  Rng rng = make_rng(87);
  const auto [g, j0] = random_hermitian(rng);
  const auto pts = both_components(g, j0, 200, 8);
  CHECK(same_acs_check(Tensor21{}, pts, g, j0).holds);
  const SameAcsResult lee = same_acs_check(lee_type_eta(random_form(rng, 1), g, j0), pts, g, j0);
  CHECK(lee.holds);
  CHECK(lee.max_residual < 1e-10);
  const SameAcsResult l21 = same_acs_check(random_lambda21_eta(rng, g, j0), pts, g, j0);
  CHECK_FALSE(l21.holds);
  CHECK(l21.max_residual > 1e-4);

  Tensor21 bad;
  bad.t.s[0] = Mat6::Identity();
  CHECK_THROWS_AS(same_acs_check(bad, pts, g, j0), InputError);
}

TEST_CASE("integrability reports") {
  for (const auto& e : catalog()) {
    const IntegrabilityReport r = integrability_for_structure(e.lie, e.g, e.J, 60, 11);
    CAPTURE(e.name);
    CHECK(verdict_name(r.verdict) == e.expected_twistor);
    CHECK_FALSE(r.inconclusive);
    for (const auto& c : r.components) {
      CHECK(std::accumulate(c.t_histogram.begin(), c.t_histogram.end(), 0) == 60);
      CHECK(std::accumulate(c.r_histogram.begin(), c.r_histogram.end(), 0) == 60);
    }
  }
  const CatalogEntry& torus = entry("torus-kahler");
  const IntegrabilityReport flat = integrability_for_structure(torus.lie, torus.g, torus.J, 10, 1);
  CHECK(flat.t_residual_max == 0.0);
  CHECK(flat.r_residual_max == 0.0);

  const CatalogEntry& nk = entry("s3xs3-nk");
  const IntegrabilityReport a = integrability_for_structure(nk.lie, nk.g, nk.J, 40, 5);
  const IntegrabilityReport b = integrability_for_structure(nk.lie, nk.g, nk.J, 40, 5);
  CHECK(a.t_residual_max == b.t_residual_max);
  CHECK(a.r_residual_max == b.r_residual_max);
  CHECK(a.components[1].r_histogram == b.components[1].r_histogram);
  CHECK(a.t_residual_max < kTwistorPass);
  CHECK(a.r_residual_max > kTwistorFail);

  CHECK_THROWS_AS(integrability_for_structure(nk.lie, nk.g, nk.J, 0, 5), InputError);
}

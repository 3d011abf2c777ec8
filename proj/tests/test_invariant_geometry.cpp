#include "doctest.h"

#include "hermlab/catalog.hpp"
#include "hermlab/errors.hpp"
#include "hermlab/invariant_geometry.hpp"
#include "hermlab/random.hpp"
#include "support.hpp"

#include <cmath>

using namespace hermlab;
using testing::max_abs;
using testing::max_diff;

namespace {

// dα(X0..Xk) = Σ_{i<j} (-1)^{i+j} α([Xi,Xj], X0..^i..^j..Xk) on basis tuples.
KForm differential_by_evaluation(const LieAlgebra6& lie, const KForm& a) {
  return tabulate(a.degree() + 1, [&](const std::vector<int>& idx) {
    double total = 0.0;
    const int n = static_cast<int>(idx.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<Vec6> args{lie.bracket(Vec6(Vec6::Unit(idx[i])), Vec6(Vec6::Unit(idx[j])))};
        for (int m = 0; m < n; ++m)
          if (m != i && m != j) args.push_back(Vec6::Unit(idx[m]));
        total += ((i + j) % 2 ? -1.0 : 1.0) * a.evaluate_real(args);
      }
    return total;
  });
}

const CatalogEntry& entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw std::runtime_error("missing catalog entry " + name);
}

std::vector<LieAlgebra6> sample_algebras() {
  return {algebras::abelian(), algebras::su2_su2(), algebras::iwasawa(), algebras::complex_solvable(),
          lie_from_brackets({{1, 2, 5, 1.0}})};
}

}  // namespace

TEST_CASE("structure constants are validated") {
  std::array<Mat6, 6> c;
  for (auto& m : c) m.setZero();
  c[4](0, 1) = 1.0;
  CHECK_THROWS_AS(LieAlgebra6{c}, InputError);
  c[4](1, 0) = -1.0;
  CHECK_NOTHROW(LieAlgebra6{c});
  CHECK(algebras::su2_su2().jacobi_residual() < 1e-15);
}

TEST_CASE("d squared vanishes exactly when Jacobi holds") {
  Rng rng = make_rng(41);
  for (const auto& lie : sample_algebras()) {
    CHECK(lie.jacobi_residual() < kJacobiTol);
    for (int k = 1; k <= 4; ++k) {
      const KForm a = random_form(rng, k);
      CHECK(ce_differential(lie, ce_differential(lie, a)).max_abs() < 1e-12);
    }
  }
  for (const auto& base : {algebras::su2_su2(), algebras::iwasawa(), algebras::complex_solvable()}) {
    std::array<Mat6, 6> c = base.constants();
    c[0](1, 4) += 0.3;
    c[0](4, 1) -= 0.3;
    const LieAlgebra6 bad = LieAlgebra6::unchecked(c);
    CHECK(bad.jacobi_residual() > kJacobiTol);
    double worst = 0.0;
    for (int m = 0; m < 6; ++m)
      worst = std::max(worst, ce_differential(bad, ce_differential(bad, KForm::one_form(Vec6::Unit(m)))).max_abs());
    CHECK(worst > 1e-3);
    CHECK_THROWS_AS(LieAlgebra6{c}, InputError);
  }
}

TEST_CASE("Chevalley-Eilenberg differential examples") {
  Rng rng = make_rng(42);
  CHECK(ce_differential(algebras::abelian(), random_form(rng, 2)).max_abs() == 0.0);
  const LieAlgebra6 heis = lie_from_brackets({{1, 2, 5, 1.0}});
  CHECK(max_diff(ce_differential(heis, KForm::basis({5})), -1.0 * KForm::basis({1, 2})) == 0.0);
  for (const auto& lie : sample_algebras())
    for (int k = 0; k <= 5; ++k) {
      const KForm a = random_form(rng, k);
      CHECK(max_diff(ce_differential(lie, a), differential_by_evaluation(lie, a)) < 1e-12);
    }
}

TEST_CASE("Levi-Civita connection") {
  Rng rng = make_rng(43);
  CHECK(levi_civita(algebras::abelian(), random_metric(rng)).gamma.max_abs() == 0.0);

  const LieAlgebra6 su = algebras::su2_su2();
  const ConnectionCoeffs bi = levi_civita(su, Metric::identity());
  for (int t = 0; t < 10; ++t) {
    const Vec6 x = random_vector(rng), y = random_vector(rng);
    CHECK((bi.along(x) * y - 0.5 * su.bracket(x, y)).cwiseAbs().maxCoeff() < 1e-12);
  }

  for (const auto& lie : sample_algebras()) {
    const Metric g = random_metric(rng);
    const ConnectionCoeffs lc = levi_civita(lie, g);
    CHECK(torsion(lc, lie).max_abs() < 1e-10);
    CHECK(nabla_metric_residual(lc, g) < 1e-10);
    // Koszul residual on random vectors
    const Vec6 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);
    const double lhs = 2.0 * g(lc.along(x) * y, z);
    const double rhs = g(lie.bracket(x, y), z) - g(lie.bracket(x, z), y) - g(lie.bracket(y, z), x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("Nijenhuis tensor") {
  Rng rng = make_rng(44);
  const auto [g0, j0] = random_hermitian(rng);
  CHECK(nijenhuis(algebras::abelian(), j0).max_abs() == 0.0);

  const CatalogEntry& nk = entry("s3xs3-nk");
  const Tensor21 n = nijenhuis(nk.lie, nk.J);
  CHECK(n.max_abs() > 0.1);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        const double a = nk.g(n.apply(Vec6(Vec6::Unit(i)), Vec6(Vec6::Unit(j))), Vec6::Unit(k));
        const double b = nk.g(n.apply(Vec6(Vec6::Unit(j)), Vec6(Vec6::Unit(k))), Vec6::Unit(i));
        CHECK(a == doctest::Approx(b).epsilon(1e-12).scale(1.0));
      }

  const CatalogEntry& nil = entry("nil-hermitian");
  CHECK(nijenhuis(nil.lie, nil.J).max_abs() < 1e-15);

  for (const auto& lie : sample_algebras()) {
    const auto [g, j] = random_hermitian(rng);
    const Tensor21 nn = nijenhuis(lie, j);
    const Mat6& jm = j.matrix();
    for (int t = 0; t < 5; ++t) {
      const Vec6 x = random_vector(rng), y = random_vector(rng);
      CHECK((nn.apply(x, y) + nn.apply(y, x)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((nn.apply(Vec6(jm * x), y) + jm * nn.apply(x, y)).cwiseAbs().maxCoeff() < 1e-9);
      // classical tensor [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] equals -8 N
      const Vec6 jx = jm * x, jy = jm * y;
      const Vec6 classical = lie.bracket(jx, jy) - jm * lie.bracket(jx, y) - jm * lie.bracket(x, jy) - lie.bracket(x, y);
      CHECK((classical + 8.0 * nn.apply(x, y)).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("nabla omega") {
  CHECK(nabla_omega(ConnectionCoeffs{}, KForm::basis({1, 2})).s.max_abs() == 0.0);
  const CatalogEntry& torus = entry("torus-kahler");
  const ConnectionCoeffs lc0 = levi_civita(torus.lie, torus.g);
  CHECK(nabla_omega(lc0, kahler_form(torus.g, torus.J)).s.max_abs() == 0.0);

  Rng rng = make_rng(45);
  for (const auto& lie : sample_algebras()) {
    const auto [g, j] = random_hermitian(rng);
    const ConnectionCoeffs lc = levi_civita(lie, g);
    for (const auto& nj : nabla_endomorphism(lc, j.matrix()))
      CHECK(max_abs(Mat6(nj * j.matrix() + j.matrix() * nj)) < 1e-9 * (1 + max_abs(nj)));
    // ∇ω(X;Y,Z) = g((∇_X J)Y, Z)
    const Cov3 s = nabla_omega(lc, kahler_form(g, j));
    const auto nj = nabla_endomorphism(lc, j.matrix());
    for (int i = 0; i < 6; ++i)
      CHECK(max_abs(Mat6(s.s.s[i] - nj[i].transpose() * g.matrix())) < 1e-9 * (1 + max_abs(nj[i])));
  }
}

TEST_CASE("canonical Hermitian connection") {
  const CatalogEntry& torus = entry("torus-kahler");
  const ConnectionCoeffs lc0 = levi_civita(torus.lie, torus.g);
  CHECK((canonical_connection(lc0, torus.J, torus.g).gamma - lc0.gamma).max_abs() == 0.0);

  Mat6 d = Mat6::Identity();
  d(0, 0) = 3.0;
  CHECK_THROWS_AS(canonical_connection(lc0, torus.J, Metric(d)), IncompatibleError);

  Rng rng = make_rng(46);
  for (const auto& lie : sample_algebras()) {
    const auto [g, j] = random_hermitian(rng);
    const ConnectionCoeffs lc = levi_civita(lie, g);
    const ConnectionCoeffs cb = canonical_connection(lc, j, g);
    CHECK(nabla_j_residual(cb, j) < 1e-10);
    CHECK(nabla_metric_residual(cb, g) < 1e-10);
    const Tensor21 db = delta_bar(lc, j);
    for (int t = 0; t < 5; ++t) {
      const Mat6 dx = db.slice(random_vector(rng));
      CHECK(max_abs(Mat6(dx * j.matrix() + j.matrix() * dx)) < 1e-9 * (1 + max_abs(dx)));
    }
    // for any Hermitian connection, the J-anticommuting part of ∇ - ∇̃ is δ̄
    Tensor21 eta;
    for (int i = 0; i < 6; ++i) {
      const Mat6 a = random_matrix(rng);
      const Mat6 skew = g.inverse() * (a - a.transpose());
      eta.t.s[i] = 0.5 * (skew - j.matrix() * skew * j.matrix());
    }
    ConnectionCoeffs other;
    other.gamma = cb.gamma + eta.t;
    CHECK(nabla_j_residual(other, j) < 1e-9);
    CHECK(nabla_metric_residual(other, g) < 1e-9);
    for (int i = 0; i < 6; ++i) {
      const Mat6 diff = lc.gamma.s[i] - other.gamma.s[i];
      const Mat6 anti = 0.5 * (diff + j.matrix() * diff * j.matrix());
      CHECK(max_abs(Mat6(anti - db.t.s[i])) < 1e-9 * (1 + max_abs(diff)));
    }
  }
}

TEST_CASE("torsion of the canonical connection on the nearly Kaehler entry") {
  const CatalogEntry& nk = entry("s3xs3-nk");
  const ConnectionCoeffs lc = levi_civita(nk.lie, nk.g);
  CHECK(torsion(lc, nk.lie).max_abs() < 1e-14);
  const ConnectionCoeffs cb = canonical_connection(lc, nk.J, nk.g);
  const Tensor21 tb = torsion(cb, nk.lie);
  CHECK(tb.max_abs() > 0.1);
  const auto nj = nabla_endomorphism(lc, nk.J.matrix());
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const Vec6 second_route = 0.5 * (-nk.J.matrix() * nj[i] * Vec6::Unit(j) + nk.J.matrix() * nj[j] * Vec6::Unit(i));
      CHECK((tb.apply(Vec6(Vec6::Unit(i)), Vec6(Vec6::Unit(j))) - second_route).cwiseAbs().maxCoeff() < 1e-14);
      for (int k = 0; k < 6; ++k) {
        const double a = nk.g(tb.apply(Vec6(Vec6::Unit(i)), Vec6(Vec6::Unit(j))), Vec6::Unit(k));
        const double b = nk.g(tb.apply(Vec6(Vec6::Unit(j)), Vec6(Vec6::Unit(k))), Vec6::Unit(i));
        CHECK(a == doctest::Approx(b).scale(1.0).epsilon(1e-12));
      }
    }
  Rng rng = make_rng(47);
  Tensor21 arb;
  for (auto& m : arb.t.s) m = random_matrix(rng);
  ConnectionCoeffs flat_arb;
  flat_arb.gamma = arb.t;
  const Tensor21 ta = torsion(flat_arb, algebras::abelian());
  const Vec6 x = random_vector(rng), y = random_vector(rng);
  CHECK((ta.apply(x, y) - (arb.apply(x, y) - arb.apply(y, x))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("curvature") {
  CHECK(curvature(ConnectionCoeffs{}, algebras::abelian()).max_abs() == 0.0);
  const LieAlgebra6 su = algebras::su2_su2();
  const CurvatureTensor r = curvature(levi_civita(su, Metric::identity()), su);
  Rng rng = make_rng(48);
  for (int t = 0; t < 10; ++t) {
    const Vec6 x = random_vector(rng), y = random_vector(rng), z = random_vector(rng);
    CHECK((r.op(x, y) * z + 0.25 * su.bracket(su.bracket(x, y), z)).cwiseAbs().maxCoeff() < 1e-12);
  }
  for (const auto& lie : sample_algebras()) {
    const Metric g = random_metric(rng);
    const CurvatureTensor rl = curvature(levi_civita(lie, g), lie);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        CHECK(max_abs(Mat6(rl.op(i, j) + rl.op(j, i))) < 1e-12 * (1 + rl.max_abs()));
        const Mat6 low = g.matrix() * rl.op(i, j);
        CHECK(max_abs(Mat6(low + low.transpose())) < 1e-9 * (1 + rl.max_abs()));
        for (int k = 0; k < 6; ++k) {
          const Vec6 b = rl.op(i, j).col(k) + rl.op(j, k).col(i) + rl.op(k, i).col(j);
          CHECK(b.cwiseAbs().maxCoeff() < 1e-9 * (1 + rl.max_abs()));
        }
      }
  }
}

TEST_CASE("xi squared and the canonical curvature of the nearly Kaehler entry") {
  CHECK(xi_squared(Tensor21{}, Metric::identity()).max_abs() == 0.0);

  const CatalogEntry& nk = entry("s3xs3-nk");
  const ConnectionCoeffs lc = levi_civita(nk.lie, nk.g);
  const ConnectionCoeffs cb = canonical_connection(lc, nk.J, nk.g);
  const Tensor21 xi = delta_bar(lc, nk.J);
  CHECK(covariant_derivative_residual(cb, xi) < 1e-12);
  const CurvatureTensor r = curvature(lc, nk.lie);
  const CurvatureTensor rb = curvature(cb, nk.lie);
  CHECK((rb - (r - xi_squared(xi, nk.g))).max_abs() < 1e-12);

  // the variant with ξ_{ξ_X Y - ξ_Y X} entering with a plus sign does not reproduce R̄
  CurvatureTensor plus_variant = xi_squared(xi, nk.g);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      plus_variant.op(i, j) += 2.0 * xi.t.contract(Vec6(xi.t.s[i].col(j) - xi.t.s[j].col(i)));
  CHECK((rb - (r - plus_variant)).max_abs() > 1e-2);

  Rng rng = make_rng(49);
  const Metric g = random_metric(rng);
  Tensor21 skew;
  for (auto& m : skew.t.s) {
    const Mat6 a = random_matrix(rng);
    m = g.inverse() * (a - a.transpose());
  }
  const CurvatureTensor q = xi_squared(skew, g);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(max_abs(Mat6(q.op(i, j) + q.op(j, i))) < 1e-10 * (1 + q.max_abs()));
  Tensor21 bad;
  bad.t.s[0] = Mat6::Identity();
  CHECK_THROWS_AS(xi_squared(bad, g), InputError);
}

TEST_CASE("two-form to endomorphism") {
  Rng rng = make_rng(50);
  const Metric g = random_metric(rng);
  const KForm beta = random_form(rng, 2);
  const Mat6 a = endomorphism_from_two_form(g, beta);
  const Vec6 x = random_vector(rng), y = random_vector(rng);
  CHECK(g(a * x, y) == doctest::Approx(beta.evaluate_real({x, y})).epsilon(1e-10));
}

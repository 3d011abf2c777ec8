#include "hermlab/catalog.hpp"

#include "hermlab/errors.hpp"
#include "hermlab/random.hpp"
#include "hermlab/stable_forms.hpp"

#include <cmath>

namespace hermlab {

LieAlgebra6 lie_from_brackets(const std::vector<BracketTerm>& terms) {
  std::array<Mat6, 6> c;
  for (auto& m : c) m.setZero();
  for (const auto& t : terms) {
    if (t.i < 1 || t.i > 6 || t.j < 1 || t.j > 6 || t.k < 1 || t.k > 6 || t.i == t.j)
      throw InputError("bracket indices must be distinct values in 1..6");
    c[t.k - 1](t.i - 1, t.j - 1) += t.v;
    c[t.k - 1](t.j - 1, t.i - 1) -= t.v;
  }
  return LieAlgebra6(c);
}

namespace algebras {

LieAlgebra6 abelian() { return LieAlgebra6(); }

LieAlgebra6 su2_su2() {
  return lie_from_brackets({{1, 2, 3, 1.0}, {2, 3, 1, 1.0}, {3, 1, 2, 1.0},
                            {4, 5, 6, 1.0}, {5, 6, 4, 1.0}, {6, 4, 5, 1.0}});
}

LieAlgebra6 iwasawa() {
  return lie_from_brackets({{1, 3, 5, -1.0}, {2, 4, 5, 1.0}, {1, 4, 6, -1.0}, {2, 3, 6, -1.0}});
}

LieAlgebra6 heisenberg5_r() { return lie_from_brackets({{1, 2, 5, 1.0}, {3, 4, 5, 1.0}}); }

LieAlgebra6 complex_solvable() {
  return lie_from_brackets({{1, 3, 3, 1.0}, {1, 4, 4, 1.0}, {2, 3, 4, 1.0}, {2, 4, 3, -1.0},
                            {1, 5, 5, -1.0}, {1, 6, 6, -1.0}, {2, 5, 6, -1.0}, {2, 6, 5, 1.0}});
}

}  // namespace algebras

KForm solvable_fixture_omega() {
  return sample_admissible_forms(algebras::complex_solvable(), 1, 7).front();
}

std::vector<KForm> sample_admissible_forms(const LieAlgebra6& lie, int count, std::uint64_t seed,
                                           int max_draws) {
  std::vector<KForm> out;
  Rng rng = make_rng(seed, 11);
  for (int draw = 0; draw < max_draws && static_cast<int>(out.size()) < count; ++draw) {
    KForm omega = random_form(rng, 2);
    try {
      su3_from_2form(omega, ce_differential(lie, omega));
    } catch (const ConstructionError&) {
      continue;
    }
    out.push_back(std::move(omega));
  }
  if (static_cast<int>(out.size()) < count)
    throw ConstructionError("only " + std::to_string(out.size()) + " admissible forms in " +
                            std::to_string(max_draws) + " draws");
  return out;
}

namespace {

CatalogEntry nearly_kaehler_entry() {
  Mat6 g = Mat6::Identity();
  Mat6 j = Mat6::Zero();
  const double r = 1.0 / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) {
    g(i, i + 3) = g(i + 3, i) = -0.5;
    j(i, i) = -r;
    j(i, i + 3) = 2.0 * r;
    j(i + 3, i) = -2.0 * r;
    j(i + 3, i + 3) = r;
  }
  return {"s3xs3-nk", "homogeneous nearly Kähler S3×S3 on su(2)⊕su(2)", algebras::su2_su2(), Metric(g),
          ComplexStructure(j), "W1", "curvature_obstruction"};
}

CatalogEntry solvable_entry() {
  const LieAlgebra6 lie = algebras::complex_solvable();
  const KForm omega = solvable_fixture_omega();
  const SU3Structure s = su3_from_2form(omega, ce_differential(lie, omega));
  return {"solvable-su3", "structure built from a 2-form on a realified complex solvable algebra", lie,
          s.g, s.J, "W1+W2+W4", "torsion_obstruction"};
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"torus-kahler", "flat Kähler torus", algebras::abelian(), Metric::identity(),
       ComplexStructure::standard(), "Kähler", "integrable_evidence"},
      nearly_kaehler_entry(),
      {"nil-hermitian", "Iwasawa nilmanifold with a left-invariant integrable J", algebras::iwasawa(),
       Metric::identity(), ComplexStructure::standard(), "W3", "torsion_obstruction"},
      {"heisenberg-lck", "Vaisman structure on h5×R with dω = -ω∧e⁶", algebras::heisenberg5_r(),
       Metric::identity(), ComplexStructure::standard(), "W4", "curvature_obstruction"},
      solvable_entry(),
  };
  return entries;
}

std::optional<CatalogEntry> find_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  return std::nullopt;
}

}  // namespace hermlab

#pragma once

#include "hermlab/exterior.hpp"
#include "hermlab/invariant_geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hermlab {

/// Builds structure constants from 1-based entries [e_i, e_j] = v e_k.
struct BracketTerm {
  int i, j, k;
  double v;
};
LieAlgebra6 lie_from_brackets(const std::vector<BracketTerm>& terms);

namespace algebras {

LieAlgebra6 abelian();
/// su(2) ⊕ su(2) with [e1,e2] = e3 (cyclic) and [e4,e5] = e6 (cyclic).
LieAlgebra6 su2_su2();
/// Complex Heisenberg algebra in real coordinates.
LieAlgebra6 iwasawa();
/// h5 ⊕ R with [e1,e2] = [e3,e4] = e5.
LieAlgebra6 heisenberg5_r();
/// Realification of the complex solvable algebra [Z1,Z2] = Z2, [Z1,Z3] = -Z3.
LieAlgebra6 complex_solvable();

}  // namespace algebras

struct CatalogEntry {
  std::string name;
  std::string description;
  LieAlgebra6 lie;
  Metric g = Metric::identity();
  ComplexStructure J = ComplexStructure::standard();
  std::string expected_type;
  std::string expected_twistor;
};

const std::vector<CatalogEntry>& catalog();
std::optional<CatalogEntry> find_entry(const std::string& name);

/// 2-form on complex_solvable() used for the catalog's constructed entry.
KForm solvable_fixture_omega();

/// `count` Gaussian 2-forms on `lie` whose jets lie in the open set of the SU(3) construction,
/// drawn by rejection from the generator stream of `seed`. Throws if `max_draws` is exhausted.
std::vector<KForm> sample_admissible_forms(const LieAlgebra6& lie, int count, std::uint64_t seed,
                                           int max_draws = 200000);

}  // namespace hermlab

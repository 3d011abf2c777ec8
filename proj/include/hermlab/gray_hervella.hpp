#pragma once

#include "hermlab/exterior.hpp"
#include "hermlab/invariant_geometry.hpp"
#include "hermlab/random.hpp"
#include "hermlab/stable_forms.hpp"

#include <array>
#include <optional>
#include <string>

namespace hermlab {

/// Relative and absolute thresholds for declaring a Gray–Hervella component present.
inline constexpr double kGHRelTol = 1e-6;
inline constexpr double kGHAbsTol = 1e-9;

/// Tensor norm Σ_a Σ_{b<c} s(f_a; f_b, f_c)² over a g-orthonormal frame f.
double cov3_norm(const Cov3& s, const Metric& g);
/// Same for (2,1)-tensors: Σ_{a,b} |T(f_a, f_b)|²_g.
double tensor21_norm(const Tensor21& t, const Metric& g);

/// (b s)(X,Y,Z) = s(X;Y,Z) + s(Y;Z,X) + s(Z;X,Y); throws if s is not skew in its last pair.
KForm bianchi_sum(const Cov3& s, double tol = 1e-10);

struct DOmegaSplit {
  KForm psi{3};
  KForm chi{3};
  KForm theta{1};
};

/// dω = ψ + χ + ω∧θ with ψ of type (3,0)+(0,3) and χ primitive of type (2,1)+(1,2).
DOmegaSplit decompose_domega(const KForm& omega, const KForm& domega, const Metric& g,
                             const ComplexStructure& j);

struct GHDecomposition {
  std::array<Cov3, 4> w;
  std::array<double, 4> norms{};
  double total = 0.0;
  KForm theta{1};
  KForm psi{3};
  KForm chi{3};
  /// "Kähler" or a "+"-joined list such as "W1+W4".
  std::string type;
  /// present[k-1] is true when W_k is above threshold.
  std::array<bool, 4> present{};
};

/// Lee-type section X ↦ X♭∧η - (JX)♭∧Jη of Λ¹⊗[[λ^{2,0}]].
Cov3 lee_section(const KForm& eta, const Metric& g, const ComplexStructure& j);

/// Splits ∇ω into W1..W4. Throws InputError if some ∇_Xω is not J-anti-invariant.
GHDecomposition project_gray_hervella(const Cov3& nabla_omega, const Metric& g, const ComplexStructure& j,
                                      double rel_tol = kGHRelTol);

/// Conventional name for a type string (Kähler, nearly Kähler, LCK, ...).
std::string class_label(const std::string& type);

struct NijenhuisSplit {
  Tensor21 n1;
  Tensor21 n2;
};

/// N1 is the g-totally antisymmetric part of N, N2 = N - N1.
NijenhuisSplit nijenhuis_decompose(const Tensor21& n, const Metric& g);

/// (N#α)(X0..Xp) = 2 Σ_{i<j} (-1)^{i+j} α(N(Xi,Xj), X0..^i..^j..Xp) for α of type (p,0)+(0,p).
KForm sharp_op(const Tensor21& n, const KForm& alpha, const ComplexStructure& j, double tol = 1e-9);

struct NKCheck {
  KForm sigma{1};
  /// ‖dψ - σ∧ψ‖ and ‖dφ - σ∧φ + (2/3)ω∧ω‖ in the metric norm.
  double dpsi_residual = 0.0;
  double dphi_residual = 0.0;
  /// Residual of the normal equations for σ.
  double normal_residual = 0.0;
};

NKCheck nk_characteristic_check(const SU3Structure& su3, const LieAlgebra6& lie);

struct ConformalResult {
  Metric g;
  Cov3 nabla_omega;
  GHDecomposition gh;
};

/// Pointwise change g' = f g with differential df at the point.
ConformalResult conformal_pointwise(const Metric& g, const ComplexStructure& j, const Cov3& nabla_omega,
                                    const KForm& df, double f);

/// g(δ̄_X Y, Z) = -½ ∇ω(X; Y, JZ).
Tensor21 delta_bar_from_nabla_omega(const Cov3& nabla_omega, const Metric& g, const ComplexStructure& j);
/// Torsion of ∇ - δ̄ for torsion-free ∇: T(X,Y) = δ̄_Y X - δ̄_X Y.
Tensor21 torsion_from_delta_bar(const Tensor21& delta);

/// Random element of W_k (k = 1..4) for (g, J).
Cov3 random_gh_component(Rng& rng, const Metric& g, const ComplexStructure& j, int k);

struct Classification {
  GHDecomposition gh;
  KForm dtheta{2};
  bool lee_closed = true;
  double nijenhuis_norm = 0.0;
  double n1_norm = 0.0;
  double n2_norm = 0.0;
  /// Present when the (3,0)+(0,3) part of dω is stable.
  std::optional<NKCheck> nk;
};

/// Classification of an invariant almost Hermitian structure; throws IncompatibleError if (g,J) is not.
Classification classify(const LieAlgebra6& lie, const Metric& g, const ComplexStructure& j,
                        double rel_tol = kGHRelTol);

}  // namespace hermlab

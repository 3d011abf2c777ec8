#pragma once

#include "hermlab/exterior.hpp"

#include <map>
#include <string>

namespace hermlab {

/// ω₀ = e¹²+e³⁴+e⁵⁶, ψ₀ = Re((e¹+ie²)∧(e³+ie⁴)∧(e⁵+ie⁶)), φ₀ its imaginary part.
KForm standard_omega();
KForm standard_psi();
KForm standard_phi();

/// Relative tolerance for μ(ψ) = (2/3) μ(ω).
inline constexpr double kC3Tol = 1e-8;

struct SU3Structure {
  KForm omega{2};
  KForm psi{3};
  KForm phi{3};
  ComplexStructure J = ComplexStructure::standard();
  Metric g = Metric::identity();
  /// Lee form of the 2-form jet (zero unless built by su3_from_2form).
  KForm theta{1};
  /// Factor applied to ψ_ω so that (c3) holds.
  double scale = 1.0;
};

struct StabilityReport {
  double kappa_value = 0.0;
  bool r1 = false, r2 = false, c1 = false, c2 = false, c3 = false;
  std::map<std::string, double> residuals;

  bool all() const { return r1 && r2 && c1 && c2 && c3; }
};

/// Endomorphism K with K(X) ⊗ vol = A(ι_Xψ ∧ ψ), orientation e¹²³⁴⁵⁶ scaled by `orientation`.
Mat6 hitchin_k(const KForm& psi, double orientation = 1.0);
/// κ(ψ) = tr(K²)/6 as a multiple of (e¹²³⁴⁵⁶)².
double kappa(const KForm& psi);

/// J = -K/√(-κ); the sign makes ψ₀ give Je₁ = e₂. `orientation` = -1 flips J.
ComplexStructure j_from_psi(const KForm& psi, double orientation = 1.0, double tol = kDefaultTol);

/// φ(X,Y,Z) = -ψ(JX,Y,Z), so that ψ + iφ has type (3,0).
KForm phi_companion(const KForm& psi, const ComplexStructure& j, double tol = kDefaultTol);

/// μ(ω) = ω³ and μ(ψ) = ψ∧φ as multiples of e¹²³⁴⁵⁶.
double mu_omega(const KForm& omega);
double mu_psi(const KForm& psi, const KForm& phi);

/// Evaluates (r1), (r2), (c1), (c2), (c3). J takes the orientation of ω³.
StabilityReport check_su3(const KForm& omega, const KForm& psi, double tol = kDefaultTol);

/// Unique θ with dω∧ω = θ∧ω∧ω.
KForm lee_from_domega(const KForm& omega, const KForm& domega);

/// SU(3) structure attached to the jet (ω, dω) after normalising ψ_ω = dω - θ∧ω.
SU3Structure su3_from_2form(const KForm& omega, const KForm& domega, double tol = kDefaultTol);

/// SU(3) structure from a compatible pair (ω, ψ) without rescaling.
SU3Structure su3_from_pair(const KForm& omega, const KForm& psi, double tol = kDefaultTol);

}  // namespace hermlab

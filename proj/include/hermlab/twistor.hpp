#pragma once

#include "hermlab/exterior.hpp"
#include "hermlab/invariant_geometry.hpp"
#include "hermlab/random.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hermlab {

/// Residual thresholds: below kTwistorPass passes, above kTwistorFail fails, in between is inconclusive.
inline constexpr double kTwistorPass = 1e-8;
inline constexpr double kTwistorFail = 1e-4;

struct TwistorPoint {
  Mat6 j;
  /// Complex dimension of the subspace where j = J0.
  int p = 1;
};

/// g-orthonormal basis f1, J0f1, f2, J0f2, f3, J0f3 as columns (Gram–Schmidt interleaved with J0).
Mat6 adapted_frame(const Metric& g, const ComplexStructure& j0);

/// Realification of exp(iH) for a Gaussian Hermitian 3×3 H, in adapted coordinates.
Mat6 random_unitary(Rng& rng);

/// J0 on the first p complex directions of the adapted frame, -J0 on the rest.
TwistorPoint block_point(const Metric& g, const ComplexStructure& j0, int p);

/// Sample 0 is the block point; sample k uses the generator (seed, p, k).
std::vector<TwistorPoint> fiber_sample(const Metric& g, const ComplexStructure& j0, int p, int count,
                                       std::uint64_t seed);

/// Largest of |j²+1|, |jᵀgj - g| and |[j,J0]|.
double twistor_point_residual(const TwistorPoint& pt, const Metric& g, const ComplexStructure& j0);

/// (A.s)(X,Y) = A s(X,Y) - s(AX,Y) - s(X,AY); throws if A is not g-skew.
Tensor21 j_action(const Mat6& a, const Tensor21& s, const Metric& g);

struct TorsionSplit {
  /// Real parts of the ±3i and ±i components; pm3 + pm1 = s.
  Tensor21 pm3;
  Tensor21 pm1;
  double plus3 = 0.0, minus3 = 0.0, plus1 = 0.0, minus1 = 0.0;
};

TorsionSplit torsion_eigensplit(const Tensor21& s, const TwistorPoint& pt, const Metric& g);

/// ‖T(X^{1,0}, Y^{1,0})^{0,1}‖ / ‖T‖ (Hilbert–Schmidt over a g-orthonormal frame).
double condition_T_residual(const Tensor21& t, const TwistorPoint& pt, const Metric& g);
/// ‖(R_{X^{1,0},Y^{1,0}} Z^{1,0})^{0,1}‖ / ‖R‖.
double condition_R_residual(const CurvatureTensor& r, const TwistorPoint& pt, const Metric& g);

double curvature_norm(const CurvatureTensor& r, const Metric& g);

/// R(X,Y)Z = g(Y,Z)X - g(X,Z)Y.
CurvatureTensor constant_curvature(const Metric& g);

struct SameAcsResult {
  bool holds = true;
  double max_residual = 0.0;
};

/// Checks [η_{jX}, j] = j[η_X, j] on every sample; η_X must be g-skew and commute with J0.
SameAcsResult same_acs_check(const Tensor21& eta, const std::vector<TwistorPoint>& samples, const Metric& g,
                             const ComplexStructure& j0, double tol = kTwistorPass);

/// η_X = endomorphism of X♭∧θ + (JX)♭∧Jθ.
Tensor21 lee_type_eta(const KForm& theta, const Metric& g, const ComplexStructure& j0);
/// η_X = endomorphism of (ι_X χ)^{1,1} for a random primitive χ of type (2,1)+(1,2).
Tensor21 random_lambda21_eta(Rng& rng, const Metric& g, const ComplexStructure& j0);

enum class TwistorVerdict { integrable_evidence, torsion_obstruction, curvature_obstruction };
std::string verdict_name(TwistorVerdict v);

/// Decade histogram: bin 0 holds r < 1e-15, bin k holds 1e-(16-k) ≤ r < 1e-(15-k), the last bin r ≥ 1.
inline constexpr int kHistogramBins = 17;

struct ComponentResiduals {
  int p = 1;
  double t_max = 0.0;
  double r_max = 0.0;
  std::array<int, kHistogramBins> t_histogram{};
  std::array<int, kHistogramBins> r_histogram{};
};

struct IntegrabilityReport {
  double t_residual_max = 0.0;
  double r_residual_max = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  TwistorVerdict verdict = TwistorVerdict::integrable_evidence;
  /// A deciding residual fell between kTwistorPass and kTwistorFail.
  bool inconclusive = false;
  std::array<ComponentResiduals, 2> components;
};

/// Aggregates conditions (T) and (R) over p = 1, 2 with `samples` points per component.
IntegrabilityReport integrability_report(const Metric& g, const ComplexStructure& j0, const Tensor21& delta_bar,
                                         const CurvatureTensor& r_bar, int samples, std::uint64_t seed);

/// δ̄ and R̄ of the canonical Hermitian connection, then integrability_report.
IntegrabilityReport integrability_for_structure(const LieAlgebra6& lie, const Metric& g, const ComplexStructure& j,
                                                int samples, std::uint64_t seed);

}  // namespace hermlab

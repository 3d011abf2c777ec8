#include "hermlab/twistor.hpp"

#include "hermlab/errors.hpp"
#include "hermlab/gray_hervella.hpp"

#include <algorithm>
#include <cmath>

namespace hermlab {

namespace {

using CMat3 = Eigen::Matrix<cplx, 3, 3>;

Mat6 realify(const CMat3& u) {
  Mat6 out;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const double a = u(k, l).real(), b = u(k, l).imag();
      out(2 * k, 2 * l) = a;
      out(2 * k, 2 * l + 1) = -b;
      out(2 * k + 1, 2 * l) = b;
      out(2 * k + 1, 2 * l + 1) = a;
    }
  return out;
}

Mat6 block_matrix(int p) {
  Mat6 jb = Mat6::Zero();
  for (int k = 0; k < 3; ++k) {
    const double s = k < p ? 1.0 : -1.0;
    jb(2 * k + 1, 2 * k) = s;
    jb(2 * k, 2 * k + 1) = -s;
  }
  return jb;
}

void require_component(int p) {
  if (p != 1 && p != 2) throw InputError("twistor component p must be 1 or 2");
}

int histogram_bin(double r) {
  if (!(r >= 1e-15)) return 0;
  const int k = static_cast<int>(std::floor(std::log10(r))) + 16;
  return std::clamp(k, 1, kHistogramBins - 1);
}

double hermitian_sq(const CVec6& v, const Mat6& g) { return (v.adjoint() * g.cast<cplx>() * v)(0, 0).real(); }

}  // namespace

Mat6 adapted_frame(const Metric& g, const ComplexStructure& j0) {
  j0.require_compatible(g);
  const Mat6& gm = g.matrix();
  Mat6 f = Mat6::Zero();
  int filled = 0;
  for (int c = 0; c < kDim && filled < kDim; ++c) {
    Vec6 v = Vec6::Unit(c);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < filled; ++k) v -= f.col(k).dot(gm * v) * f.col(k);
    const double n = std::sqrt(v.dot(gm * v));
    if (n < 1e-8) continue;
    f.col(filled) = v / n;
    f.col(filled + 1) = j0.matrix() * f.col(filled);
    filled += 2;
  }
  if (filled != kDim) throw ConstructionError("could not build an adapted frame");
  return f;
}

Mat6 random_unitary(Rng& rng) {
  CMat3 a;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const double re = standard_normal(rng);
      a(k, l) = cplx(re, standard_normal(rng));
    }
  const CMat3 h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat3> es(h);
  Eigen::Matrix<cplx, 3, 1> phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::exp(cplx(0.0, es.eigenvalues()(k)));
  const CMat3 u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return realify(u);
}

TwistorPoint block_point(const Metric& g, const ComplexStructure& j0, int p) {
  require_component(p);
  const Mat6 f = adapted_frame(g, j0);
  return {f * block_matrix(p) * f.inverse(), p};
}

std::vector<TwistorPoint> fiber_sample(const Metric& g, const ComplexStructure& j0, int p, int count,
                                       std::uint64_t seed) {
  require_component(p);
  if (count < 1) throw InputError("sample count must be at least 1");
  const Mat6 f = adapted_frame(g, j0);
  const Mat6 finv = f.inverse();
  const Mat6 jb = block_matrix(p);
  std::vector<TwistorPoint> out;
  out.reserve(count);
  out.push_back({f * jb * finv, p});
  for (int k = 1; k < count; ++k) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(k));
    const Mat6 u = random_unitary(rng);
    out.push_back({f * u * jb * u.transpose() * finv, p});
  }
  return out;
}

double twistor_point_residual(const TwistorPoint& pt, const Metric& g, const ComplexStructure& j0) {
  const Mat6& j = pt.j;
  const Mat6& gm = g.matrix();
  const double gs = gm.cwiseAbs().maxCoeff();
  double r = (j * j + Mat6::Identity()).cwiseAbs().maxCoeff();
  r = std::max(r, (j.transpose() * gm * j - gm).cwiseAbs().maxCoeff() / gs);
  return std::max(r, (j * j0.matrix() - j0.matrix() * j).cwiseAbs().maxCoeff());
}

Tensor21 j_action(const Mat6& a, const Tensor21& s, const Metric& g) {
  const Mat6 low = g.matrix() * a;
  if ((low + low.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, low.cwiseAbs().maxCoeff()))
    throw InputError("j_action expects a g-skew endomorphism");
  Tensor21 out;
  for (int i = 0; i < kDim; ++i) out.t.s[i] = a * s.t.s[i] - s.t.s[i] * a - s.t.contract(a.col(i));
  out.antisymmetric = s.antisymmetric;
  return out;
}

TorsionSplit torsion_eigensplit(const Tensor21& s, const TwistorPoint& pt, const Metric& g) {
  const Tensor21 s2 = j_action(pt.j, j_action(pt.j, s, g), g);
  TorsionSplit out;
  // j. satisfies (A²+9)(A²+1) = 0 on (2,1)-tensors
  out.pm3.t = -0.125 * (s2.t + s.t);
  out.pm1.t = 0.125 * (s2.t + 9.0 * s.t);
  const double n3 = tensor21_norm(out.pm3, g) / std::sqrt(2.0);
  const double n1 = tensor21_norm(out.pm1, g) / std::sqrt(2.0);
  out.plus3 = out.minus3 = n3;
  out.plus1 = out.minus1 = n1;
  return out;
}

double condition_T_residual(const Tensor21& t, const TwistorPoint& pt, const Metric& g) {
  const double scale = tensor21_norm(t, g);
  if (scale == 0.0) return 0.0;
  const Mat6 e = g.orthonormal_frame();
  const CMat6 ij = cplx(0.0, 1.0) * pt.j.cast<cplx>();
  const CMat6 p10 = 0.5 * (CMat6::Identity() - ij);
  const CMat6 p01 = 0.5 * (CMat6::Identity() + ij);
  std::array<CVec6, 6> v;
  for (int a = 0; a < kDim; ++a) v[a] = p10 * e.col(a).cast<cplx>();
  double total = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) total += hermitian_sq(p01 * t.apply(v[a], v[b]), g.matrix());
  return std::sqrt(total) / scale;
}

double curvature_norm(const CurvatureTensor& r, const Metric& g) {
  const Mat6 e = g.orthonormal_frame();
  const Mat6 einv = e.inverse();
  double total = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) total += (einv * r.op(e.col(a), e.col(b)) * e).squaredNorm();
  return std::sqrt(total);
}

double condition_R_residual(const CurvatureTensor& r, const TwistorPoint& pt, const Metric& g) {
  const double scale = curvature_norm(r, g);
  if (scale == 0.0) return 0.0;
  const Mat6 e = g.orthonormal_frame();
  const CMat6 ij = cplx(0.0, 1.0) * pt.j.cast<cplx>();
  const CMat6 p10 = 0.5 * (CMat6::Identity() - ij);
  const CMat6 p01 = 0.5 * (CMat6::Identity() + ij);
  const CMat6 v = p10 * e.cast<cplx>();

  // first slot contracted: ra[a][j] = Σ_i v(i,a) R_{e_i,e_j}
  std::array<std::array<CMat6, 6>, 6> ra;
  for (int a = 0; a < kDim; ++a)
    for (int j = 0; j < kDim; ++j) {
      CMat6 m = CMat6::Zero();
      for (int i = 0; i < kDim; ++i) m += v(i, a) * r.op(i, j).cast<cplx>();
      ra[a][j] = m;
    }
  double total = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      CMat6 m = CMat6::Zero();
      for (int j = 0; j < kDim; ++j) m += v(j, b) * ra[a][j];
      const CMat6 out = p01 * m * v;
      for (int c = 0; c < kDim; ++c) total += hermitian_sq(out.col(c), g.matrix());
    }
  return std::sqrt(total) / scale;
}

CurvatureTensor constant_curvature(const Metric& g) {
  const Mat6& gm = g.matrix();
  CurvatureTensor out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      Mat6 m = Mat6::Zero();
      m.row(i) += gm.row(j);
      m.row(j) -= gm.row(i);
      out.op(i, j) = m;
    }
  return out;
}

SameAcsResult same_acs_check(const Tensor21& eta, const std::vector<TwistorPoint>& samples, const Metric& g,
                             const ComplexStructure& j0, double tol) {
  const Mat6& gm = g.matrix();
  const double scale = std::max(1.0, eta.max_abs());
  for (int i = 0; i < kDim; ++i) {
    const Mat6& m = eta.t.s[i];
    if ((gm * m + m.transpose() * gm).cwiseAbs().maxCoeff() > 1e-9 * scale * gm.cwiseAbs().maxCoeff() ||
        (m * j0.matrix() - j0.matrix() * m).cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw InputError("eta_X must be g-skew and commute with J0");
  }
  SameAcsResult out;
  const double norm_eta = tensor21_norm(eta, g);
  if (norm_eta == 0.0) return out;
  const Mat6 e = g.orthonormal_frame();
  const Mat6 einv = e.inverse();
  for (const auto& pt : samples) {
    const Mat6& j = pt.j;
    double total = 0.0;
    for (int a = 0; a < kDim; ++a) {
      const Vec6 x = e.col(a);
      const Mat6 ex = eta.slice(x);
      const Mat6 ejx = eta.slice(j * x);
      const Mat6 diff = (ejx * j - j * ejx) - j * (ex * j - j * ex);
      total += (einv * diff * e).squaredNorm();
    }
    out.max_residual = std::max(out.max_residual, std::sqrt(total) / norm_eta);
  }
  out.holds = out.max_residual < tol;
  return out;
}

Tensor21 lee_type_eta(const KForm& theta, const Metric& g, const ComplexStructure& j0) {
  const Vec6 t = theta.as_vec6();
  const Vec6 jt = j_on_one_form(j0, theta).as_vec6();
  const Mat6 gj = g.matrix() * j0.matrix();
  Tensor21 out;
  for (int i = 0; i < kDim; ++i) {
    const Vec6 x = g.matrix().col(i), jx = gj.col(i);
    const Mat6 b = x * t.transpose() - t * x.transpose() + jx * jt.transpose() - jt * jx.transpose();
    out.t.s[i] = -g.inverse() * b;
  }
  return out;
}

Tensor21 random_lambda21_eta(Rng& rng, const Metric& g, const ComplexStructure& j0) {
  const KForm omega = kahler_form(g, j0);
  KForm chi = real_type_part(j0, random_form(rng, 3), 2, 1);
  chi = chi - wedge(omega, lee_from_domega(omega, chi));
  Tensor21 out;
  for (int i = 0; i < kDim; ++i) {
    const KForm ix = real_type_part(j0, interior(Vec6(Vec6::Unit(i)), chi), 1, 1);
    out.t.s[i] = endomorphism_from_two_form(g, ix);
  }
  return out;
}

std::string verdict_name(TwistorVerdict v) {
  switch (v) {
    case TwistorVerdict::integrable_evidence:
      return "integrable_evidence";
    case TwistorVerdict::torsion_obstruction:
      return "torsion_obstruction";
    case TwistorVerdict::curvature_obstruction:
      return "curvature_obstruction";
  }
  return "unknown";
}

IntegrabilityReport integrability_report(const Metric& g, const ComplexStructure& j0, const Tensor21& delta_bar,
                                         const CurvatureTensor& r_bar, int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("sample count must be at least 1");
  const Tensor21 t_bar = torsion_from_delta_bar(delta_bar);
  IntegrabilityReport out;
  out.samples = samples;
  out.seed = seed;
  for (int p = 1; p <= 2; ++p) {
    ComponentResiduals& c = out.components[p - 1];
    c.p = p;
    for (const auto& pt : fiber_sample(g, j0, p, samples, seed)) {
      const double rt = condition_T_residual(t_bar, pt, g);
      const double rr = condition_R_residual(r_bar, pt, g);
      c.t_max = std::max(c.t_max, rt);
      c.r_max = std::max(c.r_max, rr);
      ++c.t_histogram[histogram_bin(rt)];
      ++c.r_histogram[histogram_bin(rr)];
    }
    out.t_residual_max = std::max(out.t_residual_max, c.t_max);
    out.r_residual_max = std::max(out.r_residual_max, c.r_max);
  }
  if (out.t_residual_max >= kTwistorPass) {
    out.verdict = TwistorVerdict::torsion_obstruction;
    out.inconclusive = out.t_residual_max <= kTwistorFail;
  } else if (out.r_residual_max >= kTwistorPass) {
    out.verdict = TwistorVerdict::curvature_obstruction;
    out.inconclusive = out.r_residual_max <= kTwistorFail;
  }
  return out;
}

IntegrabilityReport integrability_for_structure(const LieAlgebra6& lie, const Metric& g, const ComplexStructure& j,
                                                int samples, std::uint64_t seed) {
  const ConnectionCoeffs lc = levi_civita(lie, g);
  const ConnectionCoeffs cb = canonical_connection(lc, j, g);
  return integrability_report(g, j, delta_bar(lc, j), curvature(cb, lie), samples, seed);
}

}  // namespace hermlab

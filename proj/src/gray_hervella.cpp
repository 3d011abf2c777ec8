#include "hermlab/gray_hervella.hpp"

#include "hermlab/errors.hpp"

#include <cmath>

namespace hermlab {

namespace {

// out(a; b, c) = s(M e_a; M e_b, M e_c)
Cov3 transform(const Cov3& s, const Mat6& m) {
  Cov3 out;
  for (int a = 0; a < kDim; ++a) out.s.s[a] = m.transpose() * s.s.contract(m.col(a)) * m;
  return out;
}

Mat6 wedge_matrix(const Vec6& a, const Vec6& b) { return a * b.transpose() - b * a.transpose(); }

double frame_norm(const Cov3& sf) {
  double t = 0.0;
  for (const auto& m : sf.s.s) t += 0.5 * m.squaredNorm();
  return std::sqrt(t);
}

// Projection onto the totally antisymmetric tensors.
Cov3 alternate(const Cov3& s) {
  Cov3 out;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c) out.s.s[a](b, c) = (s.at(a, b, c) + s.at(b, c, a) + s.at(c, a, b)) / 3.0;
  return out;
}

double anti_invariance_residual(const Cov3& s, const Mat6& j) {
  double worst = 0.0;
  for (const auto& m : s.s.s) worst = std::max(worst, (m + j.transpose() * m * j).cwiseAbs().maxCoeff());
  return worst;
}

double skew_residual(const Cov3& s) {
  double worst = 0.0;
  for (const auto& m : s.s.s) worst = std::max(worst, (m + m.transpose()).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

double cov3_norm(const Cov3& s, const Metric& g) { return frame_norm(transform(s, g.orthonormal_frame())); }

double tensor21_norm(const Tensor21& t, const Metric& g) {
  const Mat6 e = g.orthonormal_frame();
  const Mat6 einv = e.inverse();
  double total = 0.0;
  for (int a = 0; a < kDim; ++a) total += (einv * t.slice(e.col(a)) * e).squaredNorm();
  return std::sqrt(total);
}

KForm bianchi_sum(const Cov3& s, double tol) {
  if (skew_residual(s) > tol * std::max(1.0, s.s.max_abs()))
    throw InputError("bianchi_sum expects a tensor skew in its last two slots");
  return tabulate(3, [&](const std::vector<int>& i) {
    return s.at(i[0], i[1], i[2]) + s.at(i[1], i[2], i[0]) + s.at(i[2], i[0], i[1]);
  });
}

DOmegaSplit decompose_domega(const KForm& omega, const KForm& domega, const Metric& g,
                             const ComplexStructure& j) {
  (void)g;
  DOmegaSplit out;
  out.psi = real_type_part(j, domega, 3, 0);
  out.theta = lee_from_domega(omega, domega);
  out.chi = domega - out.psi - wedge(omega, out.theta);
  return out;
}

Cov3 lee_section(const KForm& eta, const Metric& g, const ComplexStructure& j) {
  const Vec6 e = eta.as_vec6();
  const Vec6 je = j_on_one_form(j, eta).as_vec6();
  const Mat6 gj = g.matrix() * j.matrix();
  Cov3 out;
  for (int i = 0; i < kDim; ++i)
    out.s.s[i] = wedge_matrix(g.matrix().col(i), e) - wedge_matrix(gj.col(i), je);
  return out;
}

GHDecomposition project_gray_hervella(const Cov3& nabla_omega, const Metric& g, const ComplexStructure& j,
                                      double rel_tol) {
  const double scale = std::max(1.0, nabla_omega.s.max_abs());
  if (skew_residual(nabla_omega) > 1e-10 * scale)
    throw InputError("nabla omega must be skew in its last two slots");
  if (anti_invariance_residual(nabla_omega, j.matrix()) > 1e-8 * scale)
    throw InputError("nabla omega is not a section of T*M ⊗ [[λ^{2,0}]]");

  const Mat6 e = g.orthonormal_frame();
  const Mat6 einv = e.inverse();
  const Mat6 jf = einv * j.matrix() * e;
  const Cov3 sf = transform(nabla_omega, e);

  Cov3 q;
  for (int a = 0; a < kDim; ++a) q.s.s[a] = jf.transpose() * sf.s.contract(jf.col(a));
  Cov3 minus, plus;
  minus.s = 0.5 * (sf.s - q.s);
  plus.s = 0.5 * (sf.s + q.s);

  std::array<Cov3, 4> wf;
  wf[0] = alternate(minus);
  wf[1].s = minus.s - wf[0].s;

  const ComplexStructure jframe(jf, 1e-8);
  const Metric flat = Metric::identity();
  std::array<Cov3, 6> basis;
  Eigen::Matrix<double, 6, 6> gram;
  Vec6 rhs;
  auto dot = [](const Cov3& x, const Cov3& y) {
    double t = 0.0;
    for (int a = 0; a < kDim; ++a) t += 0.5 * x.s.s[a].cwiseProduct(y.s.s[a]).sum();
    return t;
  };
  for (int k = 0; k < kDim; ++k) basis[k] = lee_section(KForm::one_form(Vec6::Unit(k)), flat, jframe);
  for (int k = 0; k < kDim; ++k) {
    rhs(k) = dot(basis[k], plus);
    for (int l = 0; l < kDim; ++l) gram(k, l) = dot(basis[k], basis[l]);
  }
  const Vec6 coef = gram.ldlt().solve(rhs);
  for (int k = 0; k < kDim; ++k) wf[3].s += coef(k) * basis[k].s;
  wf[2].s = plus.s - wf[3].s;

  GHDecomposition out;
  out.total = frame_norm(sf);
  for (int k = 0; k < 4; ++k) {
    out.w[k] = transform(wf[k], einv);
    out.norms[k] = frame_norm(wf[k]);
    out.present[k] = out.total >= kGHAbsTol && out.norms[k] >= rel_tol * out.total;
  }

  const KForm omega = kahler_form(g, j);
  const DOmegaSplit split = decompose_domega(omega, bianchi_sum(nabla_omega, 1e-10), g, j);
  out.theta = split.theta;
  out.psi = split.psi;
  out.chi = split.chi;

  for (int k = 0; k < 4; ++k)
    if (out.present[k]) out.type += (out.type.empty() ? "W" : "+W") + std::to_string(k + 1);
  if (out.type.empty()) out.type = "Kähler";
  return out;
}

std::string class_label(const std::string& type) {
  if (type == "Kähler") return "Kähler";
  if (type == "W1") return "nearly Kähler";
  if (type == "W2") return "almost Kähler";
  if (type == "W4") return "locally conformally Kähler";
  if (type == "W1+W4") return "locally conformally nearly Kähler";
  if (type == "W3" || type == "W3+W4") return "Hermitian";
  if (type == "W1+W2") return "quasi-Kähler";
  return "general";
}

NijenhuisSplit nijenhuis_decompose(const Tensor21& n, const Metric& g) {
  std::array<Mat6, 6> low;
  for (int i = 0; i < kDim; ++i) low[i] = n.t.s[i].transpose() * g.matrix();
  NijenhuisSplit out;
  for (int i = 0; i < kDim; ++i) {
    Mat6 a;
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) a(j, k) = (low[i](j, k) + low[j](k, i) + low[k](i, j)) / 3.0;
    out.n1.t.s[i] = g.inverse() * a.transpose();
  }
  out.n2.t = n.t - out.n1.t;
  out.n1.antisymmetric = out.n2.antisymmetric = n.antisymmetric;
  return out;
}

KForm sharp_op(const Tensor21& n, const KForm& alpha, const ComplexStructure& j, double tol) {
  const int p = alpha.degree();
  if (p >= kDim) throw InputError("sharp_op: degree exceeds 5");
  if ((alpha - real_type_part(j, alpha, p, 0)).max_abs() > tol * std::max(1.0, alpha.max_abs()))
    throw InputError("sharp_op expects a form of type (p,0)+(0,p)");
  return tabulate(p + 1, [&](const std::vector<int>& idx) {
    double total = 0.0;
    for (int a = 0; a <= p; ++a)
      for (int b = a + 1; b <= p; ++b) {
        std::vector<Vec6> args{n.apply(Vec6(Vec6::Unit(idx[a])), Vec6(Vec6::Unit(idx[b])))};
        for (int m = 0; m <= p; ++m)
          if (m != a && m != b) args.push_back(Vec6::Unit(idx[m]));
        total += ((a + b) % 2 ? -2.0 : 2.0) * alpha.evaluate_real(args);
      }
    return total;
  });
}

NKCheck nk_characteristic_check(const SU3Structure& su3, const LieAlgebra6& lie) {
  const KForm dpsi = ce_differential(lie, su3.psi);
  const KForm dphi = ce_differential(lie, su3.phi);
  Eigen::Matrix<double, 15, 6> m;
  for (int k = 0; k < kDim; ++k) m.col(k) = wedge(KForm::one_form(Vec6::Unit(k)), su3.psi).real_coeffs();
  const Eigen::VectorXd b = dpsi.real_coeffs();
  const Vec6 sigma = m.colPivHouseholderQr().solve(b);

  NKCheck out;
  out.sigma = KForm::one_form(sigma);
  out.normal_residual = (m.transpose() * (m * sigma - b)).norm();
  out.dpsi_residual = norm(su3.g, dpsi - wedge(out.sigma, su3.psi));
  const KForm w2 = wedge(su3.omega, su3.omega);
  out.dphi_residual = norm(su3.g, dphi - wedge(out.sigma, su3.phi) + (2.0 / 3.0) * w2);
  return out;
}

ConformalResult conformal_pointwise(const Metric& g, const ComplexStructure& j, const Cov3& nabla_omega,
                                    const KForm& df, double f) {
  if (!(f > 0.0)) throw InputError("conformal factor must be positive");
  if (df.degree() != 1) throw InputError("df must be a 1-form");
  const Vec6 dfv = df.as_vec6();
  const Vec6 tau = dfv / (2.0 * f);
  const Vec6 tau_sharp = g.inverse() * tau;
  const Mat6 w = two_form_matrix(kahler_form(g, j));

  Cov3 s;
  for (int i = 0; i < kDim; ++i) {
    // Δ_{e_i} Y = τ_i Y + τ(Y) e_i - g(e_i, Y) τ♯
    const Mat6 d = tau(i) * Mat6::Identity() + Vec6::Unit(i) * tau.transpose() - tau_sharp * g.matrix().row(i);
    s.s.s[i] = dfv(i) * w + f * (nabla_omega.s.s[i] - d.transpose() * w - w * d);
  }
  Metric gp(f * g.matrix());
  GHDecomposition gh = project_gray_hervella(s, gp, j);
  return {std::move(gp), std::move(s), std::move(gh)};
}

Tensor21 delta_bar_from_nabla_omega(const Cov3& nabla_omega, const Metric& g, const ComplexStructure& j) {
  Tensor21 out;
  const Mat6 left = 0.5 * g.inverse() * j.matrix().transpose();
  for (int i = 0; i < kDim; ++i) out.t.s[i] = left * nabla_omega.s.s[i];
  return out;
}

Tensor21 torsion_from_delta_bar(const Tensor21& delta) {
  Tensor21 out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) out.t.s[i].col(j) = delta.t.s[j].col(i) - delta.t.s[i].col(j);
  out.antisymmetric = true;
  return out;
}

Cov3 random_gh_component(Rng& rng, const Metric& g, const ComplexStructure& j, int k) {
  if (k < 1 || k > 4) throw InputError("Gray-Hervella component index must be 1..4");
  const Mat6& jm = j.matrix();
  Cov3 s;
  for (auto& m : s.s.s) {
    const Mat6 a = random_matrix(rng);
    const Mat6 skew = a - a.transpose();
    m = 0.5 * (skew - jm.transpose() * skew * jm);
  }
  return project_gray_hervella(s, g, j).w[k - 1];
}

Classification classify(const LieAlgebra6& lie, const Metric& g, const ComplexStructure& j, double rel_tol) {
  j.require_compatible(g);
  const ConnectionCoeffs lc = levi_civita(lie, g);
  const KForm omega = kahler_form(g, j);
  Classification out;
  out.gh = project_gray_hervella(nabla_omega(lc, omega), g, j, rel_tol);
  out.dtheta = ce_differential(lie, out.gh.theta);
  out.lee_closed = norm(g, out.dtheta) < 1e-8;

  const Tensor21 n = nijenhuis(lie, j);
  const NijenhuisSplit split = nijenhuis_decompose(n, g);
  out.nijenhuis_norm = tensor21_norm(n, g);
  out.n1_norm = tensor21_norm(split.n1, g);
  out.n2_norm = tensor21_norm(split.n2, g);

  if (out.gh.present[0]) {
    try {
      const SU3Structure raw = su3_from_pair(omega, out.gh.psi);
      const double ratio = (2.0 / 3.0) * mu_omega(omega) / mu_psi(raw.psi, raw.phi);
      if (ratio > 0.0) out.nk = nk_characteristic_check(su3_from_pair(omega, std::sqrt(ratio) * out.gh.psi), lie);
    } catch (const ConstructionError&) {
      out.nk.reset();
    }
  }
  return out;
}

}  // namespace hermlab

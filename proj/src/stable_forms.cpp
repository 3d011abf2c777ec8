#include "hermlab/stable_forms.hpp"

#include "hermlab/errors.hpp"

#include <cmath>

namespace hermlab {

namespace {

constexpr unsigned kTop = 63u;

double top(const KForm& a) { return a.coeff(kTop).real(); }

// Matrix of v ↦ ι_v(e¹²³⁴⁵⁶) into Λ⁵ coordinates.
Mat6 interior_volume_matrix() {
  Mat6 b;
  const KForm vol = KForm::basis({1, 2, 3, 4, 5, 6});
  for (int i = 0; i < kDim; ++i) b.col(i) = Vec6(interior(Vec6(Vec6::Unit(i)), vol).real_coeffs());
  return b;
}

Mat6 metric_candidate(const KForm& omega, const ComplexStructure& j) {
  return two_form_matrix(omega) * j.matrix();
}

double relative_kappa(const KForm& psi) {
  const double n = psi.coeff_norm();
  if (n == 0.0) return 0.0;
  return kappa(psi) / (n * n * n * n);
}

double orientation_of(double mu) { return mu < 0.0 ? -1.0 : 1.0; }

}  // namespace

KForm standard_omega() {
  return KForm::basis({1, 2}) + KForm::basis({3, 4}) + KForm::basis({5, 6});
}

KForm standard_psi() {
  return KForm::basis({1, 3, 5}) - KForm::basis({1, 4, 6}) - KForm::basis({2, 3, 6}) -
         KForm::basis({2, 4, 5});
}

KForm standard_phi() {
  return KForm::basis({1, 3, 6}) + KForm::basis({1, 4, 5}) + KForm::basis({2, 3, 5}) -
         KForm::basis({2, 4, 6});
}

Mat6 hitchin_k(const KForm& psi, double orientation) {
  if (psi.degree() != 3) throw InputError("expected a 3-form");
  const KForm real_psi = KForm::from_real(3, psi.real_coeffs(1e-9));
  static const Eigen::PartialPivLU<Mat6> solver(interior_volume_matrix());
  Mat6 k;
  for (int i = 0; i < kDim; ++i) {
    const KForm rho = wedge(interior(Vec6(Vec6::Unit(i)), real_psi), real_psi);
    k.col(i) = solver.solve(Vec6(rho.real_coeffs())) / orientation;
  }
  return k;
}

double kappa(const KForm& psi) {
  const Mat6 k = hitchin_k(psi);
  return (k * k).trace() / 6.0;
}

ComplexStructure j_from_psi(const KForm& psi, double orientation, double tol) {
  const double kap = kappa(psi);
  if (!(relative_kappa(psi) < -tol))
    throw ConstructionError("r1: not a negative-stable 3-form (kappa = " + std::to_string(kap) + ")");
  return ComplexStructure(-hitchin_k(psi, orientation) / std::sqrt(-kap), 1e-8);
}

KForm phi_companion(const KForm& psi, const ComplexStructure& j, double tol) {
  if (psi.degree() != 3) throw InputError("expected a 3-form");
  const KForm mixed = real_type_part(j, psi, 2, 1);
  if (mixed.coeff_norm() > tol * std::max(1.0, psi.coeff_norm()))
    throw InputError("3-form has (2,1)+(1,2) components");
  const Mat6& jm = j.matrix();
  return tabulate(3, [&](const std::vector<int>& i) {
    return -psi.evaluate_real({jm.col(i[0]), Vec6::Unit(i[1]), Vec6::Unit(i[2])});
  });
}

double mu_omega(const KForm& omega) { return top(wedge(omega, wedge(omega, omega))); }

double mu_psi(const KForm& psi, const KForm& phi) { return top(wedge(psi, phi)); }

StabilityReport check_su3(const KForm& omega, const KForm& psi, double tol) {
  if (omega.degree() != 2 || psi.degree() != 3) throw InputError("check_su3 expects a 2-form and a 3-form");
  StabilityReport rep;
  rep.kappa_value = kappa(psi);
  const double kr = relative_kappa(psi);
  rep.residuals["kappa_relative"] = kr;
  rep.r1 = psi.coeff_norm() > 0.0 && kr < -tol;

  const double mu = mu_omega(omega);
  const double on = omega.coeff_norm();
  const double mu_rel = on > 0.0 ? mu / (on * on * on) : 0.0;
  rep.residuals["mu_omega_relative"] = mu_rel;
  rep.r2 = std::abs(mu_rel) > tol;

  const double pn = psi.coeff_norm();
  const double c1 = (on > 0.0 && pn > 0.0) ? wedge(omega, psi).coeff_norm() / (on * pn) : 0.0;
  rep.residuals["c1_relative"] = c1;
  rep.c1 = c1 < tol;

  rep.residuals["g_asymmetry"] = -1.0;
  rep.residuals["g_min_eigenvalue_relative"] = 0.0;
  rep.residuals["c3_relative"] = -1.0;
  if (!(rep.r1 && rep.r2)) return rep;

  const ComplexStructure j(-hitchin_k(psi, orientation_of(mu)) / std::sqrt(-rep.kappa_value), 1e-8);
  const Mat6 gm = metric_candidate(omega, j);
  const double scale = gm.cwiseAbs().maxCoeff();
  const double asym = (gm - gm.transpose()).cwiseAbs().maxCoeff() / scale;
  const Mat6 sym = 0.5 * (gm + gm.transpose());
  const Eigen::Vector<double, 6> ev = Eigen::SelfAdjointEigenSolver<Mat6>(sym).eigenvalues();
  const double min_rel = ev.minCoeff() / ev.cwiseAbs().maxCoeff();
  rep.residuals["g_asymmetry"] = asym;
  rep.residuals["g_min_eigenvalue_relative"] = min_rel;
  rep.c2 = asym < kC3Tol && min_rel > tol;

  const KForm phi = tabulate(3, [&](const std::vector<int>& i) {
    return -psi.evaluate_real({j.matrix().col(i[0]), Vec6::Unit(i[1]), Vec6::Unit(i[2])});
  });
  const double c3 = std::abs(mu_psi(psi, phi) - 2.0 / 3.0 * mu) / std::abs(mu);
  rep.residuals["c3_relative"] = c3;
  rep.c3 = c3 < kC3Tol;
  return rep;
}

KForm lee_from_domega(const KForm& omega, const KForm& domega) {
  if (omega.degree() != 2 || domega.degree() != 3) throw InputError("lee_from_domega expects degrees 2 and 3");
  const KForm w2 = wedge(omega, omega);
  Mat6 m;
  for (int i = 0; i < kDim; ++i)
    m.col(i) = Vec6(wedge(KForm::one_form(Vec6::Unit(i)), w2).real_coeffs(1e-9));
  const Eigen::JacobiSVD<Mat6> svd(m);
  const double smax = svd.singularValues()(0);
  if (smax == 0.0 || svd.singularValues()(kDim - 1) < 1e-12 * std::max(1.0, smax))
    throw ConstructionError("r2: omega is degenerate");
  const Vec6 rhs(wedge(domega, omega).real_coeffs(1e-9));
  const Vec6 theta = Eigen::PartialPivLU<Mat6>(m).solve(rhs);
  if ((m * theta - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm()))
    throw ConstructionError("inconsistent Lee form system");
  return KForm::one_form(theta);
}

SU3Structure su3_from_pair(const KForm& omega, const KForm& psi, double tol) {
  const double mu = mu_omega(omega);
  const double on = omega.coeff_norm();
  if (on == 0.0 || std::abs(mu) / (on * on * on) <= tol) throw ConstructionError("r2: omega^3 vanishes");
  const ComplexStructure j = j_from_psi(psi, orientation_of(mu), tol);
  const Mat6 gm = metric_candidate(omega, j);
  const double scale = gm.cwiseAbs().maxCoeff();
  if ((gm - gm.transpose()).cwiseAbs().maxCoeff() > kC3Tol * scale)
    throw ConstructionError("c1: omega is not of type (1,1) for J");
  const Mat6 sym = 0.5 * (gm + gm.transpose());
  const Eigen::Vector<double, 6> ev = Eigen::SelfAdjointEigenSolver<Mat6>(sym).eigenvalues();
  if (ev.minCoeff() <= tol * ev.cwiseAbs().maxCoeff())
    throw ConstructionError("c2: omega(X,JY) is not positive definite");
  SU3Structure s;
  s.omega = omega;
  s.psi = psi;
  s.J = j;
  s.g = Metric(sym);
  s.phi = phi_companion(psi, j, 1e-8);
  return s;
}

SU3Structure su3_from_2form(const KForm& omega, const KForm& domega, double tol) {
  const KForm theta = lee_from_domega(omega, domega);
  const KForm psi_w = domega - wedge(theta, omega);
  if (!(relative_kappa(psi_w) < -tol))
    throw ConstructionError("r1: psi_omega = d omega - theta ^ omega is not a negative-stable 3-form");
  SU3Structure s = su3_from_pair(omega, psi_w, tol);
  const double ratio = 2.0 * mu_omega(omega) / (3.0 * mu_psi(s.psi, s.phi));
  if (!(ratio > 0.0)) throw ConstructionError("c3: mu(psi) and mu(omega) have opposite signs");
  const double f = std::sqrt(ratio);
  s.psi = f * s.psi;
  s.phi = f * s.phi;
  s.theta = theta;
  s.scale = f;
  return s;
}

}  // namespace hermlab

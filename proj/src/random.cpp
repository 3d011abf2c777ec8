#include "hermlab/random.hpp"

namespace hermlab {

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double standard_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return n(rng);
}

Vec6 random_vector(Rng& rng) {
  Vec6 v;
  for (int i = 0; i < kDim; ++i) v(i) = standard_normal(rng);
  return v;
}

Mat6 random_matrix(Rng& rng) {
  Mat6 m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = standard_normal(rng);
  return m;
}

KForm random_form(Rng& rng, int degree) {
  Eigen::VectorXd c(multi_index::count(degree));
  for (int i = 0; i < c.size(); ++i) c(i) = standard_normal(rng);
  return KForm::from_real(degree, c);
}

Metric random_metric(Rng& rng) {
  const Mat6 a = random_matrix(rng);
  return Metric(a.transpose() * a + 0.5 * Mat6::Identity());
}

std::pair<Metric, ComplexStructure> random_hermitian(Rng& rng) {
  Mat6 p = random_matrix(rng) + 3.0 * Mat6::Identity();
  const Mat6 pinv = p.inverse();
  const Mat6 j = p * ComplexStructure::standard().matrix() * pinv;
  const Mat6 g = pinv.transpose() * pinv;
  return {Metric(g), ComplexStructure(j)};
}

}  // namespace hermlab

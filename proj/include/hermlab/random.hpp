#pragma once

#include "hermlab/exterior.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace hermlab {

using Rng = std::mt19937_64;

/// Generator for the (stream, index) counter under a master seed.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0);

double standard_normal(Rng& rng);
Vec6 random_vector(Rng& rng);
Mat6 random_matrix(Rng& rng);
KForm random_form(Rng& rng, int degree);
/// A^T A + I/2 for Gaussian A.
Metric random_metric(Rng& rng);
/// (g, J) with J = P J_std P^{-1} and g making P orthonormal, for Gaussian P.
std::pair<Metric, ComplexStructure> random_hermitian(Rng& rng);

}  // namespace hermlab

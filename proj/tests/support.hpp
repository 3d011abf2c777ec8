#pragma once

#include "hermlab/exterior.hpp"

#include <cmath>

namespace testing {

inline double max_diff(const hermlab::KForm& a, const hermlab::KForm& b) { return (a - b).max_abs(); }

template <class M>
double max_abs(const M& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace testing

#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "diracpolar/linalg.hpp"

namespace dptest {

/// Largest componentwise difference of two spinors.
inline double cdiff(const diracpolar::CVec4& a, const diracpolar::CVec4& b) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double vdiff(const diracpolar::RVec4& a, const diracpolar::RVec4& b) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace dptest

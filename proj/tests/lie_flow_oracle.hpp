#pragma once

// Test-only Lie-derivative oracle built on the flow definition: integrate the
// vector field, pull tensors back along the flow, and finite-difference in
// the flow parameter. Entirely independent of the covariant-derivative
// formulas used by the library.

#include <functional>

#include "diracpolar/geometry.hpp"

namespace dptest {

using diracpolar::Env;
using diracpolar::KillingField;
using diracpolar::Mat4;
using diracpolar::RVec4;
using diracpolar::SpacetimeChart;
using diracpolar::matvec;
using diracpolar::operator+;
using diracpolar::operator*;

/// RK4 integration of dx/dt = xi(x) up to parameter eps.
inline RVec4 flow_point(const SpacetimeChart& chart, const KillingField& xi, RVec4 x,
                        double eps, int steps = 64) {
  const double h = eps / steps;
  auto f = [&](const RVec4& p) {
    Env env = chart.env_at(p);
    RVec4 v{};
    for (int i = 0; i < 4; ++i) v[i] = xi.xi[i].eval(env);
    return v;
  };
  for (int s = 0; s < steps; ++s) {
    const RVec4 k1 = f(x);
    const RVec4 k2 = f(x + (h / 2) * k1);
    const RVec4 k3 = f(x + (h / 2) * k2);
    const RVec4 k4 = f(x + h * k3);
    x = x + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

/// Jacobian d(flow_eps)/dx by central differences on the initial point.
inline Mat4 flow_jacobian(const SpacetimeChart& chart, const KillingField& xi, const RVec4& x,
                          double eps) {
  Mat4 j;
  const double h = 1e-5;
  for (int k = 0; k < 4; ++k) {
    RVec4 xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const RVec4 fp = flow_point(chart, xi, xp, eps);
    const RVec4 fm = flow_point(chart, xi, xm, eps);
    for (int i = 0; i < 4; ++i) j(i, k) = (fp[i] - fm[i]) / (2 * h);
  }
  return j;
}

/// Lie derivative of a scalar field by flowing and differencing.
inline double lie_scalar_flow(const SpacetimeChart& chart, const KillingField& xi,
                              const std::function<double(const RVec4&)>& f, const RVec4& x,
                              double eps = 0.01) {
  auto at = [&](double e) { return f(flow_point(chart, xi, x, e)); };
  return (-at(2 * eps) + 8 * at(eps) - 8 * at(-eps) + at(-2 * eps)) / (12 * eps);
}

/// Lie derivative of a contravariant vector field: pull back along the flow,
/// difference in the parameter.
inline RVec4 lie_vector_flow(const SpacetimeChart& chart, const KillingField& xi,
                             const std::function<RVec4(const RVec4&)>& field, const RVec4& x,
                             double eps = 0.01) {
  auto pulled = [&](double e) {
    const RVec4 y = flow_point(chart, xi, x, e);
    const Mat4 jinv = diracpolar::inverse(flow_jacobian(chart, xi, x, e));
    return matvec(jinv, field(y));
  };
  const RVec4 p2 = pulled(2 * eps), p1 = pulled(eps), m1 = pulled(-eps), m2 = pulled(-2 * eps);
  RVec4 out{};
  for (int i = 0; i < 4; ++i)
    out[i] = (-p2[i] + 8 * p1[i] - 8 * m1[i] + m2[i]) / (12 * eps);
  return out;
}

/// Same for a rank-2 contravariant tensor.
inline Mat4 lie_tensor2_flow(const SpacetimeChart& chart, const KillingField& xi,
                             const std::function<Mat4(const RVec4&)>& field, const RVec4& x,
                             double eps = 0.01) {
  auto pulled = [&](double e) {
    const RVec4 y = flow_point(chart, xi, x, e);
    const Mat4 jinv = diracpolar::inverse(flow_jacobian(chart, xi, x, e));
    return jinv * field(y) * jinv.transpose();
  };
  const Mat4 p2 = pulled(2 * eps), p1 = pulled(eps), m1 = pulled(-eps), m2 = pulled(-2 * eps);
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out(i, j) = (-p2(i, j) + 8 * p1(i, j) - 8 * m1(i, j) + m2(i, j)) / (12 * eps);
  return out;
}

}  // namespace dptest

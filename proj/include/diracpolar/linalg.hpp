#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <initializer_list>

#include "diracpolar/errors.hpp"

namespace diracpolar {

using cplx = std::complex<double>;
using RVec4 = std::array<double, 4>;
using CVec4 = std::array<cplx, 4>;

inline double abs_of(double x) { return std::abs(x); }
inline double abs_of(const cplx& x) { return std::abs(x); }

/// Dense square matrix of fixed size, value semantics.
template <class T, int N>
struct Mat {
  std::array<T, static_cast<std::size_t>(N) * N> a{};

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * N + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * N + j]; }

  static Mat zero() { return Mat{}; }
  static Mat identity() {
    Mat m;
    for (int i = 0; i < N; ++i) m(i, i) = T(1);
    return m;
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += o.a[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= o.a[k];
    return *this;
  }
  Mat& operator*=(const T& c) {
    for (auto& v : a) v *= c;
    return *this;
  }

  friend Mat operator+(Mat l, const Mat& r) { return l += r; }
  friend Mat operator-(Mat l, const Mat& r) { return l -= r; }
  friend Mat operator*(Mat l, const T& c) { return l *= c; }
  friend Mat operator*(const T& c, Mat r) { return r *= c; }
  friend Mat operator-(const Mat& m) {
    Mat r;
    for (std::size_t k = 0; k < m.a.size(); ++k) r.a[k] = -m.a[k];
    return r;
  }

  friend Mat operator*(const Mat& l, const Mat& r) {
    Mat out;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const T lik = l(i, k);
        if (lik == T(0)) continue;
        for (int j = 0; j < N; ++j) out(i, j) += lik * r(k, j);
      }
    return out;
  }

  Mat transpose() const {
    Mat r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a) m = std::max(m, abs_of(v));
    return m;
  }

  T trace() const {
    T t{};
    for (int i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }
};

using Mat4 = Mat<double, 4>;
using Mat4c = Mat<cplx, 4>;

template <class T, int N>
Mat<T, N> conj_transpose(const Mat<T, N>& m) {
  Mat<T, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if constexpr (std::is_same_v<T, cplx>)
        r(i, j) = std::conj(m(j, i));
      else
        r(i, j) = m(j, i);
    }
  return r;
}

/// Gauss-Jordan inverse with partial pivoting.
template <class T, int N>
Mat<T, N> inverse(const Mat<T, N>& m) {
  Mat<T, N> a = m;
  Mat<T, N> inv = Mat<T, N>::identity();
  for (int col = 0; col < N; ++col) {
    int piv = col;
    double best = abs_of(a(col, col));
    for (int r = col + 1; r < N; ++r)
      if (abs_of(a(r, col)) > best) {
        best = abs_of(a(r, col));
        piv = r;
      }
    if (best == 0.0) throw Error("singular matrix in inverse()");
    if (piv != col)
      for (int j = 0; j < N; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const T d = a(col, col);
    for (int j = 0; j < N; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      if (f == T(0)) continue;
      for (int j = 0; j < N; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template <class T, int N>
T determinant(const Mat<T, N>& m) {
  Mat<T, N> a = m;
  T det = T(1);
  for (int col = 0; col < N; ++col) {
    int piv = col;
    double best = abs_of(a(col, col));
    for (int r = col + 1; r < N; ++r)
      if (abs_of(a(r, col)) > best) {
        best = abs_of(a(r, col));
        piv = r;
      }
    if (best == 0.0) return T(0);
    if (piv != col) {
      for (int j = 0; j < N; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < N; ++r) {
      const T f = a(r, col) / a(col, col);
      if (f == T(0)) continue;
      for (int j = col; j < N; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
template <class T, int N>
Mat<T, N> expm(const Mat<T, N>& m) {
  double nrm = 0;
  for (int i = 0; i < N; ++i) {
    double row = 0;
    for (int j = 0; j < N; ++j) row += abs_of(m(i, j));
    nrm = std::max(nrm, row);
  }
  int s = 0;
  while (nrm > 0.25) {
    nrm *= 0.5;
    ++s;
  }
  Mat<T, N> b = m * (T(1) / T(std::ldexp(1.0, s)));
  Mat<T, N> x = Mat<T, N>::identity();
  Mat<T, N> term = Mat<T, N>::identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * b;
    term *= T(1.0 / k);
    x += term;
    if (term.max_abs() < 1e-20) break;
  }
  for (int i = 0; i < s; ++i) x = x * x;
  return x;
}

namespace detail {

template <class T, int N>
Mat<T, 2 * N> upper_block2(const Mat<T, N>& a, const Mat<T, N>& h) {
  Mat<T, 2 * N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      m(i, j) = a(i, j);
      m(i, j + N) = h(i, j);
      m(i + N, j + N) = a(i, j);
    }
  return m;
}

// Top-right block of exp([[A,H1,0],[0,A,H2],[0,0,A]]): the ordered second
// directional term of d^2 exp.
template <class T, int N>
Mat<T, N> exp_block3_tr(const Mat<T, N>& a, const Mat<T, N>& h1, const Mat<T, N>& h2) {
  Mat<T, 3 * N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      m(i, j) = a(i, j);
      m(i + N, j + N) = a(i, j);
      m(i + 2 * N, j + 2 * N) = a(i, j);
      m(i, j + N) = h1(i, j);
      m(i + N, j + 2 * N) = h2(i, j);
    }
  auto e = expm(m);
  Mat<T, N> out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out(i, j) = e(i, j + 2 * N);
  return out;
}

}  // namespace detail

/// d/dt exp(A + t H) at t = 0 (exact, via block embedding).
template <class T, int N>
Mat<T, N> expm_d1(const Mat<T, N>& a, const Mat<T, N>& h) {
  auto e = expm(detail::upper_block2(a, h));
  Mat<T, N> out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out(i, j) = e(i, j + N);
  return out;
}

/// Mixed second directional derivative d^2/dt ds exp(A + t H1 + s H2) at 0.
template <class T, int N>
Mat<T, N> expm_d2(const Mat<T, N>& a, const Mat<T, N>& h1, const Mat<T, N>& h2) {
  return detail::exp_block3_tr(a, h1, h2) + detail::exp_block3_tr(a, h2, h1);
}

/// Minkowski metric, signature (+,-,-,-).
inline double eta(int a, int b) { return a != b ? 0.0 : (a == 0 ? 1.0 : -1.0); }
inline double eta(int a) { return a == 0 ? 1.0 : -1.0; }

inline Mat4 eta_matrix() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = eta(i);
  return m;
}

/// Levi-Civita symbol with eps_{0123} = +1 (lower indices).
inline int levi_civita(int a, int b, int c, int d) {
  const int idx[4] = {a, b, c, d};
  int sign = 1;
  int v[4] = {idx[0], idx[1], idx[2], idx[3]};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) {
        std::swap(v[i], v[j]);
        sign = -sign;
      }
    }
  return sign;
}

/// Upper-index flat epsilon: eps^{0123} = -1 for signature (+,-,-,-).
inline int levi_civita_upper(int a, int b, int c, int d) { return -levi_civita(a, b, c, d); }

/// Inverse of a Lorentz matrix: eta Lambda^T eta.
inline Mat4 lorentz_inverse(const Mat4& l) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = eta(i) * l(j, i) * eta(j);
  return r;
}

// ---- small vector helpers ----------------------------------------------

inline RVec4 matvec(const Mat4& m, const RVec4& v) {
  RVec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
  return r;
}

inline CVec4 matvec(const Mat4c& m, const CVec4& v) {
  CVec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
  return r;
}

/// Minkowski inner product of two index-up Latin vectors.
inline double mdot(const RVec4& x, const RVec4& y) {
  return x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
}

inline double norm(const CVec4& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

inline double norm(const RVec4& v) {
  double s = 0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

inline double max_abs(const RVec4& v) {
  double m = 0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

inline CVec4 operator-(const CVec4& x, const CVec4& y) {
  CVec4 r;
  for (int i = 0; i < 4; ++i) r[i] = x[i] - y[i];
  return r;
}

inline CVec4 operator+(const CVec4& x, const CVec4& y) {
  CVec4 r;
  for (int i = 0; i < 4; ++i) r[i] = x[i] + y[i];
  return r;
}

inline CVec4 operator*(const cplx& c, const CVec4& x) {
  CVec4 r;
  for (int i = 0; i < 4; ++i) r[i] = c * x[i];
  return r;
}

inline RVec4 operator-(const RVec4& x, const RVec4& y) {
  RVec4 r;
  for (int i = 0; i < 4; ++i) r[i] = x[i] - y[i];
  return r;
}

inline RVec4 operator+(const RVec4& x, const RVec4& y) {
  RVec4 r;
  for (int i = 0; i < 4; ++i) r[i] = x[i] + y[i];
  return r;
}

inline RVec4 operator*(double c, const RVec4& x) {
  RVec4 r;
  for (int i = 0; i < 4; ++i) r[i] = c * x[i];
  return r;
}

}  // namespace diracpolar

#pragma once

// Fixed-size 3-vector / 3x3-matrix kernel with a symmetric eigensolver.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "isowrist/error.hpp"

namespace isowrist {

inline constexpr double kDefaultTolerance = 1e-10;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::hypot(a.x, a.y, a.z); }

inline double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

/// Unit vector along `a`. The caller guarantees `a` is nonzero.
inline Vec3 normalized(const Vec3& a) { return (1.0 / norm(a)) * a; }

/// 3x3 matrix, row-major.
class Mat3 {
 public:
  constexpr Mat3() = default;
  constexpr explicit Mat3(const std::array<double, 9>& rowMajor) : m_(rowMajor) {}

  static constexpr Mat3 identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr Mat3 zero() { return Mat3{}; }
  static constexpr Mat3 diag(double a, double b, double c) {
    return Mat3({a, 0.0, 0.0, 0.0, b, 0.0, 0.0, 0.0, c});
  }
  static constexpr Mat3 scaled_identity(double s) { return diag(s, s, s); }
  static constexpr Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return Mat3({c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z});
  }

  constexpr double operator()(std::size_t r, std::size_t c) const { return m_[3 * r + c]; }
  constexpr double& operator()(std::size_t r, std::size_t c) { return m_[3 * r + c]; }

  constexpr Vec3 row(std::size_t r) const { return {m_[3 * r], m_[3 * r + 1], m_[3 * r + 2]}; }
  constexpr Vec3 col(std::size_t c) const { return {m_[c], m_[3 + c], m_[6 + c]}; }

  constexpr Mat3 transpose() const {
    Mat3 t;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  constexpr double trace() const { return m_[0] + m_[4] + m_[8]; }

  constexpr double det() const {
    const auto& a = m_;
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m_[i] += o.m_[i];
    return *this;
  }
  friend constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 d;
    for (std::size_t i = 0; i < 9; ++i) d.m_[i] = a.m_[i] - b.m_[i];
    return d;
  }
  friend constexpr Mat3 operator*(double s, const Mat3& a) {
    Mat3 d;
    for (std::size_t i = 0; i < 9; ++i) d.m_[i] = s * a.m_[i];
    return d;
  }
  friend constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 p;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        p(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
    return p;
  }
  friend constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {dot(a.row(0), v), dot(a.row(1), v), dot(a.row(2), v)};
  }
  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

  /// Largest absolute entry.
  double max_abs() const {
    double best = 0.0;
    for (double v : m_) best = std::max(best, std::abs(v));
    return best;
  }

  const std::array<double, 9>& data() const { return m_; }

 private:
  std::array<double, 9> m_{};
};

constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  return Mat3({a.x * b.x, a.x * b.y, a.x * b.z, a.y * b.x, a.y * b.y, a.y * b.z, a.z * b.x, a.z * b.y,
               a.z * b.z});
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) { return (a - b).max_abs(); }

inline bool is_symmetric(const Mat3& a, double tol = kDefaultTolerance) {
  return max_abs_diff(a, a.transpose()) <= tol;
}

/// True iff A^T A = 1 within `tol` (max-abs entry) and det(A) > 0.
inline bool is_proper_orthogonal(const Mat3& a, double tol = kDefaultTolerance) {
  return max_abs_diff(a.transpose() * a, Mat3::identity()) <= tol && a.det() > 0.0;
}

inline bool is_orthogonal(const Mat3& a, double tol = kDefaultTolerance) {
  return max_abs_diff(a.transpose() * a, Mat3::identity()) <= tol;
}

/// Eigen-decomposition of a symmetric 3x3 matrix.
/// `values` are sorted descending; `vectors` holds the matching unit eigenvectors as columns.
struct SymEig3 {
  std::array<double, 3> values{};
  Mat3 vectors = Mat3::identity();

  Mat3 reconstruct() const {
    return vectors * Mat3::diag(values[0], values[1], values[2]) * vectors.transpose();
  }
};

/// Cyclic Jacobi eigensolver. Throws NonSymmetric when |A - A^T| exceeds `symmetryTol`.
inline SymEig3 sym_eig(const Mat3& input, double symmetryTol = 1e-12) {
  if (!is_symmetric(input, symmetryTol)) {
    throw Error(ErrorCode::NonSymmetric, "matrix asymmetry exceeds tolerance");
  }
  // Work on the exactly symmetrized copy.
  Mat3 a = 0.5 * (input + input.transpose());
  Mat3 v = Mat3::identity();

  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
    if (off == 0.0) break;
    const double scale = std::abs(a(0, 0)) + std::abs(a(1, 1)) + std::abs(a(2, 2)) + off;
    if (off <= 1e-300 || off <= scale * 1e-18) break;

    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // a <- G^T a G for the Givens rotation G in the (p,q) plane
        for (std::size_t k = 0; k < 3; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 3; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymEig3 out;
  out.vectors = Mat3::from_columns(v.col(order[0]), v.col(order[1]), v.col(order[2]));
  for (std::size_t i = 0; i < 3; ++i) out.values[i] = a(order[i], order[i]);
  return out;
}

}  // namespace isowrist

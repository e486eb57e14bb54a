#pragma once

// Shared helpers for the test suites: deterministic generators and reference data
// written out independently of the library's own tables.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "isowrist/isoset.hpp"
#include "isowrist/linalg3.hpp"

namespace isowrist::testing {

inline const double kR2 = std::sqrt(2.0);
inline const double kR6 = std::sqrt(6.0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  Vec3 unit_vector() {
    for (;;) {
      const Vec3 v{normal(), normal(), normal()};
      const double n = norm(v);
      if (n > 1e-3) return (1.0 / n) * v;
    }
  }

  /// Uniform random rotation from a normalized Gaussian quaternion.
  Mat3 rotation() {
    double a = normal(), b = normal(), c = normal(), d = normal();
    const double n = std::sqrt(a * a + b * b + c * c + d * d);
    a /= n;
    b /= n;
    c /= n;
    d /= n;
    return Mat3({a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c),
                 2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b),
                 2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d});
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// The regular tetrahedron with e1 on +x and e2 in the x-y plane, typed out by hand.
inline std::vector<Vec3> tetrahedron_points() {
  return {{1.0, 0.0, 0.0},
          {-1.0 / 3.0, -2.0 * kR2 / 3.0, 0.0},
          {-1.0 / 3.0, kR2 / 3.0, kR6 / 3.0},
          {-1.0 / 3.0, kR2 / 3.0, -kR6 / 3.0}};
}

/// The 32-row solution listing with the signs exactly as commonly printed, over
/// (c, s, x, y, z, u, v, w). Magnitudes are not part of this listing.
inline const std::array<std::string, 32>& printed_sign_rows() {
  static const std::array<std::string, 32> rows{
      "+---++++", "+---+---", "+----++-", "+------+", "+-+++++-", "+-+++--+", "+-++-+++", "+-++----",
      "++-+++-+", "++-++-+-", "++-+-+--", "++-+--++", "+++-++--", "+++-+-++", "+++--+-+", "+++---+-",
      "---+++-+", "---++-+-", "---+--++", "---+-+--", "--+-++--", "--+-+-++", "--+---+-", "--+--+-+",
      "-+--+++-", "-+--+--+", "-+------", "-+---+++", "-++++---", "-+++++++", "-+++---+", "-+++-++-"};
  return rows;
}

/// Coordinates from a sign row with the magnitudes implied by the branch identities
/// (|c| = |x| = |u| = 1/3, |s| = 2 sqrt2/3, |y| = |v| = sqrt2/3, |z| = |w| = sqrt6/3).
inline std::array<double, 8> coordinates_from_signs(const std::string& signs) {
  const std::array<double, 8> mag{1.0 / 3.0, 2.0 * kR2 / 3.0, 1.0 / 3.0, kR2 / 3.0,
                                  kR6 / 3.0, 1.0 / 3.0,       kR2 / 3.0, kR6 / 3.0};
  std::array<double, 8> q{};
  for (std::size_t i = 0; i < 8; ++i) q[i] = (signs[i] == '-' ? -1.0 : 1.0) * mag[i];
  return q;
}

/// Independent evaluation of the eight isotropy equations.
inline double reference_residual(const std::array<double, 8>& q) {
  const double c = q[0], s = q[1], x = q[2], y = q[3], z = q[4], u = q[5], v = q[6], w = q[7];
  const double eqs[8] = {1 + c * c + x * x + u * u - 4.0 / 3.0, s * s + y * y + v * v - 4.0 / 3.0,
                         z * z + w * w - 4.0 / 3.0,             c * s + x * y + u * v,
                         z * y + w * v,                         x * z + u * w,
                         c * c + s * s - 1,                     x * x + y * y + z * z - 1};
  double worst = 0;
  for (double e : eqs) worst = std::max(worst, std::abs(e));
  return worst;
}

}  // namespace isowrist::testing

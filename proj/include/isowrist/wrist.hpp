#pragma once

// Spherical wrists built from ordered axis sets: Jacobian, isotropy, kinematic
// chains and Denavit-Hartenberg twist/joint angles at the isotropic posture.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "isowrist/error.hpp"
#include "isowrist/isoset.hpp"
#include "isowrist/linalg3.hpp"

namespace isowrist {

inline constexpr double kAngleToleranceDeg = 0.01;

inline double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

/// n x 3 Jacobian of an n-revolute spherical wrist: row k is the axis e_k.
struct WristJacobian {
  std::vector<Vec3> rows;

  std::size_t n() const { return rows.size(); }
  double operator()(std::size_t k, std::size_t i) const { return rows[k][i]; }

  /// J^T J = sum e_k e_k^T; shares its nonzero spectrum with J J^T.
  Mat3 gram() const {
    Mat3 g;
    for (const Vec3& e : rows) g += outer(e, e);
    return g;
  }
};

/// Rejects empty sets (a zero-joint wrist has no Jacobian).
inline WristJacobian jacobian(const PointSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "wrist needs at least one axis");
  return {s.points()};
}

/// omega = sum_k rate_k e_k, i.e. J^T applied to the joint rates for row-stacked axes.
inline Vec3 angular_velocity(const WristJacobian& j, std::span<const double> rates) {
  if (rates.size() != j.n()) {
    throw Error(ErrorCode::LengthMismatch,
                "expected " + std::to_string(j.n()) + " joint rates, got " + std::to_string(rates.size()));
  }
  Vec3 omega;
  for (std::size_t k = 0; k < j.n(); ++k) omega += rates[k] * j.rows[k];
  return omega;
}

/// Singular values of J are the square roots of the Gram eigenvalues.
/// Isotropic iff condition number <= 1 + tol; rank deficiency gives condition number +inf.
inline IsotropyReport wrist_isotropy(const WristJacobian& j, double tol = kDefaultTolerance) {
  if (j.n() < 3) throw Error(ErrorCode::WrongCardinality, "orientation wrist needs at least 3 axes");
  IsotropyReport r = detail::report_from_moment(j.gram(), tol);
  r.isotropic = r.condition_number <= 1.0 + tol;
  return r;
}

/// 1-based labels of the original points, in joint order.
using ChainOrder = std::array<int, 4>;

struct Chain {
  ChainOrder order{};
  PointSet axes;
};

namespace detail {

inline Chain make_chain(const PointSet& s, const ChainOrder& order) {
  std::vector<Vec3> pts;
  for (int k : order) pts.push_back(s[static_cast<std::size_t>(k - 1)]);
  return {order, PointSet(std::move(pts), s.label())};
}

inline void require_four(const PointSet& s) {
  if (s.size() != 4) throw Error(ErrorCode::WrongCardinality, "expected 4 axes, got " + std::to_string(s.size()));
}

}  // namespace detail

/// The 3! orderings with P1 kept as the first joint.
inline std::vector<Chain> enumerate_chains(const PointSet& s) {
  detail::require_four(s);
  std::vector<Chain> out;
  ChainOrder order{1, 2, 3, 4};
  do {
    out.push_back(detail::make_chain(s, order));
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return out;
}

/// All 4! orderings.
inline std::vector<Chain> enumerate_all_orderings(const PointSet& s) {
  detail::require_four(s);
  std::vector<Chain> out;
  ChainOrder order{1, 2, 3, 4};
  do {
    out.push_back(detail::make_chain(s, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

struct ArchitectureSource {
  int solution_id = 0;
  ChainOrder chain{1, 2, 3, 4};

  friend bool operator==(const ArchitectureSource&, const ArchitectureSource&) = default;
};

/// DH description of a 4R spherical wrist at its isotropic posture.
/// theta1, theta4 are free and alpha4 depends on the task frame, so none are stored.
struct WristArchitecture {
  std::array<double, 3> alpha_deg{};
  double theta2_deg = 0.0;
  double theta3_deg = 0.0;
  std::vector<ArchitectureSource> sources;
};

/// alpha_i = angle between consecutive axes; theta_i (i = 2, 3) = signed dihedral about e_i
/// from plane (e_{i-1}, e_i) to plane (e_i, e_{i+1}), right-hand rule.
inline WristArchitecture dh_extract(const PointSet& chain) {
  detail::require_four(chain);
  WristArchitecture a;
  std::array<Vec3, 3> normals;
  for (std::size_t i = 0; i < 3; ++i) {
    const double d = dot(chain[i], chain[i + 1]);
    if (std::abs(d) >= 1.0 - 1e-9) {
      throw Error(ErrorCode::ParallelAxes, "axes " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                                               " are parallel");
    }
    a.alpha_deg[i] = rad2deg(std::acos(std::clamp(d, -1.0, 1.0)));
    normals[i] = normalized(cross(chain[i], chain[i + 1]));
  }
  const auto dihedral = [&](std::size_t i) {
    const Vec3& na = normals[i - 1];
    const Vec3& nb = normals[i];
    return rad2deg(std::atan2(dot(cross(na, nb), chain[i]), dot(na, nb)));
  };
  a.theta2_deg = dihedral(1);
  a.theta3_deg = dihedral(2);
  return a;
}

namespace detail {

/// |a - b| on the circle, degrees.
inline double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

}  // namespace detail

/// Flips both thetas so that theta2 >= 0 (theta3 >= 0 when theta2 is ~0).
inline WristArchitecture canonical(WristArchitecture a, double tol = kAngleToleranceDeg) {
  const bool flip = a.theta2_deg < -tol || (std::abs(a.theta2_deg) <= tol && a.theta3_deg < -tol);
  if (flip) {
    a.theta2_deg = -a.theta2_deg;
    a.theta3_deg = -a.theta3_deg;
  }
  // keep +180 rather than -180
  if (detail::angle_gap(a.theta3_deg, 180.0) <= tol) a.theta3_deg = std::abs(a.theta3_deg);
  if (detail::angle_gap(a.theta2_deg, 180.0) <= tol) a.theta2_deg = std::abs(a.theta2_deg);
  return a;
}

/// Same twists, and same (theta2, theta3) directly or after a simultaneous sign flip.
inline bool equivalent(const WristArchitecture& a, const WristArchitecture& b, double tol = kAngleToleranceDeg) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(a.alpha_deg[i] - b.alpha_deg[i]) > tol) return false;
  }
  const auto close = [tol](double p, double q) { return detail::angle_gap(p, q) <= tol; };
  return (close(a.theta2_deg, b.theta2_deg) && close(a.theta3_deg, b.theta3_deg)) ||
         (close(a.theta2_deg, -b.theta2_deg) && close(a.theta3_deg, -b.theta3_deg));
}

namespace detail {

inline bool lex_less(const WristArchitecture& a, const WristArchitecture& b) {
  const auto key = [](const WristArchitecture& w) {
    return std::array<double, 5>{w.alpha_deg[0], w.alpha_deg[1], w.alpha_deg[2], w.theta2_deg, w.theta3_deg};
  };
  return key(a) < key(b);
}

}  // namespace detail

/// One canonical representative per equivalence class, sorted by (alpha1..3, theta2, theta3).
/// Sources of merged candidates are accumulated on the representative.
inline std::vector<WristArchitecture> dedupe_architectures(std::vector<WristArchitecture> candidates,
                                                           double tol = kAngleToleranceDeg) {
  for (auto& c : candidates) c = canonical(std::move(c), tol);
  std::stable_sort(candidates.begin(), candidates.end(), detail::lex_less);

  std::vector<WristArchitecture> classes;
  for (auto& c : candidates) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const WristArchitecture& k) { return equivalent(k, c, tol); });
    if (it == classes.end()) {
      classes.push_back(std::move(c));
    } else {
      it->sources.insert(it->sources.end(), c.sources.begin(), c.sources.end());
    }
  }
  std::stable_sort(classes.begin(), classes.end(), detail::lex_less);
  return classes;
}

}  // namespace isowrist

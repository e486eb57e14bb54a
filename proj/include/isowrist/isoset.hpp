#pragma once

// Point sets on the unit sphere: second-moment tensor, isotropy certificates,
// Platonic generators and the isometries used to derive new isotropic sets.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isowrist/error.hpp"
#include "isowrist/linalg3.hpp"

namespace isowrist {

/// Tolerance on |‖e‖ - 1| for members of a PointSet.
inline constexpr double kUnitTolerance = 1e-12;

/// Ordered set of unit vectors. Order matters for wrists (it is the joint order).
class PointSet {
 public:
  PointSet() = default;

  PointSet(std::vector<Vec3> points, std::string label = {})
      : points_(std::move(points)), label_(std::move(label)) {
    for (std::size_t k = 0; k < points_.size(); ++k) {
      if (std::abs(norm(points_[k]) - 1.0) > kUnitTolerance) {
        throw Error(ErrorCode::NonUnitVector, "point " + std::to_string(k) + " is not of unit norm");
      }
    }
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Vec3& operator[](std::size_t k) const { return points_[k]; }
  const std::vector<Vec3>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

 private:
  std::vector<Vec3> points_;
  std::string label_;
};

/// Result of an isotropy check on a set of axes.
///
/// `eigenvalues` are those of H = sum e_k e_k^T, descending. They are the squared
/// singular values of the matrix whose rows are the e_k, so `condition_number`
/// is sqrt(lambda_max / lambda_min) (+inf when lambda_min <= tolerance).
/// `sigma_squared` is trace(H)/3, which equals the common value when isotropic.
struct IsotropyReport {
  Mat3 H;
  std::array<double, 3> eigenvalues{};
  double sigma = 0.0;
  double sigma_squared = 0.0;
  double condition_number = std::numeric_limits<double>::infinity();
  bool isotropic = false;
  double tolerance = kDefaultTolerance;
};

enum class IsometryKind { PlaneReflection, Rotation };

struct Isometry {
  IsometryKind kind = IsometryKind::Rotation;
  Mat3 matrix = Mat3::identity();

  Vec3 operator()(const Vec3& p) const { return matrix * p; }
};

inline Mat3 second_moment(const PointSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "second moment of an empty set");
  Mat3 h;
  for (const Vec3& e : s) h += outer(e, e);
  return h;
}

namespace detail {

inline IsotropyReport report_from_moment(const Mat3& h, double tol) {
  IsotropyReport r;
  r.H = h;
  r.tolerance = tol;
  r.eigenvalues = sym_eig(h).values;
  r.sigma_squared = h.trace() / 3.0;
  r.sigma = std::sqrt(r.sigma_squared);
  const double lmax = r.eigenvalues[0];
  const double lmin = r.eigenvalues[2];
  r.condition_number = lmin <= tol ? std::numeric_limits<double>::infinity() : std::sqrt(lmax / lmin);
  return r;
}

}  // namespace detail

/// Isotropic iff the eigenvalues of H agree to relative tolerance `tol`
/// (lambda_max / lambda_min - 1 <= tol).
inline IsotropyReport certify_isotropy(const PointSet& s, double tol = kDefaultTolerance) {
  IsotropyReport r = detail::report_from_moment(second_moment(s), tol);
  const double lmin = r.eigenvalues[2];
  r.isotropic = lmin > tol && r.eigenvalues[0] / lmin - 1.0 <= tol;
  return r;
}

enum class PlatonicSolid { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

inline std::string_view to_string(PlatonicSolid solid) {
  switch (solid) {
    case PlatonicSolid::Tetrahedron: return "tetrahedron";
    case PlatonicSolid::Cube: return "cube";
    case PlatonicSolid::Octahedron: return "octahedron";
    case PlatonicSolid::Dodecahedron: return "dodecahedron";
    case PlatonicSolid::Icosahedron: return "icosahedron";
  }
  return "unknown";
}

/// The canonical regular tetrahedron with one vertex on +x and one in the x-y plane.
inline PointSet fundamental_tetrahedron() {
  const double r2 = std::sqrt(2.0);
  const double r6 = std::sqrt(6.0);
  return PointSet({{1.0, 0.0, 0.0},
                   {-1.0 / 3.0, -2.0 * r2 / 3.0, 0.0},
                   {-1.0 / 3.0, r2 / 3.0, r6 / 3.0},
                   {-1.0 / 3.0, r2 / 3.0, -r6 / 3.0}},
                  "tetrahedron");
}

/// Vertices of the solid inscribed in the unit sphere.
inline PointSet platonic(PlatonicSolid solid) {
  std::vector<Vec3> pts;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto push_normalized = [&pts](Vec3 p) { pts.push_back(normalized(p)); };
  const auto cyclic = [&](double a, double b, double c) {
    push_normalized({a, b, c});
    push_normalized({c, a, b});
    push_normalized({b, c, a});
  };

  switch (solid) {
    case PlatonicSolid::Tetrahedron:
      return fundamental_tetrahedron();
    case PlatonicSolid::Cube:
      for (double x : {1.0, -1.0})
        for (double y : {1.0, -1.0})
          for (double z : {1.0, -1.0}) push_normalized({x, y, z});
      break;
    case PlatonicSolid::Octahedron:
      pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      break;
    case PlatonicSolid::Dodecahedron:
      for (double x : {1.0, -1.0})
        for (double y : {1.0, -1.0})
          for (double z : {1.0, -1.0}) push_normalized({x, y, z});
      for (double a : {1.0, -1.0})
        for (double b : {1.0, -1.0}) cyclic(0.0, a / phi, b * phi);
      break;
    case PlatonicSolid::Icosahedron:
      for (double a : {1.0, -1.0})
        for (double b : {1.0, -1.0}) cyclic(0.0, a, b * phi);
      break;
  }
  return PointSet(std::move(pts), std::string(to_string(solid)));
}

/// Negates the members at the given (0-based) indices. H is unchanged.
inline PointSet antipodal_exchange(const PointSet& s, std::span<const std::size_t> indices) {
  std::vector<Vec3> pts = s.points();
  std::vector<bool> flipped(pts.size(), false);
  for (std::size_t k : indices) {
    if (k >= pts.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(k) + " out of range");
    }
    // a repeated index still means "exchanged once"
    if (!flipped[k]) pts[k] = -pts[k];
    flipped[k] = true;
  }
  return PointSet(std::move(pts), s.label());
}

inline PointSet antipodal_exchange(const PointSet& s, std::initializer_list<std::size_t> indices) {
  return antipodal_exchange(s, std::span<const std::size_t>(indices.begin(), indices.size()));
}

inline Isometry plane_reflection(const Vec3& normal) {
  if (std::abs(norm(normal) - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::NonUnitNormal, "plane normal is not of unit norm");
  }
  return {IsometryKind::PlaneReflection, Mat3::identity() - 2.0 * outer(normal, normal)};
}

/// Reflection about the line through the origin along `e`: L = 2ee^T - 1.
/// This is a half-turn about e, hence reported as a rotation.
inline Isometry reflect_line(const Vec3& e) {
  if (std::abs(norm(e) - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::NonUnitDirection, "line direction is not of unit norm");
  }
  return {IsometryKind::Rotation, 2.0 * outer(e, e) - Mat3::identity()};
}

/// Rodrigues rotation about unit `axis` by `angle` radians.
inline Isometry rotation(const Vec3& axis, double angle) {
  if (std::abs(norm(axis) - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::NonUnitDirection, "rotation axis is not of unit norm");
  }
  const Mat3 k({0.0, -axis.z, axis.y, axis.z, 0.0, -axis.x, -axis.y, axis.x, 0.0});
  return {IsometryKind::Rotation,
          Mat3::identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k)};
}

/// Applies an orthogonal map to every member.
inline PointSet transform(const PointSet& s, const Mat3& q) {
  std::vector<Vec3> pts;
  pts.reserve(s.size());
  for (const Vec3& e : s) pts.push_back(q * e);
  return PointSet(std::move(pts), s.label());
}

inline PointSet transform(const PointSet& s, const Isometry& iso) { return transform(s, iso.matrix); }

inline PointSet reflect_plane(const PointSet& s, const Vec3& normal) {
  return transform(s, plane_reflection(normal));
}

/// Order-sensitive equality: same size, k-th members within `tol` (max-abs component).
inline bool sets_equal(const PointSet& a, const PointSet& b, double tol = kDefaultTolerance) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (max_abs_diff(a[k], b[k]) > tol) return false;
  }
  return true;
}

/// Multiset equality: a perfect matching between members exists at `tol`.
inline bool sets_equal_unordered(const PointSet& a, const PointSet& b, double tol = kDefaultTolerance) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<std::ptrdiff_t> matchOfB(n, -1);

  // Kuhn's augmenting paths; n is tiny.
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& seen) {
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j] || max_abs_diff(a[i], b[j]) > tol) continue;
      seen[j] = true;
      if (matchOfB[j] < 0 || augment(static_cast<std::size_t>(matchOfB[j]), seen)) {
        matchOfB[j] = static_cast<std::ptrdiff_t>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) return false;
  }
  return true;
}

}  // namespace isowrist

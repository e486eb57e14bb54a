#pragma once

// Full pipeline over the closed-form roots: antipodal and reflection maps between
// catalogue ids, and classification of all kinematic chains into distinct wrists.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isowrist/isoset.hpp"
#include "isowrist/solver.hpp"
#include "isowrist/wrist.hpp"

namespace isowrist {

inline constexpr std::size_t kExpectedArchitectureCount = 8;

struct AntipodalEntry {
  std::vector<std::size_t> exchanged;  // 1-based point labels
  std::optional<int> id;
};

/// Images of solution `baseId` under exchange of every nonempty subset of {P2, P3, P4},
/// in the order P2, P3, P4, P2P3, P2P4, P3P4, P2P3P4.
inline std::vector<AntipodalEntry> antipodal_map(const SolutionSet& set, int baseId = kFundamentalSolutionId,
                                                 double tol = kDefaultTolerance) {
  const PointSet base = record_to_pointset(set.at(baseId));
  const std::vector<std::vector<std::size_t>> subsets{{2}, {3}, {4}, {2, 3}, {2, 4}, {3, 4}, {2, 3, 4}};
  std::vector<AntipodalEntry> out;
  for (const auto& labels : subsets) {
    std::vector<std::size_t> idx;
    for (std::size_t l : labels) idx.push_back(l - 1);
    out.push_back({labels, find_solution_id(antipodal_exchange(base, idx), set, tol)});
  }
  return out;
}

/// Base id followed by the ids of its antipodal images.
inline std::vector<int> antipodal_family(const SolutionSet& set, int baseId = kFundamentalSolutionId) {
  std::vector<int> ids{baseId};
  for (const auto& e : antipodal_map(set, baseId)) ids.push_back(e.id.value_or(0));
  return ids;
}

struct ReflectionRow {
  std::string planes;
  Mat3 matrix;
  std::vector<std::optional<int>> ids;
};

/// Reflects each listed solution about x-y, x-z, and both (a half-turn about x).
inline std::vector<ReflectionRow> reflection_map(const SolutionSet& set, std::span<const int> ids,
                                                 double tol = kDefaultTolerance) {
  const Mat3 xy = plane_reflection({0, 0, 1}).matrix;
  const Mat3 xz = plane_reflection({0, 1, 0}).matrix;
  std::vector<ReflectionRow> rows{{"x-y", xy, {}}, {"x-z", xz, {}}, {"x-z,x-y", xy * xz, {}}};
  for (auto& row : rows) {
    for (int id : ids) {
      const PointSet image = transform(record_to_pointset(set.at(id)), row.matrix);
      row.ids.push_back(find_solution_id(image, set, tol));
    }
  }
  return rows;
}

struct Classification {
  std::size_t candidates = 0;
  std::vector<WristArchitecture> architectures;
  /// Per architecture: index of the class reached by reading its first chain last-to-first.
  std::vector<std::optional<std::size_t>> reversal_class;
};

inline std::optional<std::size_t> class_of(const WristArchitecture& a, const std::vector<WristArchitecture>& classes,
                                           double tol = kAngleToleranceDeg) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (equivalent(classes[i], a, tol)) return i;
  }
  return std::nullopt;
}

/// Every listed solution x its 6 chains (P1 first), deduplicated.
inline Classification classify(const SolutionSet& set, std::span<const int> ids) {
  Classification out;
  std::vector<WristArchitecture> candidates;
  for (int id : ids) {
    const PointSet axes = record_to_pointset(set.at(id));
    for (const Chain& chain : enumerate_chains(axes)) {
      WristArchitecture a = dh_extract(chain.axes);
      a.sources.push_back({id, chain.order});
      candidates.push_back(std::move(a));
    }
  }
  out.candidates = candidates.size();
  out.architectures = dedupe_architectures(std::move(candidates));

  for (const auto& arch : out.architectures) {
    const auto& src = arch.sources.front();
    const PointSet axes = record_to_pointset(set.at(src.solution_id));
    std::vector<Vec3> reversed;
    for (auto it = src.chain.rbegin(); it != src.chain.rend(); ++it) reversed.push_back(axes[static_cast<std::size_t>(*it - 1)]);
    out.reversal_class.push_back(class_of(dh_extract(PointSet(std::move(reversed))), out.architectures));
  }
  return out;
}

inline Classification classify(const SolutionSet& set) {
  std::vector<int> ids;
  for (const auto& r : set.solutions) ids.push_back(r.id);
  return classify(set, ids);
}

}  // namespace isowrist

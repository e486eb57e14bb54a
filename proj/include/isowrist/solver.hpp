#pragma once

// Isotropic four-axis point sets with e1 = (1,0,0), e2 = (c,s,0), e3 = (x,y,z), e4 = (u,v,w).
//
// Isotropy sum e_k e_k^T = (4/3) 1 plus unit norm of e2, e3 gives eight quadratics:
//   1 + c^2 + x^2 + u^2 = 4/3      s^2 + y^2 + v^2 = 4/3      z^2 + w^2 = 4/3
//   cs + xy + uv = 0               zy + wv = 0                xz + uw = 0
//   c^2 + s^2 = 1                  x^2 + y^2 + z^2 = 1
//
// Eliminating down to u leaves u(3u - 1)(3u + 1) = 0 and five independent sign
// choices, so the closed form has exactly 32 real roots:
//   u = +-1/3,  z = +-sqrt(6) u,  v = +-sqrt(2) u,  s = +-2 sqrt(2)/3,
//   w = +-(1/3) sqrt(6 (2 - 9u^2)),
//   x = -wu/z,  y = -vw/z,  c = u(wy - vz)/(sz).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "isowrist/error.hpp"
#include "isowrist/isoset.hpp"
#include "isowrist/linalg3.hpp"

namespace isowrist {

inline constexpr int kBezoutNumber = 256;  // 2^8, reported
inline constexpr int kBkkBound = 192;      // mixed-volume bound, reported
inline constexpr std::size_t kExpectedSolutionCount = 32;
inline constexpr double kSolutionResidualTolerance = 1e-12;
inline constexpr double kNonVanishingThreshold = 0.1;
inline constexpr int kFundamentalSolutionId = 18;

using Unknowns = std::array<double, 8>;  // (c, s, x, y, z, u, v, w)

inline constexpr std::array<std::string_view, 8> kUnknownNames{"c", "s", "x", "y", "z", "u", "v", "w"};

/// The eight equations evaluated as LHS - RHS.
inline std::array<double, 8> isotropy_equations(const Unknowns& q) {
  const auto [c, s, x, y, z, u, v, w] = q;
  return {1.0 + c * c + x * x + u * u - 4.0 / 3.0,
          s * s + y * y + v * v - 4.0 / 3.0,
          z * z + w * w - 4.0 / 3.0,
          c * s + x * y + u * v,
          z * y + w * v,
          x * z + u * w,
          c * c + s * s - 1.0,
          x * x + y * y + z * z - 1.0};
}

struct SolutionRecord {
  int id = 0;  // catalogue number 1..32; 0 when unassigned
  double c = 0, s = 0, x = 0, y = 0, z = 0, u = 0, v = 0, w = 0;
  /// Branch choices, in order: sign of u, z = +-sqrt(6)u, v = +-sqrt(2)u, sign of s, sign of w.
  std::array<int, 5> signs{1, 1, 1, 1, 1};
  double residual = 0.0;

  Unknowns values() const { return {c, s, x, y, z, u, v, w}; }

  std::string sign_string() const {
    std::string out;
    for (int sg : signs) out.push_back(sg > 0 ? '+' : '-');
    return out;
  }
};

inline double residual(const Unknowns& q) {
  double worst = 0.0;
  for (double e : isotropy_equations(q)) worst = std::max(worst, std::abs(e));
  return worst;
}

inline double residual(const SolutionRecord& r) { return residual(r.values()); }

/// Reads the branch signs back off a root.
inline std::array<int, 5> branch_signs(const Unknowns& q) {
  const auto sg = [](double a) { return a < 0.0 ? -1 : 1; };
  const double u = q[5];
  return {sg(u), sg(q[4] * u), sg(q[6] * u), sg(q[1]), sg(q[7])};
}

inline SolutionRecord make_record(const Unknowns& q, int id = 0) {
  SolutionRecord r;
  r.id = id;
  r.c = q[0];
  r.s = q[1];
  r.x = q[2];
  r.y = q[3];
  r.z = q[4];
  r.u = q[5];
  r.v = q[6];
  r.w = q[7];
  r.signs = branch_signs(q);
  r.residual = residual(q);
  return r;
}

inline bool assert_nonvanishing(const SolutionRecord& r, double threshold = kNonVanishingThreshold) {
  for (double a : r.values()) {
    if (!(std::abs(a) >= threshold)) return false;
  }
  return true;
}

/// Catalogue numbering of the 32 roots, as coordinate sign patterns over (c, s, x, y, z, u, v, w).
/// Magnitudes are fixed by the branch identities: |c| = |x| = |u| = 1/3, |s| = 2 sqrt(2)/3,
/// |y| = |v| = sqrt(2)/3, |z| = |w| = sqrt(6)/3.
/// Entries 25-32 carry the z sign that keeps them roots (and consistent with the x-z and
/// x-z/x-y reflection images of entries 17, 18, 23, 24); the commonly printed listing has it flipped.
inline constexpr std::array<std::string_view, 32> kCatalogueSigns{
    "+---++++", "+---+---", "+----++-", "+------+", "+-+++++-", "+-+++--+", "+-++-+++", "+-++----",
    "++-+++-+", "++-++-+-", "++-+-+--", "++-+--++", "+++-++--", "+++-+-++", "+++--+-+", "+++---+-",
    "---+++-+", "---++-+-", "---+--++", "---+-+--", "--+-++--", "--+-+-++", "--+---+-", "--+--+-+",
    "-+---++-", "-+-----+", "-+--+---", "-+--++++", "-+++----", "-+++-+++", "-++++--+", "-++++++-"};

/// Catalogue number of the root whose coordinate signs match `q`, or 0.
inline int catalogue_id(const Unknowns& q) {
  std::string pattern;
  for (double a : q) pattern.push_back(a < 0.0 ? '-' : '+');
  for (std::size_t i = 0; i < kCatalogueSigns.size(); ++i) {
    if (kCatalogueSigns[i] == pattern) return static_cast<int>(i) + 1;
  }
  return 0;
}

struct SolutionSet {
  std::vector<SolutionRecord> solutions;
  int bezout = kBezoutNumber;
  int bkk = kBkkBound;

  std::size_t actual() const { return solutions.size(); }

  const SolutionRecord* find(int id) const {
    for (const auto& r : solutions)
      if (r.id == id) return &r;
    return nullptr;
  }

  const SolutionRecord& at(int id) const {
    if (const auto* r = find(id)) return *r;
    throw Error(ErrorCode::UnknownSolution, "no solution with id " + std::to_string(id));
  }
};

/// Enumerates all 2^5 sign branches of the closed-form elimination, ordered by catalogue id.
inline SolutionSet enumerate_closed_form() {
  const double r2 = std::sqrt(2.0);
  const double r6 = std::sqrt(6.0);
  SolutionSet out;

  for (int mask = 0; mask < 32; ++mask) {
    const auto pick = [mask](int bit) { return (mask >> bit) & 1 ? -1.0 : 1.0; };
    const double u = pick(0) / 3.0;
    const double z = pick(1) * r6 * u;
    const double v = pick(2) * r2 * u;
    const double s = pick(3) * 2.0 * r2 / 3.0;
    const double w = pick(4) * std::sqrt(6.0 * (2.0 - 9.0 * u * u)) / 3.0;

    // back-substitution divides by z and s z
    if (std::abs(z) < kNonVanishingThreshold || std::abs(s * z) < kNonVanishingThreshold * kNonVanishingThreshold) {
      throw Error(ErrorCode::BranchInconsistent, "vanishing divisor in back-substitution");
    }
    const double x = -w * u / z;
    const double y = -v * w / z;
    const double c = u * (w * y - v * z) / (s * z);

    const Unknowns q{c, s, x, y, z, u, v, w};
    SolutionRecord rec = make_record(q, catalogue_id(q));
    if (rec.residual > kSolutionResidualTolerance) {
      throw Error(ErrorCode::BranchInconsistent, "branch " + std::to_string(mask) + " residual too large");
    }
    if (rec.id == 0) {
      throw Error(ErrorCode::BranchInconsistent, "branch " + std::to_string(mask) + " missing from the catalogue");
    }
    out.solutions.push_back(rec);
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const SolutionRecord& a, const SolutionRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < out.solutions.size(); ++i) {
    if (out.solutions[i].id == out.solutions[i - 1].id) {
      throw Error(ErrorCode::BranchInconsistent, "two branches share catalogue id " + std::to_string(out.solutions[i].id));
    }
  }
  return out;
}

/// e1..e4 of a root as an ordered point set.
inline PointSet record_to_pointset(const SolutionRecord& r, double tol = kDefaultTolerance) {
  if (residual(r) > tol) {
    throw Error(ErrorCode::ResidualTooLarge, "record is not a root at the requested tolerance");
  }
  std::string label = r.id > 0 ? "solution " + std::to_string(r.id) : "solution";
  return PointSet({{1.0, 0.0, 0.0}, {r.c, r.s, 0.0}, {r.x, r.y, r.z}, {r.u, r.v, r.w}}, std::move(label));
}

/// Id of the solution whose ordered point set equals `s` within `tol`.
inline std::optional<int> find_solution_id(const PointSet& s, const SolutionSet& set, double tol = kDefaultTolerance) {
  for (const auto& r : set.solutions) {
    if (sets_equal(s, record_to_pointset(r), tol)) return r.id;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Numerical oracle: damped Newton from random starts, independent of the elimination.

struct OracleOptions {
  std::uint64_t seed = 1;
  std::size_t starts = 5000;
  double box = 1.2;               // starts drawn uniformly from [-box, box]^8
  double accept_residual = 1e-10;
  double cluster_radius = 1e-6;
  int max_iterations = 100;
};

struct OracleResult {
  SolutionSet roots;
  std::size_t starts = 0;
  std::size_t converged = 0;
};

inline constexpr std::size_t kMinOracleStarts = 1000;

namespace detail {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

inline Vec8 eval_system(const Vec8& q) {
  const auto f = isotropy_equations({q[0], q[1], q[2], q[3], q[4], q[5], q[6], q[7]});
  return Eigen::Map<const Vec8>(f.data());
}

inline Mat8 system_jacobian(const Vec8& q) {
  const double c = q[0], s = q[1], x = q[2], y = q[3], z = q[4], u = q[5], v = q[6], w = q[7];
  Mat8 j;
  // columns: c s x y z u v w
  j << 2 * c, 0, 2 * x, 0, 0, 2 * u, 0, 0,
       0, 2 * s, 0, 2 * y, 0, 0, 2 * v, 0,
       0, 0, 0, 0, 2 * z, 0, 0, 2 * w,
       s, c, y, x, 0, v, u, 0,
       0, 0, 0, z, y, 0, w, v,
       0, 0, z, 0, x, w, 0, u,
       2 * c, 2 * s, 0, 0, 0, 0, 0, 0,
       0, 0, 2 * x, 2 * y, 2 * z, 0, 0, 0;
  return j;
}

/// Newton with Armijo backtracking on |F|^2. Returns the final iterate.
inline Vec8 damped_newton(Vec8 q, int maxIterations) {
  for (int it = 0; it < maxIterations; ++it) {
    const Vec8 f = eval_system(q);
    const double merit = f.squaredNorm();
    if (f.cwiseAbs().maxCoeff() <= 1e-15) break;

    Eigen::FullPivLU<Mat8> lu(system_jacobian(q));
    if (!lu.isInvertible()) break;
    const Vec8 step = lu.solve(-f);
    if (!step.allFinite()) break;

    double t = 1.0;
    Vec8 next = q + step;
    while (t > 1e-4) {
      next = q + t * step;
      if (eval_system(next).squaredNorm() < (1.0 - 1e-4 * t) * merit) break;
      t *= 0.5;
    }
    if ((next - q).cwiseAbs().maxCoeff() == 0.0) break;
    q = next;
  }
  return q;
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace detail

inline OracleResult oracle_solve(const OracleOptions& opts) {
  if (opts.starts < kMinOracleStarts) {
    throw Error(ErrorCode::InvalidArgument, "oracle needs at least " + std::to_string(kMinOracleStarts) + " starts");
  }
  std::mt19937_64 gen(opts.seed);
  std::vector<Unknowns> converged;

  for (std::size_t k = 0; k < opts.starts; ++k) {
    detail::Vec8 q;
    for (int i = 0; i < 8; ++i) q[i] = -opts.box + 2.0 * opts.box * detail::unit_uniform(gen);
    q = detail::damped_newton(q, opts.max_iterations);
    if (!q.allFinite()) continue;
    const Unknowns root{q[0], q[1], q[2], q[3], q[4], q[5], q[6], q[7]};
    if (residual(root) <= opts.accept_residual) converged.push_back(root);
  }
  if (converged.empty()) throw Error(ErrorCode::NoConvergence, "no start converged");

  // Deterministic clustering over the sorted roots.
  std::sort(converged.begin(), converged.end());
  std::vector<Unknowns> reps;
  for (const Unknowns& q : converged) {
    const auto near = std::find_if(reps.begin(), reps.end(), [&](const Unknowns& r) {
      double d = 0.0;
      for (int i = 0; i < 8; ++i) d = std::max(d, std::abs(q[i] - r[i]));
      return d <= opts.cluster_radius;
    });
    if (near == reps.end()) {
      reps.push_back(q);
    } else if (residual(q) < residual(*near)) {
      *near = q;
    }
  }
  std::sort(reps.begin(), reps.end());

  OracleResult out;
  out.starts = opts.starts;
  out.converged = converged.size();
  for (const Unknowns& q : reps) out.roots.solutions.push_back(make_record(q));
  return out;
}

inline OracleResult oracle_solve(std::uint64_t seed, std::size_t starts) {
  OracleOptions opts;
  opts.seed = seed;
  opts.starts = starts;
  return oracle_solve(opts);
}

struct RootMatch {
  std::size_t matched = 0;          // oracle roots matched to exactly one reference record
  std::vector<int> oracle_to_id;    // per oracle root: reference id, or 0 when unmatched/ambiguous
  std::vector<int> unmatched_ids;   // reference ids that no oracle root hit
  bool bijective = false;
};

/// Matches each oracle root to reference records within `tol` (max-abs over the eight unknowns).
inline RootMatch match_roots(const SolutionSet& oracle, const SolutionSet& reference, double tol = 1e-8) {
  RootMatch m;
  std::vector<int> hits(reference.solutions.size(), 0);
  for (const auto& root : oracle.solutions) {
    int id = 0;
    int count = 0;
    const Unknowns q = root.values();
    for (std::size_t j = 0; j < reference.solutions.size(); ++j) {
      const Unknowns p = reference.solutions[j].values();
      double d = 0.0;
      for (int i = 0; i < 8; ++i) d = std::max(d, std::abs(q[i] - p[i]));
      if (d <= tol) {
        ++count;
        ++hits[j];
        id = reference.solutions[j].id;
      }
    }
    m.oracle_to_id.push_back(count == 1 ? id : 0);
    if (count == 1) ++m.matched;
  }
  bool eachOnce = true;
  for (std::size_t j = 0; j < hits.size(); ++j) {
    if (hits[j] == 0) m.unmatched_ids.push_back(reference.solutions[j].id);
    if (hits[j] != 1) eachOnce = false;
  }
  m.bijective = eachOnce && m.matched == oracle.solutions.size() && oracle.actual() == reference.actual();
  return m;
}

}  // namespace isowrist

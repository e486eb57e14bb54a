#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "isowrist/solver.hpp"
#include "test_support.hpp"

using namespace isowrist;
using isowrist::testing::coordinates_from_signs;
using isowrist::testing::kR2;
using isowrist::testing::kR6;
using isowrist::testing::printed_sign_rows;
using isowrist::testing::reference_residual;

namespace {

const SolutionSet& closed() {
  static const SolutionSet s = enumerate_closed_form();
  return s;
}

double max_abs_diff8(const Unknowns& a, const Unknowns& b) {
  double d = 0;
  for (int i = 0; i < 8; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(Residual, FirstListedSolution) {
  const Unknowns q{1.0 / 3, -2 * kR2 / 3, -1.0 / 3, -kR2 / 3, kR6 / 3, 1.0 / 3, kR2 / 3, kR6 / 3};
  EXPECT_LE(residual(q), 1e-12);
  EXPECT_LE(reference_residual(q), 1e-12);
}

TEST(Residual, AllZerosRecord) {
  EXPECT_GE(residual(Unknowns{}), 1.0 / 3.0);
  EXPECT_NEAR(residual(Unknowns{}), 4.0 / 3.0, 1e-15);
}

TEST(Residual, FundamentalTetrahedronRecord) {
  const Unknowns q{-1.0 / 3, -2 * kR2 / 3, -1.0 / 3, kR2 / 3, kR6 / 3, -1.0 / 3, kR2 / 3, -kR6 / 3};
  EXPECT_LE(residual(q), 1e-12);
  EXPECT_EQ(catalogue_id(q), 18);
}

TEST(ClosedForm, ThirtyTwoRoots) {
  const auto& s = closed();
  ASSERT_EQ(s.actual(), 32u);
  EXPECT_EQ(s.bezout, 256);
  EXPECT_EQ(s.bkk, 192);
  for (std::size_t i = 0; i < 32; ++i) {
    const auto& r = s.solutions[i];
    EXPECT_EQ(r.id, static_cast<int>(i) + 1);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_LE(reference_residual(r.values()), 1e-12);
    EXPECT_TRUE(assert_nonvanishing(r));
  }
}

TEST(ClosedForm, CoordinateMagnitudes) {
  for (const auto& r : closed().solutions) {
    EXPECT_NEAR(std::abs(r.c), 1.0 / 3, 1e-13);
    EXPECT_NEAR(std::abs(r.x), 1.0 / 3, 1e-13);
    EXPECT_NEAR(std::abs(r.u), 1.0 / 3, 1e-13);
    EXPECT_NEAR(std::abs(r.s), 2 * kR2 / 3, 1e-13);
    EXPECT_NEAR(std::abs(r.z), kR6 / 3, 1e-13);
    EXPECT_NEAR(std::abs(r.w), kR6 / 3, 1e-13);
    EXPECT_NEAR(std::abs(r.y), kR2 / 3, 1e-13);
    EXPECT_NEAR(std::abs(r.v), kR2 / 3, 1e-13);
  }
}

// Reference listing: rows 1-24 as printed are roots once |y| = |v| = sqrt2/3.
// Rows 25-32 as printed are not roots; flipping only their z sign makes them roots,
// and those are exactly the library's entries 25-32.
TEST(ClosedForm, AgreesWithPrintedListing) {
  const auto& rows = printed_sign_rows();
  for (std::size_t i = 0; i < 32; ++i) {
    auto q = coordinates_from_signs(rows[i]);
    const auto& rec = closed().solutions[i];
    if (i < 24) {
      EXPECT_LE(reference_residual(q), 1e-12) << "row " << i + 1;
    } else {
      EXPECT_GT(reference_residual(q), 0.5) << "row " << i + 1;
      q[4] = -q[4];
      EXPECT_LE(reference_residual(q), 1e-12) << "row " << i + 1;
    }
    EXPECT_LE(max_abs_diff8(q, rec.values()), 1e-13) << "row " << i + 1;
  }
}

TEST(ClosedForm, PrintedMagnitudesForYAndVAreNotRoots) {
  // |y| = |v| = 2 sqrt2/3 breaks unit norm of e3: 1/9 + 8/9 + 6/9 != 1.
  auto q = coordinates_from_signs(printed_sign_rows()[0]);
  q[3] *= 2.0;
  q[6] *= 2.0;
  EXPECT_NEAR(q[2] * q[2] + q[3] * q[3] + q[4] * q[4], 15.0 / 9.0, 1e-14);
  EXPECT_GT(residual(q), 0.1);
}

TEST(ClosedForm, BranchIdentities) {
  for (const auto& r : closed().solutions) {
    EXPECT_NEAR(r.z * r.z, 6 * r.u * r.u, 1e-13);
    EXPECT_NEAR(r.v * r.v, 2 * r.u * r.u, 1e-13);
    EXPECT_NEAR(r.s * r.s, 8.0 / 9.0, 1e-13);
    EXPECT_NEAR(r.w * r.w, (2.0 / 3.0) * (2 - 9 * r.u * r.u), 1e-13);
    // univariate eliminant u(3u - 1)(3u + 1) = 0 on its nonzero roots
    EXPECT_NEAR(r.u * (3 * r.u - 1) * (3 * r.u + 1), 0.0, 1e-14);
    EXPECT_NEAR(r.u * r.u + r.v * r.v + r.w * r.w, 1.0, 1e-12);
  }
}

// Intermediate forms of the elimination, evaluated on every root.
TEST(ClosedForm, IntermediateEliminations) {
  for (const auto& r : closed().solutions) {
    const double c = r.c, s = r.s, x = r.x, y = r.y, z = r.z, u = r.u, v = r.v, w = r.w;
    EXPECT_NEAR(x, -w * u / z, 1e-12);
    EXPECT_NEAR(y, -v * w / z, 1e-12);
    EXPECT_NEAR(c, u * (w * y - v * z) / (s * z), 1e-12);

    EXPECT_NEAR(w * w * u * u + v * v * w * w + std::pow(z, 4) - z * z, 0.0, 1e-12);
    EXPECT_NEAR(3 * s * s * z * z + 3 * v * v * w * w + 3 * v * v * z * z - 4 * z * z, 0.0, 1e-12);
    EXPECT_NEAR(3 * z * z + 3 * w * w - 4, 0.0, 1e-12);
    EXPECT_NEAR(3 * u * u * std::pow(w, 4) * v * v + 6 * u * u * w * w * v * v * z * z + 3 * u * u * v * v * std::pow(z, 4) +
                    3 * w * w * u * u * s * s * z * z + 3 * u * u * std::pow(z, 4) * s * s - s * s * std::pow(z, 4),
                0.0, 1e-12);
    EXPECT_NEAR(u * u * std::pow(w, 4) * v * v + 2 * u * u * w * w * v * v * z * z + u * u * v * v * std::pow(z, 4) +
                    std::pow(s, 4) * std::pow(z, 4) - s * s * std::pow(z, 4),
                0.0, 1e-12);

    // recursive forms: w, s (z-dependent), v, z
    EXPECT_NEAR(std::abs(w), std::sqrt(12 - 9 * z * z) / 3, 1e-12);
    EXPECT_NEAR(std::abs(s), (2.0 / 3.0) * std::sqrt(3 * z * z - 3 * v * v) / std::abs(z), 1e-12);
    EXPECT_NEAR(std::abs(s), 2 * kR2 / 3, 1e-12);
    EXPECT_NEAR(std::abs(v), std::sqrt(z * z - 4 * u * u), 1e-12);
    EXPECT_NEAR(std::abs(z), kR6 * std::abs(u), 1e-12);
  }
}

TEST(ClosedForm, SignPatternsInjectiveAndRootsDistinct) {
  std::set<std::string> patterns;
  for (const auto& r : closed().solutions) patterns.insert(r.sign_string());
  EXPECT_EQ(patterns.size(), 32u);

  const auto& sols = closed().solutions;
  for (std::size_t i = 0; i < sols.size(); ++i)
    for (std::size_t j = i + 1; j < sols.size(); ++j) EXPECT_GT(max_abs_diff8(sols[i].values(), sols[j].values()), 1e-9);
}

TEST(NonVanishing, Cases) {
  EXPECT_TRUE(assert_nonvanishing(closed().at(7)));
  SolutionRecord r = closed().at(7);
  r.u = 0;
  EXPECT_FALSE(assert_nonvanishing(r));
  r = closed().at(7);
  r.w = 0;
  EXPECT_FALSE(assert_nonvanishing(r));
}

TEST(RecordToPointSet, FundamentalSet) {
  const PointSet s = record_to_pointset(closed().at(18));
  EXPECT_TRUE(sets_equal(s, PointSet(isowrist::testing::tetrahedron_points()), 1e-12));
  for (const auto& r : closed().solutions) {
    const IsotropyReport rep = certify_isotropy(record_to_pointset(r));
    EXPECT_LE(max_abs_diff(rep.H, Mat3::scaled_identity(4.0 / 3.0)), 1e-12);
    EXPECT_NEAR(rep.sigma, std::sqrt(4.0 / 3.0), 1e-10);
  }
}

TEST(RecordToPointSet, RejectsNonRoot) {
  SolutionRecord r = closed().at(3);
  r.z += 1.0;
  try {
    record_to_pointset(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResidualTooLarge);
  }
}

TEST(FindSolutionId, RoundTrip) {
  for (const auto& r : closed().solutions) EXPECT_EQ(find_solution_id(record_to_pointset(r), closed()), r.id);
  EXPECT_FALSE(find_solution_id(PointSet({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}, {0, 0, 1}}), closed()).has_value());
}

TEST(Oracle, SeedOneFindsAllThirtyTwo) {
  const OracleResult o = oracle_solve(1, 5000);
  EXPECT_EQ(o.roots.actual(), 32u);
  EXPECT_GT(o.converged, 1000u);
  const RootMatch m = match_roots(o.roots, closed(), 1e-8);
  EXPECT_TRUE(m.bijective);
  EXPECT_EQ(m.matched, 32u);
  EXPECT_TRUE(m.unmatched_ids.empty());
  for (const auto& r : o.roots.solutions) {
    EXPECT_LE(r.residual, 1e-10);
    for (double a : r.values()) EXPECT_GE(std::abs(a), 0.1);
  }
}

TEST(Oracle, DeterministicPerSeed) {
  const OracleResult a = oracle_solve(3, 1000);
  const OracleResult b = oracle_solve(3, 1000);
  ASSERT_EQ(a.roots.actual(), b.roots.actual());
  EXPECT_EQ(a.converged, b.converged);
  for (std::size_t i = 0; i < a.roots.actual(); ++i)
    EXPECT_EQ(a.roots.solutions[i].values(), b.roots.solutions[i].values());
}

TEST(Oracle, RejectsTooFewStarts) {
  try {
    oracle_solve(1, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(MatchRoots, DetectsMissingRoot) {
  SolutionSet partial = closed();
  partial.solutions.pop_back();
  const RootMatch m = match_roots(partial, closed());
  EXPECT_FALSE(m.bijective);
  EXPECT_EQ(m.unmatched_ids, std::vector<int>{32});
}

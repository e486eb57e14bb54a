// isowrist: enumerate, verify and classify isotropic four-axis spherical wrists.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "isowrist/classify.hpp"
#include "isowrist/io.hpp"
#include "isowrist/isoset.hpp"
#include "isowrist/solver.hpp"
#include "isowrist/wrist.hpp"

namespace {

using namespace isowrist;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 1;
  std::size_t starts = 5000;
  std::string format = "json";
  std::string output;
  std::string solid;
  int solution_id = 0;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + cfg.output);
  out << text;
}

int cmd_platonic(const RunConfig& cfg) {
  static const std::map<std::string, PlatonicSolid> solids{{"tetrahedron", PlatonicSolid::Tetrahedron},
                                                           {"cube", PlatonicSolid::Cube},
                                                           {"octahedron", PlatonicSolid::Octahedron},
                                                           {"dodecahedron", PlatonicSolid::Dodecahedron},
                                                           {"icosahedron", PlatonicSolid::Icosahedron}};
  const PointSet s = platonic(solids.at(cfg.solid));
  const IsotropyReport r = certify_isotropy(s, cfg.tolerance);

  if (cfg.format == "csv") {
    std::string text = "x,y,z\n";
    for (const Vec3& e : s) text += format_real(e.x) + ',' + format_real(e.y) + ',' + format_real(e.z) + '\n';
    emit(cfg, text);
  } else {
    emit(cfg, dump_json(Json{{"solid", cfg.solid}, {"n", s.size()}, {"pointset", to_json(s)}, {"report", to_json(r)}}));
  }
  std::fprintf(stderr, "%s: n = %zu, sigma^2 = %s, %s\n", cfg.solid.c_str(), s.size(),
               format_real(r.sigma_squared, kTableDigits).c_str(), r.isotropic ? "isotropic" : "NOT isotropic");
  return r.isotropic ? kExitOk : kExitVerification;
}

int cmd_solve(const RunConfig& cfg) {
  const SolutionSet set = enumerate_closed_form();
  emit(cfg, cfg.format == "csv" ? to_csv(set) : dump_json(to_json(set)));

  double worst = 0.0;
  for (const auto& r : set.solutions) worst = std::max(worst, r.residual);
  const bool ok = set.actual() == kExpectedSolutionCount && worst <= cfg.tolerance;
  std::fprintf(stderr, "%zu solutions (Bezout %d, BKK %d), max residual %s %s tolerance %s\n", set.actual(),
               set.bezout, set.bkk, format_real(worst, kTableDigits).c_str(), worst <= cfg.tolerance ? "<=" : ">",
               format_real(cfg.tolerance, kTableDigits).c_str());
  return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const RunConfig& cfg) {
  const SolutionSet closed = enumerate_closed_form();
  const OracleResult oracle = oracle_solve(cfg.seed, cfg.starts);
  const RootMatch match = match_roots(oracle.roots, closed);

  double minAbs = 1.0;
  for (const auto& r : oracle.roots.solutions)
    for (double a : r.values()) minAbs = std::min(minAbs, std::abs(a));

  const bool ok = match.bijective && oracle.roots.actual() == kExpectedSolutionCount;

  if (cfg.format == "csv") {
    std::string text = "root,matched_id,c,s,x,y,z,u,v,w,residual\n";
    for (std::size_t k = 0; k < oracle.roots.solutions.size(); ++k) {
      const auto& r = oracle.roots.solutions[k];
      text += std::to_string(k + 1) + ',' + std::to_string(match.oracle_to_id[k]);
      for (double a : r.values()) text += ',' + format_real(a);
      text += ',' + format_real(r.residual) + '\n';
    }
    emit(cfg, text);
  } else {
    Json matched = Json::array();
    for (int id : match.oracle_to_id) matched.push_back(id);
    emit(cfg, dump_json(Json{{"bezout", kBezoutNumber},
                             {"bkk", kBkkBound},
                             {"closed_form", closed.actual()},
                             {"oracle", oracle.roots.actual()},
                             {"seed", cfg.seed},
                             {"starts", oracle.starts},
                             {"converged", oracle.converged},
                             {"matched", match.matched},
                             {"all_matched", match.bijective},
                             {"unmatched_ids", match.unmatched_ids},
                             {"min_abs_coordinate", minAbs},
                             {"oracle_to_id", matched}}));
  }
  std::fprintf(stderr, "Bezout %d, BKK %d, closed form %zu, oracle %zu (%zu/%zu starts converged)\n", kBezoutNumber,
               kBkkBound, closed.actual(), oracle.roots.actual(), oracle.converged, oracle.starts);
  if (ok) {
    std::fprintf(stderr, "%zu == %zu, all matched\n", oracle.roots.actual(), closed.actual());
  } else {
    std::fprintf(stderr, "%zu != %zu or unmatched roots (%zu matched)\n", oracle.roots.actual(), closed.actual(),
                 match.matched);
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_classify(const RunConfig& cfg) {
  const SolutionSet set = enumerate_closed_form();
  const Classification cls = classify(set);
  const auto antipodal = antipodal_map(set);
  const std::vector<int> family = antipodal_family(set);
  const auto reflections = reflection_map(set, family);

  if (cfg.format == "csv") {
    emit(cfg, to_csv(cls.architectures));
  } else {
    Json archs = Json::array();
    for (std::size_t k = 0; k < cls.architectures.size(); ++k) {
      Json a = to_json(cls.architectures[k]);
      a["label"] = architecture_label(k);
      const auto rev = cls.reversal_class[k];
      a["reversed_chain_class"] = rev ? Json(architecture_label(*rev)) : Json(nullptr);
      archs.push_back(a);
    }
    Json amap = Json::array();
    for (const auto& e : antipodal) {
      amap.push_back(Json{{"exchanged", e.exchanged}, {"id", e.id ? Json(*e.id) : Json(nullptr)}});
    }
    Json rmap = Json::array();
    for (const auto& row : reflections) {
      Json ids = Json::array();
      for (const auto& id : row.ids) ids.push_back(id ? Json(*id) : Json(nullptr));
      rmap.push_back(Json{{"planes", row.planes}, {"ids", ids}});
    }
    emit(cfg, dump_json(Json{{"candidates", cls.candidates},
                             {"count", cls.architectures.size()},
                             {"architectures", archs},
                             {"antipodal_map", Json{{"base", kFundamentalSolutionId}, {"images", amap}}},
                             {"reflection_map", Json{{"sets", family}, {"rows", rmap}}}}));
  }

  std::fprintf(stderr, "%zu candidates -> %zu distinct wrists\n", cls.candidates, cls.architectures.size());
  for (std::size_t k = 0; k < cls.architectures.size(); ++k) {
    const auto& a = cls.architectures[k];
    std::fprintf(stderr, "  (%s) alpha = %s, %s, %s  theta2 = %s  theta3 = %s\n", architecture_label(k).c_str(),
                 format_real(a.alpha_deg[0], kTableDigits).c_str(), format_real(a.alpha_deg[1], kTableDigits).c_str(),
                 format_real(a.alpha_deg[2], kTableDigits).c_str(), format_real(a.theta2_deg, kTableDigits).c_str(),
                 format_real(a.theta3_deg, kTableDigits).c_str());
  }
  return cls.architectures.size() == kExpectedArchitectureCount ? kExitOk : kExitVerification;
}

int cmd_export_sphere(const RunConfig& cfg) {
  const SolutionSet set = enumerate_closed_form();
  const SolutionRecord* r = set.find(cfg.solution_id);
  if (r == nullptr) {
    std::fprintf(stderr, "unknown solution id %d (valid: 1..%zu)\n", cfg.solution_id, set.actual());
    return kExitUsage;
  }
  emit(cfg, export_sphere(record_to_pointset(*r)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Isotropic four-revolute spherical wrists: solve, verify, classify, export"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--tolerance", cfg.tolerance, "Isotropy / residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "Write the artifact to this path instead of stdout");

  auto* platonicCmd = app.add_subcommand("platonic", "Vertices of a Platonic solid and their isotropy certificate");
  platonicCmd->add_option("solid", cfg.solid, "Solid name")
      ->required()
      ->check(CLI::IsMember({"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"}));

  auto* solveCmd = app.add_subcommand("solve", "Closed-form enumeration of the 32 isotropic point sets");

  auto* verifyCmd = app.add_subcommand("verify", "Cross-check the closed form against a multistart Newton oracle");
  verifyCmd->add_option("--seed", cfg.seed, "Oracle RNG seed")->capture_default_str();
  verifyCmd->add_option("--starts", cfg.starts, "Oracle start count (>= 1000)")
      ->check(CLI::Range(kMinOracleStarts, std::size_t{100000000}))
      ->capture_default_str();

  auto* classifyCmd = app.add_subcommand("classify", "Deduplicate all kinematic chains into distinct wrists");

  auto* exportCmd = app.add_subcommand("export-sphere", "Write a solution's axes and connecting arcs as a polyline");
  exportCmd->add_option("id", cfg.solution_id, "Solution id (1..32)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*platonicCmd) return cmd_platonic(cfg);
    if (*solveCmd) return cmd_solve(cfg);
    if (*verifyCmd) return cmd_verify(cfg);
    if (*classifyCmd) return cmd_classify(cfg);
    if (*exportCmd) return cmd_export_sphere(cfg);
  } catch (const isowrist::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerification;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

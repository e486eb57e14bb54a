#pragma once

// JSON / CSV / polyline serialization. JSON numbers are written with 17
// significant digits so every double round-trips exactly.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "isowrist/classify.hpp"
#include "isowrist/error.hpp"
#include "isowrist/isoset.hpp"
#include "isowrist/solver.hpp"
#include "isowrist/wrist.hpp"

namespace isowrist {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonDigits = 17;
inline constexpr int kTableDigits = 12;

inline std::string format_real(double v, int digits = kJsonDigits) {
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

namespace detail {

inline bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

inline void write_scalar(std::ostream& os, const Json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    os << (std::isfinite(v) ? format_real(v) : "null");
  } else {
    os << j.dump();
  }
}

inline void write_json(std::ostream& os, const Json& j, int indent, int level) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string closePad(static_cast<std::size_t>(indent * level), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << pad << Json(it.key()).dump() << ": ";
      write_json(os, it.value(), indent, level + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << closePad << "}";
  } else if (j.is_array()) {
    if (is_flat(j)) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        write_scalar(os, j[i]);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << pad;
      write_json(os, j[i], indent, level + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << closePad << "]";
  } else {
    write_scalar(os, j);
  }
}

}  // namespace detail

/// Serializes with full-precision floats; flat arrays stay on one line.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::write_json(os, j, indent, 0);
  os << '\n';
  return os.str();
}

inline Json vec_to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

inline Json mat_to_json(const Mat3& m) {
  return Json::array({vec_to_json(m.row(0)), vec_to_json(m.row(1)), vec_to_json(m.row(2))});
}

// --- PointSet --------------------------------------------------------------

inline Json to_json(const PointSet& s) {
  Json pts = Json::array();
  for (const Vec3& e : s) pts.push_back(vec_to_json(e));
  return Json{{"label", s.label()}, {"points", pts}};
}

inline PointSet pointset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw Error(ErrorCode::BadDocument, "point set document needs a \"points\" array");
  }
  std::vector<Vec3> pts;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number()) {
      throw Error(ErrorCode::BadDocument, "each point must be [x, y, z]");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  return PointSet(std::move(pts), std::move(label));
}

inline PointSet pointset_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::BadDocument, e.what());
  }
  return pointset_from_json(j);
}

// --- IsotropyReport --------------------------------------------------------

inline Json to_json(const IsotropyReport& r) {
  return Json{{"H", mat_to_json(r.H)},
              {"eigenvalues", Json::array({r.eigenvalues[0], r.eigenvalues[1], r.eigenvalues[2]})},
              {"sigma", r.sigma},
              {"sigma_squared", r.sigma_squared},
              {"condition_number", r.condition_number},
              {"isotropic", r.isotropic},
              {"tolerance", r.tolerance}};
}

// --- SolutionSet -----------------------------------------------------------

inline Json to_json(const SolutionRecord& r) {
  return Json{{"id", r.id}, {"c", r.c}, {"s", r.s}, {"x", r.x}, {"y", r.y}, {"z", r.z}, {"u", r.u},
              {"v", r.v},   {"w", r.w}, {"signs", r.sign_string()}, {"residual", r.residual}};
}

inline Json to_json(const SolutionSet& s) {
  Json sols = Json::array();
  for (const auto& r : s.solutions) sols.push_back(to_json(r));
  return Json{{"bezout", s.bezout}, {"bkk", s.bkk}, {"actual", s.actual()}, {"solutions", sols}};
}

inline SolutionSet solution_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("solutions") || !j["solutions"].is_array()) {
    throw Error(ErrorCode::BadDocument, "solution set document needs a \"solutions\" array");
  }
  SolutionSet out;
  out.bezout = j.value("bezout", kBezoutNumber);
  out.bkk = j.value("bkk", kBkkBound);
  for (const auto& e : j["solutions"]) {
    Unknowns q{};
    for (std::size_t i = 0; i < 8; ++i) {
      const std::string key(kUnknownNames[i]);
      if (!e.contains(key) || !e[key].is_number()) throw Error(ErrorCode::BadDocument, "solution missing " + key);
      q[i] = e[key].get<double>();
    }
    out.solutions.push_back(make_record(q, e.value("id", 0)));
  }
  return out;
}

inline std::string to_csv(const SolutionSet& s) {
  std::ostringstream os;
  os << "id,c,s,x,y,z,u,v,w,signs,residual\n";
  for (const auto& r : s.solutions) {
    os << r.id;
    for (double a : r.values()) os << ',' << format_real(a);
    os << ',' << r.sign_string() << ',' << format_real(r.residual) << '\n';
  }
  return os.str();
}

// --- WristArchitecture -----------------------------------------------------

inline Json to_json(const WristArchitecture& a) {
  Json sources = Json::array();
  for (const auto& s : a.sources) {
    sources.push_back(Json{{"solution_id", s.solution_id},
                           {"chain", Json::array({s.chain[0], s.chain[1], s.chain[2], s.chain[3]})}});
  }
  return Json{{"alpha_deg", Json::array({a.alpha_deg[0], a.alpha_deg[1], a.alpha_deg[2]})},
              {"theta2_deg", a.theta2_deg},
              {"theta3_deg", a.theta3_deg},
              {"sources", sources}};
}

inline WristArchitecture architecture_from_json(const Json& j) {
  try {
    WristArchitecture a;
    for (std::size_t i = 0; i < 3; ++i) a.alpha_deg[i] = j.at("alpha_deg").at(i).get<double>();
    a.theta2_deg = j.at("theta2_deg").get<double>();
    a.theta3_deg = j.at("theta3_deg").get<double>();
    for (const auto& s : j.value("sources", Json::array())) {
      ArchitectureSource src;
      src.solution_id = s.at("solution_id").get<int>();
      for (std::size_t i = 0; i < 4; ++i) src.chain[i] = s.at("chain").at(i).get<int>();
      a.sources.push_back(src);
    }
    return a;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::BadDocument, e.what());
  }
}

/// Letter label a, b, c, ... for the k-th architecture.
inline std::string architecture_label(std::size_t k) { return std::string(1, static_cast<char>('a' + k)); }

/// One block per architecture with rows i = 1..4; alpha4 is "*", theta1/theta4 are free.
inline std::string to_csv(const std::vector<WristArchitecture>& archs) {
  std::ostringstream os;
  os << "wrist,i,alpha_deg,theta_deg\n";
  for (std::size_t k = 0; k < archs.size(); ++k) {
    const auto& a = archs[k];
    const std::string l = architecture_label(k);
    os << l << ",1," << format_real(a.alpha_deg[0]) << ",theta1\n";
    os << l << ",2," << format_real(a.alpha_deg[1]) << ',' << format_real(a.theta2_deg) << '\n';
    os << l << ",3," << format_real(a.alpha_deg[2]) << ',' << format_real(a.theta3_deg) << '\n';
    os << l << ",4,*,theta4\n";
  }
  return os.str();
}

// --- Geometry export -------------------------------------------------------

inline constexpr int kArcSegments = 16;

/// Plain-text polyline: the 4 axis endpoints as the first vertices ("v x y z"),
/// then interior samples of the great-circle arcs between consecutive axes,
/// and 1-based segments ("l i j").
inline std::string export_sphere(const PointSet& axes, int segments = kArcSegments) {
  std::ostringstream os;
  os << "# " << (axes.label().empty() ? "axes" : axes.label()) << "\n";
  std::vector<Vec3> verts(axes.begin(), axes.end());
  std::vector<std::pair<std::size_t, std::size_t>> lines;

  for (std::size_t i = 0; i + 1 < axes.size(); ++i) {
    const Vec3& a = axes[i];
    const Vec3& b = axes[i + 1];
    const double omega = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
    const double so = std::sin(omega);
    std::size_t prev = i + 1;
    for (int k = 1; k < segments; ++k) {
      const double t = static_cast<double>(k) / segments;
      Vec3 p = so < 1e-12 ? a : (std::sin((1.0 - t) * omega) / so) * a + (std::sin(t * omega) / so) * b;
      verts.push_back(normalized(p));
      lines.emplace_back(prev, verts.size());
      prev = verts.size();
    }
    lines.emplace_back(prev, i + 2);
  }
  for (const Vec3& v : verts) {
    os << "v " << format_real(v.x) << ' ' << format_real(v.y) << ' ' << format_real(v.z) << '\n';
  }
  for (const auto& [i, j] : lines) os << "l " << i << ' ' << j << '\n';
  return os.str();
}

}  // namespace isowrist

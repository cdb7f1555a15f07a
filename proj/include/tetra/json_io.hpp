#pragma once

#include <json.hpp>
#include <string>

#include "tetra/exterior.hpp"
#include "tetra/orbit_form.hpp"
#include "tetra/quat_matrix.hpp"
#include "tetra/momentum_map.hpp"

namespace tetra {

using Json = nlohmann::ordered_json;

/// Quaternions are serialized as a 4-element array [w, x, y, z]; matrices as
/// {"rows": n, "cols": p, "entries": [[[w,x,y,z], ...] per row, ...]}.

inline Json toJson(const Quaterniond& q) { return Json::array({q.w, q.x, q.y, q.z}); }

inline Quaterniond quaternionFromJson(const Json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::runtime_error("quaternion must be a 4-element array [w, x, y, z]");
  for (const auto& c : j)
    if (!c.is_number()) throw std::runtime_error("quaternion components must be numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

inline Json toJson(const QuatMatrixd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(toJson(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline QuatMatrixd quatMatrixFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw std::runtime_error("matrix must be {rows, cols, entries}");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw std::runtime_error("matrix dimensions must be integers");
  const int rows = j["rows"].get<int>(), cols = j["cols"].get<int>();
  if (rows < 1 || cols < 1) throw std::runtime_error("matrix dimensions must be positive");
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
    throw std::runtime_error("entries must hold one array per row");
  QuatMatrixd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = entries[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw std::runtime_error("row length mismatch");
    for (int c = 0; c < cols; ++c) m(i, c) = quaternionFromJson(row[c]);
  }
  return m;
}

/// Debug dump of an alternating form: nonzero coefficients listed with their
/// 1-based index sets.
inline Json toJson(const AltForm& a) {
  Json coeffs = Json::array();
  forEachSubset(a.dim(), a.degree(), [&](std::span<const int> s) {
    const double v = a.coefficient(s);
    if (v == 0.0) return;
    Json subset = Json::array();
    for (int i : s) subset.push_back(i + 1);
    coeffs.push_back(Json::array({std::move(subset), v}));
  });
  return Json{{"dim", a.dim()}, {"degree", a.degree()}, {"coeffs", std::move(coeffs)}};
}

inline Json toJson(const OrbitReport& r) {
  return Json{{"spectrum", r.spectrum},
              {"dim", r.dim},
              {"nondegeneracy_sigma_min", r.nondegeneracy_sigma_min},
              {"ce_residual", r.ce_residual},
              {"invariance_discrepancy", r.invariance_discrepancy},
              {"jacobi5_residual", r.eq_residual}};
}

inline Json toJson(const ScanReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json image = Json::array();
    for (int i = 0; i < s.image.size(); ++i) image.push_back(s.image[i]);
    samples.push_back(Json{{"label", s.kind + ":" + std::to_string(s.id)},
                           {"image", std::move(image)},
                           {"in_hypersimplex", s.in_hypersimplex},
                           {"in_matroid_hull", s.in_hull}});
  }
  Json hull = Json::array();
  for (const auto& v : r.hull_vertices) {
    Json vertex = Json::array();
    for (int i = 0; i < v.size(); ++i) vertex.push_back(static_cast<int>(v[i]));
    hull.push_back(std::move(vertex));
  }
  return Json{{"samples", std::move(samples)},
              {"containment_failures", r.containment_failures},
              {"hull_vertices", std::move(hull)}};
}

}  // namespace tetra

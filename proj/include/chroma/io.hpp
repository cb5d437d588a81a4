// JSON interchange for every value the command line reads or writes.
// Rationals travel as strings "p/q" (or bare "p" for integers); class and
// point order is significant and preserved.
#pragma once

#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chroma/colorful.hpp"
#include "chroma/complexes.hpp"
#include "chroma/flips.hpp"
#include "chroma/gale.hpp"
#include "chroma/minkowski.hpp"
#include "chroma/ptransform.hpp"

namespace chroma {

using Json = nlohmann::json;

inline Rat rat_from_json(const Json& j) {
  if (!j.is_string())
    throw std::invalid_argument("expected a rational as a string");
  return Rat::parse(j.get<std::string>());
}

inline Json vec_to_json(const QVec& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(v[i].str());
  return out;
}

inline QVec vec_from_json(const Json& j) {
  if (!j.is_array())
    throw std::invalid_argument("expected a coordinate array");
  QVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = rat_from_json(j[i]);
  return v;
}

inline std::size_t index_from_json(const Json& j, const char* what) {
  // values built from C++ ints come back as signed numbers, so checking
  // is_number_unsigned alone would reject our own output
  if (!j.is_number_integer() ||
      (!j.is_number_unsigned() && j.get<long long>() < 0))
    throw std::invalid_argument(std::string(what) +
                                " must be a non-negative integer");
  return j.get<std::size_t>();
}

// Configuration files: {"dimension": d, "classes": [[["1","0"], ...], ...]}
inline Json config_to_json(const ColorfulConfiguration& c) {
  Json classes = Json::array();
  for (const auto& cls : c.classes) {
    Json jc = Json::array();
    for (const QVec& p : cls) jc.push_back(vec_to_json(p));
    classes.push_back(std::move(jc));
  }
  return Json{{"dimension", c.dim}, {"classes", std::move(classes)}};
}

inline ColorfulConfiguration config_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("classes"))
    throw std::invalid_argument(
        "configuration json needs dimension and classes");
  ColorfulConfiguration c;
  c.dim = index_from_json(j.at("dimension"), "dimension");
  if (!j.at("classes").is_array())
    throw std::invalid_argument("classes must be an array");
  for (const Json& jc : j.at("classes")) {
    if (!jc.is_array())
      throw std::invalid_argument("each class must be an array of points");
    std::vector<QVec> cls;
    for (const Json& jp : jc) cls.push_back(vec_from_json(jp));
    c.classes.push_back(std::move(cls));
  }
  c.validate();
  return c;
}

// Complex files: {"vertices": N, "facets": [[0,3,5], ...]}; the closure of
// the listed facets is built on load
inline Json complex_to_json(const SimplicialComplexGF2& k) {
  std::vector<Face> facets;
  for (int d = k.top_dim(); d >= 0; --d)
    for (const Face& f : k.faces(std::size_t(d))) {
      bool maximal = true;
      for (const Face& g : facets)
        if (detail::face_subset(f, g)) {
          maximal = false;
          break;
        }
      if (maximal) facets.push_back(f);
    }
  return Json{{"vertices", k.vertex_count()}, {"facets", facets}};
}

inline SimplicialComplexGF2 complex_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("facets"))
    throw std::invalid_argument("complex json needs vertices and facets");
  std::size_t n = index_from_json(j.at("vertices"), "vertices");
  std::vector<Face> facets;
  for (const Json& jf : j.at("facets")) {
    Face f;
    for (const Json& v : jf) {
      std::size_t idx = index_from_json(v, "vertex index");
      if (idx >= n)
        throw std::invalid_argument("facet vertex out of range");
      f.push_back(int(idx));
    }
    facets.push_back(std::move(f));
  }
  return SimplicialComplexGF2::from_facets(n, facets);
}

// Point configuration files:
// {"dimension": d, "points": [["0","1"], ...], "classes": [[0,1],[2,3]]}
// where the optional classes entry partitions the point indices
inline Json point_config_to_json(const PointConfiguration& a) {
  Json out{{"dimension", a.dim}};
  Json pts = Json::array();
  for (const QVec& p : a.points) pts.push_back(vec_to_json(p));
  out["points"] = std::move(pts);
  if (a.partition) out["classes"] = *a.partition;
  return out;
}

inline PointConfiguration point_config_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("points"))
    throw std::invalid_argument(
        "point configuration json needs dimension and points");
  PointConfiguration a;
  a.dim = index_from_json(j.at("dimension"), "dimension");
  for (const Json& jp : j.at("points")) a.points.push_back(vec_from_json(jp));
  if (j.contains("classes")) {
    Partition part;
    for (const Json& jc : j.at("classes")) {
      std::vector<std::size_t> cls;
      for (const Json& v : jc)
        cls.push_back(index_from_json(v, "class member"));
      part.push_back(std::move(cls));
    }
    a.partition = std::move(part);
  }
  a.validate();
  return a;
}

// Simplex collection files:
// {"dimension": D, "simplices": [[["0","0"], ...], ...]}
inline Json simplices_to_json(const std::vector<SimplexV>& simplices) {
  std::size_t amb = simplices.empty() ? 0 : simplices[0].ambient();
  Json arr = Json::array();
  for (const SimplexV& s : simplices) {
    Json verts = Json::array();
    for (const QVec& v : s.vertices) verts.push_back(vec_to_json(v));
    arr.push_back(std::move(verts));
  }
  return Json{{"dimension", amb}, {"simplices", std::move(arr)}};
}

inline std::vector<SimplexV> simplices_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("simplices"))
    throw std::invalid_argument(
        "simplex collection json needs dimension and simplices");
  std::size_t amb = index_from_json(j.at("dimension"), "dimension");
  std::vector<SimplexV> out;
  for (const Json& js : j.at("simplices")) {
    SimplexV s;
    for (const Json& jv : js) {
      QVec v = vec_from_json(jv);
      if (v.dim() != amb)
        throw std::invalid_argument("simplex collection: dimension mismatch");
      s.vertices.push_back(std::move(v));
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Polytope files: {"dimension": d, "forms": [["1","0"], ...]} with the
// facet inequalities form . x <= 1
inline Json polytope_to_json(const HPolytope& p) {
  Json forms = Json::array();
  for (const QVec& f : p.forms) forms.push_back(vec_to_json(f));
  return Json{{"dimension", p.dim}, {"forms", std::move(forms)}};
}

inline HPolytope polytope_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("forms"))
    throw std::invalid_argument("polytope json needs dimension and forms");
  HPolytope p;
  p.dim = index_from_json(j.at("dimension"), "dimension");
  for (const Json& jf : j.at("forms")) {
    QVec f = vec_from_json(jf);
    if (f.dim() != p.dim)
      throw std::invalid_argument("polytope json: form dimension mismatch");
    p.forms.push_back(std::move(f));
  }
  return p;
}

inline Json members_to_json(const ColorfulSimplex& s) {
  Json out = Json::array();
  for (auto [cls, idx] : s.members) out.push_back(Json::array({cls, idx}));
  return out;
}

inline ColorfulSimplex members_from_json(const Json& j) {
  if (!j.is_array())
    throw std::invalid_argument("expected [class,index] pairs");
  std::vector<std::pair<std::size_t, std::size_t>> m;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("expected [class,index] pairs");
    m.push_back({index_from_json(e[0], "class"),
                 index_from_json(e[1], "point index")});
  }
  return ColorfulSimplex::of(std::move(m));
}

// Flip path files embed both endpoint configurations and the ridge
inline Json flip_path_to_json(const FlipPath& p) {
  return Json{{"start", config_to_json(p.start)},
              {"end", config_to_json(p.end)},
              {"ridge", members_to_json(p.ridge)},
              {"mode", p.mode == FlipMode::STRICT ? "strict" : "certificate"}};
}

inline FlipPath flip_path_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("start") || !j.contains("end") ||
      !j.contains("ridge"))
    throw std::invalid_argument("flip path json needs start, end and ridge");
  FlipPath p;
  p.start = config_from_json(j.at("start"));
  p.end = config_from_json(j.at("end"));
  p.ridge = members_from_json(j.at("ridge"));
  if (j.contains("mode")) {
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "strict")
      p.mode = FlipMode::STRICT;
    else if (mode == "certificate")
      p.mode = FlipMode::CERTIFICATE;
    else
      throw std::invalid_argument("flip path mode must be certificate or strict");
  }
  return p;
}

inline Json certificate_to_json(const FlipCertificate& c) {
  Json sym = Json::array(), exp = Json::array();
  for (const ColorfulSimplex& s : c.symmetric_difference)
    sym.push_back(members_to_json(s));
  for (const ColorfulSimplex& s : c.expected) exp.push_back(members_to_json(s));
  return Json{{"valid", c.valid},
              {"endpoints_ok", c.endpoints_ok},
              {"symmetric_difference", std::move(sym)},
              {"expected", std::move(exp)}};
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return Json::parse(in);  // parse_error propagates to the caller
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace chroma

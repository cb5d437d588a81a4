// Transforms of projections: quotient images of facet normals under a
// linear surjection, the Minkowski-sum specialization, and the check that
// the Minkowski route reproduces the colorful Gale transform.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chroma/colorful.hpp"
#include "chroma/gale.hpp"
#include "chroma/linalg.hpp"
#include "chroma/lp.hpp"
#include "chroma/minkowski.hpp"
#include "chroma/rational.hpp"

namespace chroma {

// Polytope {x : form_i . x <= 1}. The origin is automatically interior, so
// validity is boundedness plus every form actually carving out a facet.
struct HPolytope {
  std::size_t dim = 0;
  std::vector<QVec> forms;

  void validate() const;
};

struct LinearProjection {
  QMat matrix;  // e x d, onto
};

// Images of the facet forms in the quotient of (R^d)* by the pulled-back
// functionals of the projection target.
struct PTransform {
  std::size_t dim = 0;
  std::vector<QVec> vectors;
  std::optional<Partition> partition;
};

namespace detail {

// Largest margin by which the forms in `tight` can be simultaneously active
// while every other form stays slack. Positive exactly when `tight` is the
// full active set of a nonempty face.
inline std::optional<Rat> exact_face_margin(const HPolytope& p,
                                            const std::vector<std::size_t>& tight) {
  std::size_t nv = p.dim + 1;  // a point of P plus the margin
  std::vector<bool> in(p.forms.size(), false);
  for (std::size_t i : tight) in[i] = true;
  std::vector<LinConstraint> cons;
  for (std::size_t i = 0; i < p.forms.size(); ++i) {
    QVec row(nv);
    for (std::size_t k = 0; k < p.dim; ++k) row[k] = p.forms[i][k];
    if (in[i]) {
      cons.push_back({row, Cmp::EQ, Rat(1)});
    } else {
      row[p.dim] = Rat(1);
      cons.push_back({row, Cmp::LE, Rat(1)});
    }
  }
  QVec obj(nv);
  obj[p.dim] = Rat(1);
  cons.push_back({obj, Cmp::LE, Rat(1)});
  LPResult r = lp_solve(nv, obj, cons, true);
  if (r.status != LpStatus::OPTIMAL) return std::nullopt;
  return r.optimum;
}

}  // namespace detail

inline void HPolytope::validate() const {
  if (dim == 0 || forms.empty())
    throw std::invalid_argument("empty polytope description");
  for (const QVec& f : forms)
    if (f.dim() != dim) throw std::invalid_argument("h polytope: dimension mismatch");
  if (!origin_containment(forms).in_interior)
    throw std::invalid_argument("unbounded polytope");
  for (std::size_t i = 0; i < forms.size(); ++i) {
    auto margin = detail::exact_face_margin(*this, {i});
    if (!margin || margin->sgn() <= 0)
      throw std::invalid_argument("redundant facet form");
  }
}

inline PTransform p_transform(const HPolytope& p, const LinearProjection& proj) {
  if (proj.matrix.rows() == 0 || proj.matrix.cols() == 0)
    throw std::invalid_argument("empty projection");
  if (p.dim != proj.matrix.cols())
    throw std::invalid_argument("p transform: dimension mismatch");
  QuotientMap q(proj.matrix);
  if (q.ambient() - q.dim() != proj.matrix.rows())
    throw std::invalid_argument("projection not surjective");
  PTransform out;
  out.dim = q.dim();
  for (const QVec& f : p.forms) out.vectors.push_back(q.apply(f));
  return out;
}

// Decides whether the face with active set `face_index_set` projects to a
// proper face of the image whose full preimage inside P is that face again.
inline bool projection_face_test(const HPolytope& p, const LinearProjection& proj,
                                 const std::vector<std::size_t>& face_index_set) {
  std::vector<std::size_t> idx = face_index_set;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (std::size_t i : idx)
    if (i >= p.forms.size())
      throw std::invalid_argument("projection_face_test: index out of range");
  if (idx.empty()) return false;  // the whole polytope never projects to a proper face
  auto margin = detail::exact_face_margin(p, idx);
  if (!margin || margin->sgn() <= 0)
    throw std::invalid_argument("index set is not a face");
  PTransform pt = p_transform(p, proj);
  if (pt.dim == 0) return true;  // trivial quotient: every proper face qualifies
  std::vector<QVec> picked;
  for (std::size_t i : idx) picked.push_back(pt.vectors[i]);
  return origin_in_relint(picked);
}

// Transform of the summing projection applied to a product of polytopes.
// Without embeddings the summands share one ambient space; with them,
// summand i lives in its own coordinates and embeddings[i] maps those into
// the common space (used for summands given inside their affine hulls).
inline PTransform minkowski_transform(const std::vector<HPolytope>& polys,
                                      const std::vector<QMat>& embeddings = {}) {
  if (polys.empty()) throw std::invalid_argument("minkowski transform: no summands");
  for (const HPolytope& p : polys) p.validate();
  std::size_t target = 0;
  if (embeddings.empty()) {
    target = polys[0].dim;
    for (const HPolytope& p : polys)
      if (p.dim != target)
        throw std::invalid_argument("minkowski transform: dimension mismatch");
  } else {
    if (embeddings.size() != polys.size())
      throw std::invalid_argument("minkowski transform: one embedding per summand");
    target = embeddings[0].rows();
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (embeddings[i].rows() != target || embeddings[i].cols() != polys[i].dim)
        throw std::invalid_argument("embedding dimension mismatch");
  }

  std::size_t total = 0;
  for (const HPolytope& p : polys) total += p.dim;

  HPolytope prod;
  prod.dim = total;
  Partition classes;
  QMat pr(target, total);
  std::size_t off = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    std::vector<std::size_t> cls;
    for (const QVec& f : polys[i].forms) {
      QVec row(total);
      for (std::size_t k = 0; k < polys[i].dim; ++k) row[off + k] = f[k];
      cls.push_back(prod.forms.size());
      prod.forms.push_back(row);
    }
    classes.push_back(cls);
    for (std::size_t r = 0; r < target; ++r)
      for (std::size_t c = 0; c < polys[i].dim; ++c)
        pr.at(r, off + c) =
            embeddings.empty() ? Rat(r == c ? 1 : 0) : embeddings[i].at(r, c);
    off += polys[i].dim;
  }

  PTransform out = p_transform(prod, LinearProjection{pr});
  out.partition = classes;
  if (out.dim > 0) {
    for (const auto& cls : classes) {
      std::vector<QVec> block;
      for (std::size_t i : cls) block.push_back(out.vectors[i]);
      if (!origin_in_relint(block))
        throw std::logic_error("minkowski transform is not centered");
    }
  }
  return out;
}

namespace detail {

struct SimplexHRep {
  HPolytope poly;             // simplex in its own hull coordinates
  QMat basis;                 // ambient x dim, hull coordinates back to ambient
  std::vector<QVec> verts;    // hull coordinates, barycenter at the origin
};

// Centers a simplex at its barycenter, re-coordinatizes into the affine
// hull, and solves for the facet forms; facet i is opposite vertex i.
inline SimplexHRep simplex_h_rep(const SimplexV& s) {
  s.validate();
  std::size_t n = s.vertices.size();
  std::size_t amb = s.ambient();
  if (n < 2) throw std::invalid_argument("simplex has no facets");

  QVec bary(amb);
  for (const QVec& v : s.vertices) bary += v;
  bary *= Rat(1) / Rat((long)n);
  std::vector<QVec> centered;
  for (const QVec& v : s.vertices) centered.push_back(v - bary);

  QMat span = QMat::from_rows(centered);
  rref(span);
  std::vector<QVec> rows;
  for (std::size_t r = 0; r < span.rows(); ++r)
    if (!span.row(r).is_zero()) rows.push_back(span.row(r));
  if (rows.size() != n - 1)
    throw std::logic_error("simplex h-rep: hull basis has the wrong size");

  SimplexHRep out;
  out.basis = QMat::from_cols(rows);
  for (const QVec& c : centered) {
    auto w = solve(out.basis, c);
    if (!w) throw std::logic_error("simplex h-rep: vertex outside its hull");
    out.verts.push_back(*w);
  }

  out.poly.dim = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<QVec> facet;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) facet.push_back(out.verts[j]);
    QVec ones(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) ones[k] = Rat(1);
    auto form = solve(QMat::from_rows(facet), ones);
    if (!form) throw std::logic_error("simplex h-rep: facet system is singular");
    out.poly.forms.push_back(*form);
  }
  return out;
}

}  // namespace detail

inline HPolytope h_rep_from_simplex(const SimplexV& s) {
  return detail::simplex_h_rep(s).poly;
}

// Checks that the Minkowski transform of the convex hulls reproduces the
// colorful Gale transform of the vertex configuration, matching each facet
// with the one vertex it misses.
inline bool verify_coincidence(const std::vector<SimplexV>& simplices) {
  if (simplices.empty())
    throw std::invalid_argument("coincidence check: no summands");
  std::size_t amb = simplices[0].ambient();
  for (const SimplexV& s : simplices) {
    s.validate();
    if (s.ambient() != amb)
      throw std::invalid_argument("coincidence check needs a common ambient dimension");
    if (s.dim() == 0)
      throw std::invalid_argument("coincidence check needs non-point summands");
  }

  PointConfiguration pc;
  pc.dim = amb;
  Partition classes;
  for (const SimplexV& s : simplices) {
    QVec bary(amb);
    for (const QVec& v : s.vertices) bary += v;
    bary *= Rat(1) / Rat((long)s.vertices.size());
    std::vector<std::size_t> cls;
    for (const QVec& v : s.vertices) {
      cls.push_back(pc.points.size());
      pc.points.push_back(v - bary);
    }
    classes.push_back(cls);
  }
  pc.partition = classes;
  GaleTransform g = colorful_gale(pc);

  std::vector<HPolytope> polys;
  std::vector<QMat> bases;
  for (const SimplexV& s : simplices) {
    detail::SimplexHRep h = detail::simplex_h_rep(s);
    polys.push_back(h.poly);
    bases.push_back(h.basis);
  }
  PTransform m = minkowski_transform(polys, bases);
  return positively_equivalent(m.vectors, g.vectors);
}

}  // namespace chroma

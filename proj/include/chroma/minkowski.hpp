#pragma once

// Minkowski sums of simplices: face tests and totally mixed facet counts
// through the colorful Gale dictionary, extremal collections meeting the
// 1 + prod(dims) bound, a brute-force facet oracle for cross-checking, and
// the three-leaf normal fans of triangles.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "chroma/gale.hpp"
#include "chroma/lp.hpp"

namespace chroma {

struct SimplexV {
  std::vector<QVec> vertices;

  std::size_t dim() const { return vertices.size() - 1; }
  std::size_t ambient() const {
    return vertices.empty() ? 0 : vertices[0].dim();
  }

  void validate() const {
    if (vertices.empty())
      throw std::invalid_argument("simplex without vertices");
    std::vector<QVec> edges;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      if (vertices[i].dim() != ambient())
        throw std::invalid_argument("simplex: dimension mismatch");
      edges.push_back(vertices[i] - vertices[0]);
    }
    if (!edges.empty() && rank(QMat::from_rows(edges)) != edges.size())
      throw std::invalid_argument("simplex vertices not affinely independent");
  }
};

struct MinkowskiFace {
  // per summand, the vertex indices of the chosen subsimplex
  std::vector<std::vector<std::size_t>> selection;

  friend bool operator==(const MinkowskiFace& a, const MinkowskiFace& b) {
    return a.selection == b.selection;
  }
};

namespace detail {

inline PointConfiguration summand_config(
    const std::vector<SimplexV>& simplices) {
  if (simplices.empty())
    throw std::invalid_argument("minkowski: no summands");
  PointConfiguration a;
  a.dim = simplices[0].ambient();
  Partition part;
  for (const SimplexV& s : simplices) {
    s.validate();
    std::vector<std::size_t> cls;
    for (const QVec& v : s.vertices) {
      cls.push_back(a.points.size());
      a.points.push_back(v);
    }
    part.push_back(cls);
  }
  a.partition = part;
  a.validate();
  return a;
}

inline void require_full_dimensional(const std::vector<SimplexV>& simplices) {
  std::vector<QVec> edges;
  for (const SimplexV& s : simplices)
    for (std::size_t i = 1; i < s.vertices.size(); ++i)
      edges.push_back(s.vertices[i] - s.vertices[0]);
  std::size_t d = simplices[0].ambient();
  if (edges.empty() || rank(QMat::from_rows(edges)) != d)
    throw std::invalid_argument("degenerate minkowski sum");
}

}  // namespace detail

// Prop 3.x dictionary: the selected subsimplices sum to a face exactly when
// the unselected colorful Gale vectors trap 0 in their relative interior.
inline bool mink_face_test(const std::vector<SimplexV>& simplices,
                           const MinkowskiFace& u) {
  detail::require_full_dimensional(simplices);
  PointConfiguration a = detail::summand_config(simplices);
  if (u.selection.size() != simplices.size())
    throw std::invalid_argument("face selection count mismatch");
  GaleTransform g = colorful_gale(a);
  std::vector<QVec> rest;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const auto& sel = u.selection[i];
    if (sel.empty())
      throw std::invalid_argument("face selection has an empty part");
    for (std::size_t v = 0; v < simplices[i].vertices.size(); ++v) {
      if (std::find(sel.begin(), sel.end(), v) != sel.end()) continue;
      rest.push_back(g.vectors[(*a.partition)[i][v]]);
    }
    for (std::size_t v : sel)
      if (v >= simplices[i].vertices.size())
        throw std::invalid_argument("face selection index out of range");
  }
  if (rest.empty()) return true;  // the whole sum, improper face
  return origin_in_relint(rest);
}

// All facets that use a proper positive-dimensional piece of every summand.
// These exist only at the critical dimension 1 + sum(dim_i - 1).
inline std::vector<MinkowskiFace> totally_mixed_facets(
    const std::vector<SimplexV>& simplices) {
  detail::require_full_dimensional(simplices);
  PointConfiguration a = detail::summand_config(simplices);
  std::size_t critical = 1;
  for (const SimplexV& s : simplices) critical += s.dim() - 1;
  if (simplices[0].ambient() != critical)
    throw std::invalid_argument(
        "no totally mixed facets possible at this dimension");
  GaleTransform g = colorful_gale(a);

  std::vector<MinkowskiFace> out;
  std::vector<std::size_t> pick(simplices.size(), 0);
  for (;;) {
    std::vector<QVec> chosen;
    for (std::size_t i = 0; i < simplices.size(); ++i)
      chosen.push_back(g.vectors[(*a.partition)[i][pick[i]]]);
    if (origin_containment(chosen).in_interior) {
      MinkowskiFace f;
      for (std::size_t i = 0; i < simplices.size(); ++i) {
        std::vector<std::size_t> sel;
        for (std::size_t v = 0; v < simplices[i].vertices.size(); ++v)
          if (v != pick[i]) sel.push_back(v);
        f.selection.push_back(sel);
      }
      out.push_back(f);
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == simplices[i].vertices.size())
      pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

// Simplex collection whose Minkowski sum meets the facet bound with
// equality: inverse colorful Gale of the extremal centered configuration
// with class sizes dims_i + 1.
inline std::vector<SimplexV> extremal_minkowski(
    const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> sizes;
  for (std::size_t d : dims) sizes.push_back(d + 1);
  ColorfulConfiguration c = extremal_config(sizes);
  GaleTransform g;
  g.partition = Partition{};
  for (const auto& cls : c.classes) {
    std::vector<std::size_t> idx;
    for (const QVec& p : cls) {
      idx.push_back(g.vectors.size());
      g.vectors.push_back(p);
    }
    g.partition->push_back(idx);
  }
  g.source_size = g.vectors.size();
  PointConfiguration a = inverse_colorful_gale(g);

  std::vector<SimplexV> out;
  for (const auto& cls : *a.partition) {
    SimplexV s;
    for (std::size_t v : cls) s.vertices.push_back(a.points[v]);
    s.validate();
    out.push_back(s);
  }
  std::size_t expect = 1;
  for (std::size_t d : dims) expect *= d;
  if (totally_mixed_facets(out).size() != expect + 1)
    throw std::logic_error("extremal collection misses the facet bound");
  return out;
}

// Exact brute-force facet enumeration: every spanning d-subset proposes a
// hyperplane; keep those with all points weakly on one side.
inline std::vector<std::vector<std::size_t>> facet_oracle(
    const std::vector<QVec>& points) {
  if (points.size() > 60)
    throw std::invalid_argument("facet oracle capped at 60 points");
  if (points.empty()) return {};
  std::size_t d = points[0].dim();
  std::vector<QVec> diffs;
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.push_back(points[i] - points[0]);
  if (d == 0 || rank(QMat::from_rows(diffs)) != d)
    throw std::invalid_argument("affine span deficient");

  std::set<std::vector<std::size_t>> facets;
  std::vector<std::size_t> idx(d);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t next) -> void {
    if (pos == d) {
      QMat lift(d, d + 1);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) lift.at(r, c) = points[idx[r]][c];
        lift.at(r, d) = Rat(1);
      }
      QMat ker = null_basis(lift);
      if (ker.cols() != 1) return;  // subset does not span a hyperplane
      QVec fn = ker.col(0);         // functional (c, c0)
      int lo = 0, hi = 0;
      std::vector<std::size_t> support;
      for (std::size_t p = 0; p < points.size(); ++p) {
        Rat val = fn[d];
        for (std::size_t c = 0; c < d; ++c) val += fn[c] * points[p][c];
        if (val.sgn() > 0) hi = 1;
        if (val.sgn() < 0) lo = 1;
        if (val.is_zero()) support.push_back(p);
      }
      if (lo + hi < 2) facets.insert(support);
      return;
    }
    for (std::size_t i = next; i + (d - pos) <= points.size(); ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return {facets.begin(), facets.end()};
}

// Every combination of one vertex from each summand, in odometer order with
// the first summand slowest.
inline std::vector<QVec> minkowski_points(
    const std::vector<SimplexV>& simplices) {
  if (simplices.empty())
    throw std::invalid_argument("minkowski: no summands");
  std::vector<QVec> out;
  std::vector<std::size_t> pick(simplices.size(), 0);
  bool done = false;
  while (!done) {
    QVec p(simplices[0].ambient());
    for (std::size_t i = 0; i < simplices.size(); ++i)
      p += simplices[i].vertices[pick[i]];
    out.push_back(p);
    std::size_t i = pick.size();
    done = true;
    while (i-- > 0) {
      if (++pick[i] < simplices[i].vertices.size()) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
  }
  return out;
}

struct Fan3 {
  struct Leaf {
    QVec eq;    // {x : eq.x = 0, ineq.x >= 0}
    QVec ineq;
  };
  std::array<Leaf, 3> leaves;
  std::vector<QVec> axis;  // basis of the shared (d-2)-subspace
};

// Codimension-1 walls of the normal fan of a triangle: leaf k collects the
// functionals maximized on the edge opposite vertex k.
inline Fan3 fan_from_triangle(const SimplexV& t) {
  if (t.vertices.size() != 3)
    throw std::invalid_argument("fan construction needs a triangle");
  std::size_t d = t.ambient();
  if (d < 2)
    throw std::invalid_argument("fan needs ambient dimension at least 2");
  QVec e1 = t.vertices[1] - t.vertices[0];
  QVec e2 = t.vertices[2] - t.vertices[0];
  if (rank(QMat::from_rows({e1, e2})) != 2)
    throw std::invalid_argument("degenerate triangle");

  Fan3 fan;
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
    fan.leaves[k].eq = t.vertices[i] - t.vertices[j];
    fan.leaves[k].ineq = t.vertices[i] - t.vertices[k];
  }
  QMat span = QMat::from_rows({e1, e2});
  QMat ax = null_basis(span);
  for (std::size_t c = 0; c < ax.cols(); ++c) fan.axis.push_back(ax.col(c));
  for (std::size_t k = 0; k < 3; ++k)
    if (rank(QMat::from_rows(
            {fan.leaves[k].eq, fan.leaves[(k + 1) % 3].eq})) != 2)
      throw std::logic_error("fan leaves are coplanar");
  return fan;
}

namespace detail {

struct Cone {
  std::size_t ambient = 0;
  std::vector<QVec> eqs;
  std::vector<QVec> ineqs;
};

// maximum of form.x over the cone, capped at 1; 0 means the form cannot be
// made positive
inline bool cone_can_exceed_zero(const Cone& c, const QVec& form) {
  std::vector<LinConstraint> cons;
  for (const QVec& e : c.eqs) cons.push_back({e, Cmp::EQ, Rat(0)});
  for (const QVec& b : c.ineqs) cons.push_back({b, Cmp::GE, Rat(0)});
  cons.push_back({form, Cmp::LE, Rat(1)});
  LPResult r = lp_solve(c.ambient, form, cons, true);
  return r.status == LpStatus::OPTIMAL && r.optimum.sgn() > 0;
}

inline std::size_t cone_dim(const Cone& c) {
  std::vector<QVec> tight = c.eqs;
  for (const QVec& b : c.ineqs)
    if (!cone_can_exceed_zero(c, b)) tight.push_back(b);
  if (tight.empty()) return c.ambient;
  return c.ambient - rank(QMat::from_rows(tight));
}

inline bool cone_subset(const Cone& a, const Cone& b) {
  for (const QVec& e : b.eqs) {
    if (cone_can_exceed_zero(a, e)) return false;
    if (cone_can_exceed_zero(a, -e)) return false;
  }
  for (const QVec& bb : b.ineqs)
    if (cone_can_exceed_zero(a, -bb)) return false;
  return true;
}

}  // namespace detail

struct FanIntersection {
  std::size_t maximal_cones = 0;
  bool bound_ok = false;
};

// Counts inclusion-maximal cones among all ways of picking one leaf per
// fan.  The bound compared against is 1 + 2^(number of fans).
inline FanIntersection intersect_fans(const std::vector<Fan3>& fans) {
  if (fans.empty()) throw std::invalid_argument("intersect_fans: no fans");
  std::size_t d = fans[0].leaves[0].eq.dim();
  std::size_t count = 1;
  for (std::size_t i = 0; i < fans.size(); ++i) count *= 3;

  // genericity: chosen equality normals must always be independent, and no
  // inequality may vanish identically on their common kernel.  A dependent
  // inequality means some functional is constant on an entire summand (an
  // edge parallel to another triangle's plane), and the wall-to-facet
  // correspondence breaks there.
  std::vector<std::size_t> pick(fans.size(), 0);
  std::vector<detail::Cone> cones;
  for (std::size_t code = 0; code < count; ++code) {
    std::size_t rest = code;
    detail::Cone c;
    c.ambient = d;
    std::vector<QVec> eqs;
    for (std::size_t i = 0; i < fans.size(); ++i) {
      const Fan3::Leaf& leaf = fans[i].leaves[rest % 3];
      rest /= 3;
      c.eqs.push_back(leaf.eq);
      c.ineqs.push_back(leaf.ineq);
    }
    if (rank(QMat::from_rows(c.eqs)) != fans.size())
      throw std::invalid_argument("fans not in relative general position");
    for (const QVec& b : c.ineqs) {
      std::vector<QVec> probe = c.eqs;
      probe.push_back(b);
      if (rank(QMat::from_rows(probe)) == fans.size())
        throw std::invalid_argument("fans not in relative general position");
    }
    cones.push_back(std::move(c));
  }

  std::vector<std::size_t> dims;
  for (const auto& c : cones) dims.push_back(detail::cone_dim(c));

  std::vector<bool> maximal(cones.size(), true);
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (!maximal[i]) continue;
    for (std::size_t j = 0; j < cones.size(); ++j) {
      if (i == j || dims[i] > dims[j]) continue;
      if (!detail::cone_subset(cones[i], cones[j])) continue;
      if (dims[i] < dims[j] || !detail::cone_subset(cones[j], cones[i])) {
        maximal[i] = false;  // strictly inside a bigger cone
        break;
      }
      if (j < i) {
        maximal[i] = false;  // duplicate, keep the first copy
        break;
      }
    }
  }
  FanIntersection rep;
  for (bool m : maximal) rep.maximal_cones += m ? 1 : 0;
  rep.bound_ok = rep.maximal_cones <= 1 + (std::size_t(1) << fans.size());
  return rep;
}

}  // namespace chroma

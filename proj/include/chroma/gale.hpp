#pragma once

// Gale transforms of point configurations, Cayley embeddings, the colorful
// Gale transform and its inverse, and positive equivalence tested through
// oriented-matroid circuit signs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chroma/colorful.hpp"
#include "chroma/linalg.hpp"
#include "chroma/lp.hpp"

namespace chroma {

using Partition = std::vector<std::vector<std::size_t>>;

struct PointConfiguration {
  std::size_t dim = 0;
  std::vector<QVec> points;
  std::optional<Partition> partition;

  std::size_t size() const { return points.size(); }

  void validate() const {
    for (const QVec& p : points)
      if (p.dim() != dim)
        throw std::invalid_argument("point configuration: dimension mismatch");
    if (!partition) return;
    std::vector<int> hits(points.size(), 0);
    for (const auto& cls : *partition) {
      if (cls.empty())
        throw std::invalid_argument("point configuration: empty class");
      for (std::size_t v : cls) {
        if (v >= points.size())
          throw std::invalid_argument("point configuration: bad partition");
        ++hits[v];
      }
    }
    for (int h : hits)
      if (h != 1)
        throw std::invalid_argument("point configuration: bad partition");
  }
};

struct GaleTransform {
  std::size_t source_size = 0;
  std::vector<QVec> vectors;
  std::optional<Partition> partition;

  std::size_t gale_dim() const {
    return vectors.empty() ? 0 : vectors[0].dim();
  }
};

namespace detail {

// columns (A(v), 1)
inline QMat lift_matrix(const PointConfiguration& a) {
  QMat m(a.dim + 1, a.points.size());
  for (std::size_t j = 0; j < a.points.size(); ++j) {
    for (std::size_t i = 0; i < a.dim; ++i) m.at(i, j) = a.points[j][i];
    m.at(a.dim, j) = Rat(1);
  }
  return m;
}

}  // namespace detail

inline GaleTransform gale_transform(const PointConfiguration& a) {
  a.validate();
  QMat lift = detail::lift_matrix(a);
  if (rank(lift) != a.dim + 1)
    throw std::invalid_argument("affine span deficient");
  QMat kernel = null_basis(lift);  // N x (N-d-1), columns span the kernel
  if (!(lift * kernel).is_zero())
    throw std::logic_error("gale: kernel basis fails orthogonality");
  GaleTransform g;
  g.source_size = a.points.size();
  g.partition = a.partition;
  QVec colsum(kernel.cols());
  for (std::size_t v = 0; v < kernel.rows(); ++v) {
    g.vectors.push_back(kernel.row(v));
    colsum += kernel.row(v);
  }
  if (!colsum.is_zero())
    throw std::logic_error("gale: vectors do not sum to zero");
  return g;
}

// U indexes a face of the source iff the complementary Gale vectors
// capture 0 in their relative interior.  The improper face U = I passes by
// convention.
inline bool face_test(const GaleTransform& g, std::vector<std::size_t> u) {
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  for (std::size_t i : u)
    if (i >= g.source_size)
      throw std::invalid_argument("face_test: index out of range");
  std::vector<QVec> rest;
  for (std::size_t v = 0; v < g.source_size; ++v)
    if (!std::binary_search(u.begin(), u.end(), v))
      rest.push_back(g.vectors[v]);
  if (rest.empty()) return true;
  return origin_in_relint(rest);
}

// Prefixes class-i points with e_i, where class 0 gets the zero prefix.
inline PointConfiguration cayley_embedding(const PointConfiguration& a) {
  a.validate();
  if (!a.partition)
    throw std::invalid_argument("cayley embedding needs a partition");
  std::size_t s = a.partition->size() - 1;
  PointConfiguration out;
  out.dim = s + a.dim;
  out.points.assign(a.points.size(), QVec(out.dim));
  for (std::size_t cls = 0; cls < a.partition->size(); ++cls)
    for (std::size_t v : (*a.partition)[cls]) {
      QVec& p = out.points[v];
      if (cls > 0) p[cls - 1] = Rat(1);
      for (std::size_t i = 0; i < a.dim; ++i) p[s + i] = a.points[v][i];
    }
  out.partition = a.partition;
  return out;
}

inline GaleTransform colorful_gale(const PointConfiguration& a) {
  GaleTransform g = gale_transform(cayley_embedding(a));
  for (const auto& cls : *g.partition) {
    std::vector<QVec> vs;
    for (std::size_t v : cls) vs.push_back(g.vectors[v]);
    if (!origin_in_relint(vs))
      throw std::logic_error("colorful gale transform is not centered");
  }
  return g;
}

struct CircuitSignature {
  // (positive support, negative support), smallest support index positive
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
      circuits;

  friend bool operator==(const CircuitSignature& a,
                         const CircuitSignature& b) {
    return a.circuits == b.circuits;
  }
};

inline CircuitSignature circuit_signature(const std::vector<QVec>& v) {
  std::size_t n = v.size();
  if (n > 12)
    throw std::invalid_argument("circuit enumeration capped at 12 vectors");
  for (const QVec& x : v)
    if (x.dim() != (n ? v[0].dim() : 0))
      throw std::invalid_argument("circuit_signature: dimension mismatch");
  CircuitSignature sig;
  std::vector<std::uint32_t> found;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool minimal = true;
    for (std::uint32_t c : found)
      if ((c & mask) == c) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    QMat cols(v[0].dim(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < v[0].dim(); ++i)
        cols.at(i, j) = v[idx[j]][i];
    QMat ker = null_basis(cols);
    if (ker.cols() == 0) continue;
    if (ker.cols() != 1)
      throw std::logic_error("circuit with non-unique dependence");
    QVec dep = ker.col(0);
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (dep[j].is_zero())
        throw std::logic_error("circuit dependence with zero coefficient");
    if (dep[0].sgn() < 0) dep = -dep;
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> circ;
    for (std::size_t j = 0; j < idx.size(); ++j)
      (dep[j].sgn() > 0 ? circ.first : circ.second).push_back(idx[j]);
    sig.circuits.insert(std::move(circ));
    found.push_back(mask);
  }
  return sig;
}

// Same dependence sign patterns: invariant under positive rescaling of
// individual vectors and under invertible linear maps of the ambient space.
inline bool positively_equivalent(const std::vector<QVec>& v1,
                                  const std::vector<QVec>& v2) {
  if (v1.size() != v2.size())
    throw std::invalid_argument("positively_equivalent: size mismatch");
  return circuit_signature(v1) == circuit_signature(v2);
}

// Rebuilds a partitioned point configuration whose colorful Gale transform
// is positively equivalent to g: rescale each class by an interior
// dependence, take the orthogonal complement of the rescaled columns, and
// peel off the class indicator vectors.
inline PointConfiguration inverse_colorful_gale(const GaleTransform& g) {
  if (!g.partition)
    throw std::invalid_argument("inverse_colorful_gale: missing partition");
  std::size_t n = g.source_size;
  std::size_t m = g.gale_dim();
  std::size_t s = g.partition->size() - 1;

  std::vector<Rat> lambda(n);
  for (const auto& cls : *g.partition) {
    std::vector<QVec> vs;
    for (std::size_t v : cls) vs.push_back(g.vectors[v]);
    LPResult r = lp_min_coeff(vs);
    if (r.status != LpStatus::OPTIMAL || r.optimum.sgn() <= 0)
      throw std::invalid_argument("inverse_colorful_gale: not centered");
    for (std::size_t j = 0; j < cls.size(); ++j) lambda[cls[j]] = r.witness[j];
  }

  QMat rescaled(n, m);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t c = 0; c < m; ++c)
      rescaled.at(v, c) = lambda[v] * g.vectors[v][c];
  if (rank(rescaled) != m)
    throw std::invalid_argument("deficient transform");

  // complement of the column space; contains every class indicator because
  // the rescaled classes sum to zero
  QMat comp = orth_complement(rescaled);
  std::vector<QVec> chosen;
  for (const auto& cls : *g.partition) {
    QVec ind(n);
    for (std::size_t v : cls) ind[v] = Rat(1);
    chosen.push_back(ind);
  }
  std::size_t target = n - m;
  for (std::size_t c = 0; c < comp.cols() && chosen.size() < target; ++c) {
    chosen.push_back(comp.col(c));
    if (rank(QMat::from_rows(chosen)) != chosen.size()) chosen.pop_back();
  }
  if (chosen.size() != target)
    throw std::logic_error("inverse gale: indicator vectors out of place");

  PointConfiguration a;
  a.dim = target - (s + 1);
  a.partition = g.partition;
  for (std::size_t v = 0; v < n; ++v) {
    QVec p(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i) p[i] = chosen[s + 1 + i][v];
    a.points.push_back(p);
  }

  GaleTransform back = colorful_gale(a);
  if (!positively_equivalent(back.vectors, g.vectors))
    throw std::logic_error("inverse gale: round trip failed");
  return a;
}

// Gale transform of one summand: class-i vectors in the quotient by the
// span of all other classes.
inline std::vector<QVec> summand_gale(const GaleTransform& g,
                                      std::size_t cls) {
  if (!g.partition)
    throw std::invalid_argument("summand_gale: missing partition");
  if (cls >= g.partition->size())
    throw std::invalid_argument("summand_gale: bad class index");
  std::vector<QVec> others;
  for (std::size_t j = 0; j < g.partition->size(); ++j)
    if (j != cls)
      for (std::size_t v : (*g.partition)[j]) others.push_back(g.vectors[v]);
  QuotientMap q(others.empty() ? QMat(0, g.gale_dim())
                               : QMat::from_rows(others));
  std::vector<QVec> out;
  for (std::size_t v : (*g.partition)[cls]) out.push_back(q.apply(g.vectors[v]));
  return out;
}

struct SpanningReport {
  bool positively_spanning = false;
  bool positively_2_spanning = false;
};

inline SpanningReport spanning_predicates(const std::vector<QVec>& v) {
  SpanningReport rep;
  rep.positively_spanning = origin_containment(v).in_interior;
  rep.positively_2_spanning = !v.empty();
  for (std::size_t skip = 0; skip < v.size() && rep.positively_2_spanning;
       ++skip) {
    std::vector<QVec> rest;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != skip) rest.push_back(v[i]);
    if (!origin_containment(rest).in_interior)
      rep.positively_2_spanning = false;
  }
  return rep;
}

}  // namespace chroma

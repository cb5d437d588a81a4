#pragma once

// Simplicial complexes with GF(2) homology, specialized to joins of
// color classes and the subcomplexes avoiding the origin.
//
// Faces are stored explicitly per dimension as sorted vertex lists; this
// stays comfortably small at desk scale.  Boundary matrices are bit-packed
// 64 faces to a word, and homology is reduced: the augmentation map to the
// empty face is part of the chain complex, so a single point has all
// reduced Betti numbers zero.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "chroma/colorful.hpp"
#include "chroma/linalg.hpp"

namespace chroma {

using Face = std::vector<int>;  // strictly increasing vertex indices

class SimplicialComplexGF2 {
 public:
  SimplicialComplexGF2() : vertex_count_(0) {}

  static SimplicialComplexGF2 from_faces(std::size_t vertex_count,
                                         std::vector<Face> faces) {
    SimplicialComplexGF2 k;
    k.vertex_count_ = vertex_count;
    for (Face& f : faces) k.insert_face(std::move(f));
    k.sort_faces();
    return k;
  }

  // Builds the closure: every subset of every facet becomes a face.
  static SimplicialComplexGF2 from_facets(std::size_t vertex_count,
                                          const std::vector<Face>& facets) {
    std::set<Face> all;
    for (const Face& f : facets) {
      Face s = f;
      std::sort(s.begin(), s.end());
      std::size_t n = s.size();
      for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        Face sub;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1) sub.push_back(s[i]);
        all.insert(std::move(sub));
      }
    }
    return from_faces(vertex_count, {all.begin(), all.end()});
  }

  std::size_t vertex_count() const { return vertex_count_; }

  // -1 when the complex has no faces at all
  int top_dim() const { return int(faces_.size()) - 1; }

  const std::vector<Face>& faces(std::size_t dim) const {
    static const std::vector<Face> none;
    return dim < faces_.size() ? faces_[dim] : none;
  }

  std::size_t face_count() const {
    std::size_t n = 0;
    for (const auto& fs : faces_) n += fs.size();
    return n;
  }

  bool has_face(const Face& f) const {
    if (f.empty() || f.size() > faces_.size()) return false;
    const auto& fs = faces_[f.size() - 1];
    return std::binary_search(fs.begin(), fs.end(), f);
  }

  bool is_closed() const {
    for (std::size_t k = 1; k < faces_.size(); ++k)
      for (const Face& f : faces_[k])
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
          Face sub;
          for (std::size_t i = 0; i < f.size(); ++i)
            if (i != drop) sub.push_back(f[i]);
          if (!has_face(sub)) return false;
        }
    return true;
  }

  friend bool operator==(const SimplicialComplexGF2& a,
                         const SimplicialComplexGF2& b) {
    return a.vertex_count_ == b.vertex_count_ && a.faces_ == b.faces_;
  }

 private:
  void insert_face(Face f) {
    if (f.empty()) return;
    std::sort(f.begin(), f.end());
    for (int v : f)
      if (v < 0 || std::size_t(v) >= vertex_count_)
        throw std::invalid_argument("complex: vertex index out of range");
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      if (f[i] == f[i + 1])
        throw std::invalid_argument("complex: repeated vertex in face");
    if (f.size() > faces_.size()) faces_.resize(f.size());
    faces_[f.size() - 1].push_back(std::move(f));
  }

  void sort_faces() {
    for (auto& fs : faces_) {
      std::sort(fs.begin(), fs.end());
      fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    }
    while (!faces_.empty() && faces_.back().empty()) faces_.pop_back();
  }

  std::size_t vertex_count_;
  std::vector<std::vector<Face>> faces_;  // index k holds the k-dim faces
};

using BettiVector = std::vector<std::size_t>;

// Bit-packed matrix over GF(2), 64 columns per word.
class GF2Matrix {
 public:
  GF2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        bits_(rows * words_, 0) {}

  void set(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] ^= std::uint64_t(1) << (j % 64);
  }
  bool get(std::size_t i, std::size_t j) const {
    return bits_[i * words_ + j / 64] >> (j % 64) & 1;
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::size_t rank() const {
    GF2Matrix m = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && !m.get(p, c)) ++p;
      if (p == rows_) continue;
      m.swap_rows(p, r);
      for (std::size_t i = r + 1; i < rows_; ++i)
        if (m.get(i, c)) m.xor_row(i, r);
      ++r;
    }
    return r;
  }

  // Solves m x = rhs; free variables are set to zero.
  std::optional<std::vector<bool>> solve(const std::vector<bool>& rhs) const {
    GF2Matrix m = *this;
    std::vector<bool> b = rhs;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && !m.get(p, c)) ++p;
      if (p == rows_) continue;
      m.swap_rows(p, r);
      std::swap(b[p], b[r]);
      for (std::size_t i = 0; i < rows_; ++i)
        if (i != r && m.get(i, c)) {
          m.xor_row(i, r);
          b[i] = b[i] != b[r];
        }
      pivot_col.push_back(c);
      ++r;
    }
    for (std::size_t i = r; i < rows_; ++i)
      if (b[i]) return std::nullopt;
    std::vector<bool> x(cols_, false);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < words_; ++w)
      std::swap(bits_[a * words_ + w], bits_[b * words_ + w]);
  }
  void xor_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w)
      bits_[dst * words_ + w] ^= bits_[src * words_ + w];
  }

  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> bits_;
};

namespace detail {

inline std::size_t face_index(const std::vector<Face>& sorted, const Face& f) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), f);
  if (it == sorted.end() || *it != f)
    throw std::logic_error("complex: missing facet");
  return std::size_t(it - sorted.begin());
}

// Boundary from dimension k to k-1.  For k = 0 this is the augmentation
// row sending every vertex to the empty face.
inline GF2Matrix boundary_matrix(const SimplicialComplexGF2& c, std::size_t k) {
  const auto& cols = c.faces(k);
  if (k == 0) {
    GF2Matrix m(1, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set(0, j);
    return m;
  }
  const auto& rows = c.faces(k - 1);
  GF2Matrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Face& f = cols[j];
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      Face sub;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (i != drop) sub.push_back(f[i]);
      m.set(face_index(rows, sub), j);
    }
  }
  return m;
}

}  // namespace detail

inline BettiVector betti_gf2(const SimplicialComplexGF2& c) {
  if (!c.is_closed())
    throw std::invalid_argument("not a simplicial complex");
  if (c.top_dim() < 0) return {};
  std::size_t top = std::size_t(c.top_dim());
  std::vector<std::size_t> ranks(top + 2, 0);  // ranks[k] = rank of boundary_k
  for (std::size_t k = 0; k <= top; ++k)
    ranks[k] = detail::boundary_matrix(c, k).rank();
  BettiVector betti(top + 1, 0);
  for (std::size_t k = 0; k <= top; ++k)
    betti[k] = c.faces(k).size() - ranks[k] - ranks[k + 1];
  return betti;
}

// The join of the color classes: every set with at most one vertex per
// class is a face.  Vertices are numbered class by class.
inline SimplicialComplexGF2 rain_complex(const std::vector<std::size_t>& n) {
  if (n.empty()) throw std::invalid_argument("rain: no classes");
  std::size_t total = 0;
  for (std::size_t ni : n) {
    if (ni < 1) throw std::invalid_argument("rain: empty class");
    total += ni;
  }
  std::vector<Face> faces;
  Face cur;
  auto rec = [&](auto&& self, std::size_t cls, std::size_t offset) -> void {
    if (!cur.empty()) faces.push_back(cur);
    if (cls == n.size()) return;
    self(self, cls + 1, offset + n[cls]);  // skip this class
    for (std::size_t i = 0; i < n[cls]; ++i) {
      cur.push_back(int(offset + i));
      self(self, cls + 1, offset + n[cls]);
      cur.pop_back();
    }
  };
  // the recursion visits every colorful set once but emits prefixes
  // repeatedly; from_faces dedupes
  rec(rec, 0, 0);
  return SimplicialComplexGF2::from_faces(total, std::move(faces));
}

namespace detail {

struct ClassLayout {
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  std::pair<std::size_t, std::size_t> owner(int vertex) const {
    std::size_t cls = 0;
    while (cls + 1 < offsets.size() && std::size_t(vertex) >= offsets[cls + 1])
      ++cls;
    return {cls, std::size_t(vertex) - offsets[cls]};
  }
};

inline ClassLayout class_layout(const std::vector<std::size_t>& sizes) {
  ClassLayout l;
  for (std::size_t ni : sizes) {
    l.offsets.push_back(l.total);
    l.total += ni;
  }
  return l;
}

inline std::vector<std::size_t> class_sizes(const ColorfulConfiguration& c) {
  std::vector<std::size_t> n;
  for (const auto& cl : c.classes) n.push_back(cl.size());
  return n;
}

}  // namespace detail

// Faces of the rain complex whose image avoids the origin.  Convexity makes
// this automatically closed under subsets.
inline SimplicialComplexGF2 avoiding_complex(const ColorfulConfiguration& c) {
  c.validate();
  if (c.class_count() != c.dim + 1)
    throw std::invalid_argument("csd requires d+1 classes");
  std::vector<std::size_t> sizes = detail::class_sizes(c);
  detail::ClassLayout layout = detail::class_layout(sizes);
  SimplicialComplexGF2 rain = rain_complex(sizes);
  std::vector<Face> keep;
  for (int k = 0; k <= rain.top_dim(); ++k)
    for (const Face& f : rain.faces(std::size_t(k))) {
      std::vector<QVec> pts;
      for (int v : f) {
        auto [cls, idx] = layout.owner(v);
        pts.push_back(c.point(cls, idx));
      }
      if (!origin_in_conv(pts)) keep.push_back(f);
    }
  return SimplicialComplexGF2::from_faces(layout.total, std::move(keep));
}

struct EulerIdentityReport {
  std::size_t csd = 0;
  std::size_t betti_dminus1 = 0;
  std::size_t betti_d = 0;
  bool identity_holds = false;
};

// csd = prod(n_i - 1) + betti_{d-1}(Av) - betti_d(Av), both sides computed
// independently.
inline EulerIdentityReport verify_euler_identity(
    const ColorfulConfiguration& c) {
  if (!is_centered(c))
    throw std::invalid_argument("verify_euler_identity: not centered");
  if (!is_relative_general_position(c))
    throw std::invalid_argument(
        "verify_euler_identity: not in relative general position");
  EulerIdentityReport rep;
  rep.csd = hitting_simplices(c).csd;
  BettiVector betti = betti_gf2(avoiding_complex(c));
  std::size_t d = c.dim;
  rep.betti_dminus1 = d - 1 < betti.size() ? betti[d - 1] : 0;
  rep.betti_d = d < betti.size() ? betti[d] : 0;
  long long prod = 1;
  for (const auto& cl : c.classes) prod *= (long long)(cl.size() - 1);
  rep.identity_holds =
      (long long)(rep.csd) == prod + (long long)(rep.betti_dminus1) -
                                  (long long)(rep.betti_d);
  return rep;
}

// A d-chain B of av with boundary(B) = boundary(eta1) + boundary(eta2) over
// GF(2), if one exists.  eta1 and eta2 must be d-sets outside av whose
// proper subsets all lie in av.
inline std::optional<std::vector<Face>> homologous(
    const SimplicialComplexGF2& av, const Face& eta1, const Face& eta2) {
  auto check = [&](const Face& eta) {
    if (eta.size() != std::size_t(av.top_dim()) + 1)
      throw std::invalid_argument("homologous: face has wrong dimension");
    Face s = eta;
    std::sort(s.begin(), s.end());
    if (av.has_face(s))
      throw std::invalid_argument("homologous: face already in the complex");
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Face sub;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) sub.push_back(s[i]);
      if (!av.has_face(sub))
        throw std::invalid_argument("homologous: facet missing from complex");
    }
    return s;
  };
  Face a = check(eta1), b = check(eta2);
  std::size_t d = a.size() - 1;
  const auto& ridge_faces = av.faces(d - 1);
  std::vector<bool> rhs(ridge_faces.size(), false);
  for (const Face* eta : {&a, &b})
    for (std::size_t drop = 0; drop < eta->size(); ++drop) {
      Face sub;
      for (std::size_t i = 0; i < eta->size(); ++i)
        if (i != drop) sub.push_back((*eta)[i]);
      std::size_t r = detail::face_index(ridge_faces, sub);
      rhs[r] = !rhs[r];
    }
  GF2Matrix bd = detail::boundary_matrix(av, d);
  auto x = bd.solve(rhs);
  if (!x) return std::nullopt;
  std::vector<Face> chain;
  for (std::size_t j = 0; j < x->size(); ++j)
    if ((*x)[j]) chain.push_back(av.faces(d)[j]);
  return chain;
}

struct CollapseStep {
  Face free_face;
  Face top_face;
};

namespace detail {

inline bool face_subset(const Face& a, const Face& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::string face_str(const Face& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f[i]);
  }
  return s + "}";
}

// One collapse: checks that sigma is inclusion-maximal and that every face
// containing tau sits inside sigma, then removes the whole interval.
inline void collapse_interval(std::set<Face>& cur, const Face& tau,
                              const Face& sigma) {
  auto fail = [&]() {
    throw std::runtime_error("collapse step is not free: " + face_str(tau) +
                             " in " + face_str(sigma));
  };
  if (!cur.count(tau) || !cur.count(sigma) || tau.size() >= sigma.size() ||
      !face_subset(tau, sigma))
    fail();
  std::vector<Face> doomed;
  for (const Face& g : cur) {
    if (g.size() > sigma.size() && face_subset(sigma, g)) fail();
    if (face_subset(tau, g)) {
      if (!face_subset(g, sigma)) fail();
      doomed.push_back(g);
    }
  }
  for (const Face& g : doomed) cur.erase(g);
}

inline bool same_betti(const BettiVector& a, const BettiVector& b) {
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i)
    if ((i < a.size() ? a[i] : 0) != (i < b.size() ? b[i] : 0)) return false;
  return true;
}

}  // namespace detail

// Collapses the avoiding complex of the extremal configuration down to the
// boundary of its all-special simplex.  Round k removes every face whose
// non-special part has exactly d+1-k vertices: that part is a free face and
// its cone tops out at the face completed with the missing special
// vertices.  Round 1 pairs ridges with the d-faces holding one special;
// the last round collapses each surviving non-special vertex, wiping 2^d
// faces at once.
inline std::vector<CollapseStep> verify_extremal_collapse(
    const std::vector<std::size_t>& n) {
  ColorfulConfiguration c = extremal_config(n);
  std::size_t d = c.dim;
  SimplicialComplexGF2 av = avoiding_complex(c);
  BettiVector reference = betti_gf2(av);
  detail::ClassLayout layout = detail::class_layout(detail::class_sizes(c));
  auto is_special = [&](int v) { return layout.owner(v).second == 0; };

  std::set<Face> cur;
  for (int k = 0; k <= av.top_dim(); ++k) {
    const auto& fs = av.faces(std::size_t(k));
    cur.insert(fs.begin(), fs.end());
  }
  auto rebuild = [&]() {
    return SimplicialComplexGF2::from_faces(layout.total,
                                            {cur.begin(), cur.end()});
  };

  std::vector<CollapseStep> steps;
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<Face> taus;
    for (const Face& f : cur)
      if (f.size() == d + 1 - k && std::none_of(f.begin(), f.end(), is_special))
        taus.push_back(f);
    std::sort(taus.begin(), taus.end());
    for (const Face& tau : taus) {
      std::vector<bool> used(d + 1, false);
      for (int v : tau) used[layout.owner(v).first] = true;
      Face sigma = tau;
      for (std::size_t i = 0; i <= d; ++i)
        if (!used[i]) sigma.push_back(int(layout.offsets[i]));
      std::sort(sigma.begin(), sigma.end());
      detail::collapse_interval(cur, tau, sigma);
      steps.push_back({tau, sigma});
    }
    if (!detail::same_betti(betti_gf2(rebuild()), reference))
      throw std::logic_error("collapse round changed a Betti number");
  }

  std::vector<Face> boundary_facets;
  for (std::size_t drop = 0; drop <= d; ++drop) {
    Face f;
    for (std::size_t i = 0; i <= d; ++i)
      if (i != drop) f.push_back(int(layout.offsets[i]));
    boundary_facets.push_back(f);
  }
  SimplicialComplexGF2 expected =
      SimplicialComplexGF2::from_facets(layout.total, boundary_facets);
  if (!(rebuild() == expected))
    throw std::logic_error("residual complex is not the special boundary");
  return steps;
}

// Experimental collapser: repeatedly removes the lexicographically smallest
// free face of dimension < max_face_dim together with its cone.  No
// steering toward any particular residual.
inline SimplicialComplexGF2 greedy_collapse(const SimplicialComplexGF2& k,
                                            std::size_t max_face_dim) {
  std::set<Face> cur;
  for (int t = 0; t <= k.top_dim(); ++t) {
    const auto& fs = k.faces(std::size_t(t));
    cur.insert(fs.begin(), fs.end());
  }
  for (;;) {
    std::vector<Face> maximal;
    for (const Face& f : cur) {
      bool top = true;
      for (std::size_t v = 0; v < k.vertex_count() && top; ++v) {
        if (std::binary_search(f.begin(), f.end(), int(v))) continue;
        Face ext = f;
        ext.insert(std::upper_bound(ext.begin(), ext.end(), int(v)), int(v));
        if (cur.count(ext)) top = false;
      }
      if (top) maximal.push_back(f);
    }
    bool collapsed = false;
    for (const Face& tau : cur) {  // set order = lexicographic
      if (tau.size() > max_face_dim) continue;  // dim must stay below cap
      const Face* only = nullptr;
      bool free_face = true;
      for (const Face& m : maximal)
        if (detail::face_subset(tau, m)) {
          if (only) {
            free_face = false;
            break;
          }
          only = &m;
        }
      if (!free_face || !only || *only == tau) continue;
      std::vector<Face> doomed;
      for (const Face& g : cur)
        if (detail::face_subset(tau, g)) doomed.push_back(g);
      for (const Face& g : doomed) cur.erase(g);
      collapsed = true;
      break;
    }
    if (!collapsed) break;
  }
  return SimplicialComplexGF2::from_faces(k.vertex_count(),
                                          {cur.begin(), cur.end()});
}

}  // namespace chroma

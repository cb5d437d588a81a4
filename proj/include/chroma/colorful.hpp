#pragma once

// Colorful point configurations in rational d-space: the centered and
// relative-general-position predicates, hitting-simplex enumeration and the
// resulting depth count, the extremal construction that attains the depth
// upper bound, and a seeded random instance generator.
//
// A configuration is d+1 (or more) indexed classes of points.  A colorful
// simplex picks at most one point per class; it is hitting when it has d+1
// affinely independent points whose hull contains the origin.  The depth of
// the configuration is the number of hitting simplices.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chroma/linalg.hpp"
#include "chroma/lp.hpp"
#include "chroma/rng.hpp"

namespace chroma {

struct ColorfulConfiguration {
  std::size_t dim = 0;
  std::vector<std::vector<QVec>> classes;

  std::size_t class_count() const { return classes.size(); }
  const QVec& point(std::size_t cls, std::size_t idx) const {
    return classes[cls][idx];
  }
  void validate() const {
    if (classes.empty())
      throw std::invalid_argument("configuration needs at least one class");
    for (const auto& cl : classes) {
      if (cl.empty())
        throw std::invalid_argument("configuration has an empty class");
      for (const QVec& p : cl)
        if (p.dim() != dim)
          throw std::invalid_argument("configuration point dimension mismatch");
    }
  }

  friend bool operator==(const ColorfulConfiguration& a,
                         const ColorfulConfiguration& b) {
    return a.dim == b.dim && a.classes == b.classes;
  }
};

// Members are (class, point) index pairs, kept sorted by class; a class
// appears at most once.
struct ColorfulSimplex {
  std::vector<std::pair<std::size_t, std::size_t>> members;

  static ColorfulSimplex of(
      std::vector<std::pair<std::size_t, std::size_t>> m) {
    std::sort(m.begin(), m.end());
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
      if (m[i].first == m[i + 1].first)
        throw std::invalid_argument("colorful simplex repeats a class");
    return ColorfulSimplex{std::move(m)};
  }

  std::size_t size() const { return members.size(); }

  std::vector<QVec> points(const ColorfulConfiguration& c) const {
    std::vector<QVec> pts;
    pts.reserve(members.size());
    for (auto [cls, idx] : members) pts.push_back(c.point(cls, idx));
    return pts;
  }

  friend bool operator==(const ColorfulSimplex& a, const ColorfulSimplex& b) {
    return a.members == b.members;
  }
  friend bool operator<(const ColorfulSimplex& a, const ColorfulSimplex& b) {
    return a.members < b.members;
  }
};

struct DepthReport {
  std::size_t csd = 0;
  std::vector<ColorfulSimplex> hitting;
  std::uint64_t bound = 0;  // 1 + prod(n_i - 1)
  bool satisfies_bound = false;
};

struct OriginContainment {
  bool in_conv = false;
  bool in_relint = false;
  bool in_interior = false;
};

namespace detail {

// For affinely independent points the convex-combination weights of the
// origin are unique, so containment reduces to one exact linear solve.
// Returns nullopt when the points are affinely dependent (caller falls
// back to the LP) or the origin misses the affine hull.
enum class AffSolve { DEPENDENT, NO_COMBINATION, UNIQUE };

inline AffSolve origin_weights(const std::vector<QVec>& pts,
                               std::vector<Rat>& lambda) {
  std::size_t n = pts.size(), m = pts[0].dim();
  QMat aug(m + 1, n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) aug.at(i, j) = pts[j][i];
    aug.at(m, j) = Rat(1);
  }
  aug.at(m, n) = Rat(1);
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return AffSolve::NO_COMBINATION;
  if (pivots.size() < n) return AffSolve::DEPENDENT;
  lambda.assign(n, Rat(0));
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    lambda[pivots[pi]] = aug.at(pi, n);
  return AffSolve::UNIQUE;
}

}  // namespace detail

inline bool origin_in_conv(const std::vector<QVec>& pts) {
  if (pts.empty()) return false;
  std::vector<Rat> lambda;
  switch (detail::origin_weights(pts, lambda)) {
    case detail::AffSolve::NO_COMBINATION:
      return false;
    case detail::AffSolve::UNIQUE: {
      for (const Rat& l : lambda)
        if (l.sgn() < 0) return false;
      return true;
    }
    case detail::AffSolve::DEPENDENT:
      return lp_min_coeff(pts).status == LpStatus::OPTIMAL;
  }
  return false;
}

inline bool origin_in_relint(const std::vector<QVec>& pts) {
  if (pts.empty()) return false;
  std::vector<Rat> lambda;
  switch (detail::origin_weights(pts, lambda)) {
    case detail::AffSolve::NO_COMBINATION:
      return false;
    case detail::AffSolve::UNIQUE: {
      for (const Rat& l : lambda)
        if (l.sgn() <= 0) return false;
      return true;
    }
    case detail::AffSolve::DEPENDENT: {
      LPResult r = lp_min_coeff(pts);
      return r.status == LpStatus::OPTIMAL && r.optimum.sgn() > 0;
    }
  }
  return false;
}

inline OriginContainment origin_containment(const std::vector<QVec>& pts) {
  if (pts.empty())
    throw std::invalid_argument("origin_containment: no points");
  std::size_t m = pts[0].dim();
  for (const QVec& p : pts)
    if (p.dim() != m)
      throw std::invalid_argument("origin_containment: mixed dimensions");
  OriginContainment oc;
  oc.in_conv = origin_in_conv(pts);
  oc.in_relint = oc.in_conv && origin_in_relint(pts);
  if (oc.in_relint) {
    // full-dimensional affine span <=> lift of the points has rank m+1
    QMat lift(m + 1, pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      for (std::size_t i = 0; i < m; ++i) lift.at(i, j) = pts[j][i];
      lift.at(m, j) = Rat(1);
    }
    oc.in_interior = rank(lift) == m + 1;
  }
  return oc;
}

inline bool is_centered(const ColorfulConfiguration& c) {
  c.validate();
  for (const auto& cl : c.classes)
    if (!origin_in_relint(cl)) return false;
  return true;
}

namespace detail {

// Enumerate colorful subsets of size <= max_size; stop early when the
// visitor returns false.
template <typename F>
bool for_each_colorful_subset(const ColorfulConfiguration& c,
                              std::size_t max_size, std::size_t first_class,
                              std::vector<std::pair<std::size_t, std::size_t>>& cur,
                              F&& visit) {
  if (!cur.empty() && !visit(cur)) return false;
  if (cur.size() == max_size) return true;
  for (std::size_t cls = first_class; cls < c.classes.size(); ++cls)
    for (std::size_t idx = 0; idx < c.classes[cls].size(); ++idx) {
      cur.emplace_back(cls, idx);
      if (!for_each_colorful_subset(c, max_size, cls + 1, cur, visit))
        return false;
      cur.pop_back();
    }
  return true;
}

}  // namespace detail

// 0 must avoid the hull of every colorful simplex with at most d points.
inline bool is_relative_general_position(const ColorfulConfiguration& c) {
  c.validate();
  if (c.dim == 0) return true;
  std::vector<std::pair<std::size_t, std::size_t>> cur;
  return detail::for_each_colorful_subset(
      c, c.dim, 0, cur,
      [&](const std::vector<std::pair<std::size_t, std::size_t>>& members) {
        std::vector<QVec> pts;
        pts.reserve(members.size());
        for (auto [cls, idx] : members) pts.push_back(c.point(cls, idx));
        return !origin_in_conv(pts);
      });
}

inline std::uint64_t depth_bound(const ColorfulConfiguration& c) {
  std::uint64_t b = 1;
  for (const auto& cl : c.classes) b *= std::uint64_t(cl.size() - 1);
  return b + 1;
}

inline DepthReport hitting_simplices(const ColorfulConfiguration& c) {
  c.validate();
  if (c.class_count() != c.dim + 1)
    throw std::invalid_argument("csd requires d+1 classes");
  DepthReport rep;
  rep.bound = depth_bound(c);

  std::size_t d = c.dim;
  std::vector<std::size_t> idx(d + 1, 0);
  std::vector<QVec> pts(d + 1);
  for (;;) {
    for (std::size_t i = 0; i <= d; ++i) pts[i] = c.point(i, idx[i]);
    std::vector<Rat> lambda;
    // hitting needs affine independence (unique weights) and weights >= 0
    if (detail::origin_weights(pts, lambda) == detail::AffSolve::UNIQUE) {
      bool nonneg = true;
      for (const Rat& l : lambda)
        if (l.sgn() < 0) { nonneg = false; break; }
      if (nonneg) {
        std::vector<std::pair<std::size_t, std::size_t>> m;
        for (std::size_t i = 0; i <= d; ++i) m.emplace_back(i, idx[i]);
        rep.hitting.push_back(ColorfulSimplex{std::move(m)});
      }
    }
    std::size_t i = d + 1;
    while (i-- > 0) {
      if (++idx[i] < c.classes[i].size()) break;
      idx[i] = 0;
      if (i == 0) {
        rep.csd = rep.hitting.size();
        rep.satisfies_bound = rep.csd <= rep.bound;
        return rep;
      }
    }
  }
}

// Inclusion-minimal colorful simplices whose hull contains the origin.  A
// simplex is minimal iff dropping any single member loses the containment,
// since containment is monotone under adding points.
inline std::vector<ColorfulSimplex> minimal_hitting_set(
    const ColorfulConfiguration& c) {
  c.validate();
  if (c.class_count() != c.dim + 1)
    throw std::invalid_argument("csd requires d+1 classes");
  std::vector<ColorfulSimplex> out;
  std::vector<std::pair<std::size_t, std::size_t>> cur;
  detail::for_each_colorful_subset(
      c, c.dim + 1, 0, cur,
      [&](const std::vector<std::pair<std::size_t, std::size_t>>& members) {
        std::vector<QVec> pts;
        for (auto [cls, idx] : members) pts.push_back(c.point(cls, idx));
        if (!origin_in_conv(pts)) return true;
        bool minimal = true;
        for (std::size_t skip = 0; skip < pts.size() && minimal; ++skip) {
          std::vector<QVec> sub;
          for (std::size_t i = 0; i < pts.size(); ++i)
            if (i != skip) sub.push_back(pts[i]);
          if (!sub.empty() && origin_in_conv(sub)) minimal = false;
        }
        if (minimal) out.push_back(ColorfulSimplex{members});
        return true;
      });
  std::sort(out.begin(), out.end());
  return out;
}

// The depth-maximizing construction: class i consists of v_i together with
// the negative multiples -v_i, -2 v_i, ..., -(n_i - 1) v_i, where
// v_1..v_d are the standard basis and v_0 = -(e_1 + ... + e_d).
inline ColorfulConfiguration extremal_config(const std::vector<std::size_t>& n) {
  if (n.size() < 2)
    throw std::invalid_argument("extremal_config needs at least two classes");
  for (std::size_t ni : n)
    if (ni < 2)
      throw std::invalid_argument("extremal_config needs class sizes >= 2");
  std::size_t d = n.size() - 1;
  ColorfulConfiguration c;
  c.dim = d;
  for (std::size_t i = 0; i <= d; ++i) {
    QVec v(d);
    if (i == 0)
      for (std::size_t j = 0; j < d; ++j) v[j] = Rat(-1);
    else
      v[i - 1] = Rat(1);
    std::vector<QVec> cls;
    cls.push_back(v);
    for (std::size_t a = 1; a < n[i]; ++a) cls.push_back(Rat(-long(a)) * v);
    c.classes.push_back(std::move(cls));
  }
  return c;
}

// Deterministic random centered rgp instance with integer coordinates in
// [-coord_bound, coord_bound].  Classes are first sampled outright; a class
// that misses the relint condition gets its last point replaced by the
// negated sum of the others, which makes the uniform weights a strictly
// positive witness.  Configurations that land in special position are
// rejected and redrawn.
inline ColorfulConfiguration random_centered_rgp(
    const std::vector<std::size_t>& n, std::uint64_t seed,
    long coord_bound) {
  for (std::size_t ni : n)
    if (ni < 2)
      throw std::invalid_argument("random_centered_rgp needs class sizes >= 2");
  if (coord_bound < 2)
    throw std::invalid_argument("insufficient coordinate range");
  std::size_t d = n.size() - 1;
  Rng rng(seed);

  auto sample_point = [&]() {
    QVec p(d);
    do {
      for (std::size_t j = 0; j < d; ++j)
        p[j] = Rat(rng.uniform(-coord_bound, coord_bound));
    } while (p.is_zero());
    return p;
  };

  auto in_box = [&](const QVec& p) {
    for (std::size_t j = 0; j < d; ++j)
      if (abs(p[j]) > Rat(coord_bound)) return false;
    return true;
  };

  for (int config_try = 0; config_try < 4096; ++config_try) {
    ColorfulConfiguration c;
    c.dim = d;
    bool ok = true;
    for (std::size_t i = 0; i < n.size() && ok; ++i) {
      std::vector<QVec> cls;
      bool class_ok = false;
      for (int cls_try = 0; cls_try < 64 && !class_ok; ++cls_try) {
        cls.clear();
        for (std::size_t p = 0; p < n[i]; ++p) cls.push_back(sample_point());
        if (origin_in_relint(cls)) { class_ok = true; break; }
        // balance: replace the last point so the uniform weights witness 0
        QVec balance(d);
        for (std::size_t p = 0; p + 1 < n[i]; ++p) balance -= cls[p];
        if (!balance.is_zero() && in_box(balance)) {
          cls.back() = balance;
          class_ok = true;
        }
      }
      if (!class_ok) { ok = false; break; }
      c.classes.push_back(std::move(cls));
    }
    if (!ok) continue;
    if (is_relative_general_position(c)) return c;
  }
  throw std::runtime_error("random_centered_rgp: failed to generate instance");
}

}  // namespace chroma

// Flips between centered configurations: barycentric translation paths,
// combinatorial certificates over hitting-set symmetric differences, and
// exact event detection along straight-line homotopies.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chroma/colorful.hpp"
#include "chroma/linalg.hpp"
#include "chroma/poly.hpp"
#include "chroma/rational.hpp"
#include "chroma/rng.hpp"

namespace chroma {

enum class FlipMode { CERTIFICATE, STRICT };

struct FlipPath {
  ColorfulConfiguration start;
  ColorfulConfiguration end;
  ColorfulSimplex ridge;  // d members on d distinct classes
  FlipMode mode = FlipMode::CERTIFICATE;
};

struct FlipCertificate {
  bool valid = false;
  std::vector<ColorfulSimplex> symmetric_difference;
  std::vector<ColorfulSimplex> expected;
  bool endpoints_ok = false;
};

// Isolated time at which the origin meets the convex hull of the listed
// points along the homotopy.  Class-boundary events repeat one class and
// witness the origin leaving a class hull in the strict sweep.
struct HomotopyEvent {
  RootInterval t_interval;
  ColorfulSimplex ridge;
  bool class_boundary = false;
};

struct FlipWalkResult {
  bool success = false;
  std::vector<FlipPath> flips;
  std::string diagnostics;
};

namespace detail {

inline void check_ridge(const ColorfulConfiguration& c,
                        const ColorfulSimplex& rho) {
  if (rho.size() != c.dim)
    throw std::invalid_argument("ridge needs exactly dimension many members");
  std::set<std::size_t> seen;
  for (auto [cls, idx] : rho.members) {
    if (cls >= c.class_count() || idx >= c.classes[cls].size())
      throw std::invalid_argument("ridge member out of range");
    if (!seen.insert(cls).second)
      throw std::invalid_argument("ridge classes must be distinct");
  }
}

inline bool same_shape(const ColorfulConfiguration& a,
                       const ColorfulConfiguration& b) {
  if (a.dim != b.dim || a.class_count() != b.class_count()) return false;
  for (std::size_t i = 0; i < a.class_count(); ++i)
    if (a.classes[i].size() != b.classes[i].size()) return false;
  return true;
}

inline QPoly poly_det(const std::vector<std::vector<QPoly>>& m) {
  std::size_t n = m.size();
  if (n == 0) return QPoly::constant(Rat(1));
  if (n == 1) return m[0][0];
  QPoly out;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][0].is_zero()) continue;
    std::vector<std::vector<QPoly>> sub;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      sub.emplace_back(m[r].begin() + 1, m[r].end());
    }
    QPoly term = m[i][0] * poly_det(sub);
    if (i % 2) term = -term;
    out += term;
  }
  return out;
}

inline std::vector<std::vector<QPoly>> drop_row_col(
    const std::vector<std::vector<QPoly>>& m, std::size_t row, std::size_t col) {
  std::vector<std::vector<QPoly>> sub;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (r == row) continue;
    std::vector<QPoly> line;
    for (std::size_t c = 0; c < m[r].size(); ++c)
      if (c != col) line.push_back(m[r][c]);
    sub.push_back(std::move(line));
  }
  return sub;
}

// Lifted rows (f_t(v), 1) for the listed members under the straight-line
// homotopy, plus the lifted origin row.
inline std::vector<std::vector<QPoly>> blend_lift(
    const ColorfulConfiguration& a, const ColorfulConfiguration& b,
    const std::vector<std::pair<std::size_t, std::size_t>>& members) {
  std::size_t d = a.dim;
  std::vector<std::vector<QPoly>> m;
  for (auto [cls, idx] : members) {
    const QVec& p = a.point(cls, idx);
    const QVec& q = b.point(cls, idx);
    std::vector<QPoly> row;
    for (std::size_t k = 0; k < d; ++k)
      row.push_back(QPoly{(p[k] + q[k]) / Rat(2), (q[k] - p[k]) / Rat(2)});
    row.push_back(QPoly::constant(Rat(1)));
    m.push_back(std::move(row));
  }
  std::vector<QPoly> origin(d, QPoly());
  origin.push_back(QPoly::constant(Rat(1)));
  m.push_back(std::move(origin));
  return m;
}

inline ColorfulConfiguration blend_config(const ColorfulConfiguration& a,
                                          const ColorfulConfiguration& b,
                                          const Rat& t) {
  ColorfulConfiguration out;
  out.dim = a.dim;
  out.classes.resize(a.class_count());
  Rat wa = (Rat(1) - t) / Rat(2), wb = (Rat(1) + t) / Rat(2);
  for (std::size_t i = 0; i < a.class_count(); ++i)
    for (std::size_t j = 0; j < a.classes[i].size(); ++j)
      out.classes[i].push_back(wa * a.point(i, j) + wb * b.point(i, j));
  return out;
}

struct EventScratch {
  QPoly det;
  std::vector<QPoly> chain;
  RootInterval iv;
  ColorfulSimplex ridge;
  bool class_boundary = false;
};

}  // namespace detail

// Flip realized by translating the whole configuration away from the ridge
// barycenter; the origin crosses the ridge hull exactly at the midpoint.
inline FlipPath translate_flip(const ColorfulConfiguration& c,
                               const ColorfulSimplex& rho) {
  c.validate();
  if (c.dim == 0) throw std::invalid_argument("translate_flip needs positive dimension");
  if (!is_centered(c)) throw std::invalid_argument("translate_flip: not centered");
  if (!is_relative_general_position(c))
    throw std::invalid_argument("translate_flip: not in relative general position");
  detail::check_ridge(c, rho);
  std::vector<QVec> pts = rho.points(c);
  std::vector<QVec> lifted;
  for (const QVec& p : pts) {
    QVec l(c.dim + 1);
    for (std::size_t k = 0; k < c.dim; ++k) l[k] = p[k];
    l[c.dim] = Rat(1);
    lifted.push_back(l);
  }
  if (rank(QMat::from_rows(lifted)) != pts.size())
    throw std::invalid_argument("ridge points affinely dependent");

  QVec b(c.dim);
  for (const QVec& p : pts) b += p;
  b *= Rat(1) / Rat((long)pts.size());

  ColorfulConfiguration end = c;
  for (auto& cls : end.classes)
    for (QVec& p : cls) p -= Rat(2) * b;
  if (!is_centered(end)) throw std::invalid_argument("flip breaks centeredness");
  if (!is_relative_general_position(end))
    throw std::invalid_argument("degenerate endpoint");

  std::vector<QVec> mid;
  for (const QVec& p : pts) mid.push_back(p - b);
  if (!origin_in_relint(mid))
    throw std::logic_error("flip midpoint misses its ridge");
  return FlipPath{c, end, rho, FlipMode::CERTIFICATE};
}

inline std::vector<HomotopyEvent> homotopy_events(
    const ColorfulConfiguration& c1, const ColorfulConfiguration& c2,
    bool strict = false) {
  c1.validate();
  c2.validate();
  if (!detail::same_shape(c1, c2))
    throw std::invalid_argument("homotopy needs matching shapes");
  if (c1.dim == 0) throw std::invalid_argument("homotopy needs positive dimension");
  if (!is_relative_general_position(c1) || !is_relative_general_position(c2))
    throw std::invalid_argument("homotopy endpoints must be in relative general position");
  std::size_t d = c1.dim;

  // candidate member lists: colorful ridges, plus per-class hull facets in
  // the strict sweep
  using Members = std::vector<std::pair<std::size_t, std::size_t>>;
  std::vector<std::pair<Members, bool>> cands;
  std::vector<std::size_t> classes;
  auto emit_products = [&](auto&& self, std::size_t at, Members acc) -> void {
    if (at == classes.size()) {
      cands.push_back({acc, false});
      return;
    }
    for (std::size_t j = 0; j < c1.classes[classes[at]].size(); ++j) {
      acc.push_back({classes[at], j});
      self(self, at + 1, acc);
      acc.pop_back();
    }
  };
  auto pick_classes = [&](auto&& self, std::size_t from, std::size_t got) -> void {
    if (got == d) {
      emit_products(emit_products, 0, {});
      return;
    }
    for (std::size_t i = from; i < c1.class_count(); ++i) {
      classes.push_back(i);
      self(self, i + 1, got + 1);
      classes.pop_back();
    }
  };
  pick_classes(pick_classes, 0, 0);
  if (strict) {
    for (std::size_t i = 0; i < c1.class_count(); ++i) {
      std::size_t n = c1.classes[i].size();
      if (n < d) continue;
      std::vector<std::size_t> pick;
      auto subsets = [&](auto&& self, std::size_t from) -> void {
        if (pick.size() == d) {
          Members m;
          for (std::size_t j : pick) m.push_back({i, j});
          cands.push_back({std::move(m), true});
          return;
        }
        for (std::size_t j = from; j < n; ++j) {
          pick.push_back(j);
          self(self, j + 1);
          pick.pop_back();
        }
      };
      subsets(subsets, 0);
    }
  }

  QPoly t_plus{Rat(1), Rat(1)}, t_minus{Rat(-1), Rat(1)};
  std::vector<detail::EventScratch> found;
  for (const auto& [members, boundary] : cands) {
    auto lift = detail::blend_lift(c1, c2, members);
    QPoly det = detail::poly_det(lift);
    if (det.is_zero()) throw std::invalid_argument("degenerate homotopy");
    while (det.eval(Rat(-1)).is_zero()) det = divmod(det, t_plus).first;
    while (det.eval(Rat(1)).is_zero()) det = divmod(det, t_minus).first;
    if (det.degree() < 1) continue;
    std::vector<QPoly> chain = sturm_chain(det);
    for (const RootInterval& iv : sturm_isolate(det, Rat(-1), Rat(1))) {
      // hull membership of the origin via the signs of one cofactor column
      std::vector<int> signs(d + 1, 0);
      bool have_column = false;
      for (std::size_t j = 0; j < d && !have_column; ++j) {
        bool all_zero = true;
        for (std::size_t k = 0; k <= d; ++k) {
          QPoly cof = detail::poly_det(detail::drop_row_col(lift, k, j));
          if (k % 2) cof = -cof;
          signs[k] = sign_at_root(cof, det, chain, iv);
          if (signs[k] != 0) all_zero = false;
        }
        if (!all_zero) have_column = true;
      }
      if (!have_column || signs[d] == 0)
        throw std::invalid_argument("degenerate homotopy");
      bool inside = true;
      for (std::size_t k = 0; k < d; ++k)
        if (signs[k] != 0 && signs[k] != -signs[d]) inside = false;
      if (!inside) continue;
      if (boundary) {
        // only count hull facets: the rest of the class must sit strictly
        // on one side of the moving hyperplane
        std::size_t cls = members[0].first;
        int side = 0;
        bool facet = true;
        for (std::size_t j = 0; j < c1.classes[cls].size() && facet; ++j) {
          bool used = false;
          for (auto [mc, mi] : members)
            if (mi == j) used = true;
          if (used) continue;
          Members ext = members;
          ext.push_back({cls, j});
          // drop the origin row appended by blend_lift: the bare point
          // determinant gives the side of the extra point
          auto full = detail::blend_lift(c1, c2, ext);
          full.pop_back();
          QPoly s = detail::poly_det(full);
          int sg = sign_at_root(s, det, chain, iv);
          if (sg == 0 || (side != 0 && sg != side)) facet = false;
          side = sg;
        }
        if (!facet) continue;
      }
      detail::EventScratch ev;
      ev.det = det;
      ev.chain = chain;
      ev.iv = iv;
      ev.ridge = ColorfulSimplex{members};
      ev.class_boundary = boundary;
      found.push_back(std::move(ev));
    }
  }

  // separate intervals of distinct event times; genuinely shared roots are
  // left overlapping for the caller to resolve by perturbation
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = i + 1; j < found.size(); ++j) {
      auto overlap = [&]() {
        return found[i].iv.lo < found[j].iv.hi && found[j].iv.lo < found[i].iv.hi;
      };
      if (!overlap()) continue;
      QPoly g = poly_gcd(found[i].det, found[j].det);
      if (g.degree() >= 1) {
        Rat lo = std::max(found[i].iv.lo, found[j].iv.lo);
        Rat hi = std::min(found[i].iv.hi, found[j].iv.hi);
        std::vector<QPoly> gchain = sturm_chain(g);
        if (sturm_count(gchain, lo, hi) > 0) continue;  // same algebraic time
      }
      while (overlap()) {
        detail::EventScratch& wide =
            found[i].iv.width() < found[j].iv.width() ? found[j] : found[i];
        wide.iv = refine_root(wide.det, wide.chain, wide.iv,
                              wide.iv.width() / Rat(2));
      }
    }

  std::sort(found.begin(), found.end(),
            [](const detail::EventScratch& a, const detail::EventScratch& b) {
              if (a.iv.lo != b.iv.lo) return a.iv.lo < b.iv.lo;
              if (a.iv.hi != b.iv.hi) return a.iv.hi < b.iv.hi;
              if (a.ridge.members != b.ridge.members)
                return a.ridge.members < b.ridge.members;
              return a.class_boundary < b.class_boundary;
            });
  std::vector<HomotopyEvent> out;
  for (auto& ev : found)
    out.push_back({ev.iv, std::move(ev.ridge), ev.class_boundary});
  return out;
}

inline FlipCertificate verify_flip(const FlipPath& p) {
  FlipCertificate cert;
  cert.endpoints_ok = [&] {
    try {
      p.start.validate();
      p.end.validate();
      detail::check_ridge(p.start, p.ridge);
    } catch (const std::invalid_argument&) {
      return false;
    }
    if (!detail::same_shape(p.start, p.end)) return false;
    if (p.start.dim == 0 || p.start.class_count() != p.start.dim + 1) return false;
    return is_centered(p.start) && is_relative_general_position(p.start) &&
           is_centered(p.end) && is_relative_general_position(p.end);
  }();
  if (!cert.endpoints_ok) return cert;

  std::vector<ColorfulSimplex> ha = hitting_simplices(p.start).hitting;
  std::vector<ColorfulSimplex> hb = hitting_simplices(p.end).hitting;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  std::set_symmetric_difference(ha.begin(), ha.end(), hb.begin(), hb.end(),
                                std::back_inserter(cert.symmetric_difference));

  std::vector<bool> used(p.start.class_count(), false);
  for (auto [cls, idx] : p.ridge.members) used[cls] = true;
  std::size_t missing = 0;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) missing = i;
  for (std::size_t j = 0; j < p.start.classes[missing].size(); ++j) {
    auto m = p.ridge.members;
    m.push_back({missing, j});
    cert.expected.push_back(ColorfulSimplex::of(std::move(m)));
  }
  std::sort(cert.expected.begin(), cert.expected.end());

  cert.valid = cert.symmetric_difference == cert.expected;
  if (cert.valid && p.mode == FlipMode::STRICT) {
    // audit the whole segment: every crossing must belong to the ridge and
    // no class hull may lose the origin along the way
    try {
      for (const HomotopyEvent& ev : homotopy_events(p.start, p.end, true))
        if (ev.class_boundary || !(ev.ridge == p.ridge)) cert.valid = false;
    } catch (const std::invalid_argument&) {
      cert.valid = false;
    }
  }
  return cert;
}

namespace detail {

// Waypoint near a random time of the segment: blended, jittered, and then
// recentered so every class keeps the origin in its hull interior.
inline std::optional<ColorfulConfiguration> perturb_waypoint(
    const ColorfulConfiguration& a, const ColorfulConfiguration& b, Rng& rng) {
  for (int attempt = 0; attempt < 24; ++attempt) {
    Rat t(rng.uniform(-9, 9), 10);
    ColorfulConfiguration w = blend_config(a, b, t);
    Rat m;
    for (const auto& cls : w.classes)
      for (const QVec& p : cls)
        for (std::size_t k = 0; k < p.dim(); ++k) m = std::max(m, abs(p[k]));
    if (m.is_zero()) m = Rat(1);
    for (auto& cls : w.classes) {
      for (QVec& p : cls)
        for (std::size_t k = 0; k < p.dim(); ++k)
          p[k] += m * Rat(rng.uniform(-100, 100), 1200);
      QVec mean(w.dim);
      for (const QVec& p : cls) mean += p;
      mean *= Rat(1) / Rat((long)cls.size());
      for (QVec& p : cls) p -= mean;
    }
    if (is_centered(w) && is_relative_general_position(w)) return w;
  }
  return std::nullopt;
}

}  // namespace detail

inline FlipWalkResult flip_walk(const ColorfulConfiguration& c1,
                                const ColorfulConfiguration& c2,
                                std::size_t max_retries, std::uint64_t seed) {
  c1.validate();
  c2.validate();
  if (!detail::same_shape(c1, c2))
    throw std::invalid_argument("flip walk needs matching shapes");
  if (c1.dim == 0 || c1.class_count() != c1.dim + 1)
    throw std::invalid_argument("flip walk needs dimension plus one classes");
  for (const ColorfulConfiguration* c : {&c1, &c2}) {
    if (!is_centered(*c))
      throw std::invalid_argument("flip walk endpoints must be centered");
    if (!is_relative_general_position(*c))
      throw std::invalid_argument(
          "flip walk endpoints must be in relative general position");
  }

  Rng rng(seed);
  std::size_t budget = max_retries;
  std::string diag;
  auto solve = [&](auto&& self, const ColorfulConfiguration& a,
                   const ColorfulConfiguration& b,
                   std::vector<FlipPath>& out) -> bool {
    if (a == b) return true;
    std::string why;
    std::vector<HomotopyEvent> ev;
    bool ok = true;
    try {
      ev = homotopy_events(a, b);
    } catch (const std::invalid_argument& e) {
      ok = false;
      why = e.what();
    }
    if (ok)
      for (std::size_t i = 0; ok && i + 1 < ev.size(); ++i)
        if (!(ev[i].t_interval.hi <= ev[i + 1].t_interval.lo)) {
          ok = false;
          why = "simultaneous events";
        }
    std::vector<ColorfulConfiguration> probes;
    if (ok && !ev.empty()) {
      probes.push_back(a);
      for (std::size_t i = 1; i < ev.size() && ok; ++i) {
        Rat t = (ev[i - 1].t_interval.hi + ev[i].t_interval.lo) / Rat(2);
        ColorfulConfiguration w = detail::blend_config(a, b, t);
        if (!is_centered(w) || !is_relative_general_position(w)) {
          ok = false;
          why = "probe configuration rejected";
        }
        probes.push_back(std::move(w));
      }
      probes.push_back(b);
    }
    std::vector<FlipPath> seg;
    if (ok)
      for (std::size_t i = 0; i < ev.size(); ++i) {
        FlipPath path{probes[i], probes[i + 1], ev[i].ridge,
                      FlipMode::CERTIFICATE};
        if (!verify_flip(path).valid) {
          ok = false;
          why = "segment did not certify";
          break;
        }
        seg.push_back(std::move(path));
      }
    if (ok) {
      for (FlipPath& p : seg) out.push_back(std::move(p));
      return true;
    }
    if (budget == 0) {
      diag = "retries exhausted: " + why;
      return false;
    }
    --budget;
    auto w = detail::perturb_waypoint(a, b, rng);
    if (!w) {
      diag = "no valid waypoint found: " + why;
      return false;
    }
    return self(self, a, *w, out) && self(self, *w, b, out);
  };

  FlipWalkResult res;
  res.success = solve(solve, c1, c2, res.flips);
  if (!res.success) {
    res.diagnostics = diag;
    res.flips.clear();
  }
  return res;
}

}  // namespace chroma

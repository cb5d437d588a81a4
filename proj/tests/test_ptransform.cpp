#include <catch2/catch_amalgamated.hpp>

#include "chroma/ptransform.hpp"
#include "chroma/rng.hpp"

using namespace chroma;

namespace {

SimplexV seg1(long a, long b) {
  return SimplexV{{QVec{Rat(a)}, QVec{Rat(b)}}};
}

SimplexV planar(std::vector<std::array<long, 2>> vs) {
  SimplexV s;
  for (auto& v : vs) s.vertices.push_back(QVec{Rat(v[0]), Rat(v[1])});
  return s;
}

SimplexV spatial(std::vector<std::array<long, 3>> vs) {
  SimplexV s;
  for (auto& v : vs) s.vertices.push_back(QVec{Rat(v[0]), Rat(v[1]), Rat(v[2])});
  return s;
}

HPolytope unit_square() {
  return HPolytope{2,
                   {QVec{Rat(1), Rat(0)}, QVec{Rat(-1), Rat(0)},
                    QVec{Rat(0), Rat(1)}, QVec{Rat(0), Rat(-1)}}};
}

struct RandPoly {
  HPolytope p;
  std::vector<QVec> verts;
};

// random bounded irredundant h-description plus its vertex list
std::optional<RandPoly> make_poly(Rng& rng, std::size_t d, std::size_t nforms) {
  std::vector<QVec> cand;
  for (std::size_t i = 0; i < nforms; ++i) {
    QVec f(d);
    bool zero = true;
    for (std::size_t k = 0; k < d; ++k) {
      f[k] = Rat(rng.uniform(-3, 3));
      if (!f[k].is_zero()) zero = false;
    }
    if (zero) return std::nullopt;
    cand.push_back(f);
  }
  if (!origin_containment(cand).in_interior) return std::nullopt;

  HPolytope all{d, cand};
  RandPoly out;
  out.p.dim = d;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    auto m = detail::exact_face_margin(all, {i});
    if (m && m->sgn() > 0) out.p.forms.push_back(cand[i]);
  }
  if (out.p.forms.size() < d + 1) return std::nullopt;

  // vertices from nonsingular d-subsets of tight forms
  std::vector<std::size_t> pick(d);
  auto rec = [&](auto&& self, std::size_t from, std::size_t got) -> void {
    if (got == d) {
      std::vector<QVec> rows;
      for (std::size_t i : pick) rows.push_back(out.p.forms[i]);
      QMat m = QMat::from_rows(rows);
      if (det(m).is_zero()) return;
      QVec ones(d);
      for (std::size_t k = 0; k < d; ++k) ones[k] = Rat(1);
      QVec x = *solve(m, ones);
      for (const QVec& f : out.p.forms)
        if ((dot(f, x) - Rat(1)).sgn() > 0) return;
      for (const QVec& v : out.verts)
        if (v == x) return;
      out.verts.push_back(x);
      return;
    }
    for (std::size_t i = from; i < out.p.forms.size(); ++i) {
      pick[got] = i;
      self(self, i + 1, got + 1);
    }
  };
  rec(rec, 0, 0);
  if (out.verts.size() < d + 1) return std::nullopt;
  return out;
}

// supporting-functional test on projected vertices: true when the marked
// vertices are exactly the maximizers of some functional of the image
bool projected_face_oracle(const RandPoly& rp, const QMat& pm,
                           const std::vector<bool>& on_face) {
  std::size_t e = pm.rows();
  std::size_t nv = e + 2;  // functional, offset, margin
  std::vector<LinConstraint> cons;
  for (std::size_t vi = 0; vi < rp.verts.size(); ++vi) {
    QVec y = pm * rp.verts[vi];
    QVec row(nv);
    for (std::size_t k = 0; k < e; ++k) row[k] = y[k];
    row[e] = Rat(-1);
    if (on_face[vi]) {
      cons.push_back({row, Cmp::EQ, Rat(0)});
    } else {
      row[e + 1] = Rat(1);
      cons.push_back({row, Cmp::LE, Rat(0)});
    }
  }
  QVec obj(nv);
  obj[e + 1] = Rat(1);
  cons.push_back({obj, Cmp::LE, Rat(1)});
  LPResult r = lp_solve(nv, obj, cons, true);
  return r.status == LpStatus::OPTIMAL && r.optimum.sgn() > 0;
}

QMat random_projection(Rng& rng, std::size_t e, std::size_t d) {
  while (true) {
    QMat m(e, d);
    for (std::size_t r = 0; r < e; ++r)
      for (std::size_t c = 0; c < d; ++c) m.at(r, c) = Rat(rng.uniform(-2, 2));
    if (rank(m) == e) return m;
  }
}

// transform of the canonical simplex-to-configuration projection
PTransform delta_transform(const std::vector<QVec>& pts) {
  std::size_t n = pts.size();
  std::size_t e = pts[0].dim();
  SimplexV delta;
  for (std::size_t i = 0; i < n; ++i) {
    QVec v(n);
    v[i] = Rat(1);
    delta.vertices.push_back(v);
  }
  detail::SimplexHRep h = detail::simplex_h_rep(delta);

  QVec mean(e);
  for (const QVec& p : pts) mean += p;
  mean *= Rat(1) / Rat((long)n);
  QMat w = QMat::from_rows(h.verts);
  std::vector<QVec> mrows;
  for (std::size_t r = 0; r < e; ++r) {
    QVec rhs(n);
    for (std::size_t j = 0; j < n; ++j) rhs[j] = pts[j][r] - mean[r];
    auto row = solve(w, rhs);
    REQUIRE(row.has_value());
    mrows.push_back(*row);
  }
  return p_transform(h.poly, LinearProjection{QMat::from_rows(mrows)});
}

SimplexV rand_simplex(Rng& rng, std::size_t amb, std::size_t nverts) {
  SimplexV s;
  for (std::size_t v = 0; v < nverts; ++v) {
    QVec p(amb);
    for (std::size_t k = 0; k < amb; ++k) p[k] = Rat(rng.uniform(-5, 5));
    s.vertices.push_back(p);
  }
  return s;
}

}  // namespace

TEST_CASE("segment h-representation, centered or not") {
  HPolytope p = h_rep_from_simplex(seg1(-1, 1));
  REQUIRE(p.dim == 1);
  REQUIRE(p.forms.size() == 2);
  CHECK(p.forms[0] == QVec{Rat(1)});
  CHECK(p.forms[1] == QVec{Rat(-1)});
  // translation is absorbed by the barycenter shift
  CHECK(h_rep_from_simplex(seg1(0, 2)).forms == p.forms);
}

TEST_CASE("triangle with barycenter at the origin") {
  HPolytope p = h_rep_from_simplex(
      planar({{{1, 0}}, {{0, 1}}, {{-1, -1}}}));
  REQUIRE(p.forms.size() == 3);
  CHECK(p.forms[0] == QVec{Rat(-2), Rat(1)});
  CHECK(p.forms[1] == QVec{Rat(1), Rat(-2)});
  CHECK(p.forms[2] == QVec{Rat(1), Rat(1)});
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("simplex facet forms are flat on their facet and low opposite") {
  SimplexV s = spatial({{{0, 0, 0}}, {{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}});
  detail::SimplexHRep h = detail::simplex_h_rep(s);
  REQUIRE(h.poly.forms.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Rat v = dot(h.poly.forms[i], h.verts[j]);
      if (i == j)
        CHECK((v - Rat(1)).sgn() < 0);
      else
        CHECK(v == Rat(1));
    }
}

TEST_CASE("flat simplices are rebuilt inside their affine hull") {
  SimplexV s = spatial({{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}});
  detail::SimplexHRep h = detail::simplex_h_rep(s);
  CHECK(h.poly.dim == 2);
  CHECK(h.basis.rows() == 3);
  CHECK(h.basis.cols() == 2);
  // hull coordinates map back onto the centered vertices
  QVec bary{Rat(1, 3), Rat(1, 3), Rat(1, 3)};
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(h.basis * h.verts[j] == s.vertices[j] - bary);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) CHECK(dot(h.poly.forms[i], h.verts[j]) == Rat(1));
  CHECK_NOTHROW(h.poly.validate());

  SimplexV degen = planar({{{0, 0}}, {{1, 1}}, {{2, 2}}});
  CHECK_THROWS_WITH(h_rep_from_simplex(degen),
                    "simplex vertices not affinely independent");
}

TEST_CASE("h-polytope validation catches bad descriptions") {
  CHECK_THROWS_WITH(HPolytope{}.validate(), "empty polytope description");
  HPolytope halfline{1, {QVec{Rat(1)}}};
  CHECK_THROWS_WITH(halfline.validate(), "unbounded polytope");
  HPolytope loose{1, {QVec{Rat(1)}, QVec{Rat(-1)}, QVec{Rat(1, 2)}}};
  CHECK_THROWS_WITH(loose.validate(), "redundant facet form");
  HPolytope mixed{2, {QVec{Rat(1)}, QVec{Rat(-1), Rat(0)}}};
  CHECK_THROWS_WITH(mixed.validate(), "h polytope: dimension mismatch");
}

TEST_CASE("projecting a square to its first coordinate") {
  HPolytope sq = unit_square();
  LinearProjection first{QMat::from_rows({QVec{Rat(1), Rat(0)}})};
  PTransform pt = p_transform(sq, first);
  REQUIRE(pt.dim == 1);
  REQUIRE(pt.vectors.size() == 4);
  CHECK(pt.vectors[0] == QVec{Rat(0)});
  CHECK(pt.vectors[1] == QVec{Rat(0)});
  CHECK(pt.vectors[2] == QVec{Rat(1)});
  CHECK(pt.vectors[3] == QVec{Rat(-1)});

  PTransform trivial = p_transform(sq, LinearProjection{QMat::identity(2)});
  CHECK(trivial.dim == 0);
  CHECK(trivial.vectors.size() == 4);

  LinearProjection thin{QMat::from_rows({QVec{Rat(1), Rat(0)}, QVec{Rat(2), Rat(0)}})};
  CHECK_THROWS_WITH(p_transform(sq, thin), "projection not surjective");
  LinearProjection off{QMat::from_rows({QVec{Rat(1)}})};
  CHECK_THROWS_WITH(p_transform(sq, off), "p transform: dimension mismatch");
  CHECK_THROWS_WITH(p_transform(sq, LinearProjection{}), "empty projection");
}

TEST_CASE("face test under the square to segment projection") {
  HPolytope sq = unit_square();
  LinearProjection first{QMat::from_rows({QVec{Rat(1), Rat(0)}})};
  CHECK(projection_face_test(sq, first, {0}));   // right edge -> right endpoint
  CHECK(projection_face_test(sq, first, {1}));   // left edge -> left endpoint
  CHECK_FALSE(projection_face_test(sq, first, {2}));  // top edge smears across
  CHECK_FALSE(projection_face_test(sq, first, {3}));
  CHECK_FALSE(projection_face_test(sq, first, {0, 2}));  // corner under an edge
  CHECK_THROWS_WITH(projection_face_test(sq, first, {2, 3}),
                    "index set is not a face");
  CHECK_THROWS_WITH(projection_face_test(sq, first, {9}),
                    "projection_face_test: index out of range");
}

TEST_CASE("identity projection keeps every proper face") {
  HPolytope sq = unit_square();
  LinearProjection id{QMat::identity(2)};
  for (std::vector<std::size_t> f :
       {std::vector<std::size_t>{0}, {1}, {2}, {3}, {0, 2}, {0, 3}, {1, 2}, {1, 3}})
    CHECK(projection_face_test(sq, id, f));
  CHECK_FALSE(projection_face_test(sq, id, {}));
  CHECK_THROWS_WITH(projection_face_test(sq, id, {0, 1}),
                    "index set is not a face");
}

TEST_CASE("projection face test agrees with the supporting functional oracle") {
  Rng rng(401);
  int done = 0;
  while (done < 8) {
    std::size_t d = 2 + rng.uniform(0, 1);
    auto rp = make_poly(rng, d, 4 + (std::size_t)rng.uniform(0, 3));
    if (!rp) continue;
    std::size_t nf = rp->p.forms.size();
    for (int trial = 0; trial < 2; ++trial) {
      std::size_t e = 1 + (std::size_t)rng.uniform(0, (long)d - 1);
      QMat pm = random_projection(rng, e, d);
      LinearProjection proj{pm};
      for (std::size_t mask = 1; mask < (1u << nf); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < nf; ++i)
          if (mask >> i & 1) idx.push_back(i);
        // classify via the vertex list, independently of the LP inside
        std::vector<bool> tight(rp->verts.size(), true);
        for (std::size_t vi = 0; vi < rp->verts.size(); ++vi)
          for (std::size_t i : idx)
            if (dot(rp->p.forms[i], rp->verts[vi]) != Rat(1)) tight[vi] = false;
        bool any = false;
        std::vector<std::size_t> exact;
        for (std::size_t i = 0; i < nf; ++i) {
          bool all = true;
          for (std::size_t vi = 0; vi < rp->verts.size(); ++vi)
            if (tight[vi] && dot(rp->p.forms[i], rp->verts[vi]) != Rat(1))
              all = false;
          for (std::size_t vi = 0; vi < rp->verts.size(); ++vi)
            if (tight[vi]) any = true;
          if (all) exact.push_back(i);
        }
        if (!any || exact != idx) {
          CHECK_THROWS_WITH(projection_face_test(rp->p, proj, idx),
                            "index set is not a face");
          continue;
        }
        CHECK(projection_face_test(rp->p, proj, idx) ==
              projected_face_oracle(*rp, pm, tight));
      }
    }
    ++done;
  }
}

TEST_CASE("simplex projection transform reproduces the gale transform") {
  std::vector<QVec> square = {QVec{Rat(1), Rat(1)}, QVec{Rat(1), Rat(-1)},
                              QVec{Rat(-1), Rat(1)}, QVec{Rat(-1), Rat(-1)}};
  PTransform pt = delta_transform(square);
  REQUIRE(pt.dim == 1);
  Rat t = pt.vectors[0][0];
  CHECK_FALSE(t.is_zero());
  CHECK(pt.vectors[1][0] == -t);
  CHECK(pt.vectors[2][0] == -t);
  CHECK(pt.vectors[3][0] == t);
  PointConfiguration pc;
  pc.dim = 2;
  pc.points = square;
  CHECK(positively_equivalent(pt.vectors, gale_transform(pc).vectors));
}

TEST_CASE("random configurations agree between both transform routes") {
  Rng rng(402);
  int done = 0;
  while (done < 10) {
    std::size_t e = 1 + (std::size_t)rng.uniform(0, 2);
    std::size_t n = e + 2 + (std::size_t)rng.uniform(0, (long)(5 - e));
    std::vector<QVec> pts;
    for (std::size_t i = 0; i < n; ++i) {
      QVec p(e);
      for (std::size_t k = 0; k < e; ++k) p[k] = Rat(rng.uniform(-4, 4));
      pts.push_back(p);
    }
    PointConfiguration pc;
    pc.dim = e;
    pc.points = pts;
    GaleTransform gt;
    PTransform pt;
    try {
      gt = gale_transform(pc);
      pt = delta_transform(pts);
    } catch (const std::invalid_argument&) {
      continue;
    }
    CHECK(positively_equivalent(pt.vectors, gt.vectors));
    ++done;
  }
}

TEST_CASE("minkowski transform of two centered segments") {
  HPolytope seg{1, {QVec{Rat(1)}, QVec{Rat(-1)}}};
  PTransform mt = minkowski_transform({seg, seg});
  REQUIRE(mt.dim == 1);
  REQUIRE(mt.vectors.size() == 4);
  CHECK(mt.vectors[0] == QVec{Rat(-1)});
  CHECK(mt.vectors[1] == QVec{Rat(1)});
  CHECK(mt.vectors[2] == QVec{Rat(1)});
  CHECK(mt.vectors[3] == QVec{Rat(-1)});
  REQUIRE(mt.partition.has_value());
  CHECK(*mt.partition == Partition{{0, 1}, {2, 3}});
}

TEST_CASE("minkowski transform edge cases") {
  HPolytope sq = unit_square();
  PTransform solo = minkowski_transform({sq});
  CHECK(solo.dim == 0);
  CHECK(solo.vectors.size() == 4);
  CHECK(solo.partition == Partition{{0, 1, 2, 3}});

  PTransform pair = minkowski_transform({sq, sq});
  CHECK(pair.dim == 2);
  CHECK(pair.vectors.size() == 8);

  HPolytope seg{1, {QVec{Rat(1)}, QVec{Rat(-1)}}};
  CHECK_THROWS_WITH(minkowski_transform({sq, seg}),
                    "minkowski transform: dimension mismatch");
  CHECK_THROWS_WITH(minkowski_transform({}), "minkowski transform: no summands");
  CHECK_THROWS_WITH(minkowski_transform({sq, sq}, {QMat::identity(2)}),
                    "minkowski transform: one embedding per summand");
}

TEST_CASE("minkowski and colorful gale transforms coincide") {
  CHECK(verify_coincidence({seg1(-1, 1), seg1(0, 3)}));
  CHECK(verify_coincidence(
      {planar({{{0, 0}}, {{4, 1}}, {{1, 3}}}),
       planar({{{0, 0}}, {{-2, 1}}, {{1, -2}}})}));
  CHECK(verify_coincidence(
      {spatial({{{0, 0, 0}}, {{2, 1, 0}}, {{1, 3, 2}}}),
       spatial({{{1, 1, 1}}, {{-1, 2, 0}}, {{0, -1, 2}}})}));
  CHECK(verify_coincidence(
      {spatial({{{0, 0, 0}}, {{3, 0, 0}}, {{0, 3, 0}}, {{0, 0, 3}}}),
       spatial({{{1, 1, 1}}, {{-1, -2, 1}}})}));
}

TEST_CASE("coincidence holds across random collections") {
  struct Shape {
    std::size_t amb;
    std::vector<std::size_t> sizes;
  };
  std::vector<Shape> shapes = {{1, {2, 2}},
                               {2, {3, 3}},
                               {2, {2, 2, 2}},
                               {3, {3, 3}},
                               {3, {4, 2}}};
  Rng rng(403);
  for (const Shape& sh : shapes) {
    int done = 0;
    while (done < 50) {
      std::vector<SimplexV> col;
      for (std::size_t sz : sh.sizes) col.push_back(rand_simplex(rng, sh.amb, sz));
      bool ok;
      try {
        ok = verify_coincidence(col);
      } catch (const std::invalid_argument&) {
        continue;  // degenerate draw
      }
      CHECK(ok);
      ++done;
    }
  }
}

TEST_CASE("coincidence check validates its input") {
  CHECK_THROWS_WITH(verify_coincidence({}), "coincidence check: no summands");
  CHECK_THROWS_WITH(verify_coincidence({seg1(0, 1), planar({{{0, 0}}, {{1, 0}}})}),
                    "coincidence check needs a common ambient dimension");
  SimplexV pt{{QVec{Rat(2)}}};
  CHECK_THROWS_WITH(verify_coincidence({seg1(0, 1), pt}),
                    "coincidence check needs non-point summands");
}

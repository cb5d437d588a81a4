#include <catch2/catch_amalgamated.hpp>

#include "chroma/complexes.hpp"

using namespace chroma;

namespace {

// vertex id of point idx in class cls, given the class sizes
int vid(const std::vector<std::size_t>& n, std::size_t cls, std::size_t idx) {
  std::size_t off = 0;
  for (std::size_t i = 0; i < cls; ++i) off += n[i];
  return int(off + idx);
}

Face simplex_to_face(const std::vector<std::size_t>& n,
                     const ColorfulSimplex& s) {
  Face f;
  for (auto [cls, idx] : s.members) f.push_back(vid(n, cls, idx));
  std::sort(f.begin(), f.end());
  return f;
}

// XOR of the facet sets of all given faces; empty means the chain is a cycle
std::set<Face> boundary_support(const std::vector<Face>& chain) {
  std::set<Face> out;
  for (const Face& f : chain)
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      Face sub;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (i != drop) sub.push_back(f[i]);
      if (!out.insert(sub).second) out.erase(sub);
    }
  return out;
}

ColorfulConfiguration line_config(std::vector<std::vector<long>> classes) {
  ColorfulConfiguration c;
  c.dim = 1;
  for (auto& cl : classes) {
    std::vector<QVec> pts;
    for (long x : cl) pts.push_back(QVec{{Rat(x)}});
    c.classes.push_back(pts);
  }
  return c;
}

}  // namespace

TEST_CASE("rain complex of two 2-point classes is the 4-cycle") {
  auto r = rain_complex({2, 2});
  CHECK(r.vertex_count() == 4);
  CHECK(r.faces(0).size() == 4);
  CHECK(r.faces(1).size() == 4);
  CHECK(r.top_dim() == 1);
  // edges join the two classes only
  for (const Face& e : r.faces(1)) CHECK((e[0] < 2 && e[1] >= 2));
  BettiVector b = betti_gf2(r);
  CHECK(b == BettiVector{0, 1});
}

TEST_CASE("rain complex of three 2-point classes is the octahedron boundary") {
  auto r = rain_complex({2, 2, 2});
  CHECK(r.vertex_count() == 6);
  CHECK(r.faces(1).size() == 12);
  CHECK(r.faces(2).size() == 8);
  CHECK(betti_gf2(r) == BettiVector{0, 0, 1});
}

TEST_CASE("rain complex of two singleton classes is one edge") {
  auto r = rain_complex({1, 1});
  CHECK(r.faces(0).size() == 2);
  CHECK(r.faces(1) == std::vector<Face>{{0, 1}});
  CHECK(betti_gf2(r) == BettiVector{0, 0});
}

TEST_CASE("rain complexes concentrate homology in the top dimension") {
  std::vector<std::vector<std::size_t>> shapes = {
      {2, 2}, {3, 4}, {4, 4}, {2, 2, 2}, {2, 3, 4}, {3, 3, 3}, {2, 2, 2, 2}};
  for (const auto& n : shapes) {
    BettiVector b = betti_gf2(rain_complex(n));
    std::size_t top = 1;
    for (std::size_t ni : n) top *= ni - 1;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) CHECK(b[k] == 0);
    CHECK(b.back() == top);
  }
}

TEST_CASE("avoiding complex of the extremal cross configuration") {
  auto av = avoiding_complex(extremal_config({2, 2, 2}));
  // octahedron boundary minus the two hitting triangles
  CHECK(av.faces(0).size() == 6);
  CHECK(av.faces(1).size() == 12);
  CHECK(av.faces(2).size() == 6);
  CHECK_FALSE(av.has_face({0, 2, 4}));  // all special points
  CHECK_FALSE(av.has_face({1, 3, 5}));  // all negated points
  CHECK(betti_gf2(av) == BettiVector{0, 1, 0});
}

TEST_CASE("avoiding complex on a line keeps the one-sided pairs") {
  auto av = avoiding_complex(line_config({{-1, 1}, {-2, 3}}));
  CHECK(av.faces(1) == std::vector<Face>{{0, 2}, {1, 3}});
  CHECK(betti_gf2(av) == BettiVector{1, 0});
}

TEST_CASE("a class point sitting at the origin is not an avoiding vertex") {
  auto av = avoiding_complex(line_config({{0, 1}, {-1, 1}}));
  CHECK_FALSE(av.has_face({0}));
  CHECK(av.has_face({1}));
}

TEST_CASE("betti rejects a face list that is not closed") {
  auto broken = SimplicialComplexGF2::from_faces(3, {{0, 1}});
  CHECK_THROWS_WITH(betti_gf2(broken), "not a simplicial complex");
}

TEST_CASE("triangle boundary is a circle over GF(2)") {
  auto s1 = SimplicialComplexGF2::from_facets(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(betti_gf2(s1) == BettiVector{0, 1});
}

TEST_CASE("a point and a full simplex have trivial reduced homology") {
  auto pt = SimplicialComplexGF2::from_facets(1, {{0}});
  CHECK(betti_gf2(pt) == BettiVector{0});
  auto full = SimplicialComplexGF2::from_facets(4, {{0, 1, 2, 3}});
  CHECK(betti_gf2(full) == BettiVector{0, 0, 0, 0});
}

TEST_CASE("euler identity on the extremal configurations") {
  auto rep = verify_euler_identity(extremal_config({2, 2, 2}));
  CHECK(rep.csd == 2);
  CHECK(rep.betti_dminus1 == 1);
  CHECK(rep.betti_d == 0);
  CHECK(rep.identity_holds);

  auto rep2 = verify_euler_identity(extremal_config({2, 3, 4}));
  CHECK(rep2.csd == 7);
  CHECK(rep2.betti_dminus1 == 1);
  CHECK(rep2.betti_d == 0);
  CHECK(rep2.identity_holds);
}

TEST_CASE("euler identity rejects off-center and degenerate inputs") {
  auto off = line_config({{1, 2}, {-1, 1}});  // first class misses 0
  CHECK_THROWS_WITH(verify_euler_identity(off),
                    "verify_euler_identity: not centered");
  auto degen = line_config({{0, 1, -1}, {-1, 1}});
  CHECK_THROWS_WITH(verify_euler_identity(degen),
                    "verify_euler_identity: not in relative general position");
}

TEST_CASE("euler identity and unit top homology on random instances") {
  std::vector<std::vector<std::size_t>> shapes = {
      {2, 2}, {3, 3}, {2, 2, 2}, {2, 3, 3}};
  for (const auto& n : shapes)
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      auto c = random_centered_rgp(n, seed, 40);
      auto rep = verify_euler_identity(c);
      CHECK(rep.identity_holds);
      CHECK(rep.betti_dminus1 == 1);
    }
}

TEST_CASE("the two extremal hitting triangles bound a chain of six faces") {
  std::vector<std::size_t> n = {2, 2, 2};
  auto av = avoiding_complex(extremal_config(n));
  Face eta1 = {0, 2, 4}, eta2 = {1, 3, 5};
  auto chain = homologous(av, eta1, eta2);
  REQUIRE(chain.has_value());
  CHECK(chain->size() == 6);  // all remaining octahedron triangles
  std::vector<Face> closed = *chain;
  closed.push_back(eta1);
  closed.push_back(eta2);
  CHECK(boundary_support(closed).empty());
}

TEST_CASE("identical simplices are homologous via the empty chain") {
  auto av = avoiding_complex(extremal_config({2, 2, 2}));
  auto chain = homologous(av, {0, 2, 4}, {0, 2, 4});
  REQUIRE(chain.has_value());
  CHECK(chain->empty());
}

TEST_CASE("homologous validates its inputs") {
  auto av = avoiding_complex(extremal_config({2, 2, 2}));
  CHECK_THROWS_WITH(homologous(av, {0, 2}, {1, 3, 5}),
                    "homologous: face has wrong dimension");
  CHECK_THROWS_WITH(homologous(av, {0, 2, 5}, {1, 3, 5}),
                    "homologous: face already in the complex");
  // {0,1} is monochromatic, so its supersets miss the complex
  CHECK_THROWS_WITH(homologous(av, {0, 1, 2}, {1, 3, 5}),
                    "homologous: facet missing from complex");
}

TEST_CASE("hitting simplices are pairwise homologous and generate homology") {
  std::vector<std::vector<std::size_t>> shapes = {{2, 3}, {2, 2, 2}, {3, 3, 3}};
  for (const auto& n : shapes)
    for (std::uint64_t seed = 11; seed <= 13; ++seed) {
      auto c = random_centered_rgp(n, seed, 40);
      auto av = avoiding_complex(c);
      auto rep = hitting_simplices(c);
      REQUIRE(rep.csd >= 1);
      std::vector<Face> etas;
      for (const auto& h : rep.hitting) etas.push_back(simplex_to_face(n, h));

      // every pair of hitting boundaries differs by an avoiding chain
      for (std::size_t i = 1; i < etas.size(); ++i) {
        auto chain = homologous(av, etas[0], etas[i]);
        REQUIRE(chain.has_value());
        std::vector<Face> closed = *chain;
        closed.push_back(etas[0]);
        closed.push_back(etas[i]);
        CHECK(boundary_support(closed).empty());
      }

      // a single hitting boundary is a nontrivial cycle: it spans the
      // one-dimensional top homology of the avoiding complex
      std::size_t d = n.size() - 1;
      const auto& ridges = av.faces(d - 1);
      std::vector<bool> rhs(ridges.size(), false);
      for (const Face& sub : boundary_support({etas[0]}))
        rhs[detail::face_index(ridges, sub)] = true;
      CHECK_FALSE(detail::boundary_matrix(av, d).solve(rhs).has_value());
    }
}

TEST_CASE("extremal collapse for one-dimensional pairs ends in two points") {
  auto steps = verify_extremal_collapse({2, 2});
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].free_face == Face{1});
  CHECK(steps[0].top_face == Face{1, 2});
  CHECK(steps[1].free_face == Face{3});
  CHECK(steps[1].top_face == Face{0, 3});
}

TEST_CASE("extremal collapse of the octahedral instance") {
  auto steps = verify_extremal_collapse({2, 2, 2});
  REQUIRE(steps.size() == 6);
  // first round matches non-special edges with their one-special triangle
  CHECK(steps[0].free_face == Face{1, 3});
  CHECK(steps[0].top_face == Face{1, 3, 4});
  CHECK(steps[2].free_face == Face{3, 5});
  CHECK(steps[2].top_face == Face{0, 3, 5});
  // second round retires each non-special vertex with its special cone
  CHECK(steps[3].free_face == Face{1});
  CHECK(steps[3].top_face == Face{1, 2, 4});
}

TEST_CASE("extremal collapse handles larger classes and dimensions") {
  CHECK(verify_extremal_collapse({3, 3, 3}).size() == 18);
  CHECK(verify_extremal_collapse({2, 3, 4}).size() == 17);
  CHECK(verify_extremal_collapse({2, 2, 2, 2}).size() == 14);
  auto residual = SimplicialComplexGF2::from_facets(
      9, {{0, 3}, {0, 6}, {3, 6}});  // special boundary for sizes (3,3,3)
  CHECK(betti_gf2(residual) == BettiVector{0, 1});
}

TEST_CASE("collapse intervals are disjoint and exhaust the difference") {
  std::vector<std::size_t> n = {2, 3, 3};
  auto steps = verify_extremal_collapse(n);
  std::set<Face> removed;
  for (const auto& s : steps) {
    // expand the interval between free face and top face
    Face extra;
    for (int v : s.top_face)
      if (!std::binary_search(s.free_face.begin(), s.free_face.end(), v))
        extra.push_back(v);
    for (std::size_t mask = 0; mask < (std::size_t(1) << extra.size());
         ++mask) {
      Face g = s.free_face;
      for (std::size_t i = 0; i < extra.size(); ++i)
        if (mask >> i & 1) g.push_back(extra[i]);
      std::sort(g.begin(), g.end());
      CHECK(removed.insert(g).second);
    }
  }
  auto av = avoiding_complex(extremal_config(n));
  std::size_t special_boundary = (std::size_t(1) << n.size()) - 2;
  CHECK(removed.size() == av.face_count() - special_boundary);
}

TEST_CASE("greedy collapse shrinks a full simplex to a point") {
  auto full = SimplicialComplexGF2::from_facets(4, {{0, 1, 2, 3}});
  auto res = greedy_collapse(full, 3);
  CHECK(res.face_count() == 1);
  CHECK(res.top_dim() == 0);
}

TEST_CASE("greedy collapse leaves a triangle boundary alone") {
  auto s1 = SimplicialComplexGF2::from_facets(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(greedy_collapse(s1, 1) == s1);
}

TEST_CASE("greedy collapse respects the dimension cap") {
  auto full = SimplicialComplexGF2::from_facets(3, {{0, 1, 2}});
  CHECK(greedy_collapse(full, 0) == full);
  CHECK(greedy_collapse(full, 1).face_count() == 1);
}

TEST_CASE("greedy collapse preserves the circle in random avoiding complexes") {
  for (std::uint64_t seed = 21; seed <= 25; ++seed) {
    auto c = random_centered_rgp({2, 2, 2}, seed, 40);
    auto av = avoiding_complex(c);
    auto res = greedy_collapse(av, 2);
    BettiVector before = betti_gf2(av), after = betti_gf2(res);
    REQUIRE(after.size() >= 2);
    CHECK(after[1] == 1);
    CHECK(detail::same_betti(before, after));
    CHECK(res.face_count() <= av.face_count());
  }
}

#include <gtest/gtest.h>

#include "support.hpp"

using namespace cuspforge;
using namespace testkit;

namespace {

// Top simplices of K lying inside each cross-polytope facet of G, counted by
// vertex-set containment rather than through the subdivision routine.
std::vector<std::size_t> simplices_per_cross_facet(const GossetPolytope& g, const SimplicialComplex& k) {
  const auto vs = vertex_sets(g.lattice);
  const std::size_t fb = g.lattice.rank_range(g.n - 1).first;
  std::vector<std::size_t> out;
  for (std::uint32_t f = 0; f < g.lattice.facet_count(); ++f) {
    if (g.facet_kinds[f] != FacetKind::cross) continue;
    const auto& v = vs[fb + f];
    std::size_t c = 0;
    for (const auto& s : k.facets())
      c += std::includes(v.begin(), v.end(), s.begin(), s.end()) && s.size() == std::size_t(g.n);
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(DehnFill, AllEightChoicesOfP3AreSimple) {
  auto p = ideal_dual(gosset(3));
  auto choices = all_filling_choices(p);
  ASSERT_EQ(choices.size(), 8u);
  std::size_t cubes = 0;
  const auto cube = dualize(cube_polytope(3));
  for (const auto& c : choices) {
    auto f = dehn_fill(p, c);
    EXPECT_TRUE(is_simple(f.lattice));
    EXPECT_EQ(f.lattice.facet_count(), 6u);
    EXPECT_TRUE(satisfies_euler_relation(f.lattice));
    EXPECT_TRUE(is_lattice(f.lattice));
    cubes += isomorphic(dualize(f.lattice), cube).has_value();
  }
  EXPECT_GE(cubes, 1u);
}

TEST(DehnFill, CubeChoiceHasCubeFVector) {
  auto f = cube_filling(ideal_dual(gosset(3)));
  EXPECT_EQ(f.lattice.f_vector(), (std::vector<std::size_t>{8, 12, 6}));
}

TEST(DehnFill, NewFacesReplaceIdealVertices) {
  for (int n = 3; n <= 4; ++n) {
    auto p = ideal_dual(gosset(n));
    auto choices = all_filling_choices(p);
    const auto& c = choices[uniform(0, choices.size() - 1)];
    auto f = dehn_fill(p, c);
    ASSERT_EQ(f.filling_faces.size(), p.ideal_vertices.size());
    std::size_t marked = 0;
    for (const auto& face : f.lattice.faces()) marked += face.mark == FaceMark::filling;
    EXPECT_EQ(marked, p.ideal_vertices.size());
    for (std::size_t k = 0; k < f.filling_faces.size(); ++k) {
      const auto& face = f.lattice.faces()[f.filling_faces[k]];
      EXPECT_EQ(face.rank, n - 2);
      EXPECT_EQ(face.mark, FaceMark::filling);
      EXPECT_EQ(face.facets, (FacetSet{f.filling_pairs[k].first, f.filling_pairs[k].second}));
    }
    // Vertices: real ones survive, each cube adds 2^{n-2}.
    EXPECT_EQ(f.lattice.count(0), p.real_vertices().size() + p.ideal_vertices.size() * (std::size_t(1) << (n - 2)));
  }
}

TEST(DehnFill, BadChoicesRejected) {
  auto p = ideal_dual(gosset(3));
  EXPECT_THROW(dehn_fill(p, FillingChoice{{0, 0}}), ValidationError);
  EXPECT_THROW(dehn_fill(p, FillingChoice{{0, 2, 0}}), ValidationError);
}

TEST(Simplicity, CubeAndBipyramid) {
  EXPECT_TRUE(is_simple(cube_polytope(3)));
  EXPECT_FALSE(is_simple(ideal_dual(gosset(3)).lattice));
}

TEST(Subdivision, CrossFacetCounts) {
  // Square -> 2 triangles, octahedron -> 4, 16-cell -> 8.
  for (int n = 3; n <= 5; ++n) {
    auto g = gosset(n);
    auto k = subdivide_cross_facets(g, auto_diagonals(g));
    for (auto c : simplices_per_cross_facet(g, k)) EXPECT_EQ(c, std::size_t(1) << (n - 2)) << "n=" << n;
    EXPECT_EQ(k.facets().size(), g.count(FacetKind::simplex) + g.count(FacetKind::cross) * (std::size_t(1) << (n - 2)));
    EXPECT_TRUE(is_closed_pseudomanifold(k));
    EXPECT_EQ(k.euler_characteristic(), n % 2 == 1 ? 2 : 0);
  }
}

TEST(Subdivision, BadDiagonalRejected) {
  auto g = gosset(3);
  auto d = auto_diagonals(g);
  for (std::uint32_t f = 0; f < g.lattice.facet_count(); ++f)
    if (g.facet_kinds[f] == FacetKind::cross) d.diagonal[f] = 2;
  EXPECT_THROW(subdivide_cross_facets(g, d), ValidationError);
}

TEST(Duality, ExhaustiveGridForP3) {
  auto g = gosset(3);
  auto p = ideal_dual(g);
  auto choices = all_filling_choices(p);
  for (const auto& a : choices) {
    auto pbar = dehn_fill(p, a).lattice;
    for (const auto& b : choices) {
      auto k = subdivide_cross_facets(g, corresponding_diagonals(g, p, b));
      EXPECT_EQ(duality_check(pbar, k), a == b);
      EXPECT_TRUE(duality_check_up_to_isomorphism(pbar, dualize(pbar)));
    }
  }
}

TEST(Duality, RandomChoicesForP4) {
  auto g = gosset(4);
  auto p = ideal_dual(g);
  auto choices = all_filling_choices(p);
  ASSERT_EQ(choices.size(), 243u);
  for (int trial = 0; trial < 30; ++trial) {
    const auto& a = choices[uniform(0, choices.size() - 1)];
    const auto& b = choices[uniform(0, choices.size() - 1)];
    auto pbar = dehn_fill(p, a);
    EXPECT_TRUE(is_simple(pbar.lattice));
    auto k = subdivide_cross_facets(g, corresponding_diagonals(g, p, b));
    EXPECT_EQ(duality_check(pbar.lattice, k), a == b);
    EXPECT_TRUE(duality_check(pbar.lattice, subdivide_cross_facets(g, corresponding_diagonals(g, p, a))));
  }
}

TEST(Duality, NonSimpleSideFails) {
  auto g = gosset(3);
  auto p = ideal_dual(g);
  EXPECT_FALSE(duality_check(p.lattice, subdivide_cross_facets(g, auto_diagonals(g))));
}

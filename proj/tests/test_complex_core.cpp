#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace cuspforge;
using namespace testkit;

namespace {

// Counts faces by brute force over all vertex subsets.
std::vector<std::size_t> brute_f_vector(const SimplicialComplex& k) {
  std::set<Simplex> faces;
  for (const auto& f : k.facets())
    for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      faces.insert(s);
    }
  std::vector<std::size_t> out;
  for (const auto& s : faces) {
    if (out.size() < s.size()) out.resize(s.size(), 0);
    ++out[s.size() - 1];
  }
  return out;
}

bool is_cycle_graph(const SimplicialComplex& k) {
  if (k.dim() != 1) return false;
  std::map<std::uint32_t, int> degree;
  for (const auto& e : k.faces(1)) {
    ++degree[e[0]];
    ++degree[e[1]];
  }
  for (auto [v, d] : degree)
    if (d != 2) return false;
  return k.faces(0).size() == k.faces(1).size();
}

}  // namespace

TEST(BuildSimplicial, TriangleBoundary) {
  auto k = build_simplicial(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(k.f_vector(), (std::vector<std::size_t>{3, 3}));
  EXPECT_EQ(k.euler_characteristic(), 0);
}

TEST(BuildSimplicial, OctahedronBoundary) {
  auto k = octahedron();
  EXPECT_EQ(k.f_vector(), (std::vector<std::size_t>{6, 12, 8}));
  EXPECT_EQ(k.euler_characteristic(), 2);
}

TEST(BuildSimplicial, RejectsBadInput) {
  EXPECT_THROW(build_simplicial(3, {{0, 3}}), ValidationError);
  EXPECT_THROW(build_simplicial(3, {}), ValidationError);
  EXPECT_THROW(build_simplicial(3, {{0, 1}, {}}), ValidationError);
}

TEST(BuildSimplicial, DropsNonMaximalFacets) {
  auto k = build_simplicial(4, {{0, 1, 2}, {0, 1}, {2, 1, 0}, {3}});
  EXPECT_EQ(k.facets(), (std::vector<Simplex>{{0, 1, 2}, {3}}));
}

TEST(SubdividedGosset, TwoSphereFVector) {
  auto g = gosset(3);
  auto k = subdivide_cross_facets(g, auto_diagonals(g));
  EXPECT_EQ(k.f_vector(), (std::vector<std::size_t>{6, 12, 8}));
  EXPECT_EQ(k.euler_characteristic(), 2);
}

TEST(Links, OctahedronVertexLinkIsSquare) {
  auto k = octahedron();
  for (std::uint32_t v = 0; v < 6; ++v) {
    auto l = link_of_vertex(k, v);
    EXPECT_TRUE(is_cycle_graph(l.complex));
    EXPECT_EQ(l.complex.faces(0).size(), 4u);
    // The antipode is not in the link.
    EXPECT_EQ(std::count(l.labels.begin(), l.labels.end(), v ^ 1u), 0);
  }
}

TEST(Links, MomentAngleVertexLinksAreK) {
  for (const auto& k : {simplex_boundary(1), octahedron()}) {
    auto z = real_moment_angle(k);
    for (std::size_t i = 0; i < z.vertex_count(); ++i) {
      auto l = link_of_vertex(z, z.cells()[i].signs);
      EXPECT_TRUE(isomorphic(l, k).has_value());
    }
  }
}

TEST(Links, MissingVertexRejected) {
  auto k = build_simplicial(4, {{0, 1}});
  EXPECT_THROW(link_of_vertex(k, 3), ValidationError);
}

TEST(Isomorphism, RelabelledTetrahedronBoundary) {
  auto k = simplex_boundary(2);
  for (int trial = 0; trial < 24; ++trial) {
    auto p = random_permutation(4);
    auto map = isomorphic(k, relabel(k, p));
    ASSERT_TRUE(map.has_value());
    EXPECT_EQ(relabel(k, *map), relabel(k, p));
  }
}

TEST(Isomorphism, CycleAgainstPath) {
  auto cycle = build_simplicial(3, {{0, 1}, {1, 2}, {0, 2}});
  auto path = build_simplicial(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(isomorphic(cycle, path).has_value());
}

TEST(Isomorphism, SameFVectorDifferentComplexes) {
  // Two triangles on an edge with a pendant edge, versus two triangles on a vertex.
  auto a = build_simplicial(5, {{0, 1, 2}, {1, 2, 3}, {3, 4}});
  auto b = build_simplicial(5, {{0, 1, 2}, {2, 3, 4}});
  EXPECT_EQ(a.f_vector(), b.f_vector());
  EXPECT_FALSE(isomorphic(a, b).has_value());
}

TEST(Dualize, CubeGivesOctahedron) {
  auto k = dualize(cube_polytope(3));
  EXPECT_EQ(k.f_vector(), (std::vector<std::size_t>{6, 12, 8}));
  EXPECT_TRUE(isomorphic(k, octahedron()).has_value());
}

TEST(Dualize, PrismGivesBipyramid) {
  auto k = dualize(gosset(3).lattice);
  EXPECT_EQ(k.vertex_count(), 5u);
  EXPECT_EQ(k.faces(2).size(), 6u);
  EXPECT_EQ(k.f_vector(), (std::vector<std::size_t>{5, 9, 6}));
}

TEST(Dualize, NonSimpleRejected) {
  EXPECT_THROW(dualize(ideal_dual(gosset(3)).lattice), ValidationError);
}

TEST(Dualize, RoundTripThroughPolytope) {
  for (const auto& k : {simplex_boundary(1), simplex_boundary(2), simplex_boundary(3), octahedron(), cross_boundary(4)}) {
    auto p = dualize_complex(k);
    EXPECT_TRUE(is_simple(p));
    EXPECT_TRUE(satisfies_euler_relation(p));
    EXPECT_EQ(dualize(p), k);
  }
}

TEST(Dualize, ComplexWithBoundaryRejected) {
  EXPECT_THROW(dualize_complex(build_simplicial(3, {{0, 1}, {1, 2}})), ValidationError);
}

// Property tests on random complexes.

TEST(SimplicialProperties, ClosedUnderFaces) {
  for (int trial = 0; trial < 200; ++trial) {
    auto k = random_complex(static_cast<std::uint32_t>(uniform(1, 8)), 6, 5);
    for (int d = 1; d <= k.dim(); ++d)
      for (const auto& s : k.faces(d))
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex t = s;
          t.erase(t.begin() + static_cast<long>(i));
          ASSERT_TRUE(k.contains(t));
        }
  }
}

TEST(SimplicialProperties, FVectorAndEulerMatchBruteForce) {
  for (int trial = 0; trial < 200; ++trial) {
    auto k = random_complex(static_cast<std::uint32_t>(uniform(1, 9)), 7, 5);
    auto f = brute_f_vector(k);
    ASSERT_EQ(k.f_vector(), f);
    long long chi = 0;
    for (std::size_t d = 0; d < f.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long long>(f[d]);
    ASSERT_EQ(k.euler_characteristic(), chi);
  }
}

TEST(SimplicialProperties, IsomorphismReflexiveAndSymmetric) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::uint32_t>(uniform(2, 8));
    auto a = random_complex(n, 5, 4);
    auto b = relabel(a, random_permutation(n));
    ASSERT_TRUE(isomorphic(a, a).has_value());
    auto ab = isomorphic(a, b);
    auto ba = isomorphic(b, a);
    ASSERT_TRUE(ab.has_value());
    ASSERT_TRUE(ba.has_value());
    ASSERT_EQ(relabel(a, *ab), b);
    // An unrelated complex is isomorphic in both directions or in neither.
    auto c = random_complex(n, 5, 4);
    ASSERT_EQ(isomorphic(a, c).has_value(), isomorphic(c, a).has_value());
  }
}

TEST(SimplicialProperties, LinkOfRelabelledVertex) {
  for (int trial = 0; trial < 50; ++trial) {
    auto k = octahedron();
    auto p = random_permutation(6);
    auto q = relabel(k, p);
    const auto v = static_cast<std::uint32_t>(uniform(0, 5));
    EXPECT_TRUE(isomorphic(link_of_vertex(k, v).complex, link_of_vertex(q, p[v]).complex).has_value());
  }
}

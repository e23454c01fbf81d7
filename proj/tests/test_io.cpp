#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "support.hpp"

using namespace cuspforge;
using namespace testkit;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "cuspforge_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(JsonRoundTrip, Simplicial) {
  for (int trial = 0; trial < 30; ++trial) {
    auto k = random_complex(static_cast<std::uint32_t>(uniform(1, 8)), 5, 4);
    EXPECT_EQ(simplicial_from_json(Json::parse(to_json(k).dump())), k);
  }
}

TEST(JsonRoundTrip, FaceLatticeKeepsMarks) {
  auto p = ideal_dual(gosset(3));
  auto pbar = dehn_fill(p, all_filling_choices(p)[3]);
  for (const auto& lat : {gosset(4).lattice, p.lattice, pbar.lattice}) {
    auto back = face_lattice_from_json(Json::parse(to_json(lat).dump()));
    EXPECT_EQ(back, lat);
  }
  auto filled = filled_polytope(face_lattice_from_json(to_json(pbar.lattice)));
  EXPECT_EQ(filled.filling_faces, pbar.filling_faces);
  EXPECT_EQ(filled.filling_pairs, pbar.filling_pairs);
}

TEST(JsonRoundTrip, Cubical) {
  for (const auto& z : {torus2(), klein_bottle(), torus3()}) {
    auto back = cubical_from_json(Json::parse(to_json(z).dump()));
    EXPECT_EQ(back.cells(), z.cells());
    EXPECT_EQ(back.quotient_generators(), z.quotient_generators());
  }
  EXPECT_EQ(cell_to_string({0b0101, 0b1000}, 4), "*-*+");
  EXPECT_EQ(cell_from_string("*-*+"), (CubeCell{0b0101, 0b1000}));
}

TEST(JsonRoundTrip, Reports) {
  auto h = homology(chain_complex_of(klein_bottle(), Coefficients::integers));
  EXPECT_EQ(homology_from_json(Json::parse(to_json(h).dump())), h);

  CuspCensus c;
  c.cusps.push_back({7, 14, BigInt(1) << 226, "T^7"});
  c.total = BigInt(2160) << 226;
  auto j = to_json(c);
  EXPECT_EQ(j["magnitude"], "2.3e71");
  EXPECT_EQ(j["total"], "232933939204181527825923010351849609020224927810750546236735192553226240");
  auto back = census_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.total, c.total);
  EXPECT_EQ(back.cusps[0].components, c.cusps[0].components);
  EXPECT_EQ(back.cusps[0].cross_section, "T^7");

  SpinReport r{true, BigInt(1) << 55, {{0, CuspLabel::bounding, "filling"}, {1, CuspLabel::lie, "summand"}},
               DiracLabel::real};
  auto rb = spin_report_from_json(Json::parse(to_json(r).dump()));
  EXPECT_EQ(rb.structure_count, r.structure_count);
  EXPECT_EQ(rb.cusps.size(), 2u);
  EXPECT_EQ(rb.cusps[1].label, CuspLabel::lie);
  EXPECT_EQ(rb.dirac, DiracLabel::real);
}

TEST(Rzk1, StreamRoundTrip) {
  for (const auto& z : {torus3(), klein_bottle()}) {
    std::stringstream s;
    write_rzk1(s, z);
    auto back = read_rzk1(s);
    EXPECT_EQ(back.cells(), z.cells());
    EXPECT_EQ(back.quotient_generators(), z.quotient_generators());
  }
}

TEST(Rzk1, HeaderLayout) {
  std::stringstream s;
  write_rzk1(s, torus2());
  const std::string bytes = s.str();
  ASSERT_GE(bytes.size(), 20u);
  EXPECT_EQ(bytes.substr(0, 4), "RZK1");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 4u);  // ambient rank, little-endian
  EXPECT_EQ(bytes.size(), 4 + 4 + 4 + 8 + torus2().cell_count() * 12);
}

TEST(Rzk1, BadStreams) {
  std::stringstream bad("RZK2....");
  EXPECT_THROW(read_rzk1(bad), ValidationError);
  std::stringstream s;
  write_rzk1(s, torus2());
  std::string bytes = s.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 5));
  EXPECT_THROW(read_rzk1(truncated), ValidationError);
}

TEST(Files, WriteAndSniff) {
  auto z = torus3();
  write_cubical(scratch("t3.rzk"), z);
  write_cubical(scratch("t3.json"), z);
  EXPECT_EQ(read_cubical(scratch("t3.rzk")).cells(), z.cells());
  EXPECT_EQ(read_cubical(scratch("t3.json")).cells(), z.cells());
}

TEST(Files, DataDirectoryFallback) {
  write_json(scratch("k.json"), to_json(octahedron()));
  ::setenv("CUSPFORGE_DATA", scratch("").c_str(), 1);
  EXPECT_EQ(simplicial_from_json(read_json("k.json")), octahedron());
  ::unsetenv("CUSPFORGE_DATA");
  EXPECT_THROW(read_json("definitely-missing.json"), ValidationError);
}

TEST(BadInput, Rejected) {
  EXPECT_THROW(simplicial_from_json(Json{{"type", "cubical"}}), ValidationError);
  EXPECT_THROW(simplicial_from_json(Json{{"type", "simplicial"}, {"vertices", 3}}), ValidationError);
  EXPECT_THROW(simplicial_from_json(Json{{"type", "simplicial"}, {"vertices", "x"}, {"facets", Json::array()}}),
               ValidationError);
  EXPECT_THROW(cell_from_string("*x-"), ValidationError);
  EXPECT_THROW(cubical_from_json(Json{{"type", "cubical"}, {"ambient", 3}, {"cells", {"*-"}}}), ValidationError);
  // A square edge without its endpoints is not closed.
  EXPECT_THROW(cubical_from_json(Json{{"type", "cubical"}, {"ambient", 2}, {"cells", {"*-"}}}), ValidationError);
  EXPECT_THROW(face_lattice_from_json(Json{{"type", "face_lattice"}, {"rank", 2}, {"facets", 2},
                                           {"faces", {{{"rank", 1}, {"facet_set", {0}}, {"mark", "weird"}}}}}),
               ValidationError);
  EXPECT_THROW(homology_from_json(Json{{"coeff", "q"}, {"betti", {1}}, {"torsion", Json::array()}}), ValidationError);
  EXPECT_THROW(spin_report_from_json(Json{{"spinnable", true}, {"structure_count", "12x"}, {"cusps", Json::array()},
                                          {"dirac", "Real"}}),
               ValidationError);
}

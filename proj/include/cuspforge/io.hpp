#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cuspforge/algebra/homology.hpp"
#include "cuspforge/characteristic.hpp"
#include "cuspforge/cubical.hpp"
#include "cuspforge/error.hpp"
#include "cuspforge/face_lattice.hpp"
#include "cuspforge/filling.hpp"
#include "cuspforge/moment_angle.hpp"
#include "cuspforge/polytope_zoo.hpp"
#include "cuspforge/simplicial.hpp"

namespace cuspforge {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T field_as(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("field \"") + key + "\": " + e.what());
  }
}

inline void expect_type(const Json& j, const char* type) {
  const auto t = field_as<std::string>(j, "type");
  if (t != type) throw ValidationError("expected a " + std::string(type) + " document, got \"" + t + "\"");
}

inline Json big(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline BigInt big_from(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("expected an integer");
}

}  // namespace detail

// Simplicial complexes.

inline Json to_json(const SimplicialComplex& k) {
  return Json{{"type", "simplicial"}, {"vertices", k.vertex_count()}, {"facets", k.facets()}};
}

inline SimplicialComplex simplicial_from_json(const Json& j) {
  detail::expect_type(j, "simplicial");
  return SimplicialComplex::from_facets(detail::field_as<std::uint32_t>(j, "vertices"),
                                        detail::field_as<std::vector<Simplex>>(j, "facets"));
}

// Face lattices.

inline std::string to_string(FaceMark m) {
  switch (m) {
    case FaceMark::ideal: return "ideal";
    case FaceMark::filling: return "filling";
    default: return "real";
  }
}

inline FaceMark face_mark_from_string(const std::string& s) {
  if (s == "real") return FaceMark::real;
  if (s == "ideal") return FaceMark::ideal;
  if (s == "filling") return FaceMark::filling;
  throw ValidationError("unknown face mark \"" + s + "\"");
}

inline Json to_json(const FaceLattice& p) {
  Json faces = Json::array();
  for (const auto& f : p.faces())
    faces.push_back({{"rank", f.rank}, {"facet_set", f.facets}, {"mark", to_string(f.mark)}});
  return Json{{"type", "face_lattice"}, {"rank", p.rank()}, {"facets", p.facet_count()}, {"faces", std::move(faces)}};
}

inline FaceLattice face_lattice_from_json(const Json& j) {
  detail::expect_type(j, "face_lattice");
  std::vector<Face> faces;
  const auto& arr = detail::field(j, "faces");
  if (!arr.is_array()) throw ValidationError("\"faces\" must be an array");
  for (const auto& f : arr) {
    Face face;
    face.rank = detail::field_as<int>(f, "rank");
    face.facets = detail::field_as<FacetSet>(f, "facet_set");
    face.mark = f.contains("mark") ? face_mark_from_string(detail::field_as<std::string>(f, "mark")) : FaceMark::real;
    faces.push_back(std::move(face));
  }
  return FaceLattice(detail::field_as<int>(j, "rank"), detail::field_as<std::uint32_t>(j, "facets"), std::move(faces));
}

/// A filled polytope is a face lattice whose filling faces are marked; they
/// are taken in lattice order.
inline FilledPolytope filled_polytope(FaceLattice lattice) {
  FilledPolytope out;
  for (std::size_t i = 0; i < lattice.faces().size(); ++i) {
    const auto& f = lattice.faces()[i];
    if (f.mark != FaceMark::filling) continue;
    require(f.facets.size() == 2, "a filling face must lie in exactly two facets");
    out.filling_faces.push_back(i);
    out.filling_pairs.emplace_back(f.facets[0], f.facets[1]);
  }
  out.lattice = std::move(lattice);
  return out;
}

// Cube complexes. Cells are strings over {*, +, -}, one character per
// coordinate: '*' in the support, otherwise the fixed sign.

inline std::string cell_to_string(const CubeCell& c, unsigned m) {
  std::string s(m, '-');
  for (unsigned i = 0; i < m; ++i) {
    if (c.support >> i & 1) s[i] = '*';
    else if (c.signs >> i & 1) s[i] = '+';
  }
  return s;
}

inline CubeCell cell_from_string(const std::string& s) {
  require(s.size() <= 64, "cell string longer than 64 coordinates");
  CubeCell c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '*') c.support |= 1ULL << i;
    else if (s[i] == '+') c.signs |= 1ULL << i;
    else if (s[i] != '-') throw ValidationError("bad character in cell string \"" + s + "\"");
  }
  return c;
}

inline Json to_json(const CubicalComplex& z) {
  Json cells = Json::array();
  for (const auto& c : z.cells()) cells.push_back(cell_to_string(c, z.ambient_rank()));
  return Json{{"type", "cubical"},
              {"ambient", z.ambient_rank()},
              {"quotient", z.quotient_generators()},
              {"cells", std::move(cells)}};
}

inline CubicalComplex cubical_from_json(const Json& j) {
  detail::expect_type(j, "cubical");
  const auto m = detail::field_as<unsigned>(j, "ambient");
  std::vector<CubeCell> cells;
  for (const auto& s : detail::field_as<std::vector<std::string>>(j, "cells")) {
    if (s.size() != m) throw ValidationError("cell \"" + s + "\" does not have " + std::to_string(m) + " coordinates");
    cells.push_back(cell_from_string(s));
  }
  auto quotient = j.contains("quotient") ? detail::field_as<std::vector<std::uint64_t>>(j, "quotient")
                                         : std::vector<std::uint64_t>{};
  return CubicalComplex::from_cells(m, std::move(cells), std::move(quotient));
}

// RZK1 binary cell table, little-endian: magic "RZK1", u32 ambient rank,
// u32 quotient generator count, u64 per generator, u64 cell count, then per
// cell u32 support and u64 signs.

namespace detail {

template <class T>
void put_le(std::ostream& out, T v) {
  char b[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
  out.write(b, sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char b[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(b), sizeof(T))) throw ValidationError("truncated RZK1 stream");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace detail

inline void write_rzk1(std::ostream& out, const CubicalComplex& z) {
  require(z.ambient_rank() <= 32, "RZK1 stores supports in 32 bits");
  out.write("RZK1", 4);
  detail::put_le<std::uint32_t>(out, z.ambient_rank());
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(z.quotient_generators().size()));
  for (auto g : z.quotient_generators()) detail::put_le<std::uint64_t>(out, g);
  detail::put_le<std::uint64_t>(out, z.cells().size());
  for (const auto& c : z.cells()) {
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(c.support));
    detail::put_le<std::uint64_t>(out, c.signs);
  }
}

inline CubicalComplex read_rzk1(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != "RZK1") throw ValidationError("missing RZK1 header");
  const auto m = detail::get_le<std::uint32_t>(in);
  require(m <= 32, "RZK1 ambient rank above 32");
  std::vector<std::uint64_t> quotient(detail::get_le<std::uint32_t>(in));
  for (auto& g : quotient) g = detail::get_le<std::uint64_t>(in);
  const auto count = detail::get_le<std::uint64_t>(in);
  if (count > cell_budget()) throw BudgetExceeded("RZK1 table has " + std::to_string(count) + " cells");
  std::vector<CubeCell> cells(count);
  for (auto& c : cells) {
    c.support = detail::get_le<std::uint32_t>(in);
    c.signs = detail::get_le<std::uint64_t>(in);
  }
  return CubicalComplex::from_cells(m, std::move(cells), std::move(quotient));
}

// Reports.

inline Json to_json(const HomologyReport& h) {
  Json torsion = Json::array();
  for (const auto& t : h.torsion) {
    Json row = Json::array();
    for (const auto& x : t) row.push_back(detail::big(x));
    torsion.push_back(std::move(row));
  }
  return Json{{"coeff", to_string(h.coeff)}, {"betti", h.betti}, {"torsion", std::move(torsion)}};
}

inline HomologyReport homology_from_json(const Json& j) {
  HomologyReport h;
  const auto c = detail::field_as<std::string>(j, "coeff");
  if (c != "z" && c != "z2") throw ValidationError("unknown coefficients \"" + c + "\"");
  h.coeff = c == "z" ? Coefficients::integers : Coefficients::mod2;
  h.betti = detail::field_as<std::vector<std::size_t>>(j, "betti");
  for (const auto& row : detail::field(j, "torsion")) {
    std::vector<BigInt> t;
    for (const auto& x : row) t.push_back(detail::big_from(x));
    h.torsion.push_back(std::move(t));
  }
  return h;
}

inline Json to_json(const CuspCensus& c) {
  Json cusps = Json::array();
  for (const auto& r : c.cusps)
    cusps.push_back({{"ideal_vertex", r.ideal_vertex},
                     {"incident_facets", r.incident_facets},
                     {"components", r.components.str()},
                     {"cross_section", r.cross_section}});
  return Json{{"cusps", std::move(cusps)}, {"total", c.total.str()}, {"magnitude", magnitude(c.total)}};
}

inline CuspCensus census_from_json(const Json& j) {
  CuspCensus c;
  for (const auto& r : detail::field(j, "cusps"))
    c.cusps.push_back({detail::field_as<std::size_t>(r, "ideal_vertex"), detail::field_as<std::uint32_t>(r, "incident_facets"),
                       detail::big_from(detail::field(r, "components")),
                       detail::field_as<std::string>(r, "cross_section")});
  c.total = detail::big_from(detail::field(j, "total"));
  return c;
}

inline CuspLabel cusp_label_from_string(const std::string& s) {
  if (s == "Bounding") return CuspLabel::bounding;
  if (s == "Lie") return CuspLabel::lie;
  if (s == "Undetermined") return CuspLabel::undetermined;
  throw ValidationError("unknown cusp label \"" + s + "\"");
}

inline DiracLabel dirac_label_from_string(const std::string& s) {
  if (s == "Real") return DiracLabel::real;
  if (s == "Discrete") return DiracLabel::discrete;
  if (s == "Unknown") return DiracLabel::unknown;
  throw ValidationError("unknown Dirac label \"" + s + "\"");
}

inline Json to_json(const SpinReport& r) {
  Json cusps = Json::array();
  for (const auto& c : r.cusps)
    cusps.push_back({{"id", c.id}, {"label", to_string(c.label)}, {"provenance", c.provenance}});
  return Json{{"spinnable", r.spinnable},
              {"structure_count", r.structure_count.str()},
              {"cusps", std::move(cusps)},
              {"dirac", to_string(r.dirac)}};
}

inline SpinReport spin_report_from_json(const Json& j) {
  SpinReport r;
  r.spinnable = detail::field_as<bool>(j, "spinnable");
  r.structure_count = detail::big_from(detail::field(j, "structure_count"));
  for (const auto& c : detail::field(j, "cusps"))
    r.cusps.push_back({detail::field_as<std::size_t>(c, "id"), cusp_label_from_string(detail::field_as<std::string>(c, "label")),
                       detail::field_as<std::string>(c, "provenance")});
  r.dirac = dirac_label_from_string(detail::field_as<std::string>(j, "dirac"));
  return r;
}

// Files.

/// `path` as given if it exists, otherwise looked up under CUSPFORGE_DATA.
inline std::filesystem::path resolve_input(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) return path;
  if (const char* data = std::getenv("CUSPFORGE_DATA"); data && !path.is_absolute()) {
    auto alt = std::filesystem::path(data) / path;
    if (std::filesystem::exists(alt)) return alt;
  }
  throw ValidationError("no such file: " + path.string());
}

inline Json read_json(const std::filesystem::path& path) {
  std::ifstream in(resolve_input(path));
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

/// Any cube complex file: RZK1 by magic, JSON otherwise.
inline CubicalComplex read_cubical(const std::filesystem::path& path) {
  std::ifstream in(resolve_input(path), std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  if (std::string(magic, 4) == "RZK1") return read_rzk1(in);
  try {
    return cubical_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline void write_cubical(const std::filesystem::path& path, const CubicalComplex& z) {
  if (path.extension() == ".rzk") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    write_rzk1(out, z);
  } else {
    write_json(path, to_json(z));
  }
}

}  // namespace cuspforge

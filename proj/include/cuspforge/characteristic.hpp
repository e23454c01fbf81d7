#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuspforge/algebra/chain_complex.hpp"
#include "cuspforge/algebra/cup_product.hpp"
#include "cuspforge/algebra/gf2.hpp"
#include "cuspforge/algebra/homology.hpp"
#include "cuspforge/algebra/int_matrix.hpp"
#include "cuspforge/cubical.hpp"
#include "cuspforge/error.hpp"

namespace cuspforge {

enum class Verdict { no, yes, undetermined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "no";
    case Verdict::yes: return "yes";
    default: return "undetermined";
  }
}

/// Every cell lies in a top cell and every codimension-one cell is hit
/// exactly twice by top-cell faces (counted with multiplicity).
inline bool is_closed_pseudomanifold(const CubicalComplex& z) {
  const int n = z.dim();
  if (n < 1) return false;
  std::vector<char> covered(z.cells().size(), 0);
  std::vector<int> hits(z.count(n - 1), 0);
  const std::size_t low = z.dim_range(n - 1).first;
  for (int d = n; d >= 1; --d) {
    auto [b, e] = z.dim_range(d);
    for (std::size_t i = b; i < e; ++i) {
      if (d < n && !covered[i]) return false;
      for (unsigned j = 0; j < static_cast<unsigned>(d); ++j)
        for (bool plus : {false, true}) {
          long f = z.find(z.face(z.cells()[i], j, plus).first);
          require(f >= 0, "cube complex is not closed under faces");
          covered[f] = 1;
          if (d == n) ++hits[static_cast<std::size_t>(f) - low];
        }
    }
  }
  auto [b0, e0] = z.dim_range(0);
  for (std::size_t i = b0; i < e0; ++i)
    if (!covered[i]) return false;
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 2; });
}

/// w1 = 0: the top integral homology is Z.
inline bool orientability(const CubicalComplex& z) {
  if (!is_closed_pseudomanifold(z)) throw ValidationError("orientability needs a closed pure complex");
  const int n = z.dim();
  auto c = chain_complex_of(z, Coefficients::integers);
  const std::size_t r = invariant_factors(c.boundary[n]).size();
  return c.rank(n) - r == 1;
}

/// w2 = 0 together with the evidence used to decide it.
struct SpinObstruction {
  Verdict vanishes = Verdict::undetermined;
  std::string provenance;
  /// Dimension 4: the Z/2 intersection form on H^2 and the Wu class
  /// coordinates v with Q v = diag Q.
  std::optional<GF2Matrix> intersection_form;
  std::optional<BitVector> characteristic;
};

/// The Z/2 intersection form on H^2 of a closed 4-dimensional cube complex.
inline GF2Matrix intersection_form_mod2(const CubicalComplex& z) {
  require(z.dim() == 4, "intersection form on H^2 needs a 4-dimensional complex");
  const auto basis = cohomology_basis_mod2(chain_complex_of(z, Coefficients::mod2), 2);
  return cup_pairing(z, basis, 2, basis, 2);
}

inline SpinObstruction spin_obstruction(const CubicalComplex& z) {
  if (!orientability(z)) throw ValidationError("spin obstruction needs an orientable complex");
  const int n = z.dim();
  SpinObstruction s;
  if (n <= 3) {
    s.vanishes = Verdict::yes;
    s.provenance = n == 3 ? "dimension-forced: orientable 3-manifolds are parallelizable"
                          : "dimension-forced: orientable manifolds of dimension at most 2 are spin";
    return s;
  }
  if (n > 4) {
    s.provenance = "not computed above dimension 4; real moment-angle manifolds over spheres have vanishing "
                   "Stiefel-Whitney classes";
    return s;
  }
  if (!z.is_embedded()) {
    s.provenance = "not computed: cup products need the distinct-colour (embedded) model";
    return s;
  }
  GF2Matrix q = intersection_form_mod2(z);
  if (rank(q) != q.rows()) throw CertificateError("intersection form on H^2 is degenerate");
  BitVector diag(q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i) diag.set(i, q.get(i, i));
  auto v = solve(q, diag);
  if (!v) throw CertificateError("no characteristic vector for the intersection form");
  s.vanishes = diag.any() ? Verdict::no : Verdict::yes;
  s.provenance = diag.any() ? "odd Z/2 intersection form: Wu class v2 = w2 is nonzero"
                            : "even Z/2 intersection form: Wu class v2 = w2 vanishes";
  s.intersection_form = std::move(q);
  s.characteristic = std::move(*v);
  return s;
}

/// Orientability and w2 bundled, as evidence for later certificates.
struct SpinEvidence {
  bool orientable = false;
  SpinObstruction w2;
  bool spinnable() const { return orientable && w2.vanishes == Verdict::yes; }
};

inline SpinEvidence spin_evidence(const CubicalComplex& z) {
  SpinEvidence e;
  e.orientable = orientability(z);
  if (e.orientable) {
    e.w2 = spin_obstruction(z);
  } else {
    e.w2.vanishes = Verdict::no;
    e.w2.provenance = "not orientable";
  }
  return e;
}

/// Spin structures form an affine space over H^1(M; Z/2).
struct SpinStructureSet {
  bool spinnable = false;
  std::size_t h1_rank = 0;
  BigInt count;
  std::string note;
};

inline SpinStructureSet spin_structures(const CubicalComplex& z, const SpinEvidence& e) {
  if (!e.spinnable()) throw CertificateError("spin structures requested on a complex not verified spin");
  SpinStructureSet s;
  s.spinnable = true;
  s.h1_rank = homology(chain_complex_of(z, Coefficients::mod2)).betti.at(1);
  s.count = BigInt(1) << s.h1_rank;
  s.note = "torsor over H^1(M; Z/2) of rank " + std::to_string(s.h1_rank);
  return s;
}

inline SpinStructureSet spin_structures(const CubicalComplex& z) { return spin_structures(z, spin_evidence(z)); }

/// True iff the integer matrix of H1(T) -> H1(M) has a left inverse: full
/// column rank and all invariant factors 1.
inline bool summand_certificate(const IntMatrix& inclusion) {
  if (inclusion.cols() == 0) return true;
  auto f = smith_normal_form(inclusion).invariant_factors();
  return f.size() == inclusion.cols() && std::all_of(f.begin(), f.end(), [](const BigInt& x) { return x == 1; });
}

namespace detail {

inline void require_torus_homology(const FreeHomology& h1, int dim, const char* what) {
  if (dim < 1) throw ValidationError(std::string(what) + ": degenerate subcomplex of dimension " + std::to_string(dim));
  if (!h1.torsion.empty() || h1.rank() != static_cast<std::size_t>(dim))
    throw ValidationError(std::string(what) + ": subcomplex does not have the first homology of a torus");
}

}  // namespace detail

/// Matrix of H1(T; Z) -> H1(M; Z)/torsion in the free bases of free_homology.
inline IntMatrix h1_inclusion_matrix(const CubicalComplex& m, const CubicalComplex& t) {
  auto inc = cell_inclusion(m, t);
  auto ht = free_homology(chain_complex_of(t, Coefficients::integers), 1);
  detail::require_torus_homology(ht, t.dim(), "summand certificate");
  auto hm = free_homology(chain_complex_of(m, Coefficients::integers), 1);
  const std::size_t n1 = m.count(1);
  IntMatrix out(hm.rank(), ht.rank());
  for (std::size_t j = 0; j < ht.rank(); ++j) {
    std::vector<BigInt> pushed(n1, 0);
    for (std::size_t i = 0; i < ht.generators[j].size(); ++i) pushed[inc.index[1][i]] += ht.generators[j][i];
    for (std::size_t r = 0; r < hm.rank(); ++r) {
      BigInt s = 0;
      for (std::size_t i = 0; i < n1; ++i)
        if (pushed[i] != 0) s += hm.coordinates(r, i) * pushed[i];
      out(r, j) = s;
    }
  }
  return out;
}

/// H1(T) is a direct summand of H1(M). Torsion in H1(M) is irrelevant: a left
/// inverse kills it and so factors through the free quotient.
inline bool summand_certificate(const CubicalComplex& m, const CubicalComplex& t) {
  return summand_certificate(h1_inclusion_matrix(m, t));
}

/// H^1(M; Z/2) -> H^1(T; Z/2) is onto, so every spin structure on T, the Lie
/// one included, is the restriction of one on M.
inline bool lie_cusp_certificate(const CubicalComplex& m, const CubicalComplex& t, const SpinEvidence& e) {
  if (!e.spinnable()) throw CertificateError("Lie certificate needs a manifold verified spin");
  if (t.dim() < 1) throw ValidationError("Lie certificate: degenerate subcomplex of dimension " + std::to_string(t.dim()));
  auto map = induced_map_mod2(m, t, 1);
  return rank(map.restriction) == map.restriction.rows();
}

enum class CuspLabel { bounding, lie, undetermined };
enum class DiracLabel { real, discrete, unknown };

inline std::string to_string(CuspLabel l) {
  switch (l) {
    case CuspLabel::bounding: return "Bounding";
    case CuspLabel::lie: return "Lie";
    default: return "Undetermined";
  }
}

inline std::string to_string(DiracLabel l) {
  switch (l) {
    case DiracLabel::real: return "Real";
    case DiracLabel::discrete: return "Discrete";
    default: return "Unknown";
  }
}

struct CuspType {
  std::size_t id = 0;
  CuspLabel label = CuspLabel::undetermined;
  std::string provenance;
};

/// Every cusp of M is Bounding when a spin filling N exists: the structure
/// on N extends over each attached D^2 x T^{n-2}. Checks that M and each
/// cusp torus sit inside N and that N was verified spin.
inline std::vector<CuspType> bounding_filling_certificate(const CubicalComplex& m, const CubicalComplex& n,
                                                          const SpinEvidence& n_spin,
                                                          const std::vector<CubicalComplex>& tori) {
  if (!n_spin.spinnable())
    throw CertificateError("filling is not verified spin (" + n_spin.w2.provenance + ")");
  if (m.dim() != n.dim()) throw ValidationError("filling and cusped manifold differ in dimension");
  cell_inclusion(n, m);
  std::vector<CuspType> out;
  for (std::size_t i = 0; i < tori.size(); ++i) {
    cell_inclusion(m, tori[i]);
    if (tori[i].dim() != m.dim() - 1) throw ValidationError("cusp section of the wrong dimension");
    out.push_back({i, CuspLabel::bounding,
                   "spin filling extends over the solid torus at this cusp (" + n_spin.w2.provenance + ")"});
  }
  return out;
}

inline DiracLabel dirac_label(const std::vector<CuspType>& cusps) {
  bool all_bounding = true;
  for (const auto& c : cusps) {
    if (c.label == CuspLabel::lie) return DiracLabel::real;
    all_bounding &= c.label == CuspLabel::bounding;
  }
  return all_bounding ? DiracLabel::discrete : DiracLabel::unknown;
}

struct SpinReport {
  bool spinnable = false;
  BigInt structure_count;
  std::vector<CuspType> cusps;
  DiracLabel dirac = DiracLabel::unknown;
};

}  // namespace cuspforge

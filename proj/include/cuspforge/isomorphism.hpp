#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "cuspforge/cubical.hpp"
#include "cuspforge/simplicial.hpp"

namespace cuspforge {

/// Undirected vertex-coloured graph.
struct ColoredGraph {
  std::vector<std::uint32_t> color;
  std::vector<std::vector<std::uint32_t>> adj;

  std::size_t size() const noexcept { return color.size(); }
};

namespace detail {

// Colour refinement run jointly on both graphs so that colour ids are
// comparable across them. Nodes [0, na) belong to the first graph.
class JointRefiner {
 public:
  JointRefiner(const ColoredGraph& a, const ColoredGraph& b) : a_(a), b_(b), na_(a.size()) {}

  std::size_t total() const { return na_ + b_.size(); }

  const std::vector<std::uint32_t>& neighbours(std::size_t u) const {
    return u < na_ ? a_.adj[u] : b_.adj[u - na_];
  }
  std::uint32_t offset(std::size_t u) const { return u < na_ ? 0 : static_cast<std::uint32_t>(na_); }

  // Refines `colors` to the coarsest equitable partition; returns the number
  // of classes.
  std::size_t refine(std::vector<std::uint32_t>& colors) const {
    const std::size_t n = total();
    std::size_t classes = count_classes(colors);
    std::vector<std::uint32_t> flat;
    std::vector<std::size_t> start(n + 1);
    std::vector<std::size_t> order(n);
    for (;;) {
      flat.clear();
      for (std::size_t u = 0; u < n; ++u) {
        start[u] = flat.size();
        flat.push_back(colors[u]);
        const auto off = offset(u);
        std::size_t first = flat.size();
        for (auto w : neighbours(u)) flat.push_back(colors[w + off]);
        std::sort(flat.begin() + static_cast<long>(first), flat.end());
      }
      start[n] = flat.size();
      auto less = [&](std::size_t x, std::size_t y) {
        return std::lexicographical_compare(flat.begin() + static_cast<long>(start[x]),
                                            flat.begin() + static_cast<long>(start[x + 1]),
                                            flat.begin() + static_cast<long>(start[y]),
                                            flat.begin() + static_cast<long>(start[y + 1]));
      };
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), less);
      std::uint32_t next = 0;
      std::vector<std::uint32_t> fresh(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && less(order[i - 1], order[i])) ++next;
        fresh[order[i]] = next;
      }
      std::size_t refined = n == 0 ? 0 : next + 1;
      colors.swap(fresh);
      if (refined == classes) return classes;
      classes = refined;
    }
  }

  bool balanced(const std::vector<std::uint32_t>& colors) const {
    std::vector<long> h(total() + 1, 0);
    for (std::size_t u = 0; u < total(); ++u) h[colors[u]] += u < na_ ? 1 : -1;
    return std::all_of(h.begin(), h.end(), [](long x) { return x == 0; });
  }

  bool verify(const std::vector<std::uint32_t>& map) const {
    for (std::size_t u = 0; u < na_; ++u) {
      std::vector<std::uint32_t> image;
      for (auto w : a_.adj[u]) image.push_back(map[w]);
      std::vector<std::uint32_t> target(b_.adj[map[u]]);
      std::sort(image.begin(), image.end());
      std::sort(target.begin(), target.end());
      if (image != target || a_.color[u] != b_.color[map[u]]) return false;
    }
    return true;
  }

  std::optional<std::vector<std::uint32_t>> search(std::vector<std::uint32_t> colors) const {
    refine(colors);
    if (!balanced(colors)) return std::nullopt;
    // Smallest non-singleton class on the first graph's side.
    std::vector<std::size_t> size(total() + 1, 0);
    for (std::size_t u = 0; u < na_; ++u) ++size[colors[u]];
    std::size_t target = 0, best = SIZE_MAX;
    for (std::size_t c = 0; c < size.size(); ++c)
      if (size[c] > 1 && size[c] < best) {
        best = size[c];
        target = c;
      }
    if (best == SIZE_MAX) {
      std::vector<std::uint32_t> by_color(total() + 1, 0), map(na_);
      for (std::size_t w = na_; w < total(); ++w) by_color[colors[w]] = static_cast<std::uint32_t>(w - na_);
      for (std::size_t u = 0; u < na_; ++u) map[u] = by_color[colors[u]];
      if (verify(map)) return map;
      return std::nullopt;
    }
    std::size_t u = 0;
    while (colors[u] != target) ++u;
    const std::uint32_t mark = static_cast<std::uint32_t>(total());
    for (std::size_t w = na_; w < total(); ++w) {
      if (colors[w] != target) continue;
      auto trial = colors;
      trial[u] = mark;
      trial[w] = mark;
      if (auto found = search(std::move(trial))) return found;
    }
    return std::nullopt;
  }

 private:
  static std::size_t count_classes(const std::vector<std::uint32_t>& colors) {
    std::vector<std::uint32_t> c(colors);
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }

  const ColoredGraph& a_;
  const ColoredGraph& b_;
  std::size_t na_;
};

}  // namespace detail

/// Returns map[u] = image of node u, or nullopt when the graphs are not
/// isomorphic. Deterministic for fixed inputs.
inline std::optional<std::vector<std::uint32_t>> find_isomorphism(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.size() != b.size()) return std::nullopt;
  detail::JointRefiner refiner(a, b);
  std::vector<std::uint32_t> colors(a.color);
  colors.insert(colors.end(), b.color.begin(), b.color.end());
  return refiner.search(std::move(colors));
}

/// Vertex-facet incidence graph; vertices coloured 0, facets 1 + size.
inline ColoredGraph incidence_graph(const SimplicialComplex& k) {
  ColoredGraph g;
  const std::size_t m = k.vertex_count();
  g.color.assign(m, 0);
  g.adj.assign(m, {});
  for (const auto& f : k.facets()) {
    const auto id = static_cast<std::uint32_t>(g.color.size());
    g.color.push_back(static_cast<std::uint32_t>(1 + f.size()));
    g.adj.emplace_back(f.begin(), f.end());
    for (auto v : f) g.adj[v].push_back(id);
  }
  return g;
}

/// A facet-preserving vertex bijection A -> B, if one exists.
inline std::optional<std::vector<std::uint32_t>> isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count() || a.f_vector() != b.f_vector()) return std::nullopt;
  auto map = find_isomorphism(incidence_graph(a), incidence_graph(b));
  if (!map) return std::nullopt;
  map->resize(a.vertex_count());
  return map;
}

/// Hasse diagram of the face relation; cells coloured by dimension.
inline ColoredGraph hasse_graph(const CubicalComplex& z) {
  ColoredGraph g;
  g.color.resize(z.cell_count());
  g.adj.assign(z.cell_count(), {});
  for (std::size_t i = 0; i < z.cell_count(); ++i) {
    const auto& c = z.cells()[i];
    g.color[i] = static_cast<std::uint32_t>(c.dim());
    for (unsigned j = 0; j < static_cast<unsigned>(c.dim()); ++j)
      for (bool plus : {false, true}) {
        auto f = static_cast<std::uint32_t>(z.find(z.face(c, j, plus).first));
        g.adj[i].push_back(f);
        g.adj[f].push_back(static_cast<std::uint32_t>(i));
      }
  }
  return g;
}

/// Cell bijection A -> B preserving the face relation, if one exists.
inline std::optional<std::vector<std::uint32_t>> isomorphic(const CubicalComplex& a, const CubicalComplex& b) {
  if (a.f_vector() != b.f_vector()) return std::nullopt;
  if (a.ambient_rank() == b.ambient_rank() && a.quotient_generators() == b.quotient_generators() &&
      a.cells() == b.cells()) {
    std::vector<std::uint32_t> id(a.cell_count());
    std::iota(id.begin(), id.end(), 0u);
    return id;
  }
  return find_isomorphism(hasse_graph(a), hasse_graph(b));
}

}  // namespace cuspforge

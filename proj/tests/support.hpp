#pragma once

#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "crushcover/algebra.hpp"
#include "crushcover/constructions.hpp"
#include "crushcover/triangulation.hpp"

namespace testing_support {

using namespace crushcover;

struct Relabeled {
  Triangulation tri;
  std::vector<std::size_t> tets;
  std::vector<Perm4> perms;
};

inline Relabeled random_relabel(const Triangulation& t, std::mt19937& rng) {
  Relabeled r;
  r.tets.resize(t.size());
  std::iota(r.tets.begin(), r.tets.end(), std::size_t{0});
  std::shuffle(r.tets.begin(), r.tets.end(), rng);
  std::uniform_int_distribution<int> pick(0, 23);
  for (std::size_t i = 0; i < t.size(); ++i) r.perms.push_back(Perm4::from_index(pick(rng)));
  r.tri = relabel(t, r.tets, r.perms);
  return r;
}

/// H1 of a closed triangulation from the dual cell structure: one generator
/// per glued face pair, killed along a spanning tree of the dual graph, and one
/// relation per edge from walking once around it. Shares no code with the
/// chain-complex computation beyond Smith normal form.
inline AbelianGroup dual_h1(const Triangulation& tri) {
  std::map<std::pair<std::size_t, int>, std::size_t> pairOf;
  std::vector<std::pair<std::size_t, int>> front;
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (pairOf.count({t, f})) continue;
      pairOf[{t, f}] = pairOf[{g->tet, g->perm[f]}] = front.size();
      front.push_back({t, f});
    }
  auto crossing = [&](std::size_t t, int f) {
    const auto i = pairOf.at({t, f});
    return std::pair<std::size_t, long>{i, front[i] == std::pair<std::size_t, int>{t, f} ? 1 : -1};
  };

  std::vector<std::vector<long>> relations;
  // Spanning tree by breadth-first search over tetrahedra.
  std::vector<bool> seen(tri.size(), false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto t = queue[qi];
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (seen[g->tet]) continue;
      seen[g->tet] = true;
      queue.push_back(g->tet);
      std::vector<long> rel(front.size(), 0);
      rel[pairOf.at({t, f})] = 1;
      relations.push_back(rel);
    }
  }
  // Walk each edge: state (tet, a, b, c, d) leaves through the face opposite d.
  std::set<std::pair<std::size_t, int>> done;
  for (std::size_t t0 = 0; t0 < tri.size(); ++t0)
    for (int s = 0; s < 6; ++s) {
      if (done.count({t0, s})) continue;
      int a = kEdgeVertices[s][0], b = kEdgeVertices[s][1], c = -1, d = -1;
      for (int v = 0; v < 4; ++v)
        if (v != a && v != b) (c < 0 ? c : d) = v;
      std::vector<long> rel(front.size(), 0);
      std::size_t t = t0;
      const auto start = std::make_tuple(t0, a, b, c, d);
      do {
        done.insert({t, edge_index(a, b)});
        const auto [idx, sign] = crossing(t, d);
        rel[idx] += sign;
        const auto& g = *tri.gluing(t, d);
        const int na = g.perm[a], nb = g.perm[b], nd = g.perm[c], nc = g.perm[d];
        t = g.tet, a = na, b = nb, c = nc, d = nd;
      } while (std::make_tuple(t, a, b, c, d) != start);
      relations.push_back(rel);
    }
  IntMatrix m(front.size(), relations.size());
  for (std::size_t j = 0; j < relations.size(); ++j)
    for (std::size_t i = 0; i < front.size(); ++i) m(i, j) = relations[j][i];
  const auto snf = smith_normal_form(m);
  AbelianGroup g;
  for (const auto& d : snf.factors)
    if (d > 1) g.torsion.push_back(d);
  g.freeRank = front.size() - snf.rank;
  return g;
}

/// All constructed closed instances up to size kMax, with a readable name.
inline std::vector<std::pair<std::string, Triangulation>> closed_family_instances(std::size_t kMax) {
  std::vector<std::pair<std::string, Triangulation>> out;
  for (std::size_t k = 1; k <= kMax; ++k) {
    out.push_back({"loop(" + std::to_string(k) + ")", twisted_layered_loop(k)});
    out.push_back({"lens4k(" + std::to_string(k) + ")", layered_lens_4k(k)});
    if (k >= 2) out.push_back({"lens2k1(" + std::to_string(k) + ")", layered_lens_2k1(k)});
  }
  return out;
}

}  // namespace testing_support

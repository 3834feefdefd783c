#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crushcover/constructions.hpp"
#include "crushcover/covers.hpp"
#include "crushcover/isosig.hpp"

namespace crushcover {

/// At most one quadrilateral per tetrahedron. Type q separates the opposite
/// edge pair q: 0 = (01|23), 1 = (02|13), 2 = (03|12).
struct QuadSelection {
  std::vector<std::optional<int>> quad;

  std::size_t count() const {
    return static_cast<std::size_t>(std::count_if(quad.begin(), quad.end(), [](auto q) { return q.has_value(); }));
  }
  bool operator==(const QuadSelection&) const = default;
};

struct SurfaceComponent {
  long euler = 0;
  bool orientable = true;
  bool twoSided = true;
  std::size_t quads = 0;
};

struct SurfaceReport {
  std::vector<SurfaceComponent> components;
  std::size_t corners = 0;  // surface vertices, one per crossed edge class point
  std::size_t arcs = 0;     // surface edges, one per glued face arc
  std::size_t quads = 0;
  long euler() const { return static_cast<long>(corners) - static_cast<long>(arcs) + static_cast<long>(quads); }
  bool connected() const { return components.size() == 1; }
};

namespace detail {

/// The vertex paired with v by quad type q: type 0 pairs 0-1 / 2-3, and so on.
inline int quad_partner(int q, int v) {
  static constexpr int kPartner[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return kPartner[q][v];
}

/// Quad corners in cyclic order: with sides {a, b} and {c, d}, the corners sit
/// on edges ac, ad, bd, bc.
inline std::array<int, 4> quad_cycle(int q) {
  const int a = 0, b = quad_partner(q, 0);
  int c = -1, d = -1;
  for (int v = 1; v < 4; ++v)
    if (v != b) (c < 0 ? c : d) = v;
  return {edge_index(a, c), edge_index(a, d), edge_index(b, d), edge_index(b, c)};
}

/// The arc of quad q in face opposite x, as (from, to) edge slots in the
/// direction of the quad's cyclic order.
inline std::pair<int, int> arc_in_face(int q, int x) {
  const auto cyc = quad_cycle(q);
  for (int i = 0; i < 4; ++i) {
    const int u = cyc[i], w = cyc[(i + 1) % 4];
    const auto& eu = kEdgeVertices[u];
    const auto& ew = kEdgeVertices[w];
    if (eu[0] != x && eu[1] != x && ew[0] != x && ew[1] != x) return {u, w};
  }
  throw std::logic_error("arc_in_face: no arc");
}

inline int image_slot(const Perm4& p, int slot) {
  return edge_index(p[kEdgeVertices[slot][0]], p[kEdgeVertices[slot][1]]);
}

}  // namespace detail

/// Builds the closed surface made of the selected quads and reports its
/// Euler characteristic, orientability and sidedness per component.
/// Throws TopologyError if the arcs on some face do not match across the gluing.
inline SurfaceReport build_quad_surface(const Triangulation& tri, const QuadSelection& sel) {
  const auto report = validate(tri);
  if (!report.closed || !report.manifold()) throw TopologyError("surface: triangulation must be closed and valid");
  if (sel.quad.size() != tri.size())
    throw TopologyError("surface: selection has " + std::to_string(sel.quad.size()) + " entries for " +
                        std::to_string(tri.size()) + " tetrahedra");
  for (const auto& q : sel.quad)
    if (q && (*q < 0 || *q > 2)) throw TopologyError("surface: quad type must be 0, 1 or 2");
  const auto sk = compute_skeleton(tri);

  detail::ParityUnionFind quadsUf(tri.size());  // orientation relation
  detail::ParityUnionFind sideUf(tri.size());   // transverse relation
  detail::ParityUnionFind cornerUf(6 * tri.size());
  std::vector<std::size_t> badOrient, badSide;

  for (std::size_t t = 0; t < tri.size(); ++t) {
    if (!sel.quad[t]) continue;
    const int q = *sel.quad[t];
    for (int x = 0; x < 4; ++x) {
      const auto& g = tri.gluing(t, x);
      const int y = detail::quad_partner(q, x);  // vertex cut off in this face
      const auto& q2 = sel.quad[g->tet];
      const int gx = g->perm[x], gy = g->perm[y];
      if (!q2 || detail::quad_partner(*q2, gx) != gy)
        throw TopologyError("surface: arc mismatch at face " + std::to_string(sk.face_of(t, x)) + " (tetrahedron " +
                            std::to_string(t) + ", face " + std::to_string(x) + ")");
      const auto [u, w] = detail::arc_in_face(q, x);
      const auto [u2, w2] = detail::arc_in_face(*q2, gx);
      const int iu = detail::image_slot(g->perm, u), iw = detail::image_slot(g->perm, w);
      cornerUf.unite(6 * t + u, 6 * g->tet + iu, 0);
      cornerUf.unite(6 * t + w, 6 * g->tet + iw, 0);
      // Adjacent cells must traverse a shared arc in opposite directions.
      const int sameDirection = (iu == u2 && iw == w2) ? 1 : 0;
      if (!quadsUf.unite(t, g->tet, sameDirection)) badOrient.push_back(t);
      // Transverse side: "towards vertex 0's pair" in each tetrahedron.
      const int sideHere = (y == 0 || y == detail::quad_partner(q, 0)) ? 1 : 0;
      const int sideThere = (gy == 0 || gy == detail::quad_partner(*q2, 0)) ? 1 : 0;
      if (!sideUf.unite(t, g->tet, sideHere ^ sideThere)) badSide.push_back(t);
    }
  }

  SurfaceReport out;
  std::map<std::size_t, std::size_t> compOf;  // union-find root -> component index
  for (std::size_t t = 0; t < tri.size(); ++t) {
    if (!sel.quad[t]) continue;
    const auto root = quadsUf.find(t).first;
    auto [it, fresh] = compOf.try_emplace(root, out.components.size());
    if (fresh) out.components.emplace_back();
    auto& comp = out.components[it->second];
    ++comp.quads;
    comp.euler += 1 - 2;  // one quad, four arcs each shared by two quads
  }
  std::vector<bool> cornerSeen(6 * tri.size(), false);
  for (std::size_t t = 0; t < tri.size(); ++t) {
    if (!sel.quad[t]) continue;
    for (int slot : detail::quad_cycle(*sel.quad[t])) {
      const auto r = cornerUf.find(6 * t + slot).first;
      if (cornerSeen[r]) continue;
      cornerSeen[r] = true;
      ++out.components[compOf.at(quadsUf.find(t).first)].euler;
      ++out.corners;
    }
  }
  for (auto t : badOrient) out.components[compOf.at(quadsUf.find(t).first)].orientable = false;
  for (auto t : badSide) out.components[compOf.at(quadsUf.find(t).first)].twoSided = false;
  out.quads = sel.count();
  out.arcs = 2 * out.quads;
  return out;
}

/// One quad per tetrahedron of a layered chain or loop, separating its t and b edges.
inline QuadSelection chain_vertical_selection(const ChainLabels& labels) {
  if (labels.sigma.size() != labels.tetCount) throw TopologyError("vertical selection: labels are stale");
  QuadSelection sel{std::vector<std::optional<int>>(labels.tetCount)};
  for (const auto& s : labels.sigma) {
    if (s.tet >= labels.tetCount || opposite_edge(s.tSlot) != s.bSlot || sel.quad[s.tet])
      throw TopologyError("vertical selection: labels are stale");
    sel.quad[s.tet] = std::min(s.tSlot, s.bSlot);
  }
  return sel;
}

/// Pulls a selection back to the cover: each cover tetrahedron takes its image's quad.
inline QuadSelection lift_selection(const Cover& c, const QuadSelection& sel) {
  if (sel.quad.size() != c.base.size()) throw TopologyError("lift: selection does not fit the base");
  QuadSelection out{std::vector<std::optional<int>>(c.total.size())};
  for (std::size_t t = 0; t < c.total.size(); ++t) out.quad[t] = sel.quad[c.projection[t].tet];
  return out;
}

/// Moves a selection along an isomorphism a -> b.
inline QuadSelection transport_selection(const QuadSelection& sel, const Isomorphism& iso) {
  if (sel.quad.size() != iso.tets.size()) throw TopologyError("transport: selection does not fit the isomorphism");
  QuadSelection out{std::vector<std::optional<int>>(iso.tets.size())};
  for (std::size_t t = 0; t < sel.quad.size(); ++t) {
    if (!sel.quad[t]) continue;
    const int img = detail::image_slot(iso.perms[t], *sel.quad[t]);
    out.quad[iso.tets[t]] = std::min(img, opposite_edge(img));
  }
  return out;
}

}  // namespace crushcover

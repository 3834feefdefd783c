#pragma once

#include <string>
#include <vector>

#include "crushcover/skeleton.hpp"

namespace crushcover {

namespace detail {

/// The two boundary face slots containing a boundary edge, as the two ends of
/// its fan: the first contains roles 0,1,2 of `first`, the second roles 0,1,3 of `last`.
struct BoundaryEdgeEnds {
  EdgeEmbedding first, last;
  FaceRef firstFace() const { return {first.tet, first.roles[3]}; }
  FaceRef lastFace() const { return {last.tet, last.roles[2]}; }
};

inline BoundaryEdgeEnds boundary_edge_ends(const Triangulation& tri, const Skeleton& sk, std::size_t e,
                                           const char* op) {
  if (e >= sk.edges.size()) throw TopologyError(std::string(op) + ": unknown edge " + std::to_string(e));
  const auto& ec = sk.edges[e];
  if (!ec.boundary) throw TopologyError(std::string(op) + ": edge " + std::to_string(e) + " is interior");
  std::size_t slots = 0;
  for (const auto& sl : ec.slots)
    for (int f = 0; f < 4; ++f)
      if (f != kEdgeVertices[sl.edge][0] && f != kEdgeVertices[sl.edge][1] && tri.is_boundary(sl.tet, f)) ++slots;
  if (slots != 2)
    throw TopologyError(std::string(op) + ": edge " + std::to_string(e) + " lies in " + std::to_string(slots) +
                        " boundary face slots, expected 2");
  const auto fan = edge_embeddings(tri, sk, e);
  BoundaryEdgeEnds ends{fan.front(), fan.back()};
  if (ends.firstFace() == ends.lastFace())
    throw TopologyError(std::string(op) + ": edge " + std::to_string(e) + " appears twice in a single boundary face");
  return ends;
}

}  // namespace detail

/// Layers a new tetrahedron on a boundary edge: its faces 012 and 013 cover the
/// two boundary faces at the edge, with its edge 01 identified to the edge. The
/// new boundary edge is slot 23 of the new (last) tetrahedron.
inline Triangulation layer_on_boundary_edge(const Triangulation& tri, std::size_t e) {
  const auto sk = compute_skeleton(tri);
  const auto ends = detail::boundary_edge_ends(tri, sk, e, "layer");
  Triangulation out = tri;
  const std::size_t tau = out.add_tetrahedron();
  const Perm4& a = ends.first.roles;
  const Perm4& b = ends.last.roles;
  out.glue(tau, 3, ends.first.tet, a);
  out.glue(tau, 2, ends.last.tet, b);
  return out;
}

/// Glues two boundary faces by the given vertex map (perm[f1.face] must be f2.face).
/// Rejects folds that glue a face to itself or reverse an edge onto itself.
inline Triangulation fold_boundary_faces(const Triangulation& tri, FaceRef f1, FaceRef f2, Perm4 perm) {
  if (f1 == f2) throw TopologyError("fold: face " + std::to_string(f1.tet) + ":" + std::to_string(f1.face) + " glued to itself");
  if (f1.tet >= tri.size() || f2.tet >= tri.size()) throw TopologyError("fold: tetrahedron out of range");
  if (!tri.is_boundary(f1.tet, f1.face) || !tri.is_boundary(f2.tet, f2.face))
    throw TopologyError("fold: both faces must be boundary");
  if (perm[f1.face] != f2.face) throw TopologyError("fold: permutation does not carry the first face onto the second");
  Triangulation out = tri;
  out.glue(f1.tet, f1.face, f2.tet, perm);
  const auto sk = compute_skeleton(out);
  for (std::size_t e = 0; e < sk.edges.size(); ++e)
    if (!sk.edges[e].valid) {
      const auto& sl = sk.edges[e].slots.front();
      throw TopologyError("fold: edge " + std::to_string(e) + " (tetrahedron " + std::to_string(sl.tet) + " slot " +
                          std::to_string(sl.edge) + ") becomes identified with its reverse");
    }
  return out;
}

/// Folds the two boundary faces around a boundary edge onto each other, keeping
/// the edge fixed with its orientation; the other two edges of the faces are identified.
inline Triangulation fold_along_edge(const Triangulation& tri, std::size_t e) {
  const auto sk = compute_skeleton(tri);
  const auto ends = detail::boundary_edge_ends(tri, sk, e, "fold");
  const Perm4 p = ends.last.roles * Perm4::swap(2, 3) * ends.first.roles.inverse();
  return fold_boundary_faces(tri, ends.firstFace(), ends.lastFace(), p);
}

struct CrushReport {
  std::size_t crushedEdge = 0;
  std::size_t tetrahedraRemoved = 0;
  Triangulation result;
  std::vector<std::string> identificationTrace;
};

/// Collapses an edge joining the two vertices of a closed two-vertex triangulation.
///
/// Each tetrahedron meeting the edge once in slot ab is flattened, identifying
/// its faces opposite a and b; a tetrahedron meeting it in two opposite slots has
/// every face on the edge and disappears. Face chains through flattened
/// tetrahedra are followed to their surviving ends, which are glued by the
/// composed map.
inline CrushReport crush_vertex_joining_edge(const Triangulation& tri, std::size_t e) {
  const auto report = validate(tri);
  if (!report.pass()) throw TopologyError("crush: input does not validate as a closed orientable triangulation");
  const auto sk = compute_skeleton(tri);
  if (sk.vertices.size() != 2)
    throw TopologyError("crush: expected 2 vertices, found " + std::to_string(sk.vertices.size()));
  if (e >= sk.edges.size()) throw TopologyError("crush: unknown edge " + std::to_string(e));
  const auto& ec = sk.edges[e];
  if (ec.tail == ec.head) throw TopologyError("crush: edge " + std::to_string(e) + " has both ends at one vertex");

  // Admissibility (a): per tetrahedron, one slot or two opposite slots.
  std::vector<std::vector<int>> slotsIn(tri.size());
  for (const auto& sl : ec.slots) slotsIn[sl.tet].push_back(sl.edge);
  for (std::size_t t = 0; t < tri.size(); ++t) {
    const auto& s = slotsIn[t];
    if (s.size() > 2 || (s.size() == 2 && opposite_edge(s[0]) != s[1]))
      throw TopologyError("crush: tetrahedron " + std::to_string(t) + " meets edge " + std::to_string(e) +
                          " in a degenerate slot pattern");
  }
  // Admissibility (b): faces through the edge must not be cones or dunce hats.
  for (const auto& sl : ec.slots) {
    const int a = kEdgeVertices[sl.edge][0], b = kEdgeVertices[sl.edge][1];
    for (int c = 0; c < 4; ++c) {
      if (c == a || c == b) continue;
      const std::size_t x = sk.edge_of(sl.tet, edge_index(a, c));
      const std::size_t y = sk.edge_of(sl.tet, edge_index(b, c));
      if (x == y || x == e || y == e)
        throw TopologyError("crush: inadmissible face " + std::to_string(sl.tet) + ":" + std::to_string(6 - a - b - c) +
                            " around edge " + std::to_string(e));
    }
  }

  CrushReport out;
  out.crushedEdge = e;
  std::vector<std::size_t> newIndex(tri.size(), SIZE_MAX);
  std::size_t kept = 0;
  for (std::size_t t = 0; t < tri.size(); ++t)
    if (slotsIn[t].empty()) newIndex[t] = kept++;
  out.tetrahedraRemoved = tri.size() - kept;
  out.result = Triangulation(kept);

  for (std::size_t t = 0; t < tri.size(); ++t) {
    if (!slotsIn[t].empty()) continue;
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      Perm4 P = g->perm;
      std::size_t cur = g->tet;
      std::string trace = std::to_string(t) + ":" + std::to_string(f);
      std::size_t steps = 0;
      while (!slotsIn[cur].empty()) {
        if (++steps > 2 * tri.size())
          throw TopologyError("crush: identification chain closes up: " + trace);
        if (slotsIn[cur].size() != 1)
          throw TopologyError("crush: chain entered a doubly incident tetrahedron: " + trace);
        const int a = kEdgeVertices[slotsIn[cur][0]][0], b = kEdgeVertices[slotsIn[cur][0]][1];
        const int entry = P[f];
        if (entry != a && entry != b) throw TopologyError("crush: chain entered a face containing the edge: " + trace);
        P = Perm4::swap(a, b) * P;
        trace += " > " + std::to_string(cur);
        const auto& next = tri.gluing(cur, P[f]);
        P = next->perm * P;
        cur = next->tet;
      }
      const FaceRef end{newIndex[cur], P[f]};
      trace += " > " + std::to_string(cur) + ":" + std::to_string(P[f]);
      const auto& existing = out.result.gluing(newIndex[t], f);
      if (existing) {
        if (existing->tet != end.tet || existing->perm != P)
          throw TopologyError("crush: inconsistent identification chain: " + trace);
        continue;
      }
      if (end.tet == newIndex[t] && end.face == f) throw TopologyError("crush: face glued to itself: " + trace);
      out.result.glue(newIndex[t], f, end.tet, P);
      if (steps > 0) out.identificationTrace.push_back(trace);
    }
  }
  const auto after = validate(out.result);
  if (!after.pass())
    throw TopologyError("crush: result does not validate: " + (after.failures.empty() ? "" : after.failures.front()));
  return out;
}

}  // namespace crushcover

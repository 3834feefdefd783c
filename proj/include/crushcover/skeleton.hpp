#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "crushcover/triangulation.hpp"

namespace crushcover {

namespace detail {

/// Union-find that also tracks a Z2 offset of every element relative to its root.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    if (parent_[x] == x) return {x, 0};
    auto [root, p] = find(parent_[x]);
    parent_[x] = root;
    parity_[x] ^= p;
    return {root, parity_[x]};
  }

  /// Records parity(a) xor parity(b) == rel. Returns false on contradiction.
  bool unite(std::size_t a, std::size_t b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    parity_[rb] = static_cast<std::uint8_t>(pa ^ pb ^ rel);
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> parity_;
  std::vector<std::uint8_t> rank_;
};

/// Sign of the arrangement (x,y,z) of three distinct labels relative to sorted order.
inline int arrangement_sign(int x, int y, int z) {
  int inv = (x > y) + (x > z) + (y > z);
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace detail

/// One edge-slot incidence of an edge class. `sign` is +1 when the slot's
/// low-to-high vertex direction agrees with the class orientation.
struct EdgeSlot {
  std::size_t tet = 0;
  int edge = 0;
  int sign = 1;
};

struct EdgeClass {
  std::vector<EdgeSlot> slots;
  std::size_t degree = 0;
  std::size_t tetCount = 0;
  std::size_t tail = 0;  // vertex class at the start of the class orientation
  std::size_t head = 0;
  bool valid = true;  // false if the edge is identified with itself in reverse
  bool boundary = false;
};

/// Summary of the triangulated surface linking a vertex class.
struct LinkSummary {
  long euler = 0;
  bool orientable = true;
  bool closed = true;
  std::size_t triangles = 0;
  bool is_sphere() const { return closed && euler == 2; }
  bool is_disc() const { return !closed && euler == 1; }
};

struct VertexClass {
  std::vector<std::pair<std::size_t, int>> corners;  // (tet, vertex)
  LinkSummary link;
  bool boundary = false;
};

struct FaceClass {
  std::vector<FaceRef> slots;  // one slot if boundary, else two
  bool boundary() const { return slots.size() == 1; }
};

/// Vertex, edge and face classes of a triangulation with their incidences.
class Skeleton {
 public:
  std::vector<VertexClass> vertices;
  std::vector<EdgeClass> edges;
  std::vector<FaceClass> faces;
  std::size_t tetCount = 0;

  std::size_t vertex_of(std::size_t tet, int v) const { return vertexOf_[4 * tet + v]; }
  std::size_t edge_of(std::size_t tet, int e) const { return edgeOf_[6 * tet + e]; }
  int edge_sign(std::size_t tet, int e) const { return edgeSign_[6 * tet + e]; }
  std::size_t face_of(std::size_t tet, int f) const { return faceOf_[4 * tet + f]; }

  long euler_characteristic() const {
    return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) + static_cast<long>(faces.size()) -
           static_cast<long>(tetCount);
  }

  bool all_edges_valid() const {
    return std::all_of(edges.begin(), edges.end(), [](const EdgeClass& e) { return e.valid; });
  }

 private:
  friend Skeleton compute_skeleton(const Triangulation&);
  std::vector<std::size_t> vertexOf_, edgeOf_, faceOf_;
  std::vector<int> edgeSign_;
};

/// Computes all skeletal data. Throws TopologyError on a structurally malformed table.
inline Skeleton compute_skeleton(const Triangulation& tri) {
  if (auto err = tri.structural_defect()) throw TopologyError("skeleton: " + *err);
  const std::size_t n = tri.size();
  Skeleton sk;
  sk.tetCount = n;

  detail::ParityUnionFind vuf(4 * n);
  detail::ParityUnionFind euf(6 * n);
  std::vector<bool> edgeBad(6 * n, false);
  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      for (int v = 0; v < 4; ++v)
        if (v != f) vuf.unite(4 * t + v, 4 * g->tet + g->perm[v], 0);
      for (int e = 0; e < 6; ++e) {
        const int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
        if (a == f || b == f) continue;
        const int pa = g->perm[a], pb = g->perm[b];
        if (!euf.unite(6 * t + e, 6 * g->tet + edge_index(pa, pb), pa > pb ? 1 : 0)) edgeBad[6 * t + e] = true;
      }
    }
  }

  // Vertex classes, numbered by first corner.
  sk.vertexOf_.assign(4 * n, 0);
  {
    std::vector<std::size_t> rootId(4 * n, SIZE_MAX);
    for (std::size_t c = 0; c < 4 * n; ++c) {
      auto root = vuf.find(c).first;
      if (rootId[root] == SIZE_MAX) {
        rootId[root] = sk.vertices.size();
        sk.vertices.emplace_back();
      }
      sk.vertexOf_[c] = rootId[root];
      sk.vertices[rootId[root]].corners.emplace_back(c / 4, static_cast<int>(c % 4));
    }
  }

  // Edge classes, oriented by their first slot.
  sk.edgeOf_.assign(6 * n, 0);
  sk.edgeSign_.assign(6 * n, 1);
  {
    std::vector<std::size_t> rootId(6 * n, SIZE_MAX);
    std::vector<int> rootParityOfFirst(6 * n, 0);
    for (std::size_t s = 0; s < 6 * n; ++s) {
      auto [root, par] = euf.find(s);
      if (rootId[root] == SIZE_MAX) {
        rootId[root] = sk.edges.size();
        rootParityOfFirst[root] = par;
        sk.edges.emplace_back();
      }
      const std::size_t id = rootId[root];
      const int sign = (par ^ rootParityOfFirst[root]) ? -1 : 1;
      sk.edgeOf_[s] = id;
      sk.edgeSign_[s] = sign;
      sk.edges[id].slots.push_back({s / 6, static_cast<int>(s % 6), sign});
      if (edgeBad[s]) sk.edges[id].valid = false;
    }
    for (auto& ec : sk.edges) {
      ec.degree = ec.slots.size();
      std::set<std::size_t> tets;
      for (const auto& sl : ec.slots) {
        tets.insert(sl.tet);
        const int a = kEdgeVertices[sl.edge][0], b = kEdgeVertices[sl.edge][1];
        for (int f = 0; f < 4; ++f)
          if (f != a && f != b && tri.is_boundary(sl.tet, f)) ec.boundary = true;
      }
      ec.tetCount = tets.size();
      const auto& first = ec.slots.front();
      ec.tail = sk.vertexOf_[4 * first.tet + kEdgeVertices[first.edge][0]];
      ec.head = sk.vertexOf_[4 * first.tet + kEdgeVertices[first.edge][1]];
    }
  }

  // Face classes.
  sk.faceOf_.assign(4 * n, SIZE_MAX);
  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      if (sk.faceOf_[4 * t + f] != SIZE_MAX) continue;
      FaceClass fc;
      fc.slots.push_back({t, f});
      sk.faceOf_[4 * t + f] = sk.faces.size();
      if (const auto& g = tri.gluing(t, f)) {
        fc.slots.push_back({g->tet, g->perm[f]});
        sk.faceOf_[4 * g->tet + g->perm[f]] = sk.faces.size();
      }
      sk.faces.push_back(std::move(fc));
    }
  }

  // Vertex links: corner triangles (t,v) glued along their sides (t,v,f).
  {
    detail::ParityUnionFind luf(16 * n);  // link vertex (t,v,w) -> 16t+4v+w
    for (std::size_t t = 0; t < n; ++t)
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        if (!g) continue;
        for (int v = 0; v < 4; ++v) {
          if (v == f) continue;
          for (int w = 0; w < 4; ++w)
            if (w != v && w != f) luf.unite(16 * t + 4 * v + w, 16 * g->tet + 4 * g->perm[v] + g->perm[w], 0);
        }
      }
    for (auto& vc : sk.vertices) {
      std::size_t gluedSides = 0, freeSides = 0;
      std::set<std::size_t> linkVertices;
      for (auto [t, v] : vc.corners) {
        for (int f = 0; f < 4; ++f) {
          if (f == v) continue;
          if (tri.is_boundary(t, f))
            ++freeSides;
          else
            ++gluedSides;
        }
        for (int w = 0; w < 4; ++w)
          if (w != v) linkVertices.insert(luf.find(16 * t + 4 * v + w).first);
      }
      vc.link.triangles = vc.corners.size();
      vc.link.closed = freeSides == 0;
      vc.boundary = !vc.link.closed;
      const long edgesInLink = static_cast<long>(gluedSides / 2 + freeSides);
      vc.link.euler = static_cast<long>(linkVertices.size()) - edgesInLink + static_cast<long>(vc.corners.size());

      // Orientability of the link: corner triangles inherit the gluing parities.
      std::vector<int> sign(4 * n, 0);
      const auto [t0, v0] = vc.corners.front();
      sign[4 * t0 + v0] = 1;
      std::queue<std::pair<std::size_t, int>> q;
      q.push(vc.corners.front());
      while (!q.empty()) {
        auto [t, v] = q.front();
        q.pop();
        for (int f = 0; f < 4; ++f) {
          if (f == v) continue;
          const auto& g = tri.gluing(t, f);
          if (!g) continue;
          const std::size_t other = 4 * g->tet + g->perm[v];
          const int want = sign[4 * t + v] * -g->perm.sign();
          if (sign[other] == 0) {
            sign[other] = want;
            q.push({g->tet, g->perm[v]});
          } else if (sign[other] != want) {
            vc.link.orientable = false;
          }
        }
      }
    }
  }
  return sk;
}

/// An edge embedding: tetrahedron plus roles, where roles[0] -> roles[1] is the
/// edge (in class orientation) and the walk leaves through the face opposite roles[2].
struct EdgeEmbedding {
  std::size_t tet = 0;
  Perm4 roles;
  bool operator==(const EdgeEmbedding&) const = default;
};

/// The fan of tetrahedra around an edge class, in walking order. For an
/// interior edge this is the full cycle; for a boundary edge it runs from one
/// boundary face to the other. Throws for invalid (self-reversed) edges.
inline std::vector<EdgeEmbedding> edge_embeddings(const Triangulation& tri, const Skeleton& sk, std::size_t edge) {
  if (edge >= sk.edges.size()) throw TopologyError("edge_embeddings: unknown edge " + std::to_string(edge));
  const auto& ec = sk.edges[edge];
  if (!ec.valid) throw TopologyError("edge_embeddings: edge " + std::to_string(edge) + " is identified with its reverse");
  const auto& first = ec.slots.front();
  int a = kEdgeVertices[first.edge][0], b = kEdgeVertices[first.edge][1];
  if (first.sign < 0) std::swap(a, b);
  int c = -1, d = -1;
  for (int v = 0; v < 4; ++v)
    if (v != a && v != b) (c < 0 ? c : d) = v;
  const EdgeEmbedding start{first.tet, Perm4(a, b, c, d)};

  auto step = [&](const EdgeEmbedding& cur, int exitRole) -> std::optional<EdgeEmbedding> {
    const auto& g = tri.gluing(cur.tet, cur.roles[exitRole]);
    if (!g) return std::nullopt;
    return EdgeEmbedding{g->tet, g->perm * cur.roles * Perm4::swap(2, 3)};
  };

  std::vector<EdgeEmbedding> fan;
  if (!ec.boundary) {
    EdgeEmbedding cur = start;
    do {
      fan.push_back(cur);
      cur = *step(cur, 2);
      if (fan.size() > ec.degree) throw TopologyError("edge_embeddings: fan does not close");
    } while (!(cur == start));
    return fan;
  }
  EdgeEmbedding cur = start;
  for (std::size_t guard = 0; guard <= ec.degree; ++guard) {
    auto prev = step(cur, 3);
    if (!prev) break;
    cur = *prev;
  }
  while (true) {
    fan.push_back(cur);
    if (fan.size() > ec.degree) throw TopologyError("edge_embeddings: boundary fan does not terminate");
    auto next = step(cur, 2);
    if (!next) break;
    cur = *next;
  }
  return fan;
}

struct ValidationReport {
  bool closed = false;
  bool orientable = false;
  bool edgeValid = false;
  bool vertexLinksValid = false;
  std::vector<std::string> failures;
  bool pass() const { return closed && orientable && edgeValid && vertexLinksValid; }
  /// Valid as a (possibly bounded) 3-manifold triangulation, ignoring closedness and orientability.
  bool manifold() const { return edgeValid && vertexLinksValid; }
};

/// True iff the tetrahedra admit signs with eps(t)*eps(t') == 1 exactly for odd gluings.
inline bool is_orientable(const Triangulation& tri) {
  std::vector<int> eps(tri.size(), 0);
  for (std::size_t root = 0; root < tri.size(); ++root) {
    if (eps[root]) continue;
    eps[root] = 1;
    std::queue<std::size_t> q;
    q.push(root);
    while (!q.empty()) {
      const auto t = q.front();
      q.pop();
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        if (!g) continue;
        const int want = eps[t] * -g->perm.sign();
        if (eps[g->tet] == 0) {
          eps[g->tet] = want;
          q.push(g->tet);
        } else if (eps[g->tet] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

inline ValidationReport validate(const Triangulation& tri) {
  ValidationReport r;
  if (auto err = tri.structural_defect()) {
    r.failures.push_back("malformed gluing table: " + *err);
    return r;
  }
  const auto sk = compute_skeleton(tri);
  r.closed = tri.boundary_face_count() == 0;
  if (!r.closed) r.failures.push_back(std::to_string(tri.boundary_face_count()) + " boundary faces");
  r.orientable = is_orientable(tri);
  if (!r.orientable) r.failures.push_back("not orientable");
  r.edgeValid = true;
  for (std::size_t e = 0; e < sk.edges.size(); ++e)
    if (!sk.edges[e].valid) {
      r.edgeValid = false;
      r.failures.push_back("edge " + std::to_string(e) + " identified with itself in reverse");
    }
  r.vertexLinksValid = true;
  for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
    const auto& link = sk.vertices[v].link;
    const bool ok = link.closed ? link.is_sphere() : link.is_disc();
    if (!ok) {
      r.vertexLinksValid = false;
      r.failures.push_back("vertex " + std::to_string(v) + " link has euler " + std::to_string(link.euler) +
                           (link.closed ? " (closed)" : " (with boundary)"));
    }
  }
  return r;
}

struct EdgeProfile {
  std::size_t degree = 0;
  std::size_t tetCount = 0;
  bool endpointsDistinct = false;
  bool operator==(const EdgeProfile&) const = default;
};

inline EdgeProfile edge_profile(const Skeleton& sk, std::size_t e) {
  if (e >= sk.edges.size()) throw TopologyError("edge_profile: unknown edge " + std::to_string(e));
  const auto& ec = sk.edges[e];
  return {ec.degree, ec.tetCount, ec.tail != ec.head};
}

inline EdgeProfile edge_profile(const Triangulation& tri, std::size_t e) {
  return edge_profile(compute_skeleton(tri), e);
}

/// Sub-triangulation on the distinct tetrahedra incident with an edge.
struct EdgeStar {
  Triangulation star;
  std::vector<std::size_t> embedding;  // star tet -> ambient tet
};

/// The star keeps only the gluings between star tetrahedra across faces that
/// contain the edge, i.e. the neighbourhood of the edge; other faces become boundary.
inline EdgeStar star_of_edge(const Triangulation& tri, const Skeleton& sk, std::size_t e) {
  if (e >= sk.edges.size()) throw TopologyError("star_of_edge: unknown edge " + std::to_string(e));
  EdgeStar out;
  std::vector<std::size_t> local(tri.size(), SIZE_MAX);
  for (const auto& sl : sk.edges[e].slots) {
    if (local[sl.tet] != SIZE_MAX) continue;
    local[sl.tet] = out.embedding.size();
    out.embedding.push_back(sl.tet);
  }
  out.star = Triangulation(out.embedding.size());
  for (std::size_t i = 0; i < out.embedding.size(); ++i) {
    const std::size_t t = out.embedding[i];
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g || local[g->tet] == SIZE_MAX || out.star.gluing(i, f)) continue;
      bool faceHasEdge = false;
      for (int s = 0; s < 6; ++s) {
        const int a = kEdgeVertices[s][0], b = kEdgeVertices[s][1];
        if (a != f && b != f && sk.edge_of(t, s) == e) faceHasEdge = true;
      }
      if (!faceHasEdge) continue;
      out.star.glue(i, f, local[g->tet], g->perm);
    }
  }
  return out;
}

/// Boundary surface summary (faces that are unglued), for bounded triangulations.
struct BoundarySummary {
  std::size_t faces = 0;
  std::size_t components = 0;
  long euler = 0;
  bool orientable = true;
  bool is_torus() const { return components == 1 && euler == 0 && orientable; }
};

inline BoundarySummary boundary_summary(const Triangulation& tri, const Skeleton& sk) {
  BoundarySummary out;
  std::vector<FaceRef> bfaces;
  std::vector<std::size_t> bfaceIndex(4 * tri.size(), SIZE_MAX);
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (tri.is_boundary(t, f)) {
        bfaceIndex[4 * t + f] = bfaces.size();
        bfaces.push_back({t, f});
      }
  out.faces = bfaces.size();
  if (bfaces.empty()) return out;
  std::set<std::size_t> bverts, bedges;
  for (auto [t, f] : bfaces)
    for (int v = 0; v < 4; ++v)
      if (v != f) bverts.insert(sk.vertex_of(t, v));
  for (std::size_t e = 0; e < sk.edges.size(); ++e)
    if (sk.edges[e].boundary) bedges.insert(e);
  out.euler = static_cast<long>(bverts.size()) - static_cast<long>(bedges.size()) + static_cast<long>(bfaces.size());

  // Adjacent boundary triangles are the two ends of each boundary edge fan.
  detail::ParityUnionFind uf(bfaces.size());
  for (auto e : bedges) {
    if (!sk.edges[e].valid) {
      out.orientable = false;
      continue;
    }
    const auto fan = edge_embeddings(tri, sk, e);
    const auto& s = fan.front();
    const auto& t = fan.back();
    const std::size_t fa = bfaceIndex[4 * s.tet + s.roles[3]];
    const std::size_t fb = bfaceIndex[4 * t.tet + t.roles[2]];
    // Consistent orientations traverse the shared edge in opposite directions:
    // (r0,r1,r2) on the first triangle and (r1',r0',r3') on the second.
    const int sa = detail::arrangement_sign(s.roles[0], s.roles[1], s.roles[2]);
    const int sb = detail::arrangement_sign(t.roles[1], t.roles[0], t.roles[3]);
    if (!uf.unite(fa, fb, sa == sb ? 0 : 1)) out.orientable = false;
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < bfaces.size(); ++i) roots.insert(uf.find(i).first);
  out.components = roots.size();
  return out;
}

}  // namespace crushcover

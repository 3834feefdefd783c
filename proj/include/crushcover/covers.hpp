#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crushcover/algebra.hpp"
#include "crushcover/skeleton.hpp"

namespace crushcover {

/// Glued face pairs of a triangulation, indexed in order of their smaller (tet, face) side.
class FacePairs {
 public:
  explicit FacePairs(const Triangulation& tri) : index_(4 * tri.size(), SIZE_MAX) {
    for (std::size_t t = 0; t < tri.size(); ++t)
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        if (!g || index_[4 * t + f] != SIZE_MAX) continue;
        index_[4 * t + f] = index_[4 * g->tet + g->perm[f]] = pairs_.size();
        pairs_.push_back({t, f});
      }
  }
  std::size_t size() const { return pairs_.size(); }
  std::size_t of(std::size_t tet, int face) const { return index_[4 * tet + face]; }
  const FaceRef& front_side(std::size_t i) const { return pairs_[i]; }

 private:
  std::vector<std::size_t> index_;
  std::vector<FaceRef> pairs_;
};

/// A Z2 value on each glued face pair. It is a cocycle when the values crossed
/// while circling any edge sum to zero, so the two-sheet gluing does not branch.
struct DualCocycle {
  std::vector<std::uint8_t> value;
  bool is_zero() const {
    return std::all_of(value.begin(), value.end(), [](auto v) { return v == 0; });
  }
  bool operator==(const DualCocycle&) const = default;
};

namespace detail {

/// Rows: one per edge class, marking the face pairs crossed (mod 2) around it.
inline BitMatrix edge_cycle_matrix(const Triangulation& tri, const Skeleton& sk, const FacePairs& fp) {
  BitMatrix m(sk.edges.size(), fp.size());
  for (std::size_t e = 0; e < sk.edges.size(); ++e) {
    if (sk.edges[e].boundary) continue;
    for (const auto& emb : edge_embeddings(tri, sk, e)) m.flip(e, fp.of(emb.tet, emb.roles[2]));
  }
  return m;
}

/// Rows: coboundary of each tetrahedron (flip every face pair it touches).
inline BitMatrix coboundary_matrix(const Triangulation& tri, const FacePairs& fp) {
  BitMatrix m(tri.size(), fp.size());
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (!tri.is_boundary(t, f)) m.flip(t, fp.of(t, f));
  return m;
}

inline bool is_connected(const Triangulation& tri) {
  if (tri.empty()) return true;
  std::vector<bool> seen(tri.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    auto t = stack.back();
    stack.pop_back();
    ++count;
    for (int f = 0; f < 4; ++f)
      if (const auto& g = tri.gluing(t, f); g && !seen[g->tet]) {
        seen[g->tet] = true;
        stack.push_back(g->tet);
      }
  }
  return count == tri.size();
}

}  // namespace detail

inline bool satisfies_cocycle_condition(const Triangulation& tri, const DualCocycle& c) {
  const FacePairs fp(tri);
  if (c.value.size() != fp.size()) return false;
  const auto sk = compute_skeleton(tri);
  const auto m = detail::edge_cycle_matrix(tri, sk, fp);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    int s = 0;
    for (std::size_t i = 0; i < fp.size(); ++i) s ^= (m.get(r, i) & c.value[i]);
    if (s) return false;
  }
  return true;
}

/// Basis of Z2 cocycles modulo coboundaries. Representatives are reduced
/// against the coboundary space and put in reduced echelon form over the face
/// pairs sorted by (tet, face), so the output is deterministic.
inline std::vector<DualCocycle> cocycle_basis(const Triangulation& tri) {
  if (!detail::is_connected(tri)) throw TopologyError("cocycle_basis: triangulation is disconnected");
  const auto report = validate(tri);
  if (!report.closed || !report.manifold()) throw TopologyError("cocycle_basis: expects a closed valid triangulation");
  const FacePairs fp(tri);
  const auto sk = compute_skeleton(tri);
  const auto cycles = detail::edge_cycle_matrix(tri, sk, fp).nullspace();
  BitMatrix bnd = detail::coboundary_matrix(tri, fp);
  const auto bPivots = bnd.reduce();

  BitMatrix reps(0, fp.size());
  for (auto z : cycles) {
    for (std::size_t i = 0; i < bPivots.size(); ++i)
      if (z[bPivots[i]])
        for (std::size_t c = 0; c < fp.size(); ++c) z[c] ^= bnd.get(i, c);
    reps.append_row(z);
  }
  const auto pivots = reps.reduce();
  std::vector<DualCocycle> basis;
  for (std::size_t i = 0; i < pivots.size(); ++i) basis.push_back({reps.row(i)});
  return basis;
}

/// Every nonzero class, as sums of basis elements in binary counting order.
inline std::vector<DualCocycle> nonzero_classes(const std::vector<DualCocycle>& basis) {
  std::vector<DualCocycle> out;
  if (basis.empty()) return out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << basis.size()); ++mask) {
    DualCocycle c{std::vector<std::uint8_t>(basis.front().value.size(), 0)};
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (mask & (std::size_t{1} << i))
        for (std::size_t j = 0; j < c.value.size(); ++j) c.value[j] ^= basis[i].value[j];
    out.push_back(std::move(c));
  }
  return out;
}

struct SheetRef {
  std::size_t tet = 0;
  int sheet = 0;
  bool operator==(const SheetRef&) const = default;
};

/// A two-sheeted cover: cover tetrahedron 2t + s lies over base tetrahedron t on sheet s.
struct Cover {
  Triangulation total;
  Triangulation base;
  std::vector<SheetRef> projection;
  DualCocycle cocycle;
};

inline Cover build_double_cover(const Triangulation& base, const DualCocycle& c) {
  const auto report = validate(base);
  if (!report.closed || !report.manifold()) throw TopologyError("build_double_cover: base must be closed and valid");
  if (!satisfies_cocycle_condition(base, c))
    throw TopologyError("build_double_cover: cocycle condition fails (the cover would branch)");
  const FacePairs fp(base);
  Cover cov{Triangulation(2 * base.size()), base, {}, c};
  for (std::size_t t = 0; t < base.size(); ++t)
    for (int s = 0; s < 2; ++s) cov.projection.push_back({t, s});
  for (std::size_t t = 0; t < base.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = base.gluing(t, f);
      for (int s = 0; s < 2; ++s) {
        if (cov.total.gluing(2 * t + s, f)) continue;
        const int ds = s ^ c.value[fp.of(t, f)];
        cov.total.glue(2 * t + s, f, 2 * g->tet + ds, g->perm);
      }
    }
  return cov;
}

/// True iff the projection commutes with all gluings, each base vertex, edge,
/// face and tetrahedron has exactly two preimages, and edge degrees are preserved.
inline bool verify_cover(const Cover& c) {
  const auto& base = c.base;
  const auto& tot = c.total;
  if (tot.size() != 2 * base.size() || c.projection.size() != tot.size()) return false;
  if (tot.structural_defect() || base.structural_defect()) return false;
  std::vector<int> hits(base.size(), 0);
  for (const auto& pr : c.projection) {
    if (pr.tet >= base.size()) return false;
    ++hits[pr.tet];
  }
  for (auto h : hits)
    if (h != 2) return false;
  for (std::size_t t = 0; t < tot.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = tot.gluing(t, f);
      const auto& bg = base.gluing(c.projection[t].tet, f);
      if (g.has_value() != bg.has_value()) return false;
      if (!g) continue;
      if (c.projection[g->tet].tet != bg->tet || g->perm != bg->perm) return false;
    }
  const auto sk = compute_skeleton(tot);
  const auto bsk = compute_skeleton(base);
  auto twice = [](std::vector<int>& counts) {
    return std::all_of(counts.begin(), counts.end(), [](int v) { return v == 2; });
  };
  std::vector<int> vcount(bsk.vertices.size(), 0), ecount(bsk.edges.size(), 0), fcount(bsk.faces.size(), 0);
  for (const auto& vc : sk.vertices) {
    auto [t, v] = vc.corners.front();
    ++vcount[bsk.vertex_of(c.projection[t].tet, v)];
  }
  for (const auto& ec : sk.edges) {
    const auto& sl = ec.slots.front();
    const std::size_t be = bsk.edge_of(c.projection[sl.tet].tet, sl.edge);
    ++ecount[be];
    if (!ec.valid || ec.degree != bsk.edges[be].degree) return false;
  }
  for (const auto& fc : sk.faces) {
    const auto& sl = fc.slots.front();
    ++fcount[bsk.face_of(c.projection[sl.tet].tet, sl.face)];
  }
  return twice(vcount) && twice(ecount) && twice(fcount);
}

inline bool is_connected_cover(const Cover& c) { return detail::is_connected(c.total); }

/// Base edge class under a cover edge class.
inline std::size_t image_edge(const Cover& c, const Skeleton& coverSk, const Skeleton& baseSk, std::size_t e) {
  const auto& sl = coverSk.edges.at(e).slots.front();
  return baseSk.edge_of(c.projection[sl.tet].tet, sl.edge);
}

/// Edge classes of a two-vertex cover whose endpoints are distinct.
inline std::vector<std::size_t> vertex_joining_edges(const Cover& c) {
  if (!is_connected_cover(c)) throw TopologyError("vertex_joining_edges: cover is disconnected (zero class)");
  const auto sk = compute_skeleton(c.total);
  if (sk.vertices.size() != 2)
    throw TopologyError("vertex_joining_edges: cover has " + std::to_string(sk.vertices.size()) + " vertices, expected 2");
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < sk.edges.size(); ++e)
    if (sk.edges[e].tail != sk.edges[e].head) out.push_back(e);
  return out;
}

/// phi[e] for every edge class of a one-vertex base: 1 iff the lift of the
/// edge loop switches sheets, computed from the cocycle by labelling the lifted
/// corners (t, v, sheet) without building the cover.
inline std::vector<std::uint8_t> edge_monodromy(const Triangulation& base, const DualCocycle& c) {
  const auto sk = compute_skeleton(base);
  if (sk.vertices.size() != 1) throw TopologyError("edge_monodromy: base must have one vertex");
  const FacePairs fp(base);
  detail::ParityUnionFind uf(4 * base.size());
  for (std::size_t t = 0; t < base.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = base.gluing(t, f);
      if (!g) continue;
      for (int v = 0; v < 4; ++v)
        if (v != f && !uf.unite(4 * t + v, 4 * g->tet + g->perm[v], c.value[fp.of(t, f)]))
          throw TopologyError("edge_monodromy: cocycle condition fails");
    }
  std::vector<std::uint8_t> phi(sk.edges.size());
  for (std::size_t e = 0; e < sk.edges.size(); ++e) {
    const auto& sl = sk.edges[e].slots.front();
    phi[e] = static_cast<std::uint8_t>(uf.find(4 * sl.tet + kEdgeVertices[sl.edge][0]).second ^
                                       uf.find(4 * sl.tet + kEdgeVertices[sl.edge][1]).second);
  }
  return phi;
}

enum class IncidenceShape { None, Single, AdjacentPair, OppositePair, Path3, Star3, Triangle3, Cycle4, Other };

inline const char* to_string(IncidenceShape s) {
  switch (s) {
    case IncidenceShape::None: return "none";
    case IncidenceShape::Single: return "single";
    case IncidenceShape::AdjacentPair: return "adjacent-pair";
    case IncidenceShape::OppositePair: return "opposite-pair";
    case IncidenceShape::Path3: return "path-3";
    case IncidenceShape::Star3: return "star-3";
    case IncidenceShape::Triangle3: return "triangle-3";
    case IncidenceShape::Cycle4: return "cycle-4";
    case IncidenceShape::Other: return "other";
  }
  return "?";
}

/// How the edge slots of one tetrahedron in a given edge class sit inside it.
/// Type labels: 1 single, 2a opposite-pair, 2b adjacent-pair, 3a path-3,
/// 3b triangle-3, 4 cycle-4.
struct IncidencePattern {
  int count = 0;
  IncidenceShape shape = IncidenceShape::None;
  bool z2Consistent = true;
  bool anomaly = false;
};

inline IncidencePattern classify_incidence(const Triangulation& base, std::size_t e, std::size_t tet,
                                           const std::vector<std::uint8_t>& phi) {
  const auto sk = compute_skeleton(base);
  if (e >= sk.edges.size() || tet >= base.size() || phi.size() != sk.edges.size())
    throw TopologyError("classify_incidence: bad edge, tetrahedron or monodromy map");
  std::vector<int> slots;
  for (int s = 0; s < 6; ++s)
    if (sk.edge_of(tet, s) == e) slots.push_back(s);
  IncidencePattern pat;
  pat.count = static_cast<int>(slots.size());
  int degreeAt[4] = {0, 0, 0, 0};
  for (int s : slots) ++degreeAt[kEdgeVertices[s][0]], ++degreeAt[kEdgeVertices[s][1]];
  switch (slots.size()) {
    case 0: pat.shape = IncidenceShape::None; break;
    case 1: pat.shape = IncidenceShape::Single; break;
    case 2: pat.shape = opposite_edge(slots[0]) == slots[1] ? IncidenceShape::OppositePair : IncidenceShape::AdjacentPair; break;
    case 3: {
      const int maxDeg = *std::max_element(degreeAt, degreeAt + 4);
      const int zeros = static_cast<int>(std::count(degreeAt, degreeAt + 4, 0));
      pat.shape = maxDeg == 3 ? IncidenceShape::Star3 : (zeros == 1 ? IncidenceShape::Triangle3 : IncidenceShape::Path3);
      break;
    }
    case 4: {
      const bool cycle = std::all_of(degreeAt, degreeAt + 4, [](int d) { return d == 2; });
      pat.shape = cycle ? IncidenceShape::Cycle4 : IncidenceShape::Other;
      break;
    }
    default:
      pat.shape = IncidenceShape::Other;
      pat.anomaly = true;
  }
  if (pat.shape == IncidenceShape::Triangle3 && phi[e] == 1) pat.z2Consistent = false;
  return pat;
}

/// A neighbourhood is certified a solid torus when its boundary is a torus and H1 = Z.
inline bool star_is_solid_torus(const Triangulation& tri, const Skeleton& sk, std::size_t e) {
  const auto st = star_of_edge(tri, sk, e);
  const auto ssk = compute_skeleton(st.star);
  if (!boundary_summary(st.star, ssk).is_torus()) return false;
  const auto h = h1_integral(st.star);
  return h.freeRank == 1 && h.torsion.empty();
}

struct AuditEntry {
  std::size_t edge = 0;      // cover edge class
  std::size_t baseEdge = 0;  // its image, when a base is known
  std::size_t tetCount = 0;  // t of the cover edge
  std::size_t degree = 0;
  EdgeProfile baseProfile;
  bool baseStarSolidTorus = false;
  std::vector<IncidencePattern> patterns;  // base edge against each base tetrahedron
};

struct AuditReport {
  std::vector<AuditEntry> checked;
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

/// Checks that every vertex-joining edge of a lifted triangulation meeting at
/// most three tetrahedra meets exactly three and sits over a degree-4 edge
/// whose star is a solid torus. The base edge may meet fewer
/// than three distinct tetrahedra (layered lens spaces have such edges); its
/// tetrahedron count is kept in the entry for inspection only.
inline AuditReport audit_lifted_lemma(const Cover& c) {
  if (!is_connected_cover(c)) throw TopologyError("audit: cover is disconnected");
  const auto sk = compute_skeleton(c.total);
  const auto bsk = compute_skeleton(c.base);
  if (bsk.vertices.size() != 1) throw TopologyError("audit: base must have one vertex");
  AuditReport rep;
  if (sk.vertices.size() != 2) return rep;
  const auto phi = edge_monodromy(c.base, c.cocycle);
  for (auto e : vertex_joining_edges(c)) {
    const auto prof = edge_profile(sk, e);
    if (prof.tetCount > 3) continue;
    AuditEntry en;
    en.edge = e;
    en.tetCount = prof.tetCount;
    en.degree = prof.degree;
    en.baseEdge = image_edge(c, sk, bsk, e);
    en.baseProfile = edge_profile(bsk, en.baseEdge);
    en.baseStarSolidTorus = star_is_solid_torus(c.base, bsk, en.baseEdge);
    for (std::size_t t = 0; t < c.base.size(); ++t) {
      auto pat = classify_incidence(c.base, en.baseEdge, t, phi);
      if (pat.anomaly) rep.violations.push_back("edge " + std::to_string(e) + ": more than four slots in base tetrahedron " + std::to_string(t));
      if (!pat.z2Consistent) rep.violations.push_back("edge " + std::to_string(e) + ": triangle incidence with odd monodromy in base tetrahedron " + std::to_string(t));
      en.patterns.push_back(pat);
    }
    const std::string where = "edge " + std::to_string(e);
    if (phi[en.baseEdge] != 1) rep.violations.push_back(where + ": vertex-joining but base monodromy is 0");
    if (prof.tetCount != 3) rep.violations.push_back(where + ": lies in " + std::to_string(prof.tetCount) + " tetrahedra, expected 3");
    if (en.baseProfile.degree != 4)
      rep.violations.push_back(where + ": base edge has degree " + std::to_string(en.baseProfile.degree) + ", expected 4");
    if (!en.baseStarSolidTorus) rep.violations.push_back(where + ": base edge star is not a solid torus");
    rep.checked.push_back(std::move(en));
  }
  return rep;
}

}  // namespace crushcover

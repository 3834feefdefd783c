#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "crushcover/algebra.hpp"
#include "crushcover/moves.hpp"

namespace crushcover {

/// A representative edge slot with a direction (tail -> head vertex labels).
struct OrientedEdge {
  std::size_t tet = 0;
  int tail = 0, head = 1;
  int slot() const { return edge_index(tail, head); }
};

/// Where t and b sit inside one tetrahedron of a layered chain.
struct SigmaRoles {
  std::size_t tet = 0;
  int tSlot = 0, bSlot = 0;
};

/// Edge labels of a layered chain C_k: boundary circles t and b, and the
/// layering edges e_1..e_{k+2}, all oriented from t to b.
///
/// Every sigma_h uses the same local roles: e_h = 0->1, t = 0->2, b = 3->1,
/// e_{h+1} = 0->3 (in its t-face 023) and 2->1 (in its b-face 123), and
/// e_{h+2} = 2->3. Faces 012 and 013 of sigma_1 carry the initial annulus.
struct ChainLabels {
  std::size_t k = 0;
  std::size_t tetCount = 0;
  std::vector<SigmaRoles> sigma;
  OrientedEdge t, b;
  std::vector<OrientedEdge> e;  // e[0] is e_1
  std::size_t tClass = 0, bClass = 0;
  std::vector<std::size_t> eClass;
};

struct LabeledChain {
  Triangulation tri;
  ChainLabels labels;
};

namespace detail {

/// Completes a vertex map from three (from, to) pairs.
inline Perm4 perm_from_pairs(std::array<std::array<int, 2>, 3> pairs) {
  std::array<int, 4> img{-1, -1, -1, -1};
  int usedFrom = 0, usedTo = 0;
  for (auto [f, t] : pairs) {
    img[f] = t;
    usedFrom |= 1 << f;
    usedTo |= 1 << t;
  }
  int lastFrom = 0, lastTo = 0;
  while (usedFrom & (1 << lastFrom)) ++lastFrom;
  while (usedTo & (1 << lastTo)) ++lastTo;
  img[lastFrom] = lastTo;
  return Perm4(img[0], img[1], img[2], img[3]);
}

inline constexpr int kChainTFace = 1;  // face 023 of sigma_h
inline constexpr int kChainBFace = 0;  // face 123 of sigma_h

}  // namespace detail

/// Layered chain of length k: sigma_h is layered along e_h onto the free faces
/// of sigma_{h-1}. Four boundary faces. For k = 1 the gluing table is a single
/// unglued tetrahedron; the crease e_2 (slots 03 and 12 of sigma_1) only closes
/// up once the chain is folded into a loop.
inline LabeledChain layered_chain(std::size_t k) {
  if (k < 1) throw TopologyError("layered_chain: k must be at least 1");
  LabeledChain out;
  out.tri = Triangulation(k);
  for (std::size_t h = 1; h < k; ++h) {
    // Face 012 of sigma_{h+1} onto the t-face of sigma_h, face 013 onto the b-face,
    // with e_{h+1} (0->1 in the new tetrahedron) matching 0->3 and 2->1 respectively.
    out.tri.glue(h, 3, h - 1, detail::perm_from_pairs({{{0, 0}, {1, 3}, {2, 2}}}));
    out.tri.glue(h, 2, h - 1, detail::perm_from_pairs({{{0, 2}, {1, 1}, {3, 3}}}));
  }
  auto& L = out.labels;
  L.k = k;
  L.tetCount = k;
  for (std::size_t h = 0; h < k; ++h) L.sigma.push_back({h, edge_index(0, 2), edge_index(1, 3)});
  L.t = {0, 0, 2};
  L.b = {0, 3, 1};
  L.e.push_back({0, 0, 1});
  L.e.push_back({0, 0, 3});
  for (std::size_t h = 0; h < k; ++h) L.e.push_back({h, 2, 3});
  const auto sk = compute_skeleton(out.tri);
  L.tClass = sk.edge_of(L.t.tet, L.t.slot());
  L.bClass = sk.edge_of(L.b.tet, L.b.slot());
  for (const auto& oe : L.e) L.eClass.push_back(sk.edge_of(oe.tet, oe.slot()));
  return out;
}

/// Twisted layered loop: the free faces of sigma_k are folded onto the annulus
/// faces of sigma_1 with e_1 <-> -e_{k+1}, e_2 <-> -e_{k+2} and t <-> -b.
/// Labels keep the chain's tetrahedra; edge classes refer to the closed loop.
inline LabeledChain twisted_layered_loop_labeled(std::size_t k) {
  auto chain = layered_chain(k);
  const std::size_t last = k - 1;
  // t-face of sigma_k (e_{k+1} = 0->3, e_{k+2} = 2->3) onto face 013 of sigma_1
  // (e_1 = 0->1, e_2 = 0->3), reversing both.
  const Perm4 toB = detail::perm_from_pairs({{{0, 1}, {3, 0}, {2, 3}}});
  // b-face of sigma_k (e_{k+1} = 2->1, e_{k+2} = 2->3) onto face 012 of sigma_1
  // (e_1 = 0->1, e_2 = 2->1), reversing both.
  const Perm4 toT = detail::perm_from_pairs({{{2, 1}, {1, 0}, {3, 2}}});
  Triangulation loop = fold_boundary_faces(chain.tri, {last, detail::kChainTFace}, {0, toB[detail::kChainTFace]}, toB);
  loop = fold_boundary_faces(loop, {last, detail::kChainBFace}, {0, toT[detail::kChainBFace]}, toT);
  const auto sk = compute_skeleton(loop);
  auto& L = chain.labels;
  L.tClass = sk.edge_of(L.t.tet, L.t.slot());
  L.bClass = sk.edge_of(L.b.tet, L.b.slot());
  for (std::size_t i = 0; i < L.e.size(); ++i) L.eClass[i] = sk.edge_of(L.e[i].tet, L.e[i].slot());
  chain.tri = std::move(loop);
  return chain;
}

inline Triangulation twisted_layered_loop(std::size_t k) {
  if (k < 1) throw TopologyError("twisted_layered_loop: k must be at least 1");
  return twisted_layered_loop_labeled(k).tri;
}

/// Boundary edge labels (p, q, r) of a layered solid torus, p = q + r.
struct LstState {
  long p = 0, q = 0, r = 0;
  bool operator==(const LstState&) const = default;
};

/// Weight of every boundary edge of a solid torus: |[e]| in H1 = Z, read off as
/// the order of H1 with e killed.
inline std::map<std::size_t, long> boundary_edge_weights(const Triangulation& tri) {
  const auto sk = compute_skeleton(tri);
  const auto cc = chain_complex(tri, sk);
  std::map<std::size_t, long> out;
  for (std::size_t e = 0; e < sk.edges.size(); ++e) {
    if (!sk.edges[e].boundary) continue;
    std::vector<long> rel(sk.edges.size(), 0);
    rel[e] = 1;
    const auto g = homology_from(cc, {rel});
    if (g.freeRank > 0)
      out[e] = 0;
    else if (g.torsion.empty())
      out[e] = 1;
    else if (g.torsion.size() == 1)
      out[e] = g.torsion.front().convert_to<long>();
    else
      throw TopologyError("boundary_edge_weights: not a solid torus");
  }
  return out;
}

/// A layered solid torus tracked by its boundary labels.
class LayeredSolidTorus {
 public:
  /// The one-tetrahedron torus with labels (3,2,1): faces 123 and 023 glued by
  /// 0->1, 1->2, 2->3, 3->0. It is the first layering on the (2,1,1) Moebius band.
  static LayeredSolidTorus minimal() {
    Triangulation t(1);
    t.glue(0, 0, 0, Perm4(1, 2, 3, 0));
    return LayeredSolidTorus(std::move(t));
  }

  const Triangulation& triangulation() const { return tri_; }

  LstState state() const {
    std::vector<long> w;
    for (auto [e, weight] : boundary_edge_weights(tri_)) w.push_back(weight);
    if (w.size() != 3) throw TopologyError("layered solid torus: expected 3 boundary edges");
    std::sort(w.rbegin(), w.rend());
    return {w[0], w[1], w[2]};
  }

  std::size_t edge_with_label(long label) const {
    for (auto [e, weight] : boundary_edge_weights(tri_))
      if (weight == label) return e;
    throw TopologyError("layered solid torus: no boundary edge labelled " + std::to_string(label));
  }

  /// Layers on the boundary edge with the given label; it is replaced by the sum of the other two.
  void layer_on(long label) { tri_ = layer_on_boundary_edge(tri_, edge_with_label(label)); }

  /// Closes the torus by folding its two boundary faces along the edge with the given label.
  Triangulation fold_along(long label) const { return fold_along_edge(tri_, edge_with_label(label)); }

  /// Follows a sequence of states starting at (3,2,1); each step layers on the
  /// label that the next state drops.
  static LayeredSolidTorus walk(const std::vector<LstState>& sequence) {
    auto lst = minimal();
    if (sequence.empty() || !(sequence.front() == lst.state()))
      throw TopologyError("layered solid torus: sequence must start at (3,2,1)");
    for (std::size_t i = 1; i < sequence.size(); ++i) {
      const auto cur = lst.state();
      std::vector<long> have{cur.p, cur.q, cur.r}, want{sequence[i].p, sequence[i].q, sequence[i].r};
      for (long w : want)
        if (auto it = std::find(have.begin(), have.end(), w); it != have.end()) have.erase(it);
      if (have.size() != 1) throw TopologyError("layered solid torus: step is not a single layering");
      lst.layer_on(have.front());
      if (!(lst.state() == sequence[i])) throw TopologyError("layered solid torus: layering did not reach the target labels");
    }
    return lst;
  }

 private:
  explicit LayeredSolidTorus(Triangulation t) : tri_(std::move(t)) {}
  Triangulation tri_;
};

/// Label sequence (3,2,1), (5,3,2), (7,5,2), ..., (2k+1, 2k-1, 2).
inline std::vector<LstState> lens_4k_sequence(std::size_t k) {
  std::vector<LstState> seq{{3, 2, 1}};
  for (long h = 2; h <= static_cast<long>(k); ++h)
    seq.push_back(h == 2 ? LstState{5, 3, 2} : LstState{2 * h + 1, 2 * h - 1, 2});
  return seq;
}

/// Minimal layered triangulation of L(4k, 2k-1): k layerings, then a fold along the edge labelled 2.
inline Triangulation layered_lens_4k(std::size_t k) {
  if (k < 1) throw TopologyError("layered_lens_4k: k must be at least 1");
  return LayeredSolidTorus::walk(lens_4k_sequence(k)).fold_along(2);
}

/// Label sequence (3,2,1), (4,3,1), ..., (2k-1, 2k-2, 1).
inline std::vector<LstState> lens_2k1_sequence(std::size_t k) {
  std::vector<LstState> seq;
  for (long p = 3; p <= 2 * static_cast<long>(k) - 1; ++p) seq.push_back({p, p - 1, 1});
  return seq;
}

/// Layered triangulation of L(2k, 1) with 2k-3 tetrahedra: walk to
/// (2k-1, 2k-2, 1) and fold along the edge labelled 2k-2.
inline Triangulation layered_lens_2k1(std::size_t k) {
  if (k < 2) throw TopologyError("layered_lens_2k1: k must be at least 2");
  return LayeredSolidTorus::walk(lens_2k1_sequence(k)).fold_along(2 * static_cast<long>(k) - 2);
}

}  // namespace crushcover

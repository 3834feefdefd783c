#include <gtest/gtest.h>

#include "crushcover/constructions.hpp"
#include "crushcover/covers.hpp"
#include "crushcover/isosig.hpp"
#include "crushcover/moves.hpp"

using namespace crushcover;

namespace {

Cover z2k_cover(const Triangulation& base, long k) {
  for (const auto& c : nonzero_classes(cocycle_basis(base))) {
    auto cov = build_double_cover(base, c);
    if (h1_integral(cov.total) == AbelianGroup::cyclic(2 * k)) return cov;
  }
  throw std::runtime_error("no Z_2k cover");
}

}  // namespace

TEST(Layering, KeepsBoundaryFaceCountAndHomology) {
  for (std::size_t k = 2; k <= 5; ++k) {
    const auto c = layered_chain(k);
    const auto sk = compute_skeleton(c.tri);
    for (std::size_t e = 0; e < sk.edges.size(); ++e) {
      if (!sk.edges[e].boundary) continue;
      const auto l = layer_on_boundary_edge(c.tri, e);
      EXPECT_EQ(l.size(), c.tri.size() + 1);
      EXPECT_EQ(l.boundary_face_count(), 4u);
      EXPECT_EQ(h1_integral(l), h1_integral(c.tri));
    }
  }
}

TEST(Layering, SolidTorusLabels) {
  auto lst = LayeredSolidTorus::minimal();
  EXPECT_EQ(lst.state(), (LstState{3, 2, 1}));
  lst.layer_on(1);
  EXPECT_EQ(lst.state(), (LstState{5, 3, 2}));
  lst.layer_on(3);
  EXPECT_EQ(lst.state(), (LstState{7, 5, 2}));
}

TEST(Layering, ExtendsTheChain) {
  // From length 2 on, layering on e_{h+1} continues the chain.
  for (std::size_t h = 2; h <= 6; ++h) {
    const auto c = layered_chain(h);
    EXPECT_EQ(signature(layer_on_boundary_edge(c.tri, c.labels.eClass[h])), signature(layered_chain(h + 1).tri)) << h;
  }
}

TEST(Layering, RejectsInteriorEdge) {
  const auto loop = twisted_layered_loop(3);
  EXPECT_THROW(layer_on_boundary_edge(loop, 0), TopologyError);
}

TEST(Folding, ClosingTheChainGivesTheLoop) {
  for (std::size_t k = 1; k <= 8; ++k) {
    const auto loop = twisted_layered_loop_labeled(k);
    EXPECT_EQ(loop.tri.size(), k);
    EXPECT_TRUE(validate(loop.tri).pass()) << k;
    const auto& L = loop.labels;
    // e_1 ~ e_{k+1}, e_2 ~ e_{k+2}, t ~ b after the fold.
    EXPECT_EQ(L.eClass[0], L.eClass[k]);
    EXPECT_EQ(L.eClass[1], L.eClass[k + 1]);
    EXPECT_EQ(L.tClass, L.bClass);
  }
}

TEST(Folding, LensFoldAlongTwo) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto lst = LayeredSolidTorus::walk(lens_4k_sequence(k));
    const auto closed = lst.fold_along(2);
    EXPECT_EQ(closed.size(), lst.triangulation().size());
    EXPECT_TRUE(validate(closed).pass());
    EXPECT_EQ(h1_integral(closed), AbelianGroup::cyclic(4 * static_cast<long>(k)));
  }
}

TEST(Folding, RejectsSelfReversalAndBadFaces) {
  Triangulation t(1);
  // 0<->1 carries face 3 (012) onto face 2 (013) with edge 01 reversed.
  EXPECT_THROW(fold_boundary_faces(t, {0, 3}, {0, 2}, Perm4(1, 0, 3, 2)), TopologyError);
  EXPECT_THROW(fold_boundary_faces(t, {0, 3}, {0, 3}, Perm4(0, 1, 2, 3)), TopologyError);
  EXPECT_THROW(fold_boundary_faces(t, {0, 3}, {0, 2}, Perm4(0, 1, 2, 3)), TopologyError);  // does not carry 3 to 2
  const auto loop = twisted_layered_loop(2);
  EXPECT_THROW(fold_boundary_faces(loop, {0, 0}, {1, 0}, Perm4(0, 1, 2, 3)), TopologyError);
}

TEST(Crush, LensCoverOfTwoGivesOneTetrahedronL41) {
  const auto cov = z2k_cover(layered_lens_4k(2), 2);
  ASSERT_EQ(cov.total.size(), 4u);
  for (auto e : vertex_joining_edges(cov)) {
    const auto r = crush_vertex_joining_edge(cov.total, e);
    EXPECT_EQ(r.result.size(), 1u);
    EXPECT_EQ(r.tetrahedraRemoved, 3u);
    EXPECT_EQ(h1_integral(r.result), AbelianGroup::cyclic(4));
    EXPECT_EQ(signature(r.result), signature(layered_lens_4k(1)));
  }
}

TEST(Crush, LoopCoverOfFiveGivesSevenTetrahedra) {
  const auto cov = z2k_cover(twisted_layered_loop(5), 5);
  ASSERT_EQ(cov.total.size(), 10u);
  std::set<std::string> sigs;
  for (auto e : vertex_joining_edges(cov)) {
    const auto r = crush_vertex_joining_edge(cov.total, e);
    EXPECT_EQ(r.result.size(), 7u);
    EXPECT_EQ(h1_integral(r.result), AbelianGroup::cyclic(10));
    EXPECT_EQ(compute_skeleton(r.result).vertices.size(), 1u);
    EXPECT_TRUE(validate(r.result).pass());
    EXPECT_FALSE(r.identificationTrace.empty());
    sigs.insert(signature(r.result));
  }
  ASSERT_EQ(sigs.size(), 1u);
  EXPECT_EQ(*sigs.begin(), signature(layered_lens_2k1(5)));
}

TEST(Crush, PreservesHomologyAndDropsOneVertex) {
  for (long k = 2; k <= 7; ++k)
    for (const auto& base : {twisted_layered_loop(k), layered_lens_4k(k)}) {
      const auto cov = z2k_cover(base, k);
      const auto h = h1_integral(cov.total);
      for (auto e : vertex_joining_edges(cov)) {
        const auto r = crush_vertex_joining_edge(cov.total, e);
        EXPECT_EQ(h1_integral(r.result), h);
        EXPECT_EQ(r.result.size(), cov.total.size() - r.tetrahedraRemoved);
        EXPECT_EQ(compute_skeleton(r.result).vertices.size(), 1u);
      }
    }
}

TEST(Crush, RejectsLoopEdgesAndOneVertexInputs) {
  const auto cov = z2k_cover(twisted_layered_loop(5), 5);
  const auto sk = compute_skeleton(cov.total);
  std::size_t loops = 0;
  for (std::size_t e = 0; e < sk.edges.size(); ++e)
    if (sk.edges[e].tail == sk.edges[e].head) {
      ++loops;
      EXPECT_THROW(crush_vertex_joining_edge(cov.total, e), TopologyError);
    }
  EXPECT_EQ(loops, 2u);
  EXPECT_THROW(crush_vertex_joining_edge(twisted_layered_loop(3), 0), TopologyError);
  EXPECT_THROW(crush_vertex_joining_edge(cov.total, 999), TopologyError);
}

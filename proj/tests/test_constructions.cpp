#include <gtest/gtest.h>

#include "crushcover/constructions.hpp"
#include "crushcover/isosig.hpp"

using namespace crushcover;

TEST(Chain, LabelsAreConsistentWithTheSkeleton) {
  for (std::size_t k = 1; k <= 8; ++k) {
    const auto c = layered_chain(k);
    EXPECT_EQ(c.tri.size(), k);
    EXPECT_EQ(c.tri.boundary_face_count(), 4u);
    EXPECT_EQ(c.labels.k, k);
    EXPECT_EQ(c.labels.sigma.size(), k);
    EXPECT_EQ(c.labels.e.size(), k + 2);
    const auto sk = compute_skeleton(c.tri);
    for (const auto& s : c.labels.sigma) {
      EXPECT_EQ(opposite_edge(s.tSlot), s.bSlot);
      EXPECT_EQ(sk.edge_of(s.tet, s.tSlot), c.labels.tClass);
      EXPECT_EQ(sk.edge_of(s.tet, s.bSlot), c.labels.bClass);
    }
    for (std::size_t i = 0; i < c.labels.e.size(); ++i)
      EXPECT_EQ(sk.edge_of(c.labels.e[i].tet, c.labels.e[i].slot()), c.labels.eClass[i]);
  }
}

TEST(Chain, SolidTorusFromLengthTwo) {
  EXPECT_EQ(h1_integral(layered_chain(1).tri), AbelianGroup{});
  for (std::size_t k = 2; k <= 8; ++k) EXPECT_EQ(h1_integral(layered_chain(k).tri), AbelianGroup::cyclic(0));
}

TEST(Loop, CountsAndHomologyParity) {
  for (long k = 1; k <= 10; ++k) {
    const auto t = twisted_layered_loop(k);
    EXPECT_EQ(t.size(), static_cast<std::size_t>(k));
    const auto sk = compute_skeleton(t);
    EXPECT_EQ(sk.vertices.size(), 1u);
    EXPECT_TRUE(validate(t).pass());
    EXPECT_EQ(h1_integral(t), k % 2 ? AbelianGroup::cyclic(4) : AbelianGroup::from_factors({2, 2}));
  }
}

TEST(Lens, SequencesAndCounts) {
  EXPECT_EQ(lens_4k_sequence(3), (std::vector<LstState>{{3, 2, 1}, {5, 3, 2}, {7, 5, 2}}));
  EXPECT_EQ(lens_2k1_sequence(4), (std::vector<LstState>{{3, 2, 1}, {4, 3, 1}, {5, 4, 1}, {6, 5, 1}, {7, 6, 1}}));
  for (long k = 1; k <= 10; ++k) {
    const auto t = layered_lens_4k(k);
    EXPECT_EQ(t.size(), static_cast<std::size_t>(k));
    EXPECT_EQ(compute_skeleton(t).vertices.size(), 1u);
    EXPECT_TRUE(validate(t).pass());
    EXPECT_EQ(h1_integral(t), AbelianGroup::cyclic(4 * k));
  }
  for (long k = 2; k <= 10; ++k) {
    const auto t = layered_lens_2k1(k);
    EXPECT_EQ(t.size(), static_cast<std::size_t>(2 * k - 3));
    EXPECT_TRUE(validate(t).pass());
    EXPECT_EQ(h1_integral(t), AbelianGroup::cyclic(2 * k));
  }
}

TEST(Lens, SolidTorusWalkReachesEveryState) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto seq = lens_4k_sequence(k);
    const auto lst = LayeredSolidTorus::walk(seq);
    EXPECT_EQ(lst.state(), seq.back());
    EXPECT_EQ(lst.triangulation().size(), k);
    EXPECT_EQ(h1_integral(lst.triangulation()), AbelianGroup::cyclic(0));
  }
  EXPECT_THROW(LayeredSolidTorus::walk({{5, 3, 2}}), TopologyError);
  EXPECT_THROW(LayeredSolidTorus::walk({{3, 2, 1}, {9, 7, 2}}), TopologyError);
}

TEST(Constructions, RejectOutOfRangeParameters) {
  EXPECT_THROW(layered_chain(0), TopologyError);
  EXPECT_THROW(twisted_layered_loop(0), TopologyError);
  EXPECT_THROW(layered_lens_4k(0), TopologyError);
  EXPECT_THROW(layered_lens_2k1(1), TopologyError);
}

#include <gtest/gtest.h>

#include <random>

#include "crushcover/constructions.hpp"
#include "support.hpp"

using namespace crushcover;

TEST(Triangulation, GlueStoresInverseOnPartner) {
  Triangulation t(2);
  const Perm4 p(1, 0, 3, 2);
  t.glue(0, 2, 1, p);
  ASSERT_TRUE(t.gluing(0, 2));
  ASSERT_TRUE(t.gluing(1, 3));
  EXPECT_EQ(t.gluing(1, 3)->tet, 0u);
  EXPECT_EQ(t.gluing(1, 3)->perm, p.inverse());
  EXPECT_EQ(t.boundary_face_count(), 6u);
  t.unglue(1, 3);
  EXPECT_EQ(t.boundary_face_count(), 8u);
}

TEST(Triangulation, GlueRejectsBadRequests) {
  Triangulation t(2);
  EXPECT_THROW(t.glue(0, 1, 0, Perm4(0, 1, 2, 3)), TopologyError);  // face onto itself
  EXPECT_THROW(t.glue(0, 1, 5, Perm4(0, 1, 2, 3)), TopologyError);
  t.glue(0, 1, 1, Perm4(0, 1, 2, 3));
  EXPECT_THROW(t.glue(0, 1, 1, Perm4(1, 0, 2, 3)), TopologyError);  // already glued
  // Gluing two different faces of one tetrahedron is fine.
  Triangulation s(1);
  EXPECT_NO_THROW(s.glue(0, 0, 0, Perm4(1, 2, 3, 0)));
}

TEST(TriFormat, SerializationIsCanonicalAndRoundTrips) {
  for (const auto& [name, tri] : testing_support::closed_family_instances(6)) {
    const auto text = tri.to_tri();
    const auto back = Triangulation::parse_tri(text);
    EXPECT_EQ(back, tri) << name;
    EXPECT_EQ(back.to_tri(), text) << name;
  }
  EXPECT_EQ(twisted_layered_loop(1).to_tri().substr(0, 7), "tets 1\n");
  Triangulation lone(1);
  EXPECT_EQ(lone.to_tri(), "tets 1\n- - - -\n");
}

TEST(TriFormat, ParserRejectsMalformedInput) {
  const char* bad[] = {
      "",
      "tet 1\n- - - -\n",
      "tets -1\n",
      "tets 1\n- - -\n",
      "tets 1\n- - - - -\n",
      "tets 1\n0:1230 - - -\n",        // partner face 1 not glued back
      "tets 1\n0:0123 - - -\n",        // face glued to itself
      "tets 1\n1:0123 - - -\n",        // index out of range
      "tets 1\n0:1200 - - -\n",        // not a permutation
      "tets 1\nx:1230 - - -\n",
      "tets 2\n1:0123 - - -\n- - - -\n",  // asymmetric
  };
  for (const char* text : bad) EXPECT_THROW(Triangulation::parse_tri(text), TopologyError) << text;
  EXPECT_NO_THROW(Triangulation::parse_tri("tets 1\n0:1230 0:3012 - -\n"));
}

TEST(Relabel, PreservesGluingStructure) {
  std::mt19937 rng(7);
  const auto base = twisted_layered_loop(4);
  for (int i = 0; i < 50; ++i) {
    const auto r = testing_support::random_relabel(base, rng);
    EXPECT_FALSE(r.tri.structural_defect().has_value());
    EXPECT_EQ(r.tri.boundary_face_count(), 0u);
    // Undoing the relabeling returns the original table.
    std::vector<std::size_t> inv(base.size());
    std::vector<Perm4> invPerms(base.size());
    for (std::size_t t = 0; t < base.size(); ++t) {
      inv[r.tets[t]] = t;
      invPerms[r.tets[t]] = r.perms[t].inverse();
    }
    EXPECT_EQ(relabel(r.tri, inv, invPerms), base);
  }
}

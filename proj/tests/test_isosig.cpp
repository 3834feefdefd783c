#include <gtest/gtest.h>

#include <random>

#include "crushcover/constructions.hpp"
#include "crushcover/isosig.hpp"
#include "support.hpp"

using namespace crushcover;

TEST(Signature, InvariantUnderRandomRelabelings) {
  std::mt19937 rng(2024);
  for (const auto& [name, tri] : testing_support::closed_family_instances(6)) {
    const auto sig = signature(tri);
    for (int i = 0; i < 200; ++i) EXPECT_EQ(signature(testing_support::random_relabel(tri, rng).tri), sig) << name;
  }
}

TEST(Signature, DecodesToAnIsomorphicTriangulation) {
  for (const auto& [name, tri] : testing_support::closed_family_instances(6)) {
    const auto sig = signature(tri);
    const auto back = from_signature(sig);
    EXPECT_EQ(back.size(), tri.size());
    EXPECT_EQ(signature(back), sig) << name;
    EXPECT_TRUE(find_isomorphism(tri, back).has_value()) << name;
  }
  // Bounded and disconnected inputs too.
  const auto chain = layered_chain(3).tri;
  EXPECT_EQ(signature(from_signature(signature(chain))), signature(chain));
  Triangulation two(2);
  EXPECT_EQ(signature(from_signature(signature(two))), signature(two));
}

TEST(Signature, KnownEqualitiesAndDifferences) {
  EXPECT_EQ(signature(twisted_layered_loop(1)), signature(layered_lens_4k(1)));
  EXPECT_NE(signature(twisted_layered_loop(3)), signature(layered_lens_4k(3)));
  EXPECT_FALSE(find_isomorphism(twisted_layered_loop(2), layered_lens_4k(2)).has_value());
}

TEST(Signature, UsesThePrintableAlphabet) {
  for (const auto& [name, tri] : testing_support::closed_family_instances(4))
    for (char c : signature(tri)) EXPECT_NE(detail::kSigAlphabet.find(c), std::string_view::npos) << name;
}

TEST(FindIsomorphism, IdentityAndRelabelingWitnesses) {
  const auto t = layered_lens_4k(5);
  const auto self = find_isomorphism(t, t);
  ASSERT_TRUE(self.has_value());
  EXPECT_TRUE(is_isomorphism(t, t, *self));

  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto r = testing_support::random_relabel(t, rng);
    // The relabeling itself is a ground-truth isomorphism.
    EXPECT_TRUE(is_isomorphism(t, r.tri, Isomorphism{r.tets, r.perms}));
    const auto iso = find_isomorphism(t, r.tri);
    ASSERT_TRUE(iso.has_value());
    EXPECT_TRUE(is_isomorphism(t, r.tri, *iso));
  }
}

TEST(FindIsomorphism, SucceedsExactlyWhenSignaturesAgree) {
  const auto all = testing_support::closed_family_instances(6);
  for (const auto& [na, a] : all)
    for (const auto& [nb, b] : all) {
      const bool same = signature(a) == signature(b);
      const auto iso = find_isomorphism(a, b);
      EXPECT_EQ(iso.has_value(), same) << na << " vs " << nb;
      if (iso) { EXPECT_TRUE(is_isomorphism(a, b, *iso)); }
    }
}

TEST(FindIsomorphism, BrokenWitnessIsRejected) {
  const auto t = twisted_layered_loop(3);
  auto iso = *find_isomorphism(t, t);
  iso.perms[0] = iso.perms[0] * Perm4::swap(0, 1);
  EXPECT_FALSE(is_isomorphism(t, t, iso));
}

#include <gtest/gtest.h>

#include <random>

#include "gysin/gset.hpp"
#include "oracles.hpp"

using namespace gysin;

TEST(Group, CyclicTables) {
  EXPECT_EQ(cyclic_group(1)->table(), (std::vector<std::vector<int>>{{0}}));
  EXPECT_EQ(cyclic_group(2)->table(), (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));
  auto z8 = cyclic_group(8);
  EXPECT_EQ(z8->order(), 8);
  EXPECT_EQ(z8->mul(5, 6), 3);
  EXPECT_TRUE(z8->is_cyclic());
  EXPECT_THROW(cyclic_group(0), std::invalid_argument);
}

TEST(Group, RejectsBadTables) {
  EXPECT_THROW(FiniteGroup({{1, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup({{0, 1, 2}, {1, 2, 0}, {2, 0, 2}}), std::invalid_argument);
}

TEST(Group, SymmetricGroupAxioms) {
  auto s3 = symmetric_group(3);
  EXPECT_EQ(s3->order(), 6);
  EXPECT_FALSE(s3->is_abelian());
  for (int x = 0; x < 6; ++x) EXPECT_EQ(s3->mul(x, s3->inv(x)), 0);
  // S3 has 6 subgroups: trivial, three of order 2, A3, itself.
  EXPECT_EQ(s3->subgroups().size(), 6u);
}

TEST(GSet, ActionAxiomsChecked) {
  auto z2 = cyclic_group(2);
  EXPECT_THROW(GSet(z2, 2, {0, 1, 0, 0}), std::invalid_argument);
  EXPECT_NO_THROW(GSet(z2, 2, {0, 1, 1, 0}));
}

TEST(GSet, ProductOfRegularZ2HasTwoFreeOrbits) {
  auto z2 = cyclic_group(2);
  auto g = regular_gset(z2);
  auto p = product_gset(g, g);
  EXPECT_EQ(p.object.size(), 4);
  EXPECT_EQ(oracle::orbit_sizes(p.object), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(p.object.orbit_count(), 2);
  EXPECT_EQ(product_object(empty_gset(z2), g).size(), 0);
}

TEST(GSet, ProductMismatchedGroups) {
  EXPECT_THROW(product_gset(regular_gset(cyclic_group(2)), regular_gset(cyclic_group(3))), std::invalid_argument);
  EXPECT_THROW(coproduct_gset(regular_gset(cyclic_group(2)), regular_gset(cyclic_group(3))), std::invalid_argument);
}

TEST(GSet, CoproductLayout) {
  auto z4 = cyclic_group(4);
  auto a = coset_gset(z4, z4->closure({2}));
  auto b = regular_gset(z4);
  auto s = coproduct_gset(a, b);
  EXPECT_EQ(s.object.size(), 6);
  EXPECT_EQ(s.object.orbit_count(), 2);
  auto e = coproduct_gset(b, empty_gset(z4));
  EXPECT_EQ(e.object, b);
}

TEST(GSet, CoproductPullbackSquares) {
  auto z4 = cyclic_group(4);
  auto x = coset_gset(z4, z4->closure({2}));
  auto y = regular_gset(z4);
  auto s = coproduct_gset(x, y);
  auto pxx = pullback_gset(s.first, s.first);
  auto pyy = pullback_gset(s.second, s.second);
  auto pxy = pullback_gset(s.first, s.second);
  EXPECT_TRUE(iso_test(pxx.object, x).has_value());
  EXPECT_TRUE(iso_test(pyy.object, y).has_value());
  EXPECT_EQ(pxy.object.size(), 0);
}

TEST(GSet, PullbackAlongIdentityIsDiagonal) {
  auto z4 = cyclic_group(4);
  auto c = coproduct_gset(regular_gset(z4), coset_gset(z4, z4->closure({2}))).object;
  auto pb = pullback_gset(identity_map(c), identity_map(c));
  EXPECT_EQ(pb.object, c);
  EXPECT_EQ(pb.p, identity_map(c));
}

TEST(GSet, PullbackOfOrbitProjections) {
  auto z2 = cyclic_group(2);
  auto pi = terminal_map(regular_gset(z2));
  auto pb = pullback_gset(pi, pi);
  EXPECT_EQ(oracle::orbit_sizes(pb.object), (std::vector<std::size_t>{2, 2}));
}

TEST(GSet, PullbackMismatchedCodomain) {
  auto z2 = cyclic_group(2);
  auto g = regular_gset(z2);
  EXPECT_THROW(pullback_gset(identity_map(g), terminal_map(g)), std::invalid_argument);
}

TEST(GSet, OrbitDecompose) {
  auto z4 = cyclic_group(4);
  EXPECT_TRUE(orbit_decompose(empty_gset(z4)).empty());
  EXPECT_EQ(orbit_decompose(regular_gset(z4)).size(), 1u);
  auto x = coproduct_gset(regular_gset(z4), coset_gset(z4, z4->closure({2}))).object;
  auto orbs = orbit_decompose(x);
  ASSERT_EQ(orbs.size(), 2u);
  EXPECT_EQ(orbs[0].set.size(), 4);
  EXPECT_EQ(orbs[1].set.size(), 2);
  EXPECT_EQ(oracle::orbit_sizes(x), (std::vector<std::size_t>{4, 2}));
  for (const auto& o : orbs) EXPECT_TRUE(o.set.is_transitive());
}

TEST(GSet, HomSetsMatchBruteForce) {
  std::mt19937_64 rng(7);
  for (auto g : {cyclic_group(2), cyclic_group(4), symmetric_group(3)}) {
    for (int trial = 0; trial < 12; ++trial) {
      auto x = oracle::random_gset(g, rng, 2);
      auto y = oracle::random_gset(g, rng, 2);
      if (x.size() > 7 || y.size() > 7) continue;
      auto homs = hom_set(x, y);
      auto brute = oracle::all_equivariant_tables(x, y);
      ASSERT_EQ(homs.size(), brute.size());
      for (std::size_t i = 0; i < homs.size(); ++i) EXPECT_EQ(homs[i].table(), brute[i]);
    }
  }
}

TEST(GSet, HomSetBasics) {
  auto z2 = cyclic_group(2);
  EXPECT_EQ(hom_set(regular_gset(z2), regular_gset(z2)).size(), 2u);
  EXPECT_TRUE(hom_set(regular_gset(z2), empty_gset(z2)).empty());
}

TEST(GSet, AutGroups) {
  for (int n = 1; n <= 6; ++n) {
    auto g = cyclic_group(n);
    auto auts = aut_group(regular_gset(g));
    EXPECT_EQ(static_cast<int>(auts.size()), n);
    for (const auto& a : auts) {
      bool inv_found = false;
      for (const auto& b : auts) {
        EXPECT_NE(std::find(auts.begin(), auts.end(), compose(a, b)), auts.end());
        if (compose(a, b) == identity_map(a.src())) inv_found = true;
      }
      EXPECT_TRUE(inv_found);
    }
  }
  auto z4 = cyclic_group(4);
  EXPECT_EQ(aut_group(coset_gset(z4, z4->closure({2}))).size(), 2u);
  EXPECT_EQ(aut_group(terminal_gset(z4)).size(), 1u);
}

TEST(GSet, Galois) {
  auto z8 = cyclic_group(8);
  for (const auto& h : z8->subgroups()) EXPECT_TRUE(is_galois(coset_gset(z8, h)));
  auto s3 = symmetric_group(3);
  EXPECT_TRUE(is_galois(regular_gset(s3)));
  Subgroup order_two;
  for (const auto& h : s3->subgroups())
    if (h.size() == 2) {
      order_two = h;
      break;
    }
  auto x = coset_gset(s3, order_two);
  EXPECT_EQ(aut_group(x).size(), 1u);
  EXPECT_FALSE(is_galois(x));
  EXPECT_FALSE(is_galois(empty_gset(z8)));
  EXPECT_FALSE(is_galois(coproduct_gset(terminal_gset(z8), terminal_gset(z8)).object));
}

TEST(GSet, IsoTest) {
  auto z4 = cyclic_group(4);
  auto a = coset_gset(z4, z4->closure({2}));
  auto b = regular_gset(z4);
  auto ab = coproduct_gset(a, b).object;
  auto ba = coproduct_gset(b, a).object;
  EXPECT_EQ(*iso_test(ab, ab), identity_map(ab));
  auto iso = iso_test(ab, ba);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(iso->is_iso());
  EXPECT_FALSE(iso_test(a, b).has_value());
  EXPECT_FALSE(iso_test(coproduct_gset(a, a).object, b).has_value());
}

// Exactly one mediating map for every cone over a random cospan.
TEST(GSet, PullbackUniversalProperty) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (auto g : {cyclic_group(2), cyclic_group(4), symmetric_group(3)}) {
    for (int done = 0; done < 34;) {
      auto c = oracle::random_gset(g, rng, 2);
      auto a = oracle::random_gset(g, rng, 2);
      auto b = oracle::random_gset(g, rng, 2);
      auto fa = hom_set(a, c), gb = hom_set(b, c);
      if (fa.empty() || gb.empty()) continue;
      const auto& f = fa[rng() % fa.size()];
      const auto& gg = gb[rng() % gb.size()];
      auto pb = pullback_gset(f, gg);
      if (pb.object.size() > 12) continue;
      auto t = oracle::random_gset(g, rng, 1);
      for (const auto& u : hom_set(t, a))
        for (const auto& v : hom_set(t, b)) {
          if (!(compose(f, u) == compose(gg, v))) continue;
          int mediating = 0;
          for (const auto& m : hom_set(t, pb.object))
            if (compose(pb.p, m) == u && compose(pb.q, m) == v) ++mediating;
          EXPECT_EQ(mediating, 1);
        }
      ++done;
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
}

// (A x_X P1) + (A x_X P2) is isomorphic to A x_X (P1 + P2).
TEST(GSet, PullbackDistributesOverCoproduct) {
  std::mt19937_64 rng(13);
  for (auto g : {cyclic_group(2), cyclic_group(4), symmetric_group(3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto x = oracle::random_gset(g, rng, 2);
      auto a = oracle::random_gset(g, rng, 2);
      auto p1 = oracle::random_gset(g, rng, 1);
      auto p2 = oracle::random_gset(g, rng, 1);
      auto ha = hom_set(a, x), h1 = hom_set(p1, x), h2 = hom_set(p2, x);
      if (ha.empty() || h1.empty() || h2.empty()) continue;
      const auto& fa = ha[rng() % ha.size()];
      const auto& f1 = h1[rng() % h1.size()];
      const auto& f2 = h2[rng() % h2.size()];
      auto s = coproduct_gset(p1, p2);
      std::vector<int> t(s.object.size());
      for (int i = 0; i < p1.size(); ++i) t[i] = f1(i);
      for (int i = 0; i < p2.size(); ++i) t[p1.size() + i] = f2(i);
      GMap f12(s.object, x, t);
      auto lhs = coproduct_gset(pullback_gset(fa, f1).object, pullback_gset(fa, f2).object).object;
      auto rhs = pullback_gset(fa, f12).object;
      EXPECT_TRUE(iso_test(lhs, rhs).has_value());
    }
  }
}

// Orbits of Z/8 and Z/12: hom-sets into Galois Y are
// torsors, parallel pullbacks split over {s : f = g s}, X x Y splits into
// |Aut Y| copies of X when X maps to Y.
TEST(GSet, GaloisTargetsSplitProductsAndPullbacks) {
  for (int n : {8, 12}) {
    auto g = cyclic_group(n);
    std::vector<GSet> orbs;
    for (const auto& h : g->subgroups()) orbs.push_back(coset_gset(g, h));
    for (const auto& x : orbs) {
      for (const auto& y : orbs) {
        auto homs = hom_set(x, y);
        auto auts = aut_group(y);
        if (homs.empty()) continue;
        EXPECT_EQ(homs.size(), auts.size());
        for (const auto& s : auts) {
          std::set<std::vector<int>> moved;
          for (const auto& f : homs) moved.insert(compose(s, f).table());
          EXPECT_EQ(moved.size(), homs.size());
        }
        const auto& f = homs.front();
        for (const auto& gg : homs) {
          std::size_t agreeing = 0;
          for (const auto& s : aut_group(x))
            if (compose(gg, s) == f) ++agreeing;
          EXPECT_EQ(static_cast<std::size_t>(pullback_gset(f, gg).object.size()), agreeing * x.size());
        }
        auto prod = product_gset(x, y).object;
        EXPECT_EQ(static_cast<std::size_t>(prod.orbit_count()), auts.size());
        for (int i = 0; i < prod.orbit_count(); ++i) EXPECT_EQ(prod.orbit(i).size(), static_cast<std::size_t>(x.size()));
      }
    }
  }
}

// For atomic X the map hom(X,Y) + hom(X,Z) -> hom(X, Y + Z) is a bijection.
TEST(GSet, HomIntoCoproductIsDisjointUnion) {
  std::mt19937_64 rng(17);
  for (auto g : {cyclic_group(4), symmetric_group(3)}) {
    for (const auto& h : g->subgroups()) {
      auto x = coset_gset(g, h);
      auto y = oracle::random_gset(g, rng, 2);
      auto z = oracle::random_gset(g, rng, 2);
      auto s = coproduct_gset(y, z);
      std::set<std::vector<int>> images;
      for (const auto& f : hom_set(x, y)) images.insert(compose(s.first, f).table());
      for (const auto& f : hom_set(x, z)) images.insert(compose(s.second, f).table());
      std::set<std::vector<int>> all;
      for (const auto& f : hom_set(x, s.object)) all.insert(f.table());
      EXPECT_EQ(images, all);
      EXPECT_EQ(images.size(), hom_set(x, y).size() + hom_set(x, z).size());
    }
  }
}

#include <gtest/gtest.h>

#include "gysin/verify.hpp"
#include "mutants.hpp"

using namespace gysin;

namespace {

void expect_all_pass(const VerifyReport& r) {
  for (const auto& a : r.results) {
    EXPECT_TRUE(a.pass) << a.axiom << ": " << a.counterexample.dump();
    EXPECT_GT(a.instances, 0) << a.axiom;
  }
}

}  // namespace

TEST(Verify, BurnsideZ2) { expect_all_pass(verify_gysin_axioms(BurnsideFunctor{}, cyclic_group(2))); }
TEST(Verify, BurnsideZ4) { expect_all_pass(verify_gysin_axioms(BurnsideFunctor{}, cyclic_group(4))); }
TEST(Verify, BurnsideS3) { expect_all_pass(verify_gysin_axioms(BurnsideFunctor{}, symmetric_group(3), {100, 2})); }
TEST(Verify, GWZ8) { expect_all_pass(verify_gysin_axioms(GWFiniteFieldFunctor(3), cyclic_group(8))); }
TEST(Verify, GWZ6Prime5) { expect_all_pass(verify_gysin_axioms(GWFiniteFieldFunctor(5), cyclic_group(6))); }
TEST(Verify, GWRealComplex) { expect_all_pass(verify_gysin_axioms(GWRealComplexFunctor{}, cyclic_group(2))); }

TEST(Verify, ReportShape) {
  auto r = verify_gysin_axioms(BurnsideFunctor{}, cyclic_group(2), {5, 2}, 42);
  auto j = r.to_json();
  EXPECT_EQ(j["seed"], 42);
  for (const char* ax : {"zero", "sum", "push-product", "push-pull", "projection-formula", "gysin-product"})
    EXPECT_NE(r.find(ax), nullptr) << ax;
  for (const auto& e : j["results"]) {
    EXPECT_EQ(e["status"], "pass");
    EXPECT_TRUE(e["counterexample"].is_null());
  }
}

TEST(Verify, Deterministic) {
  auto a = verify_gysin_axioms(GWFiniteFieldFunctor(3), cyclic_group(4), {20, 2}, 9).to_json();
  auto b = verify_gysin_axioms(GWFiniteFieldFunctor(3), cyclic_group(4), {20, 2}, 9).to_json();
  EXPECT_EQ(a, b);
}

TEST(Verify, UnsupportedGroup) {
  EXPECT_THROW(verify_gysin_axioms(GWFiniteFieldFunctor(3), symmetric_group(3)), std::invalid_argument);
}

TEST(Verify, BrokenPushforwardIsCaught) {
  for (auto g : {cyclic_group(2), cyclic_group(4)}) {
    auto r = verify_gysin_axioms(mutant::BrokenPushforward<BurnsideFunctor>{}, g);
    const auto* pp = r.find("push-pull");
    ASSERT_NE(pp, nullptr);
    EXPECT_FALSE(pp->pass);
    EXPECT_TRUE(pp->counterexample.contains("f"));
    EXPECT_TRUE(pp->counterexample.contains("g"));
  }
  auto r = verify_gysin_axioms(mutant::BrokenPushforward<GWFiniteFieldFunctor>(3), cyclic_group(8));
  EXPECT_FALSE(r.find("push-pull")->pass);
}

// chi : A -> E is a natural ring map.
template <GysinFunctor F>
void check_chi(const F& e, const GroupPtr& g, std::uint64_t seed) {
  BurnsideFunctor a;
  Rng rng(seed);
  for (int it = 0; it < 100; ++it) {
    const GSet x = random_gset(g, rng, 2);
    const auto u = a.random_element(x, rng), v = a.random_element(x, rng);
    EXPECT_EQ(chi(e, a.add(u, v)), e.add(chi(e, u), chi(e, v)));
    EXPECT_EQ(chi(e, a.mul(u, v)), e.mul(chi(e, u), chi(e, v)));
    EXPECT_EQ(chi(e, a.one(x)), e.one(x));
    const GMap f = random_map_into(x, rng);
    const auto w = a.random_element(f.src(), rng);
    EXPECT_EQ(chi(e, a.pullback(f, u)), e.pullback(f, chi(e, u)));
    EXPECT_EQ(chi(e, a.pushforward(f, w)), e.pushforward(f, chi(e, w)));
  }
}

TEST(Chi, NaturalRingMapBurnside) {
  check_chi(BurnsideFunctor{}, cyclic_group(4), 1);
  check_chi(BurnsideFunctor{}, symmetric_group(3), 2);
}
TEST(Chi, NaturalRingMapGW) { check_chi(GWFiniteFieldFunctor(3), cyclic_group(8), 3); }
TEST(Chi, NaturalRingMapReal) { check_chi(GWRealComplexFunctor{}, cyclic_group(2), 4); }

TEST(Chi, IdentityOnBurnside) {
  BurnsideFunctor a;
  Rng rng(8);
  for (int it = 0; it < 50; ++it) {
    auto x = random_gset(symmetric_group(3), rng, 2);
    auto u = a.random_element(x, rng);
    EXPECT_EQ(chi(a, u), u);
  }
}

TEST(Chi, SumOfMapsPushesToSum) {
  BurnsideFunctor a;
  GWFiniteFieldFunctor e(3);
  Rng rng(6);
  auto g = cyclic_group(8);
  for (int it = 0; it < 50; ++it) {
    auto x = random_gset(g, rng, 2);
    GMap f = random_map_into(x, rng), h = random_map_into(x, rng);
    auto s = coproduct_gset(f.src(), h.src());
    std::vector<int> t(s.object.size());
    for (int i = 0; i < f.src().size(); ++i) t[i] = f(i);
    for (int i = 0; i < h.src().size(); ++i) t[f.src().size() + i] = h(i);
    GMap fh(s.object, x, t);
    EXPECT_EQ(e.pushforward(fh, e.one(s.object)),
              e.add(e.pushforward(f, e.one(f.src())), e.pushforward(h, e.one(h.src()))));
    EXPECT_EQ(a.pushforward(fh, a.one(s.object)),
              a.add(a.pushforward(f, a.one(f.src())), a.pushforward(h, a.one(h.src()))));
  }
}

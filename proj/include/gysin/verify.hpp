#pragma once

// Randomized checks of the Gysin functor axioms and their standard
// consequences. Each check runs on freshly drawn G-sets, maps and elements;
// the first failure of an axiom is kept as a JSON counterexample.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gysin/functor.hpp"
#include "gysin/serialize.hpp"

namespace gysin {

/// Disjoint union of 1..max_orbits coset spaces G/H, H uniform over all subgroups.
inline GSet random_gset(const GroupPtr& g, Rng& rng, int max_orbits = 3) {
  const auto& subs = g->subgroups();
  std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
  std::uniform_int_distribution<int> count(1, max_orbits);
  GSet x = empty_gset(g);
  for (int i = count(rng); i > 0; --i) x = coproduct_gset(x, coset_gset(g, subs[pick(rng)])).object;
  return x;
}

/// A uniformly random equivariant map X -> Y, if one exists.
inline std::optional<GMap> random_map(const GSet& x, const GSet& y, Rng& rng) {
  std::vector<int> table(x.size());
  for (int i = 0; i < x.orbit_count(); ++i) {
    const int rep = x.orbit(i).front();
    const Subgroup stab = x.stabilizer(rep);
    std::vector<int> cand;
    for (int v = 0; v < y.size(); ++v)
      if (y.fixed_by(stab, v)) cand.push_back(v);
    if (cand.empty()) return std::nullopt;
    const int v = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
    for (int g = 0; g < x.group().order(); ++g) table[x.act(g, rep)] = y.act(g, v);
  }
  return GMap(x, y, std::move(table), GMap::Unchecked{});
}

/// A random G-set over `y`: random source, random map. Retries until a map exists.
inline GMap random_map_into(const GSet& y, Rng& rng, int max_orbits = 2) {
  if (y.empty()) return GMap(empty_gset(y.group_ptr()), y, {}, GMap::Unchecked{});
  while (true) {
    GSet x = random_gset(y.group_ptr(), rng, max_orbits);
    if (auto f = random_map(x, y, rng)) return *f;
  }
}

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  int instances = 0;
  json counterexample;  // null when pass
};

struct VerifyReport {
  std::uint64_t seed = kDefaultSeed;
  std::vector<AxiomResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }

  const AxiomResult* find(const std::string& axiom) const {
    for (const auto& r : results)
      if (r.axiom == axiom) return &r;
    return nullptr;
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& r : results) {
      json j{{"axiom", r.axiom}, {"status", r.pass ? "pass" : "fail"}, {"instances", r.instances}};
      j["counterexample"] = r.counterexample;
      arr.push_back(std::move(j));
    }
    return {{"seed", seed}, {"results", arr}};
  }
};

struct VerifyBudget {
  int iters = 100;
  int max_orbits = 3;
};

namespace detail {

class AxiomRecorder {
 public:
  explicit AxiomRecorder(std::string name) { r_.axiom = std::move(name); }
  void check(bool ok, const std::function<json()>& witness) {
    ++r_.instances;
    if (!ok && r_.pass) {
      r_.pass = false;
      r_.counterexample = witness();
    }
  }
  AxiomResult result() const { return r_; }

 private:
  AxiomResult r_;
};

}  // namespace detail

template <GysinFunctor F>
VerifyReport verify_gysin_axioms(const F& e, const GroupPtr& g, VerifyBudget budget = {}, std::uint64_t seed = kDefaultSeed) {
  if (!e.supports(g)) throw std::invalid_argument("verify: functor " + e.name() + " does not support group " + g->name());
  Rng rng(seed);
  VerifyReport report;
  report.seed = seed;
  auto ej = [](const auto& a) { return element_to_json(a); };
  auto mj = [](const GMap& f) { return gmap_to_json(f); };

  {
    detail::AxiomRecorder r("zero");
    const GSet empty = empty_gset(g);
    r.check(e.zero(empty) == e.one(empty), [&] { return json{{"object", gset_to_json(empty)}}; });
    report.results.push_back(r.result());
  }

  // i_X^* x i_Y^* : E(X + Y) -> E(X) x E(Y) is a ring isomorphism.
  {
    detail::AxiomRecorder r("sum");
    for (int it = 0; it < budget.iters; ++it) {
      const GSet x = random_gset(g, rng, budget.max_orbits), y = random_gset(g, rng, budget.max_orbits);
      const auto s = coproduct_gset(x, y);
      const auto a = e.random_element(s.object, rng), b = e.random_element(s.object, rng);
      const auto u = e.random_element(x, rng);
      const auto v = e.random_element(y, rng);
      const bool ring_map = e.pullback(s.first, e.mul(a, b)) == e.mul(e.pullback(s.first, a), e.pullback(s.first, b)) &&
                            e.pullback(s.second, e.add(a, b)) == e.add(e.pullback(s.second, a), e.pullback(s.second, b)) &&
                            e.pullback(s.first, e.one(s.object)) == e.one(x);
      const auto glued = e.add(e.pushforward(s.first, u), e.pushforward(s.second, v));
      const bool onto = e.pullback(s.first, glued) == u && e.pullback(s.second, glued) == v;
      const bool injective =
          e.add(e.pushforward(s.first, e.pullback(s.first, a)), e.pushforward(s.second, e.pullback(s.second, a))) == a;
      r.check(ring_map && onto && injective, [&] {
        return json{{"x", gset_to_json(x)}, {"y", gset_to_json(y)}, {"a", ej(a)}, {"b", ej(b)}, {"u", ej(u)}, {"v", ej(v)}};
      });
    }
    report.results.push_back(r.result());
  }

  // (f x g)_!(a (x) b) = f_!(a) (x) g_!(b).
  {
    detail::AxiomRecorder r("push-product");
    for (int it = 0; it < budget.iters; ++it) {
      const GMap f = random_map_into(random_gset(g, rng, 2), rng);
      const GMap h = random_map_into(random_gset(g, rng, 2), rng);
      const auto a = e.random_element(f.src(), rng);
      const auto b = e.random_element(h.src(), rng);
      const auto lhs = e.pushforward(product_map(f, h), external_product(e, a, b));
      const auto rhs = external_product(e, e.pushforward(f, a), e.pushforward(h, b));
      r.check(lhs == rhs, [&] { return json{{"f", mj(f)}, {"g", mj(h)}, {"a", ej(a)}, {"b", ej(b)}}; });
    }
    report.results.push_back(r.result());
  }

  // For the pullback P of A -f-> C <-g- B with p : P -> A, q : P -> B: g^* f_! = q_! p^*.
  {
    detail::AxiomRecorder r("push-pull");
    for (int it = 0; it < budget.iters; ++it) {
      const GSet c = random_gset(g, rng, 2);
      const GMap f = random_map_into(c, rng), h = random_map_into(c, rng);
      const auto pb = pullback_gset(f, h);
      const auto a = e.random_element(f.src(), rng);
      const auto lhs = e.pullback(h, e.pushforward(f, a));
      const auto rhs = e.pushforward(pb.q, e.pullback(pb.p, a));
      r.check(lhs == rhs, [&] { return json{{"f", mj(f)}, {"g", mj(h)}, {"a", ej(a)}}; });
    }
    report.results.push_back(r.result());
  }

  // f_!(a . f^* b) = f_!(a) . b.
  {
    detail::AxiomRecorder r("projection-formula");
    for (int it = 0; it < budget.iters; ++it) {
      const GMap f = random_map_into(random_gset(g, rng, 2), rng);
      const auto a = e.random_element(f.src(), rng);
      const auto b = e.random_element(f.dst(), rng);
      const auto lhs = e.pushforward(f, e.mul(a, e.pullback(f, b)));
      const auto rhs = e.mul(e.pushforward(f, a), b);
      r.check(lhs == rhs, [&] { return json{{"f", mj(f)}, {"a", ej(a)}, {"b", ej(b)}}; });
    }
    report.results.push_back(r.result());
  }

  // (f x_X g)_!(1) = f_!(1) . g_!(1).
  {
    detail::AxiomRecorder r("gysin-product");
    for (int it = 0; it < budget.iters; ++it) {
      const GSet x = random_gset(g, rng, 2);
      const GMap f = random_map_into(x, rng), h = random_map_into(x, rng);
      const auto pb = pullback_gset(f, h);
      const GMap diag = compose(f, pb.p);
      const auto lhs = e.pushforward(diag, e.one(pb.object));
      const auto rhs = e.mul(e.pushforward(f, e.one(f.src())), e.pushforward(h, e.one(h.src())));
      r.check(lhs == rhs, [&] { return json{{"f", mj(f)}, {"g", mj(h)}}; });
    }
    report.results.push_back(r.result());
  }

  // (g f)^* = f^* g^*, (g f)_! = g_! f_!, and identities act trivially.
  {
    detail::AxiomRecorder r("functoriality");
    for (int it = 0; it < budget.iters; ++it) {
      const GMap h = random_map_into(random_gset(g, rng, 2), rng);
      const GMap f = random_map_into(h.src(), rng);
      const GMap hf = compose(h, f);
      const auto a = e.random_element(f.src(), rng);
      const auto c = e.random_element(h.dst(), rng);
      const bool ok = e.pullback(hf, c) == e.pullback(f, e.pullback(h, c)) &&
                      e.pushforward(hf, a) == e.pushforward(h, e.pushforward(f, a)) &&
                      e.pullback(identity_map(f.src()), a) == a && e.pushforward(identity_map(f.src()), a) == a;
      r.check(ok, [&] { return json{{"f", mj(f)}, {"g", mj(h)}, {"a", ej(a)}, {"c", ej(c)}}; });
    }
    report.results.push_back(r.result());
  }

  // f^* is a ring map.
  {
    detail::AxiomRecorder r("pullback-ring-map");
    for (int it = 0; it < budget.iters; ++it) {
      const GMap f = random_map_into(random_gset(g, rng, 2), rng);
      const auto a = e.random_element(f.dst(), rng), b = e.random_element(f.dst(), rng);
      const bool ok = e.pullback(f, e.mul(a, b)) == e.mul(e.pullback(f, a), e.pullback(f, b)) &&
                      e.pullback(f, e.add(a, b)) == e.add(e.pullback(f, a), e.pullback(f, b)) &&
                      e.pullback(f, e.one(f.dst())) == e.one(f.src());
      r.check(ok, [&] { return json{{"f", mj(f)}, {"a", ej(a)}, {"b", ej(b)}}; });
    }
    report.results.push_back(r.result());
  }

  return report;
}

}  // namespace gysin

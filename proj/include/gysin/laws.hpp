#pragma once

// Category laws of C_E checked on random instances, reported in the same
// shape as the axiom suite.

#include "gysin/correspondence.hpp"
#include "gysin/verify.hpp"

namespace gysin {

template <GysinFunctor F>
VerifyReport verify_category_laws(const F& e, const GroupPtr& g, VerifyBudget budget = {}, std::uint64_t seed = kDefaultSeed) {
  if (!e.supports(g)) throw std::invalid_argument("verify: functor " + e.name() + " does not support group " + g->name());
  Rng rng(seed);
  VerifyReport report;
  report.seed = seed;
  const int mo = std::min(budget.max_orbits, 2);
  auto cj = [&](const Correspondence<F>& c) { return correspondence_to_json(e, c); };
  auto mj = [](const GMap& f) { return gmap_to_json(f); };
  auto rand_corr = [&](const GSet& dom, const GSet& cod) {
    return Correspondence<F>{dom, cod, e.random_element(product_object(cod, dom), rng)};
  };
  auto record = [&](const char* name, auto&& body) {
    detail::AxiomRecorder r(name);
    for (int it = 0; it < budget.iters; ++it) body(r);
    report.results.push_back(r.result());
  };

  record("associativity", [&](detail::AxiomRecorder& r) {
    const GSet a = random_gset(g, rng, mo), b = random_gset(g, rng, mo), c = random_gset(g, rng, mo), d = random_gset(g, rng, mo);
    const auto f = rand_corr(a, b), h = rand_corr(b, c), k = rand_corr(c, d);
    r.check(compose(e, compose(e, k, h), f) == compose(e, k, compose(e, h, f)),
            [&] { return json{{"f", cj(f)}, {"g", cj(h)}, {"h", cj(k)}}; });
  });
  record("identity", [&](detail::AxiomRecorder& r) {
    const GSet a = random_gset(g, rng, mo), b = random_gset(g, rng, mo);
    const auto f = rand_corr(a, b);
    r.check(compose(e, f, identity(e, a)) == f && compose(e, identity(e, b), f) == f, [&] { return json{{"f", cj(f)}}; });
  });
  // (g o f)^* = f^* o g^*.
  record("dual-of-composite", [&](detail::AxiomRecorder& r) {
    const GSet a = random_gset(g, rng, mo), b = random_gset(g, rng, mo), c = random_gset(g, rng, mo);
    const auto f = rand_corr(a, b), h = rand_corr(b, c);
    r.check(dual_star(e, compose(e, h, f)) == compose(e, dual_star(e, f), dual_star(e, h)),
            [&] { return json{{"f", cj(f)}, {"g", cj(h)}}; });
  });
  // a o R_f = (id x f)^* a, R_g o a = (g x id)_! a, a o I_f = (id x f)_! a, I_g o a = (g x id)^* a.
  record("lift-composites", [&](detail::AxiomRecorder& r) {
    const GSet w = random_gset(g, rng, mo), z = random_gset(g, rng, mo);
    const auto alpha = rand_corr(w, z);
    const GMap f = random_map_into(w, rng);
    const GMap gz = random_map(z, random_gset(g, rng, mo), rng).value_or(terminal_map(z));
    const GMap f2 = random_map(w, random_gset(g, rng, mo), rng).value_or(terminal_map(w));
    const GMap g2 = random_map_into(z, rng);
    const bool ok = compose(e, alpha, lift_r(e, f)).elem == e.pullback(product_map(identity_map(z), f), alpha.elem) &&
                    compose(e, lift_r(e, gz), alpha).elem == e.pushforward(product_map(gz, identity_map(w)), alpha.elem) &&
                    compose(e, alpha, lift_i(e, f2)).elem == e.pushforward(product_map(identity_map(z), f2), alpha.elem) &&
                    compose(e, lift_i(e, g2), alpha).elem == e.pullback(product_map(g2, identity_map(w)), alpha.elem);
    r.check(ok, [&] { return json{{"alpha", cj(alpha)}, {"f", mj(f)}, {"g", mj(gz)}, {"f'", mj(f2)}, {"g'", mj(g2)}}; });
  });
  // I_f o R_q = (f x q)^*(i_B) = (A x_B C -> A x C)_!(1).
  record("transfer-then-restrict", [&](detail::AxiomRecorder& r) {
    const GSet b = random_gset(g, rng, mo);
    const GMap f = random_map_into(b, rng), q = random_map_into(b, rng);
    const auto lhs = compose(e, lift_i(e, f), lift_r(e, q));
    const auto pb = pullback_gset(f, q);
    r.check(lhs.elem == e.pullback(product_map(f, q), identity(e, b).elem) &&
                lhs.elem == e.pushforward(pair_map(pb.p, pb.q), e.one(pb.object)),
            [&] { return json{{"f", mj(f)}, {"q", mj(q)}}; });
  });
  // R_p o I_g = ((p, g) : D -> A x C)_!(1).
  record("restrict-then-transfer", [&](detail::AxiomRecorder& r) {
    const GMap p = random_map_into(random_gset(g, rng, mo), rng);
    const GMap h = random_map(p.src(), random_gset(g, rng, mo), rng).value_or(terminal_map(p.src()));
    r.check(compose(e, lift_r(e, p), lift_i(e, h)).elem == e.pushforward(pair_map(p, h), e.one(p.src())),
            [&] { return json{{"p", mj(p)}, {"g", mj(h)}}; });
  });
  // R_p o I_q = I_f o R_g on the pullback square of A -f-> C <-g- B.
  record("beck-chevalley", [&](detail::AxiomRecorder& r) {
    const GSet c = random_gset(g, rng, mo);
    const GMap f = random_map_into(c, rng), h = random_map_into(c, rng);
    const auto pb = pullback_gset(f, h);
    r.check(compose(e, lift_r(e, pb.p), lift_i(e, pb.q)) == compose(e, lift_i(e, f), lift_r(e, h)),
            [&] { return json{{"f", mj(f)}, {"g", mj(h)}}; });
  });
  // R_s and I_s are mutually inverse for an automorphism s.
  record("isomorphisms", [&](detail::AxiomRecorder& r) {
    const GSet x = random_gset(g, rng, mo);
    const auto auts = aut_group(x);
    const GMap& s = auts[std::uniform_int_distribution<std::size_t>(0, auts.size() - 1)(rng)];
    r.check(compose(e, lift_r(e, s), lift_i(e, s)) == identity(e, x) && compose(e, lift_i(e, s), lift_r(e, s)) == identity(e, x),
            [&] { return json{{"s", mj(s)}}; });
  });
  return report;
}

}  // namespace gysin

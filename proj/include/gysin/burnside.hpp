#pragma once

// The Burnside functor A(X): the Grothendieck group of G-sets over X. The
// monoid of iso-classes is free on the transitive classes [G/H -> X], so an
// element is a finitely supported integer combination of canonical keys.
//
// A transitive S -> X is determined up to isomorphism over X by the G-orbit
// of (Stab(s), image of s) under conjugation; the key is the least such pair.

#include <algorithm>
#include <compare>
#include <iterator>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gysin/functor.hpp"
#include "gysin/gset.hpp"

namespace gysin {

struct BurnsideKey {
  Subgroup stabilizer;
  int point = 0;
  auto operator<=>(const BurnsideKey&) const = default;
  bool operator==(const BurnsideKey&) const = default;
};

/// Least representative of {(g H g^-1, g.x)}.
inline BurnsideKey canonical_key(const GSet& x, const Subgroup& h, int point) {
  const auto& g = x.group();
  BurnsideKey best{h, point};
  for (int k = 1; k < g.order(); ++k) {
    BurnsideKey cand{g.conjugate(h, k), x.act(k, point)};
    if (cand < best) best = std::move(cand);
  }
  return best;
}

/// The transitive G-set G/H together with its structure map gH -> g.point.
inline GMap key_orbit_map(const GSet& x, const BurnsideKey& key) {
  GSet orbit = coset_gset(x.group_ptr(), key.stabilizer);
  std::vector<int> table(orbit.size(), -1);
  const auto& g = x.group();
  for (int k = 0; k < g.order(); ++k) {
    const int c = orbit.act(k, 0);
    if (table[c] < 0) table[c] = x.act(k, key.point);
  }
  return GMap(orbit, x, std::move(table), GMap::Unchecked{});
}

class BurnsideElem {
 public:
  using Terms = std::map<BurnsideKey, std::int64_t>;

  BurnsideElem() = default;
  explicit BurnsideElem(GSet base) : base_(std::move(base)) {}

  const GSet& base() const { return base_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::int64_t coeff(const BurnsideKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const BurnsideKey& k, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted && (it->second += c) == 0) terms_.erase(it);
  }

  friend bool operator==(const BurnsideElem& a, const BurnsideElem& b) {
    return a.terms_ == b.terms_ && a.base_ == b.base_;
  }

 private:
  GSet base_;
  Terms terms_;
};

/// [f : S -> X] as a combination of canonical transitive classes.
inline BurnsideElem burnside_canonicalize(const GMap& f) {
  BurnsideElem out(f.dst());
  const GSet& s = f.src();
  for (int i = 0; i < s.orbit_count(); ++i) {
    const int rep = s.orbit(i).front();
    out.add_term(canonical_key(f.dst(), s.stabilizer(rep), f(rep)), 1);
  }
  return out;
}

/// Re-canonicalizes every key; a no-op on well-formed elements.
inline BurnsideElem burnside_recanonicalize(const BurnsideElem& a) {
  BurnsideElem out(a.base());
  for (const auto& [k, c] : a.terms()) out.add_term(canonical_key(a.base(), k.stabilizer, k.point), c);
  return out;
}

namespace detail {

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Adds c times the class of U x_Y V -> Y', where u : U -> Y and v : V -> Y,
/// the fiber product is mapped to `target` by `to_target(point of U)`, and
/// `us` lists the points of U that can lie in the fiber product.
/// Each G-orbit of pairs (a, b) with u(a) = v(b) is one transitive class.
template <class ToTarget>
void add_fiber_classes(BurnsideElem& out, const GSet& target, const GMap& u, const std::vector<int>& us, const GMap& v,
                       std::int64_t c, ToTarget to_target) {
  const GSet& uset = u.src();
  const GSet& vset = v.src();
  const int nv = vset.size();
  std::vector<int> pos(uset.size(), -1);
  for (std::size_t i = 0; i < us.size(); ++i) pos[us[i]] = static_cast<int>(i);
  std::vector<char> seen(us.size() * static_cast<std::size_t>(nv), 0);
  const int order = uset.group().order();
  for (std::size_t i = 0; i < us.size(); ++i) {
    const int a = us[i];
    for (int b = 0; b < nv; ++b) {
      if (seen[i * nv + b] || u(a) != v(b)) continue;
      for (int g = 0; g < order; ++g) seen[static_cast<std::size_t>(pos[uset.act(g, a)]) * nv + vset.act(g, b)] = 1;
      out.add_term(canonical_key(target, intersect(uset.stabilizer(a), vset.stabilizer(b)), to_target(a)), c);
    }
  }
}

}  // namespace detail

inline BurnsideElem burnside_mul(const BurnsideElem& a, const BurnsideElem& b) {
  if (!(a.base() == b.base())) throw std::invalid_argument("burnside_mul: elements live over different objects");
  BurnsideElem out(a.base());
  std::vector<std::pair<GMap, std::int64_t>> bm;
  for (const auto& [k, c] : b.terms()) bm.emplace_back(key_orbit_map(b.base(), k), c);
  for (const auto& [ka, ca] : a.terms()) {
    const GMap ma = key_orbit_map(a.base(), ka);
    std::vector<int> all(ma.src().size());
    for (int i = 0; i < ma.src().size(); ++i) all[i] = i;
    for (const auto& [mb, cb] : bm) detail::add_fiber_classes(out, a.base(), ma, all, mb, ca * cb, [&](int s) { return ma(s); });
  }
  return out;
}

/// f^* for f : X -> Y: the fiber product of f with each basis class, over X.
inline BurnsideElem burnside_pullback(const GMap& f, const BurnsideElem& b) {
  if (!(b.base() == f.dst())) throw std::invalid_argument("burnside_pullback: element is not over the target");
  BurnsideElem out(f.src());
  const GSet& x = f.src();
  const GSet& y = f.dst();
  std::vector<std::vector<int>> over(y.orbit_count());
  for (int p = 0; p < x.size(); ++p) over[y.orbit_of(f(p))].push_back(p);
  for (const auto& [k, c] : b.terms())
    detail::add_fiber_classes(out, x, f, over[y.orbit_of(k.point)], key_orbit_map(y, k), c, [](int p) { return p; });
  return out;
}

/// f_! for f : X -> Y, by post-composition.
inline BurnsideElem burnside_pushforward(const GMap& f, const BurnsideElem& a) {
  if (!(a.base() == f.src())) throw std::invalid_argument("burnside_pushforward: element is not over the source");
  BurnsideElem out(f.dst());
  for (const auto& [k, c] : a.terms()) out.add_term(canonical_key(f.dst(), k.stabilizer, f(k.point)), c);
  return out;
}

/// All basis keys of A(X).
inline std::vector<BurnsideKey> burnside_basis(const GSet& x) {
  std::set<BurnsideKey> keys;
  const auto& subs = x.group().subgroups();
  for (int i = 0; i < x.orbit_count(); ++i) {
    const int rep = x.orbit(i).front();
    for (const auto& h : subs)
      if (x.fixed_by(h, rep)) keys.insert(canonical_key(x, h, rep));
  }
  return {keys.begin(), keys.end()};
}

class BurnsideFunctor {
 public:
  using elem_type = BurnsideElem;

  std::string name() const { return "burnside"; }
  bool supports(const GroupPtr&) const { return true; }

  BurnsideElem zero(const GSet& x) const { return BurnsideElem(x); }
  BurnsideElem one(const GSet& x) const { return burnside_canonicalize(identity_map(x)); }

  BurnsideElem add(const BurnsideElem& a, const BurnsideElem& b) const {
    if (!(a.base() == b.base())) throw std::invalid_argument("burnside add: elements live over different objects");
    BurnsideElem out = a;
    for (const auto& [k, c] : b.terms()) out.add_term(k, c);
    return out;
  }
  BurnsideElem neg(const BurnsideElem& a) const {
    BurnsideElem out(a.base());
    for (const auto& [k, c] : a.terms()) out.add_term(k, -c);
    return out;
  }
  BurnsideElem mul(const BurnsideElem& a, const BurnsideElem& b) const { return burnside_mul(a, b); }
  BurnsideElem pullback(const GMap& f, const BurnsideElem& b) const { return burnside_pullback(f, b); }
  BurnsideElem pushforward(const GMap& f, const BurnsideElem& a) const { return burnside_pushforward(f, a); }
  const GSet& base(const BurnsideElem& a) const { return a.base(); }

  std::vector<BurnsideElem> generators(const GSet& x) const {
    std::vector<BurnsideElem> out;
    for (const auto& k : burnside_basis(x)) {
      BurnsideElem e(x);
      e.add_term(k, 1);
      out.push_back(std::move(e));
    }
    return out;
  }

  BurnsideElem random_element(const GSet& x, Rng& rng) const {
    BurnsideElem out(x);
    const auto basis = burnside_basis(x);
    if (basis.empty()) return out;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> count(1, 3), coeff(-3, 3);
    for (int i = count(rng); i > 0; --i) out.add_term(basis[pick(rng)], coeff(rng));
    return out;
  }
};

/// The unique map of Gysin functors A -> E: [f : S -> X] goes to f_!(1).
template <GysinFunctor F>
ElemOf<F> chi(const F& e, const BurnsideElem& a) {
  ElemOf<F> out = e.zero(a.base());
  for (const auto& [k, c] : a.terms()) {
    const GMap m = key_orbit_map(a.base(), k);
    out = e.add(out, scale(e, e.pushforward(m, e.one(m.src())), c));
  }
  return out;
}

}  // namespace gysin

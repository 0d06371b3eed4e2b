#pragma once

// The Gysin functor interface. A model supplies, for every finite G-set X, a
// commutative ring E(X) of opaque element values, pullbacks f^* (ring maps)
// and pushforwards f_! (additive maps). Elements know the object they live
// over, and compare structurally with ==.

#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gysin/gset.hpp"

namespace gysin {

using Rng = std::mt19937_64;

/// Seed used by every randomized check unless the caller overrides it.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

template <class F>
concept GysinFunctor = requires(const F& e, const GSet& x, const GMap& f, const typename F::elem_type& a, Rng& rng) {
  typename F::elem_type;
  { e.name() } -> std::convertible_to<std::string>;
  { e.supports(x.group_ptr()) } -> std::same_as<bool>;
  { e.zero(x) } -> std::same_as<typename F::elem_type>;
  { e.one(x) } -> std::same_as<typename F::elem_type>;
  { e.add(a, a) } -> std::same_as<typename F::elem_type>;
  { e.neg(a) } -> std::same_as<typename F::elem_type>;
  { e.mul(a, a) } -> std::same_as<typename F::elem_type>;
  { e.pullback(f, a) } -> std::same_as<typename F::elem_type>;
  { e.pushforward(f, a) } -> std::same_as<typename F::elem_type>;
  { e.base(a) } -> std::convertible_to<const GSet&>;
  { e.generators(x) } -> std::same_as<std::vector<typename F::elem_type>>;
  { e.random_element(x, rng) } -> std::same_as<typename F::elem_type>;
  { a == a } -> std::convertible_to<bool>;
};

template <GysinFunctor F>
using ElemOf = typename F::elem_type;

template <GysinFunctor F>
ElemOf<F> sub(const F& e, const ElemOf<F>& a, const ElemOf<F>& b) {
  return e.add(a, e.neg(b));
}

/// k * a by double-and-add.
template <GysinFunctor F>
ElemOf<F> scale(const F& e, const ElemOf<F>& a, std::int64_t k) {
  ElemOf<F> acc = e.zero(e.base(a));
  ElemOf<F> pw = k < 0 ? e.neg(a) : a;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  while (n) {
    if (n & 1u) acc = e.add(acc, pw);
    n >>= 1u;
    if (n) pw = e.add(pw, pw);
  }
  return acc;
}

template <GysinFunctor F>
bool is_zero(const F& e, const ElemOf<F>& a) {
  return a == e.zero(e.base(a));
}

/// a (x) b = pr_X^*(a) . pr_Y^*(b) in E(X x Y).
template <GysinFunctor F>
ElemOf<F> external_product(const F& e, const ElemOf<F>& a, const ElemOf<F>& b) {
  auto pr = product_gset(e.base(a), e.base(b));
  return e.mul(e.pullback(pr.first, a), e.pullback(pr.second, b));
}

}  // namespace gysin

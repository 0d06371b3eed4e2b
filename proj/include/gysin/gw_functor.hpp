#pragma once

// GW as a Gysin functor through the Galois dictionary. For G = Z/n acting as
// Gal(F_{p^n}/F_p), an orbit of size d is Spec F_{p^d}, and a G-set X is the
// etale algebra prod_{orbits} F_{p^d}. E(X) is the product of the GW groups
// of those fields. Field automorphisms act trivially on GW, so an orbit map
// only matters through its degree e = |source orbit| / |target orbit|.
//
// The R/C instance uses G = Z/2 = Gal(C/R): fixed points are Spec R, free
// orbits are Spec C.

#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gysin/functor.hpp"
#include "gysin/gw.hpp"

namespace gysin {

/// One GW class per orbit of `base`, in orbit order.
struct GWAlgebraElem {
  GSet base;
  std::vector<GWClass> components;
  friend bool operator==(const GWAlgebraElem& a, const GWAlgebraElem& b) {
    return a.components == b.components && a.base == b.base;
  }
};

namespace detail {

template <class Fn>
GWAlgebraElem componentwise(const GWAlgebraElem& a, const GWAlgebraElem& b, Fn fn) {
  if (!(a.base == b.base)) throw std::invalid_argument("gw: elements live over different objects");
  GWAlgebraElem out{a.base, {}};
  out.components.reserve(a.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) out.components.push_back(fn(a.components[i], b.components[i]));
  return out;
}

/// Orbit of f(rep) for each orbit of f.src(), and the degree |orbit| / |image orbit|.
inline std::vector<std::pair<int, int>> orbit_images(const GMap& f) {
  const GSet& x = f.src();
  const GSet& y = f.dst();
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < x.orbit_count(); ++i) {
    const int j = y.orbit_of(f(x.orbit(i).front()));
    out.emplace_back(j, static_cast<int>(x.orbit(i).size() / y.orbit(j).size()));
  }
  return out;
}

}  // namespace detail

class GWFiniteFieldFunctor {
 public:
  using elem_type = GWAlgebraElem;

  explicit GWFiniteFieldFunctor(int p) : p_(p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("gw functor: p must be an odd prime");
  }

  int p() const { return p_; }
  std::string name() const { return "gw"; }
  bool supports(const GroupPtr& g) const { return g && g->is_cyclic(); }

  GWAlgebraElem zero(const GSet& x) const { return uniform(x, 0); }
  GWAlgebraElem one(const GSet& x) const { return uniform(x, 1); }

  GWAlgebraElem add(const GWAlgebraElem& a, const GWAlgebraElem& b) const {
    return detail::componentwise(a, b, [](const GWClass& u, const GWClass& v) { return gw_add(u, v); });
  }
  GWAlgebraElem neg(const GWAlgebraElem& a) const {
    GWAlgebraElem out = a;
    for (auto& c : out.components) c = gw_neg(c);
    return out;
  }
  GWAlgebraElem mul(const GWAlgebraElem& a, const GWAlgebraElem& b) const {
    return detail::componentwise(a, b, [](const GWClass& u, const GWClass& v) { return gw_mul(u, v); });
  }

  GWAlgebraElem pullback(const GMap& f, const GWAlgebraElem& b) const {
    if (!(b.base == f.dst())) throw std::invalid_argument("gw pullback: element is not over the target");
    GWAlgebraElem out{f.src(), {}};
    for (const auto& [j, e] : detail::orbit_images(f)) out.components.push_back(j_star(std::get<FFClass>(b.components[j]), e));
    return out;
  }

  GWAlgebraElem pushforward(const GMap& f, const GWAlgebraElem& a) const {
    if (!(a.base == f.src())) throw std::invalid_argument("gw pushforward: element is not over the source");
    GWAlgebraElem out = zero(f.dst());
    const auto images = detail::orbit_images(f);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto [j, e] = images[i];
      out.components[j] = gw_add(out.components[j], GWClass{j_shriek(std::get<FFClass>(a.components[i]), e)});
    }
    return out;
  }

  const GSet& base(const GWAlgebraElem& a) const { return a.base; }

  /// Element with `c` in orbit i and zero elsewhere.
  GWAlgebraElem single(const GSet& x, int orbit, FFClass c) const {
    GWAlgebraElem out = zero(x);
    out.components.at(orbit) = c;
    return out;
  }

  std::vector<GWAlgebraElem> generators(const GSet& x) const {
    std::vector<GWAlgebraElem> out;
    for (int i = 0; i < x.orbit_count(); ++i) {
      const int d = static_cast<int>(x.orbit(i).size());
      out.push_back(single(x, i, ff_unit(p_, d)));
      out.push_back(single(x, i, ff_alpha(p_, d)));
    }
    return out;
  }

  GWAlgebraElem random_element(const GSet& x, Rng& rng) const {
    std::uniform_int_distribution<int> rank(-3, 3), bit(0, 1);
    GWAlgebraElem out{x, {}};
    for (int i = 0; i < x.orbit_count(); ++i)
      out.components.push_back(ff_class(rank(rng), bit(rng), p_, static_cast<int>(x.orbit(i).size())));
    return out;
  }

 private:
  GWAlgebraElem uniform(const GSet& x, std::int64_t r) const {
    if (!supports(x.group_ptr())) throw std::invalid_argument("gw functor: group must be cyclic");
    GWAlgebraElem out{x, {}};
    for (int i = 0; i < x.orbit_count(); ++i)
      out.components.push_back(ff_class(r, 0, p_, static_cast<int>(x.orbit(i).size())));
    return out;
  }

  int p_;
};

class GWRealComplexFunctor {
 public:
  using elem_type = GWAlgebraElem;

  std::string name() const { return "gw-real"; }
  bool supports(const GroupPtr& g) const { return g && g->order() == 2; }

  GWAlgebraElem zero(const GSet& x) const { return uniform(x, 0); }
  GWAlgebraElem one(const GSet& x) const { return uniform(x, 1); }

  GWAlgebraElem add(const GWAlgebraElem& a, const GWAlgebraElem& b) const {
    return detail::componentwise(a, b, [](const GWClass& u, const GWClass& v) { return gw_add(u, v); });
  }
  GWAlgebraElem neg(const GWAlgebraElem& a) const {
    GWAlgebraElem out = a;
    for (auto& c : out.components) c = gw_neg(c);
    return out;
  }
  GWAlgebraElem mul(const GWAlgebraElem& a, const GWAlgebraElem& b) const {
    return detail::componentwise(a, b, [](const GWClass& u, const GWClass& v) { return gw_mul(u, v); });
  }

  /// Restriction to C is the rank; sigma acts trivially on GW(C).
  GWAlgebraElem pullback(const GMap& f, const GWAlgebraElem& b) const {
    if (!(b.base == f.dst())) throw std::invalid_argument("gw-real pullback: element is not over the target");
    GWAlgebraElem out{f.src(), {}};
    for (const auto& [j, e] : detail::orbit_images(f)) {
      const GWClass& c = b.components[j];
      out.components.push_back(e == 2 ? GWClass{ComplexClass{gw_rank(c)}} : c);
    }
    return out;
  }

  /// Transfer C -> R sends 1 to <1> + <-1>.
  GWAlgebraElem pushforward(const GMap& f, const GWAlgebraElem& a) const {
    if (!(a.base == f.src())) throw std::invalid_argument("gw-real pushforward: element is not over the source");
    GWAlgebraElem out = zero(f.dst());
    const auto images = detail::orbit_images(f);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const auto [j, e] = images[i];
      const GWClass& c = a.components[i];
      const GWClass img = e == 2 ? GWClass{RealClass{gw_rank(c), gw_rank(c)}} : c;
      out.components[j] = gw_add(out.components[j], img);
    }
    return out;
  }

  const GSet& base(const GWAlgebraElem& a) const { return a.base; }

  std::vector<GWAlgebraElem> generators(const GSet& x) const {
    std::vector<GWAlgebraElem> out;
    for (int i = 0; i < x.orbit_count(); ++i) {
      if (x.orbit(i).size() == 1) {
        out.push_back(single(x, i, RealClass{1, 0}));
        out.push_back(single(x, i, RealClass{0, 1}));
      } else {
        out.push_back(single(x, i, ComplexClass{1}));
      }
    }
    return out;
  }

  GWAlgebraElem random_element(const GSet& x, Rng& rng) const {
    std::uniform_int_distribution<int> n(-3, 3);
    GWAlgebraElem out{x, {}};
    for (int i = 0; i < x.orbit_count(); ++i) {
      if (x.orbit(i).size() == 1)
        out.components.push_back(RealClass{n(rng), n(rng)});
      else
        out.components.push_back(ComplexClass{n(rng)});
    }
    return out;
  }

  GWAlgebraElem single(const GSet& x, int orbit, GWClass c) const {
    GWAlgebraElem out = zero(x);
    out.components.at(orbit) = std::move(c);
    return out;
  }

 private:
  GWAlgebraElem uniform(const GSet& x, std::int64_t r) const {
    if (!supports(x.group_ptr())) throw std::invalid_argument("gw-real functor: group must be Z/2");
    GWAlgebraElem out{x, {}};
    for (int i = 0; i < x.orbit_count(); ++i) {
      if (x.orbit(i).size() == 1)
        out.components.push_back(RealClass{r, 0});
      else
        out.components.push_back(ComplexClass{r});
    }
    return out;
  }
};

}  // namespace gysin

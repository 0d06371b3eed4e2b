#pragma once

// Deliberately broken functors used as negative controls.

#include "gysin/functor.hpp"
#include "gysin/gw.hpp"

namespace mutant {

/// f_! replaced by a -> f_!(a) + f_!(1) whenever f is not an isomorphism.
template <class Base>
struct BrokenPushforward : Base {
  using Base::Base;
  std::string name() const { return Base::name() + "-broken-push"; }
  typename Base::elem_type pushforward(const gysin::GMap& f, const typename Base::elem_type& a) const {
    auto r = Base::pushforward(f, a);
    if (!f.is_iso()) r = Base::add(r, Base::pushforward(f, Base::one(f.src())));
    return r;
  }
};

/// Multiplication replaced by a.b + a: breaks every composite built from products.
template <class Base>
struct BrokenMul : Base {
  using Base::Base;
  std::string name() const { return Base::name() + "-broken-mul"; }
  typename Base::elem_type mul(const typename Base::elem_type& a, const typename Base::elem_type& b) const {
    return Base::add(Base::mul(a, b), a);
  }
};

/// Transfer that loses the discriminant: every finite-field component of
/// f_!(a) drops its alpha part when f is not an isomorphism.
template <class Base>
struct BrokenTransferAlpha : Base {
  using Base::Base;
  std::string name() const { return Base::name() + "-broken-alpha"; }
  typename Base::elem_type pushforward(const gysin::GMap& f, const typename Base::elem_type& a) const {
    auto r = Base::pushforward(f, a);
    if (!f.is_iso())
      for (auto& c : r.components)
        if (auto* ff = std::get_if<gysin::FFClass>(&c)) ff->eps = 0;
    return r;
  }
};

}  // namespace mutant

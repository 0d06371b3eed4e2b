#pragma once

// The correspondence category C_E of a Gysin functor E.
//
// A morphism X -> Y is an element of E(Y x X). Composites are read right to
// left. For alpha : B -> C and beta : A -> B, composition works on
// T = (C x B) x A with projections p_CB, p_BA, p_CA:
//
//   alpha o beta = (p_CA)_! ( p_CB^*(alpha) . p_BA^*(beta) ).
//
// Products use the lexicographic layout of product_gset, so the same pair of
// objects always yields the same tables and elements compare directly.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gysin/burnside.hpp"
#include "gysin/format.hpp"
#include "gysin/functor.hpp"
#include "gysin/gset.hpp"
#include "gysin/serialize.hpp"

namespace gysin {

template <GysinFunctor F>
struct Correspondence {
  GSet dom;
  GSet cod;
  ElemOf<F> elem;  ///< over cod x dom

  friend bool operator==(const Correspondence& a, const Correspondence& b) {
    return a.dom == b.dom && a.cod == b.cod && a.elem == b.elem;
  }
};

// ---------------------------------------------------------------------------
// Canonical isomorphisms of G-sets used for re-indexing

/// (A x B) x C -> A x (B x C). Both layouts index (a, b, c) as (a*|B| + b)*|C| + c.
inline GMap assoc_map(const GSet& a, const GSet& b, const GSet& c) {
  GSet src = product_object(product_object(a, b), c);
  GSet dst = product_object(a, product_object(b, c));
  const int nb = b.size(), nc = c.size();
  std::vector<int> table(src.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < nc; ++k) table[(i * nb + j) * nc + k] = i * (nb * nc) + (j * nc + k);
  return GMap(src, dst, std::move(table), GMap::Unchecked{});
}

/// * x X -> X.
inline GMap left_unitor(const GSet& x) {
  return product_gset(terminal_gset(x.group_ptr()), x).second;
}

/// X x * -> X.
inline GMap right_unitor(const GSet& x) {
  return product_gset(x, terminal_gset(x.group_ptr())).first;
}

namespace detail {

inline void require_same_group(const GSet& a, const GSet& b, const char* what) {
  if (!same_group(a.group_ptr(), b.group_ptr())) throw std::invalid_argument(std::string(what) + ": mismatched groups");
}

/// Projections out of (C x B) x A.
struct TripleProjections {
  GSet t;
  GMap cb, ba, ca;
};

inline TripleProjections triple_projections(const GSet& c, const GSet& b, const GSet& a) {
  const auto cb_a = product_gset(product_object(c, b), a);
  const GSet ba_obj = product_object(b, a);
  const GSet ca_obj = product_object(c, a);
  const int na = a.size(), nb = b.size();
  std::vector<int> tba(cb_a.object.size()), tca(cb_a.object.size());
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k) {
        const int t = (i * nb + j) * na + k;
        tba[t] = j * na + k;
        tca[t] = i * na + k;
      }
  return {cb_a.object, cb_a.first, GMap(cb_a.object, ba_obj, std::move(tba), GMap::Unchecked{}),
          GMap(cb_a.object, ca_obj, std::move(tca), GMap::Unchecked{})};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Construction and composition

/// Wraps an element of E(cod x dom) as a morphism dom -> cod.
template <GysinFunctor F>
Correspondence<F> make_correspondence(const F& e, const GSet& dom, const GSet& cod, ElemOf<F> elem) {
  if (!(e.base(elem) == product_object(cod, dom)))
    throw std::invalid_argument("correspondence: element does not live over cod x dom");
  return {dom, cod, std::move(elem)};
}

template <GysinFunctor F>
Correspondence<F> compose(const F& e, const Correspondence<F>& g, const Correspondence<F>& f) {
  if (!(g.dom == f.cod)) throw std::invalid_argument("compose: domain of the left factor is not the codomain of the right");
  const auto pr = detail::triple_projections(g.cod, g.dom, f.dom);
  auto prod = e.mul(e.pullback(pr.cb, g.elem), e.pullback(pr.ba, f.elem));
  return {f.dom, g.cod, e.pushforward(pr.ca, prod)};
}

/// i_X = Delta_!(1). In general not the ring unit of E(X x X).
template <GysinFunctor F>
Correspondence<F> identity(const F& e, const GSet& x) {
  return {x, x, e.pushforward(diagonal_map(x), e.one(x))};
}

template <GysinFunctor F>
Correspondence<F> zero_correspondence(const F& e, const GSet& dom, const GSet& cod) {
  return {dom, cod, e.zero(product_object(cod, dom))};
}

template <GysinFunctor F>
Correspondence<F> add(const F& e, const Correspondence<F>& a, const Correspondence<F>& b) {
  if (!(a.dom == b.dom) || !(a.cod == b.cod)) throw std::invalid_argument("add: correspondences have different types");
  return {a.dom, a.cod, e.add(a.elem, b.elem)};
}

template <GysinFunctor F>
Correspondence<F> neg(const F& e, const Correspondence<F>& a) {
  return {a.dom, a.cod, e.neg(a.elem)};
}

template <GysinFunctor F>
Correspondence<F> scale(const F& e, const Correspondence<F>& a, std::int64_t k) {
  return {a.dom, a.cod, scale(e, a.elem, k)};
}

// ---------------------------------------------------------------------------
// R, I, D

/// R_f : A -> B is (f, id)_!(1) in E(B x A).
template <GysinFunctor F>
Correspondence<F> lift_r(const F& e, const GMap& f) {
  return {f.src(), f.dst(), e.pushforward(pair_map(f, identity_map(f.src())), e.one(f.src()))};
}

/// I_f : B -> A is (id, f)_!(1) in E(A x B).
template <GysinFunctor F>
Correspondence<F> lift_i(const F& e, const GMap& f) {
  return {f.dst(), f.src(), e.pushforward(pair_map(identity_map(f.src()), f), e.one(f.src()))};
}

/// D_a = Delta_!(a), an endomorphism of the base of a.
template <GysinFunctor F>
Correspondence<F> lift_d(const F& e, const ElemOf<F>& a) {
  const GSet& x = e.base(a);
  return {x, x, e.pushforward(diagonal_map(x), a)};
}

/// R_f o D_a o I_g = ((f, g) : Z -> Y x X)_!(a), a morphism X -> Y.
template <GysinFunctor F>
Correspondence<F> from_triple(const F& e, const GMap& f, const ElemOf<F>& a, const GMap& g) {
  if (!(f.src() == g.src()) || !(e.base(a) == f.src())) throw std::invalid_argument("from_triple: f, a, g must share a source");
  return {g.dst(), f.dst(), e.pushforward(pair_map(f, g), a)};
}

/// alpha^* : B -> A, the pullback of alpha along the swap A x B -> B x A.
template <GysinFunctor F>
Correspondence<F> dual_star(const F& e, const Correspondence<F>& a) {
  return {a.cod, a.dom, e.pullback(swap_map(a.dom, a.cod), a.elem)};
}

// ---------------------------------------------------------------------------
// Tensor structure

/// f (x) g : X x X' -> Y x Y', the external product re-indexed along
/// (Y x Y') x (X x X') -> (Y x X) x (Y' x X').
template <GysinFunctor F>
Correspondence<F> tensor(const F& e, const Correspondence<F>& f, const Correspondence<F>& g) {
  detail::require_same_group(f.dom, g.dom, "tensor");
  const GSet &x = f.dom, &y = f.cod, &x2 = g.dom, &y2 = g.cod;
  const GSet dom = product_object(x, x2), cod = product_object(y, y2);
  const GSet src = product_object(cod, dom);
  const GSet dst = product_object(product_object(y, x), product_object(y2, x2));
  const int nx = x.size(), nx2 = x2.size(), ny2 = y2.size();
  std::vector<int> table(src.size());
  for (int a = 0; a < y.size(); ++a)
    for (int b = 0; b < ny2; ++b)
      for (int c = 0; c < nx; ++c)
        for (int d = 0; d < nx2; ++d)
          table[(a * ny2 + b) * (nx * nx2) + c * nx2 + d] = (a * nx + c) * (ny2 * nx2) + b * nx2 + d;
  const GMap t(src, dst, std::move(table), GMap::Unchecked{});
  return {dom, cod, e.pullback(t, external_product(e, f.elem, g.elem))};
}

/// The symmetry X x Y -> Y x X, namely R of the swap.
template <GysinFunctor F>
Correspondence<F> symmetry(const F& e, const GSet& x, const GSet& y) {
  return lift_r(e, swap_map(x, y));
}

/// Hom(X, Y (x) Z) -> Hom(X (x) Y, Z): re-index ((y, z), x) as (z, (x, y)).
template <GysinFunctor F>
Correspondence<F> uncurry(const F& e, const Correspondence<F>& h, const GSet& y, const GSet& z) {
  if (!(h.cod == product_object(y, z))) throw std::invalid_argument("uncurry: codomain is not Y x Z");
  const GSet& x = h.dom;
  const GSet src = product_object(z, product_object(x, y));
  const int nx = x.size(), ny = y.size(), nz = z.size();
  std::vector<int> table(src.size());
  for (int c = 0; c < nz; ++c)
    for (int a = 0; a < nx; ++a)
      for (int b = 0; b < ny; ++b) table[c * (nx * ny) + a * ny + b] = (b * nz + c) * nx + a;
  const GMap t(src, e.base(h.elem), std::move(table), GMap::Unchecked{});
  return {product_object(x, y), z, e.pullback(t, h.elem)};
}

/// Inverse of uncurry.
template <GysinFunctor F>
Correspondence<F> curry(const F& e, const Correspondence<F>& k, const GSet& x, const GSet& y) {
  if (!(k.dom == product_object(x, y))) throw std::invalid_argument("curry: domain is not X x Y");
  const GSet& z = k.cod;
  const GSet src = product_object(product_object(y, z), x);
  const int nx = x.size(), ny = y.size(), nz = z.size();
  std::vector<int> table(src.size());
  for (int b = 0; b < ny; ++b)
    for (int c = 0; c < nz; ++c)
      for (int a = 0; a < nx; ++a) table[(b * nz + c) * nx + a] = c * (nx * ny) + a * ny + b;
  const GMap t(src, e.base(k.elem), std::move(table), GMap::Unchecked{});
  return {x, product_object(y, z), e.pullback(t, k.elem)};
}

// ---------------------------------------------------------------------------
// The extended functor E'

/// E'(g)(x) = (pi_A)_! ( (pi_B)^*(x) . g ) for g : A -> B and x in E(B).
template <GysinFunctor F>
ElemOf<F> apply_eprime(const F& e, const Correspondence<F>& g, const ElemOf<F>& x) {
  if (!(e.base(x) == g.cod)) throw std::invalid_argument("apply_eprime: element does not live over the codomain");
  const auto pr = product_gset(g.cod, g.dom);
  return e.pushforward(pr.second, e.mul(e.pullback(pr.first, x), g.elem));
}

// ---------------------------------------------------------------------------
// Duality

struct DualityReport {
  bool left_triangle = false;   ///< (ev (x) 1) o assoc o (1 (x) cev) = 1
  bool right_triangle = false;  ///< (1 (x) ev) o assoc^-1 o (cev (x) 1) = 1
  bool pass() const { return left_triangle && right_triangle; }
};

/// ev_X : X (x) X -> * with element i_X.
template <GysinFunctor F>
Correspondence<F> evaluation(const F& e, const GSet& x) {
  const GSet xx = product_object(x, x);
  return {xx, terminal_gset(x.group_ptr()), e.pullback(left_unitor(xx), identity(e, x).elem)};
}

/// cev_X : * -> X (x) X with element i_X.
template <GysinFunctor F>
Correspondence<F> coevaluation(const F& e, const GSet& x) {
  const GSet xx = product_object(x, x);
  return {terminal_gset(x.group_ptr()), xx, e.pullback(right_unitor(xx), identity(e, x).elem)};
}

/// Checks both triangle identities for X with ev = cev = i_X. Unitors and
/// associators enter as R of the canonical isomorphisms.
template <GysinFunctor F>
DualityReport duality_check(const F& e, const GSet& x) {
  const auto id = identity(e, x);
  const auto ev = evaluation(e, x), cev = coevaluation(e, x);
  const auto rho_inv = lift_i(e, right_unitor(x));  // X -> X x *
  const auto lam_inv = lift_i(e, left_unitor(x));   // X -> * x X
  const auto a = lift_r(e, assoc_map(x, x, x));     // (X x X) x X -> X x (X x X)
  const auto a_inv = lift_i(e, assoc_map(x, x, x));

  DualityReport r;
  // X -> X x * -> X x (X x X) -> (X x X) x X -> * x X -> X
  {
    auto m = compose(e, tensor(e, id, cev), rho_inv);
    m = compose(e, a_inv, m);
    m = compose(e, tensor(e, ev, id), m);
    m = compose(e, lift_r(e, left_unitor(x)), m);
    r.left_triangle = m == id;
  }
  // X -> * x X -> (X x X) x X -> X x (X x X) -> X x * -> X
  {
    auto m = compose(e, tensor(e, cev, id), lam_inv);
    m = compose(e, a, m);
    m = compose(e, tensor(e, id, ev), m);
    m = compose(e, lift_r(e, right_unitor(x)), m);
    r.right_triangle = m == id;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Endomorphisms of a Galois object

/// Basis element R_s o D_a = (x -> (s x, x))_!(a).
template <GysinFunctor F>
Correspondence<F> galois_basis(const F& e, const GMap& s, const ElemOf<F>& a) {
  return {s.src(), s.src(), e.pushforward(pair_map(s, identity_map(s.src())), a)};
}

/// Coordinates of an endomorphism of a Galois object: the component at s is
/// the pullback along x -> (s x, x). Indexed like aut_group(X).
template <GysinFunctor F>
std::vector<ElemOf<F>> galois_coordinates(const F& e, const Correspondence<F>& phi, const std::vector<GMap>& auts) {
  std::vector<ElemOf<F>> out;
  out.reserve(auts.size());
  for (const auto& s : auts) out.push_back(e.pullback(pair_map(s, identity_map(s.src())), phi.elem));
  return out;
}

struct EndoRingReport {
  int aut_order = 0;
  bool bijective = false;       ///< coordinates and basis are mutually inverse
  bool law = false;             ///< R_a D_x o R_b D_y = R_ab D_{b^* x . y}
  bool translation = false;     ///< R_s D_a = D_{(s^-1)^* a} R_s and a[f] b[g] = a (f^-1)^* b [fg]
  bool twist_trivial = false;   ///< s^* = id on E(X) for every s
  bool aut_cyclic = false;
  int products_checked = 0;
  bool pass() const { return bijective && law && translation; }
  /// End(X) is the untwisted group ring E(X)[Z/n].
  bool group_ring() const { return pass() && twist_trivial && aut_cyclic; }
};

/// Automorphism of X taking point 0 to the given point. X must be Galois.
inline const GMap& aut_by_image(const std::vector<GMap>& auts, int image) {
  for (const auto& s : auts)
    if (s(0) == image) return s;
  throw std::invalid_argument("aut_by_image: no automorphism with that image");
}

namespace detail {

inline int aut_order(const GMap& s) {
  GMap p = s;
  int k = 1;
  while (!(p == identity_map(s.src()))) {
    p = compose(s, p);
    ++k;
  }
  return k;
}

}  // namespace detail

/// Checks that a[s] -> R_s o D_a identifies E(X)[Aut X] with End(X) for a
/// Galois X. Additive bijectivity is checked on generators of E(X) and on
/// `samples` random elements of E(X x X); the product law on all generator pairs.
template <GysinFunctor F>
EndoRingReport endo_ring_galois(const F& e, const GSet& x, int samples = 20, std::uint64_t seed = kDefaultSeed) {
  if (!is_galois(x)) throw std::invalid_argument("endo_ring_galois: the object is not Galois");
  Rng rng(seed);
  const auto auts = aut_group(x);
  const auto gens = e.generators(x);
  const int n = static_cast<int>(auts.size());
  EndoRingReport r;
  r.aut_order = n;

  r.bijective = true;
  for (int i = 0; i < n && r.bijective; ++i)
    for (const auto& a : gens) {
      const auto b = galois_basis(e, auts[i], a);
      if (!(b == compose(e, lift_r(e, auts[i]), lift_d(e, a)))) r.bijective = false;
      const auto c = galois_coordinates(e, b, auts);
      for (int j = 0; j < n; ++j)
        if (!(c[j] == (i == j ? a : e.zero(x)))) r.bijective = false;
    }
  const GSet xx = product_object(x, x);
  auto phis = e.generators(xx);
  for (int k = 0; k < samples; ++k) phis.push_back(e.random_element(xx, rng));
  for (const auto& elem : phis) {
    const Correspondence<F> phi{x, x, elem};
    const auto c = galois_coordinates(e, phi, auts);
    auto sum = zero_correspondence(e, x, x);
    for (int i = 0; i < n; ++i) sum = add(e, sum, galois_basis(e, auts[i], c[i]));
    if (!(sum == phi)) r.bijective = false;
  }

  r.law = r.translation = true;
  for (const auto& al : auts)
    for (const auto& be : auts) {
      const GMap ab = compose(al, be);
      for (const auto& a : gens)
        for (const auto& b : gens) {
          const auto lhs = compose(e, galois_basis(e, al, a), galois_basis(e, be, b));
          if (!(lhs == galois_basis(e, ab, e.mul(e.pullback(be, a), b)))) r.law = false;
          // The D-then-R convention: a[f] = D_a o R_f.
          const auto l2 = compose(e, compose(e, lift_d(e, a), lift_r(e, al)), compose(e, lift_d(e, b), lift_r(e, be)));
          const auto r2 = compose(e, lift_d(e, e.mul(a, e.pullback(inverse_map(al), b))), lift_r(e, ab));
          if (!(l2 == r2)) r.translation = false;
          ++r.products_checked;
        }
    }
  for (const auto& s : auts)
    for (const auto& a : gens)
      if (!(galois_basis(e, s, a) == compose(e, lift_d(e, e.pullback(inverse_map(s), a)), lift_r(e, s)))) r.translation = false;

  r.twist_trivial = true;
  for (const auto& s : auts)
    for (const auto& a : gens)
      if (!(e.pullback(s, a) == a)) r.twist_trivial = false;
  r.aut_cyclic = false;
  for (const auto& s : auts)
    if (detail::aut_order(s) == n) r.aut_cyclic = true;
  return r;
}

// ---------------------------------------------------------------------------
// Matrix model over the trivial group

using IntMatrix = std::vector<std::vector<std::int64_t>>;

namespace detail {

inline void require_trivial_group(const GSet& x, const char* what) {
  if (x.group().order() != 1) throw std::invalid_argument(std::string(what) + ": the matrix model needs the trivial group");
}

}  // namespace detail

/// M[y][x] is the multiplicity of the fiber over (y, x).
inline IntMatrix matrix_model(const BurnsideFunctor&, const Correspondence<BurnsideFunctor>& f) {
  detail::require_trivial_group(f.dom, "matrix_model");
  const int nx = f.dom.size();
  IntMatrix m(f.cod.size(), std::vector<std::int64_t>(nx, 0));
  for (const auto& [k, c] : f.elem.terms()) m[k.point / nx][k.point % nx] += c;
  return m;
}

inline Correspondence<BurnsideFunctor> from_matrix(const BurnsideFunctor&, const GSet& dom, const GSet& cod, const IntMatrix& m) {
  detail::require_trivial_group(dom, "from_matrix");
  detail::require_trivial_group(cod, "from_matrix");
  if (static_cast<int>(m.size()) != cod.size()) throw std::invalid_argument("from_matrix: wrong number of rows");
  const GSet yx = product_object(cod, dom);
  BurnsideElem a(yx);
  for (int y = 0; y < cod.size(); ++y) {
    if (static_cast<int>(m[y].size()) != dom.size()) throw std::invalid_argument("from_matrix: wrong row length");
    for (int x = 0; x < dom.size(); ++x)
      if (m[y][x]) a.add_term(canonical_key(yx, Subgroup{0}, y * dom.size() + x), m[y][x]);
  }
  return {dom, cod, std::move(a)};
}

inline IntMatrix matrix_product(const IntMatrix& a, const IntMatrix& b, int inner, int cols) {
  IntMatrix out(a.size(), std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < inner; ++k)
      for (int j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// ---------------------------------------------------------------------------
// Printing and JSON

namespace detail {

/// Label of each automorphism: powers of sigma (the automorphism taking
/// point 0 to 1.0) when sigma generates, otherwise tau_j with j = s(0).
inline std::vector<std::string> aut_labels(const GSet& x, const std::vector<GMap>& auts, bool ascii) {
  const std::string sigma = ascii ? "sigma" : "σ";
  std::vector<std::string> out(auts.size());
  const GMap& s = aut_by_image(auts, x.act(x.group().order() > 1 ? 1 : 0, 0));
  if (detail::aut_order(s) == static_cast<int>(auts.size())) {
    GMap p = identity_map(x);
    for (std::size_t k = 0; k < auts.size(); ++k, p = compose(s, p))
      for (std::size_t i = 0; i < auts.size(); ++i)
        if (auts[i] == p) out[i] = k == 0 ? "" : k == 1 ? sigma : sigma + "^" + std::to_string(k);
  } else {
    for (std::size_t i = 0; i < auts.size(); ++i)
      out[i] = auts[i] == identity_map(x) ? "" : (ascii ? "tau_" : "τ_") + std::to_string(auts[i](0));
  }
  return out;
}

inline bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace detail

/// Endomorphisms of a Galois object print in the twisted group ring as
/// sums of a[s] (written a s, with s a power of sigma when Aut X is cyclic);
/// everything else prints as its element of E(Y x X).
template <GysinFunctor F>
std::string format_correspondence(const F& e, const Correspondence<F>& c, const FormatOptions& opt = {}) {
  if (!(c.dom == c.cod) || !is_galois(c.dom)) return format_element(e, c.elem, opt);
  const auto auts = aut_group(c.dom);
  const auto labels = detail::aut_labels(c.dom, auts, opt.ascii);
  const auto coords = galois_coordinates(e, c, auts);
  std::vector<std::pair<std::string, std::string>> terms;  // (label, text)
  for (std::size_t i = 0; i < auts.size(); ++i) {
    if (is_zero(e, coords[i])) continue;
    const std::string a = format_element(e, coords[i], opt);
    const std::string& l = labels[i];
    std::string t;
    if (l.empty()) t = a;
    else if (a == "1") t = l;
    else if (a == "-1") t = "-" + l;
    else if (detail::is_integer_literal(a)) t = a + l;
    else t = "(" + a + ")" + l;
    terms.emplace_back(l, t);
  }
  std::sort(terms.begin(), terms.end(), [](const auto& p, const auto& q) {
    return p.first.size() != q.first.size() ? p.first.size() < q.first.size() : p.first < q.first;
  });
  std::vector<std::string> parts;
  for (auto& t : terms) parts.push_back(std::move(t.second));
  return detail::join_terms(parts);
}

template <GysinFunctor F>
json correspondence_to_json(const F& e, const Correspondence<F>& c, const NameTable* names = nullptr) {
  return {{"functor", e.name()},
          {"dom", gset_ref(c.dom, names)},
          {"cod", gset_ref(c.cod, names)},
          {"elem", element_to_json(c.elem, names)}};
}

}  // namespace gysin

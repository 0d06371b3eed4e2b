#pragma once

// Finite G-sets, equivariant maps, and the finite limits and colimits used
// everywhere else. Every construction orders its points deterministically:
// products and pullbacks are first-factor-major, coproducts put the left
// summand first, and orbits are listed by their minimal element.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gysin/group.hpp"

namespace gysin {

class GSet {
 public:
  GSet() : GSet(trivial_group(), 0, {}, Unchecked{}) {}

  /// `act` is row-major: act[g * size + x] is g.x. Validates the action axioms.
  GSet(GroupPtr group, int size, std::vector<int> act) : GSet(std::move(group), size, std::move(act), Unchecked{}) {
    const auto& g = *impl_->group;
    if (static_cast<std::size_t>(impl_->act.size()) != static_cast<std::size_t>(g.order()) * size)
      throw std::invalid_argument("gset: action table has wrong shape");
    for (int v : impl_->act)
      if (v < 0 || v >= size) throw std::invalid_argument("gset: action entry out of range");
    for (int x = 0; x < size; ++x)
      if (this->act(0, x) != x) throw std::invalid_argument("gset: identity does not act trivially");
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        for (int x = 0; x < size; ++x)
          if (this->act(a, this->act(b, x)) != this->act(g.mul(a, b), x))
            throw std::invalid_argument("gset: action is not compatible with multiplication");
  }

  static GSet from_rows(GroupPtr group, const std::vector<std::vector<int>>& rows) {
    if (static_cast<int>(rows.size()) != group->order())
      throw std::invalid_argument("gset: need one action row per group element");
    const int size = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    std::vector<int> flat;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != size) throw std::invalid_argument("gset: ragged action table");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return GSet(std::move(group), size, std::move(flat));
  }

  struct Unchecked {};
  /// Skips validation; the caller guarantees `act` is a valid action.
  GSet(GroupPtr group, int size, std::vector<int> act, Unchecked) {
    auto impl = std::make_shared<Impl>();
    impl->group = std::move(group);
    impl->size = size;
    impl->act = std::move(act);
    impl->orbit_of.assign(size, -1);
    if (static_cast<std::size_t>(impl->act.size()) == static_cast<std::size_t>(impl->group->order()) * size) {
      for (int x = 0; x < size; ++x) {
        if (impl->orbit_of[x] >= 0) continue;
        const int id = static_cast<int>(impl->orbits.size());
        std::vector<int> orb;
        for (int g = 0; g < impl->group->order(); ++g) {
          int y = impl->act[static_cast<std::size_t>(g) * size + x];
          if (impl->orbit_of[y] < 0) {
            impl->orbit_of[y] = id;
            orb.push_back(y);
          }
        }
        std::sort(orb.begin(), orb.end());
        impl->orbits.push_back(std::move(orb));
      }
    }
    impl_ = std::move(impl);
  }

  const FiniteGroup& group() const { return *impl_->group; }
  const GroupPtr& group_ptr() const { return impl_->group; }
  int size() const { return impl_->size; }
  bool empty() const { return impl_->size == 0; }
  int act(int g, int x) const { return impl_->act[static_cast<std::size_t>(g) * impl_->size + x]; }
  const std::vector<int>& act_table() const { return impl_->act; }

  int orbit_count() const { return static_cast<int>(impl_->orbits.size()); }
  int orbit_of(int x) const { return impl_->orbit_of[x]; }
  /// Points of orbit i, sorted; orbits are indexed by their minimal point.
  const std::vector<int>& orbit(int i) const { return impl_->orbits[i]; }
  bool is_transitive() const { return orbit_count() == 1; }

  Subgroup stabilizer(int x) const {
    Subgroup s;
    for (int g = 0; g < group().order(); ++g)
      if (act(g, x) == x) s.push_back(g);
    return s;
  }

  bool fixed_by(const Subgroup& h, int x) const {
    return std::all_of(h.begin(), h.end(), [&](int g) { return act(g, x) == x; });
  }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> r(group().order(), std::vector<int>(size()));
    for (int g = 0; g < group().order(); ++g)
      for (int x = 0; x < size(); ++x) r[g][x] = act(g, x);
    return r;
  }

  friend bool operator==(const GSet& a, const GSet& b) {
    if (a.impl_ == b.impl_) return true;
    return a.size() == b.size() && same_group(a.group_ptr(), b.group_ptr()) && a.impl_->act == b.impl_->act;
  }

 private:
  struct Impl {
    GroupPtr group;
    int size = 0;
    std::vector<int> act;
    std::vector<int> orbit_of;
    std::vector<std::vector<int>> orbits;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Equivariant map; `table[x]` is the image of x.
class GMap {
 public:
  GMap() = default;

  GMap(GSet src, GSet dst, std::vector<int> table) : src_(std::move(src)), dst_(std::move(dst)), table_(std::move(table)) {
    if (!same_group(src_.group_ptr(), dst_.group_ptr()))
      throw std::invalid_argument("gmap: source and target have different groups");
    if (static_cast<int>(table_.size()) != src_.size()) throw std::invalid_argument("gmap: table has wrong length");
    for (int v : table_)
      if (v < 0 || v >= dst_.size()) throw std::invalid_argument("gmap: table entry out of range");
    for (int g = 0; g < src_.group().order(); ++g)
      for (int x = 0; x < src_.size(); ++x)
        if (table_[src_.act(g, x)] != dst_.act(g, table_[x]))
          throw std::invalid_argument("gmap: map is not equivariant");
  }

  struct Unchecked {};
  GMap(GSet src, GSet dst, std::vector<int> table, Unchecked)
      : src_(std::move(src)), dst_(std::move(dst)), table_(std::move(table)) {}

  const GSet& src() const { return src_; }
  const GSet& dst() const { return dst_; }
  const std::vector<int>& table() const { return table_; }
  int operator()(int x) const { return table_[x]; }

  bool is_injective() const {
    std::vector<char> hit(dst_.size(), 0);
    for (int y : table_) {
      if (hit[y]) return false;
      hit[y] = 1;
    }
    return true;
  }
  bool is_surjective() const {
    std::vector<char> hit(dst_.size(), 0);
    for (int y : table_) hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }
  bool is_iso() const { return src_.size() == dst_.size() && is_injective(); }

  friend bool operator==(const GMap& a, const GMap& b) {
    return a.table_ == b.table_ && a.src_ == b.src_ && a.dst_ == b.dst_;
  }

 private:
  GSet src_;
  GSet dst_;
  std::vector<int> table_;
};

// ---------------------------------------------------------------------------
// Basic objects and maps

inline GSet terminal_gset(const GroupPtr& g) { return GSet(g, 1, std::vector<int>(g->order(), 0), GSet::Unchecked{}); }

inline GSet empty_gset(const GroupPtr& g) { return GSet(g, 0, {}, GSet::Unchecked{}); }

/// Left cosets G/H, ordered by minimal element, with g.(kH) = (gk)H.
inline GSet coset_gset(const GroupPtr& gp, const Subgroup& h) {
  const auto& g = *gp;
  std::vector<int> coset_of(g.order(), -1);
  int count = 0;
  for (int k = 0; k < g.order(); ++k) {
    if (coset_of[k] >= 0) continue;
    for (int x : h) coset_of[g.mul(k, x)] = count;
    ++count;
  }
  std::vector<int> rep(count);
  for (int k = g.order() - 1; k >= 0; --k) rep[coset_of[k]] = k;
  std::vector<int> act(static_cast<std::size_t>(g.order()) * count);
  for (int a = 0; a < g.order(); ++a)
    for (int c = 0; c < count; ++c) act[static_cast<std::size_t>(a) * count + c] = coset_of[g.mul(a, rep[c])];
  return GSet(gp, count, std::move(act), GSet::Unchecked{});
}

inline GSet regular_gset(const GroupPtr& g) { return coset_gset(g, Subgroup{0}); }

inline GMap identity_map(const GSet& x) {
  std::vector<int> t(x.size());
  for (int i = 0; i < x.size(); ++i) t[i] = i;
  return GMap(x, x, std::move(t), GMap::Unchecked{});
}

inline GMap terminal_map(const GSet& x) {
  return GMap(x, terminal_gset(x.group_ptr()), std::vector<int>(x.size(), 0), GMap::Unchecked{});
}

/// g o f.
inline GMap compose(const GMap& g, const GMap& f) {
  if (!(f.dst() == g.src())) throw std::invalid_argument("compose: maps are not composable");
  std::vector<int> t(f.src().size());
  for (int x = 0; x < f.src().size(); ++x) t[x] = g(f(x));
  return GMap(f.src(), g.dst(), std::move(t), GMap::Unchecked{});
}

inline GMap inverse_map(const GMap& f) {
  if (!f.is_iso()) throw std::invalid_argument("inverse_map: map is not a bijection");
  std::vector<int> t(f.dst().size());
  for (int x = 0; x < f.src().size(); ++x) t[f(x)] = x;
  return GMap(f.dst(), f.src(), std::move(t), GMap::Unchecked{});
}

// ---------------------------------------------------------------------------
// Products, coproducts, pullbacks

struct ProductResult {
  GSet object;
  GMap first;
  GMap second;
};

/// X x Y with point (x, y) at index x*|Y| + y.
inline ProductResult product_gset(const GSet& x, const GSet& y) {
  if (!same_group(x.group_ptr(), y.group_ptr())) throw std::invalid_argument("product_gset: mismatched groups");
  const int nx = x.size(), ny = y.size(), n = nx * ny;
  const int order = x.group().order();
  std::vector<int> act(static_cast<std::size_t>(order) * n);
  for (int g = 0; g < order; ++g)
    for (int a = 0; a < nx; ++a)
      for (int b = 0; b < ny; ++b)
        act[static_cast<std::size_t>(g) * n + a * ny + b] = x.act(g, a) * ny + y.act(g, b);
  GSet p(x.group_ptr(), n, std::move(act), GSet::Unchecked{});
  std::vector<int> t1(n), t2(n);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) {
      t1[a * ny + b] = a;
      t2[a * ny + b] = b;
    }
  return {p, GMap(p, x, std::move(t1), GMap::Unchecked{}), GMap(p, y, std::move(t2), GMap::Unchecked{})};
}

inline GSet product_object(const GSet& x, const GSet& y) { return product_gset(x, y).object; }

/// f x g : A x B -> C x D.
inline GMap product_map(const GMap& f, const GMap& g) {
  GSet s = product_object(f.src(), g.src());
  GSet t = product_object(f.dst(), g.dst());
  const int nb = g.src().size(), nd = g.dst().size();
  std::vector<int> table(s.size());
  for (int a = 0; a < f.src().size(); ++a)
    for (int b = 0; b < nb; ++b) table[a * nb + b] = f(a) * nd + g(b);
  return GMap(s, t, std::move(table), GMap::Unchecked{});
}

/// (f, g) : Z -> X x Y.
inline GMap pair_map(const GMap& f, const GMap& g) {
  if (!(f.src() == g.src())) throw std::invalid_argument("pair_map: maps have different sources");
  GSet t = product_object(f.dst(), g.dst());
  std::vector<int> table(f.src().size());
  for (int z = 0; z < f.src().size(); ++z) table[z] = f(z) * g.dst().size() + g(z);
  return GMap(f.src(), t, std::move(table), GMap::Unchecked{});
}

inline GMap diagonal_map(const GSet& x) { return pair_map(identity_map(x), identity_map(x)); }

/// t : X x Y -> Y x X.
inline GMap swap_map(const GSet& x, const GSet& y) {
  GSet s = product_object(x, y);
  GSet t = product_object(y, x);
  std::vector<int> table(s.size());
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < y.size(); ++b) table[a * y.size() + b] = b * x.size() + a;
  return GMap(s, t, std::move(table), GMap::Unchecked{});
}

struct CoproductResult {
  GSet object;
  GMap first;
  GMap second;
};

inline CoproductResult coproduct_gset(const GSet& x, const GSet& y) {
  if (!same_group(x.group_ptr(), y.group_ptr())) throw std::invalid_argument("coproduct_gset: mismatched groups");
  const int nx = x.size(), ny = y.size(), n = nx + ny;
  const int order = x.group().order();
  std::vector<int> act(static_cast<std::size_t>(order) * n);
  for (int g = 0; g < order; ++g) {
    for (int a = 0; a < nx; ++a) act[static_cast<std::size_t>(g) * n + a] = x.act(g, a);
    for (int b = 0; b < ny; ++b) act[static_cast<std::size_t>(g) * n + nx + b] = nx + y.act(g, b);
  }
  GSet s(x.group_ptr(), n, std::move(act), GSet::Unchecked{});
  std::vector<int> t1(nx), t2(ny);
  for (int a = 0; a < nx; ++a) t1[a] = a;
  for (int b = 0; b < ny; ++b) t2[b] = nx + b;
  return {s, GMap(x, s, std::move(t1), GMap::Unchecked{}), GMap(y, s, std::move(t2), GMap::Unchecked{})};
}

struct PullbackResult {
  GSet object;
  GMap p;  ///< to the source of f
  GMap q;  ///< to the source of g
};

/// P = {(a, b) : f(a) = g(b)}, lexicographic in (a, b).
inline PullbackResult pullback_gset(const GMap& f, const GMap& g) {
  if (!(f.dst() == g.dst())) throw std::invalid_argument("pullback_gset: maps have different codomains");
  const GSet& a = f.src();
  const GSet& b = g.src();
  std::vector<std::vector<int>> fiber(f.dst().size());
  for (int y = 0; y < b.size(); ++y) fiber[g(y)].push_back(y);
  std::vector<int> pa, pb;
  std::vector<int> offset(a.size() + 1, 0);
  for (int x = 0; x < a.size(); ++x) {
    offset[x] = static_cast<int>(pa.size());
    for (int y : fiber[f(x)]) {
      pa.push_back(x);
      pb.push_back(y);
    }
  }
  offset[a.size()] = static_cast<int>(pa.size());
  const int n = static_cast<int>(pa.size());
  const int order = a.group().order();
  std::vector<int> act(static_cast<std::size_t>(order) * n);
  for (int gi = 0; gi < order; ++gi) {
    for (int i = 0; i < n; ++i) {
      const int x2 = a.act(gi, pa[i]);
      const int y2 = b.act(gi, pb[i]);
      const auto& fib = fiber[f(x2)];
      const int pos = static_cast<int>(std::lower_bound(fib.begin(), fib.end(), y2) - fib.begin());
      act[static_cast<std::size_t>(gi) * n + i] = offset[x2] + pos;
    }
  }
  GSet p(a.group_ptr(), n, std::move(act), GSet::Unchecked{});
  return {p, GMap(p, a, pa, GMap::Unchecked{}), GMap(p, b, pb, GMap::Unchecked{})};
}

// ---------------------------------------------------------------------------
// Orbits

struct Orbit {
  GSet set;        ///< transitive
  GMap inclusion;  ///< into the original G-set
};

inline std::vector<Orbit> orbit_decompose(const GSet& x) {
  std::vector<Orbit> out;
  for (int i = 0; i < x.orbit_count(); ++i) {
    const auto& pts = x.orbit(i);
    const int n = static_cast<int>(pts.size());
    std::vector<int> local(x.size(), -1);
    for (int k = 0; k < n; ++k) local[pts[k]] = k;
    std::vector<int> act(static_cast<std::size_t>(x.group().order()) * n);
    for (int g = 0; g < x.group().order(); ++g)
      for (int k = 0; k < n; ++k) act[static_cast<std::size_t>(g) * n + k] = local[x.act(g, pts[k])];
    GSet o(x.group_ptr(), n, std::move(act), GSet::Unchecked{});
    out.push_back({o, GMap(o, x, pts, GMap::Unchecked{})});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hom-sets

namespace detail {

// Calls `emit` with each equivariant map X -> Y, in lexicographic order of
// tables. `accept(orbit_index, y)` may veto the image of an orbit rep.
inline void for_each_hom(const GSet& x, const GSet& y, const std::function<bool(int, int)>& accept,
                         const std::function<void(const std::vector<int>&)>& emit) {
  const int k = x.orbit_count();
  std::vector<std::vector<int>> cand(k);
  for (int i = 0; i < k; ++i) {
    const int rep = x.orbit(i).front();
    const Subgroup stab = x.stabilizer(rep);
    for (int v = 0; v < y.size(); ++v)
      if (y.fixed_by(stab, v) && accept(i, v)) cand[i].push_back(v);
    if (cand[i].empty()) return;
  }
  // Orbits are indexed by minimal point, so lexicographic order of tables is
  // lexicographic order of the rep images in orbit order.
  std::vector<int> choice(k, 0);
  std::vector<int> table(x.size());
  const int order = x.group().order();
  while (true) {
    for (int i = 0; i < k; ++i) {
      const int rep = x.orbit(i).front();
      const int v = cand[i][choice[i]];
      for (int g = 0; g < order; ++g) table[x.act(g, rep)] = y.act(g, v);
    }
    emit(table);
    int i = k - 1;
    while (i >= 0 && ++choice[i] == static_cast<int>(cand[i].size())) choice[i--] = 0;
    if (i < 0) break;
  }
}

}  // namespace detail

inline std::vector<GMap> hom_set(const GSet& x, const GSet& y) {
  if (!same_group(x.group_ptr(), y.group_ptr())) throw std::invalid_argument("hom_set: mismatched groups");
  std::vector<GMap> out;
  detail::for_each_hom(x, y, [](int, int) { return true; },
                       [&](const std::vector<int>& t) { out.emplace_back(x, y, t, GMap::Unchecked{}); });
  return out;
}

inline std::vector<GMap> aut_group(const GSet& x) {
  std::vector<GMap> out;
  for (auto& f : hom_set(x, x))
    if (f.is_iso()) out.push_back(std::move(f));
  return out;
}

/// Atomic X is Galois when the disjoint union of copies X_s (s in Aut X),
/// mapped in by id x s, is all of X x X.
inline bool is_galois(const GSet& x) {
  if (x.empty() || !x.is_transitive()) return false;
  const auto auts = aut_group(x);
  const long n = x.size();
  if (static_cast<long>(auts.size()) * n != n * n) return false;
  std::vector<char> hit(static_cast<std::size_t>(n * n), 0);
  for (const auto& s : auts) {
    for (int p = 0; p < n; ++p) {
      auto& h = hit[static_cast<std::size_t>(p * n + s(p))];
      if (h) return false;
      h = 1;
    }
  }
  return true;
}

/// First equivariant bijection found by backtracking over orbit matchings.
inline std::optional<GMap> iso_test(const GSet& x, const GSet& y) {
  if (!same_group(x.group_ptr(), y.group_ptr())) throw std::invalid_argument("iso_test: mismatched groups");
  if (x.size() != y.size() || x.orbit_count() != y.orbit_count()) return std::nullopt;
  const int k = x.orbit_count();
  std::vector<Subgroup> stab_x(k);
  for (int i = 0; i < k; ++i) stab_x[i] = x.stabilizer(x.orbit(i).front());
  std::vector<char> used(k, 0);
  std::vector<int> image(k, -1);
  std::function<bool(int)> search = [&](int i) -> bool {
    if (i == k) return true;
    for (int j = 0; j < k; ++j) {
      if (used[j] || y.orbit(j).size() != x.orbit(i).size()) continue;
      for (int v : y.orbit(j)) {
        if (y.stabilizer(v) != stab_x[i]) continue;
        used[j] = 1;
        image[i] = v;
        if (search(i + 1)) return true;
        used[j] = 0;
        break;  // all points of an orbit with this stabilizer give the same matching up to Aut
      }
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  std::vector<int> table(x.size());
  for (int i = 0; i < k; ++i) {
    const int rep = x.orbit(i).front();
    for (int g = 0; g < x.group().order(); ++g) table[x.act(g, rep)] = y.act(g, image[i]);
  }
  return GMap(x, y, std::move(table), GMap::Unchecked{});
}

}  // namespace gysin

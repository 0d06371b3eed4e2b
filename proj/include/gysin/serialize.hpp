#pragma once

// JSON forms of groups, G-sets, maps, GW classes and functor elements.
//
//   group  {"order": n, "mul": [[...]]}
//   gset   {"group": id-or-group, "size": m, "act": [[...]]}
//   gmap   {"src": id-or-gset, "dst": id-or-gset, "table": [...]}
//   burnside element {"base": id-or-gset, "terms": [{"orbit": id-or-gset, "map": [...], "coeff": n}]}
//   GW class {"variant": "ff", "rank", "eps", "p", "d"} | {"variant": "r", "plus", "minus"} | {"variant": "c", "rank"}
//   GW element {"base": id-or-gset, "components": [class, ...]}
//
// References are string ids when a NameTable knows the object, and inline
// objects otherwise. Parsing accepts either form.

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gysin/burnside.hpp"
#include "gysin/gw_functor.hpp"

namespace gysin {

using json = nlohmann::json;

/// Malformed or inconsistent input data.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NameTable {
  std::vector<std::pair<GroupPtr, std::string>> groups;
  std::vector<std::pair<GSet, std::string>> gsets;

  const std::string* group_name(const GroupPtr& g) const {
    for (const auto& [h, n] : groups)
      if (same_group(g, h)) return &n;
    return nullptr;
  }
  const std::string* gset_name(const GSet& x) const {
    for (const auto& [y, n] : gsets)
      if (x == y) return &n;
    return nullptr;
  }
};

inline json group_to_json(const FiniteGroup& g) { return {{"order", g.order()}, {"mul", g.table()}}; }

inline json group_ref(const GroupPtr& g, const NameTable* names) {
  if (names)
    if (auto* n = names->group_name(g)) return *n;
  return group_to_json(*g);
}

inline json gset_to_json(const GSet& x, const NameTable* names = nullptr) {
  return {{"group", group_ref(x.group_ptr(), names)}, {"size", x.size()}, {"act", x.rows()}};
}

inline json gset_ref(const GSet& x, const NameTable* names) {
  if (names)
    if (auto* n = names->gset_name(x)) return *n;
  return gset_to_json(x, names);
}

inline json gmap_to_json(const GMap& f, const NameTable* names = nullptr) {
  return {{"src", gset_ref(f.src(), names)}, {"dst", gset_ref(f.dst(), names)}, {"table", f.table()}};
}

inline json gw_class_to_json(const GWClass& c) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FFClass>)
          return {{"variant", "ff"}, {"rank", x.rank}, {"eps", x.eps}, {"p", x.p}, {"d", x.d}};
        else if constexpr (std::is_same_v<T, RealClass>)
          return {{"variant", "r"}, {"plus", x.plus}, {"minus", x.minus}};
        else
          return {{"variant", "c"}, {"rank", x.rank}};
      },
      c);
}

inline json element_to_json(const BurnsideElem& a, const NameTable* names = nullptr) {
  json terms = json::array();
  for (const auto& [k, c] : a.terms()) {
    const GMap m = key_orbit_map(a.base(), k);
    terms.push_back({{"orbit", gset_ref(m.src(), names)}, {"map", m.table()}, {"coeff", c}});
  }
  return {{"base", gset_ref(a.base(), names)}, {"terms", terms}};
}

inline json element_to_json(const GWAlgebraElem& a, const NameTable* names = nullptr) {
  json comps = json::array();
  for (const auto& c : a.components) comps.push_back(gw_class_to_json(c));
  return {{"base", gset_ref(a.base, names)}, {"components", comps}};
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

template <class T>
T field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw DataError(what + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DataError(what + ": field \"" + key + "\" has the wrong type");
  }
}

}  // namespace detail

/// Resolves a reference (string id or inline object) to an object.
using GroupResolver = std::function<GroupPtr(const json&)>;
using GSetResolver = std::function<GSet(const json&)>;

inline GroupPtr group_from_json(const json& j, const std::string& name = {}) {
  auto mul = detail::field<std::vector<std::vector<int>>>(j, "mul", "group");
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(mul.size()))
    throw DataError("group: order does not match the table");
  try {
    return std::make_shared<const FiniteGroup>(std::move(mul), name);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

/// Also accepts {"group": ..., "cosets": [H1, H2, ...]}, the disjoint union of
/// the coset spaces G/Hi with each Hi listed by its elements.
inline GSet gset_from_json(const json& j, const GroupResolver& groups) {
  if (!j.is_object() || !j.contains("group")) throw DataError("gset: missing field \"group\"");
  GroupPtr g = groups(j.at("group"));
  if (j.contains("cosets")) {
    GSet x = empty_gset(g);
    for (const auto& h : detail::field<std::vector<std::vector<int>>>(j, "cosets", "gset")) {
      for (int v : h)
        if (v < 0 || v >= g->order()) throw DataError("gset: coset subgroup element out of range");
      Subgroup sub = g->closure(h);
      std::vector<int> sorted = h;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      if (sub != sorted) throw DataError("gset: coset list entry is not a subgroup");
      x = coproduct_gset(x, coset_gset(g, sub)).object;
    }
    return x;
  }
  const int size = detail::field<int>(j, "size", "gset");
  auto act = detail::field<std::vector<std::vector<int>>>(j, "act", "gset");
  if (static_cast<int>(act.size()) != g->order()) throw DataError("gset: act must have one row per group element");
  for (const auto& row : act)
    if (static_cast<int>(row.size()) != size) throw DataError("gset: act row has the wrong length");
  try {
    return GSet::from_rows(g, act);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

inline GMap gmap_from_json(const json& j, const GSetResolver& gsets) {
  if (!j.is_object() || !j.contains("src") || !j.contains("dst")) throw DataError("gmap: missing src/dst");
  GSet src = gsets(j.at("src"));
  GSet dst = gsets(j.at("dst"));
  auto table = detail::field<std::vector<int>>(j, "table", "gmap");
  try {
    return GMap(src, dst, std::move(table));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

/// Resolver for inline objects only.
inline GroupResolver inline_groups() {
  return [](const json& j) -> GroupPtr {
    if (j.is_string()) {
      try {
        return group_from_spec(j.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
      }
    }
    return group_from_json(j);
  };
}

inline GSetResolver inline_gsets(GroupResolver groups = inline_groups()) {
  return [groups](const json& j) -> GSet {
    if (j.is_string()) throw DataError("unknown gset id \"" + j.get<std::string>() + "\"");
    return gset_from_json(j, groups);
  };
}

inline FFClass ff_from_json(const json& j, int p, int d) {
  const int jp = j.contains("p") ? j.at("p").get<int>() : p;
  const int jd = j.contains("d") ? j.at("d").get<int>() : d;
  if (jp != p || jd != d)
    throw DataError("gw class over F_" + std::to_string(jp) + "^" + std::to_string(jd) + " where F_" + std::to_string(p) +
                    "^" + std::to_string(d) + " was expected");
  return ff_class(detail::field<std::int64_t>(j, "rank", "gw class"), detail::field<int>(j, "eps", "gw class"), p, d);
}

inline GWClass gw_class_from_json(const json& j) {
  const auto v = detail::field<std::string>(j, "variant", "gw class");
  if (v == "ff")
    return ff_class(detail::field<std::int64_t>(j, "rank", "gw class"), detail::field<int>(j, "eps", "gw class"),
                    detail::field<int>(j, "p", "gw class"), detail::field<int>(j, "d", "gw class"));
  if (v == "r") return RealClass{detail::field<std::int64_t>(j, "plus", "gw class"), detail::field<std::int64_t>(j, "minus", "gw class")};
  if (v == "c") return ComplexClass{detail::field<std::int64_t>(j, "rank", "gw class")};
  throw DataError("gw class: unknown variant \"" + v + "\"");
}

inline BurnsideElem parse_element(const BurnsideFunctor&, const GSet& base, const json& j, const GSetResolver& gsets) {
  BurnsideElem out(base);
  if (!j.is_object() || !j.contains("terms")) throw DataError("burnside element: missing \"terms\"");
  if (j.contains("base") && !(gsets(j.at("base")) == base)) throw DataError("burnside element: base does not match its object");
  for (const auto& t : j.at("terms")) {
    if (!t.contains("orbit")) throw DataError("burnside term: missing \"orbit\"");
    GSet orbit = gsets(t.at("orbit"));
    auto table = detail::field<std::vector<int>>(t, "map", "burnside term");
    const auto c = t.contains("coeff") ? t.at("coeff").get<std::int64_t>() : 1;
    GMap m = [&] {
      try {
        return GMap(orbit, base, std::move(table));
      } catch (const std::invalid_argument& e) {
        throw DataError(std::string("burnside term: ") + e.what());
      }
    }();
    const BurnsideElem cls = burnside_canonicalize(m);
    for (const auto& [k, v] : cls.terms()) out.add_term(k, v * c);
  }
  return out;
}

namespace detail {

template <class F>
GWAlgebraElem parse_gw_element(const F& e, const GSet& base, const json& j, const GSetResolver& gsets) {
  GWAlgebraElem out = e.zero(base);
  json comps;
  if (j.is_object() && j.contains("components")) {
    if (j.contains("base") && !(gsets(j.at("base")) == base)) throw DataError("gw element: base does not match its object");
    comps = j.at("components");
  } else if (base.orbit_count() == 1) {
    comps = json::array({j});
  } else {
    throw DataError("gw element: expected \"components\"");
  }
  if (!comps.is_array() || static_cast<int>(comps.size()) != base.orbit_count())
    throw DataError("gw element: need one component per orbit");
  for (int i = 0; i < base.orbit_count(); ++i) {
    const int d = static_cast<int>(base.orbit(i).size());
    if constexpr (requires { e.p(); }) {
      out.components[i] = ff_from_json(comps[i], e.p(), d);
    } else {
      GWClass c = gw_class_from_json(comps[i]);
      if (c.index() != out.components[i].index()) throw DataError("gw element: component has the wrong variant");
      out.components[i] = c;
    }
  }
  return out;
}

}  // namespace detail

inline GWAlgebraElem parse_element(const GWFiniteFieldFunctor& e, const GSet& base, const json& j, const GSetResolver& gsets) {
  return detail::parse_gw_element(e, base, j, gsets);
}
inline GWAlgebraElem parse_element(const GWRealComplexFunctor& e, const GSet& base, const json& j, const GSetResolver& gsets) {
  return detail::parse_gw_element(e, base, j, gsets);
}

/// Element over `base`; besides the functor's own form accepts "zero", "one" and integers n (meaning n * 1).
template <GysinFunctor F>
ElemOf<F> element_from_json(const F& e, const GSet& base, const json& j, const GSetResolver& gsets) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "zero") return e.zero(base);
    if (s == "one") return e.one(base);
    throw DataError("element: unknown literal \"" + s + "\"");
  }
  if (j.is_number_integer()) return scale(e, e.one(base), j.get<std::int64_t>());
  return parse_element(e, base, j, gsets);
}

}  // namespace gysin
